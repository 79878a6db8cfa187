#pragma once

// The complete nonsingular fan of a generalized Bott tower, its primitive
// collections and relations, and the degree criterion for (weak) Fano-ness.
//
// Ray layout: stage l contributes u_l^0, u_l^1, ..., u_l^{n_l} in that
// order, so u_l^k has index (n_1 + 1) + ... + (n_{l-1} + 1) + k. The standard
// basis vector e_l^k sits at coordinate n_1 + ... + n_{l-1} + (k - 1).

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fanobott/error.hpp"
#include "fanobott/lattice.hpp"
#include "fanobott/tower.hpp"

namespace fanobott {

/// Sorted set of ray indices.
using RaySet = std::vector<std::size_t>;

/// Ray u_l^k as (stage l, position k).
struct RayLabel {
  int stage = 0;
  int index = 0;
  bool operator==(const RayLabel&) const = default;
};

struct Fan {
  int dim = 0;
  std::vector<IntVec> rays;
  std::vector<RayLabel> labels;
  /// Each maximal cone as the sorted indices of its generating rays.
  std::vector<RaySet> max_cones;
};

/// Refuse the exhaustive primitive-collection search above this many rays.
inline constexpr std::size_t kBruteForceRayLimit = 24;

/// Refuse to materialize fans with more maximal cones than this.
inline constexpr std::uint64_t kMaxConeLimit = std::uint64_t{1} << 22;

inline std::size_t ray_index(const GeneralizedBottTower& t, std::size_t stage, std::size_t k) {
  std::size_t offset = 0;
  for (std::size_t l = 1; l < stage; ++l) offset += static_cast<std::size_t>(t.dim(l)) + 1;
  return offset + k;
}

inline std::string ray_name(const RayLabel& label) {
  return "u_" + std::to_string(label.stage) + "^" + std::to_string(label.index);
}

inline Fan build_fan(const GeneralizedBottTower& t) {
  validate(t);
  const std::size_t m = t.stages();
  const int n = t.total_dim();

  std::vector<std::size_t> coord_offset(m + 1, 0);
  for (std::size_t l = 1; l <= m; ++l) coord_offset[l] = (l == 1 ? 0 : coord_offset[l - 1] + t.dim(l - 1));

  std::uint64_t cones = 1;
  for (std::size_t l = 1; l <= m; ++l) {
    if (__builtin_mul_overflow(cones, static_cast<std::uint64_t>(t.dim(l)) + 1, &cones) || cones > kMaxConeLimit)
      throw LimitError("build_fan: too many maximal cones", cones, kMaxConeLimit);
  }

  Fan f;
  f.dim = n;
  for (std::size_t l = 1; l <= m; ++l) {
    IntVec u0(static_cast<std::size_t>(n), 0);
    for (int k = 1; k <= t.dim(l); ++k) u0[coord_offset[l] + k - 1] = -1;
    for (std::size_t j = l + 1; j <= m; ++j) {
      const IntVec& a = t.a(j, l);
      for (int k = 1; k <= t.dim(j); ++k) u0[coord_offset[j] + k - 1] = a[k - 1];
    }
    f.rays.push_back(std::move(u0));
    f.labels.push_back({static_cast<int>(l), 0});
    for (int k = 1; k <= t.dim(l); ++k) {
      IntVec e(static_cast<std::size_t>(n), 0);
      e[coord_offset[l] + k - 1] = 1;
      f.rays.push_back(std::move(e));
      f.labels.push_back({static_cast<int>(l), k});
    }
  }

  // Odometer over (k_1, ..., k_m) with k_1 most significant; k_l is the
  // ray of stage l left out of the cone.
  std::vector<int> omit(m, 0);
  f.max_cones.reserve(cones);
  while (true) {
    RaySet cone;
    cone.reserve(static_cast<std::size_t>(n));
    for (std::size_t l = 1; l <= m; ++l)
      for (int k = 0; k <= t.dim(l); ++k)
        if (k != omit[l - 1]) cone.push_back(ray_index(t, l, static_cast<std::size_t>(k)));
    f.max_cones.push_back(std::move(cone));

    std::size_t pos = m;
    while (pos > 0 && omit[pos - 1] == t.dim(pos)) omit[--pos] = 0;
    if (pos == 0) break;
    ++omit[pos - 1];
  }
  return f;
}

enum class FanDefect { RayShape, DuplicateRay, NonPrimitiveRay, ConeShape, Singular, Facet };

class FanError : public ValidationError {
 public:
  FanError(FanDefect defect, const std::string& what) : ValidationError(what), defect_(defect) {}
  FanDefect defect() const noexcept { return defect_; }

 private:
  FanDefect defect_;
};

inline std::string describe(const Fan& f, const RaySet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += s[i] < f.labels.size() ? ray_name(f.labels[s[i]]) : "#" + std::to_string(s[i]);
  }
  return out + "}";
}

/// Throws FanError naming the first offending ray, cone or facet.
///
/// Checks: ray shape and primitivity, pairwise distinct rays, every maximal
/// cone unimodular (determinant +-1), and every facet of a maximal cone shared
/// by exactly two maximal cones.
inline void validate_smooth_complete(const Fan& f) {
  const auto n = static_cast<std::size_t>(f.dim);
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    if (f.rays[i].size() != n)
      throw FanError(FanDefect::RayShape, "ray #" + std::to_string(i) + " has the wrong length");
    if (!is_primitive(f.rays[i]))
      throw FanError(FanDefect::NonPrimitiveRay, "ray #" + std::to_string(i) + " is not primitive");
  }
  {
    std::map<IntVec, std::size_t> seen;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
      auto [it, fresh] = seen.emplace(f.rays[i], i);
      if (!fresh)
        throw FanError(FanDefect::DuplicateRay,
                       "rays #" + std::to_string(it->second) + " and #" + std::to_string(i) + " coincide");
    }
  }

  std::map<RaySet, int> facet_count;
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    const RaySet& cone = f.max_cones[c];
    if (cone.size() != n || !std::is_sorted(cone.begin(), cone.end()) ||
        std::adjacent_find(cone.begin(), cone.end()) != cone.end() ||
        std::any_of(cone.begin(), cone.end(), [&](std::size_t r) { return r >= f.rays.size(); }))
      throw FanError(FanDefect::ConeShape, "maximal cone #" + std::to_string(c) + " is malformed");

    std::vector<IntVec> gens;
    for (std::size_t r : cone) gens.push_back(f.rays[r]);
    const Int d = det(IntMat::from_columns(gens));
    if (d != 1 && d != -1)
      throw FanError(FanDefect::Singular, "maximal cone #" + std::to_string(c) + " " + describe(f, cone) +
                                              " has determinant " + std::to_string(d));

    for (std::size_t drop = 0; drop < cone.size(); ++drop) {
      RaySet facet;
      for (std::size_t i = 0; i < cone.size(); ++i)
        if (i != drop) facet.push_back(cone[i]);
      ++facet_count[facet];
    }
  }
  for (const auto& [facet, count] : facet_count)
    if (count != 2)
      throw FanError(FanDefect::Facet, "facet " + describe(f, facet) + " lies in " + std::to_string(count) +
                                           " maximal cones, expected 2");
}

/// All inclusion-minimal ray sets that lie in no maximal cone, by exhaustive
/// search over subsets. For a simplicial fan these are exactly the primitive
/// collections. Sorted lexicographically.
inline std::vector<RaySet> primitive_collections_bruteforce(const Fan& f,
                                                            std::size_t max_rays = kBruteForceRayLimit) {
  const std::size_t r = f.rays.size();
  if (r > max_rays || r >= 64)
    throw LimitError("primitive_collections_bruteforce: " + std::to_string(r) + " rays exceeds the limit of " +
                         std::to_string(max_rays),
                     r, max_rays);

  const std::uint64_t subsets = std::uint64_t{1} << r;
  // face[s]: s is contained in some maximal cone.
  std::vector<std::uint8_t> face(subsets, 0);
  for (const RaySet& cone : f.max_cones) {
    std::uint64_t mask = 0;
    for (std::size_t i : cone) mask |= std::uint64_t{1} << i;
    face[mask] = 1;
  }
  for (std::size_t bit = 0; bit < r; ++bit) {
    const std::uint64_t b = std::uint64_t{1} << bit;
    for (std::uint64_t s = 0; s < subsets; ++s)
      if (!(s & b) && face[s | b]) face[s] = 1;
  }

  std::vector<RaySet> out;
  for (std::uint64_t s = 1; s < subsets; ++s) {
    if (face[s]) continue;
    bool minimal = true;
    for (std::uint64_t rest = s; rest && minimal; rest &= rest - 1) minimal = face[s & ~(rest & -rest)];
    if (!minimal) continue;
    RaySet set;
    for (std::size_t i = 0; i < r; ++i)
      if (s & (std::uint64_t{1} << i)) set.push_back(i);
    out.push_back(std::move(set));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct PrimitiveCollectionData {
  RaySet members;
  /// Positive coefficients of the rays of the cone containing the sum.
  std::map<std::size_t, Int> relation_rhs;
  Int degree = 0;

  bool operator==(const PrimitiveCollectionData&) const = default;
};

/// The relation sum(members) - sum(rhs) = 0 as a map from ray to coefficient.
inline std::map<std::size_t, Int> signed_relation(const PrimitiveCollectionData& pc) {
  std::map<std::size_t, Int> rel;
  for (std::size_t i : pc.members) rel[i] = checked::add(rel[i], 1);
  for (const auto& [i, c] : pc.relation_rhs) rel[i] = checked::sub(rel[i], c);
  std::erase_if(rel, [](const auto& kv) { return kv.second == 0; });
  return rel;
}

namespace detail {

inline bool in_some_cone(const Fan& f, const RaySet& s) {
  return std::any_of(f.max_cones.begin(), f.max_cones.end(), [&](const RaySet& cone) {
    return std::includes(cone.begin(), cone.end(), s.begin(), s.end());
  });
}

}  // namespace detail

/// Writes the sum of the collection's rays in the unique cone containing it
/// in its relative interior, and returns the coefficients and the degree.
inline PrimitiveCollectionData primitive_relation(const Fan& f, const RaySet& p) {
  if (p.empty() || !std::is_sorted(p.begin(), p.end()) || p.back() >= f.rays.size())
    throw ValidationError("primitive_relation: " + describe(f, p) + " is not a sorted set of rays");
  if (detail::in_some_cone(f, p))
    throw ValidationError("primitive_relation: " + describe(f, p) + " spans a cone of the fan");
  for (std::size_t drop = 0; drop < p.size(); ++drop) {
    RaySet rest = p;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(drop));
    if (!detail::in_some_cone(f, rest))
      throw ValidationError("primitive_relation: " + describe(f, p) + " is not minimal");
  }

  PrimitiveCollectionData out;
  out.members = p;
  IntVec sum(static_cast<std::size_t>(f.dim), 0);
  for (std::size_t i : p) sum = add(sum, f.rays[i]);
  out.degree = static_cast<Int>(p.size());
  if (std::all_of(sum.begin(), sum.end(), [](Int v) { return v == 0; })) return out;

  for (const RaySet& cone : f.max_cones) {
    std::vector<IntVec> gens;
    for (std::size_t r : cone) gens.push_back(f.rays[r]);
    const auto coords = solve_integral(IntMat::from_columns(gens), sum);
    if (!coords) throw InternalError("primitive_relation: non-integral coordinates in a unimodular cone");
    if (std::any_of(coords->begin(), coords->end(), [](Int c) { return c < 0; })) continue;
    for (std::size_t i = 0; i < cone.size(); ++i) {
      if ((*coords)[i] == 0) continue;
      out.relation_rhs[cone[i]] = (*coords)[i];
      out.degree = checked::sub(out.degree, (*coords)[i]);
    }
    return out;
  }
  throw InternalError("primitive_relation: no maximal cone contains the sum of " + describe(f, p));
}

/// Degree criterion over the exhaustively found primitive collections.
/// `degrees` lists the collections in sorted order, which for tower fans is
/// P_1, ..., P_m.
inline Classification batyrev_classify(const Fan& f, std::size_t max_rays = kBruteForceRayLimit) {
  Classification c;
  for (const RaySet& p : primitive_collections_bruteforce(f, max_rays))
    c.degrees.push_back(primitive_relation(f, p).degree);
  c.verdict = verdict_from_degrees(c.degrees);
  return c;
}

/// P_p = {u_p^0, ..., u_p^{n_p}}.
inline RaySet stage_collection(const GeneralizedBottTower& t, std::size_t p) {
  RaySet s;
  for (int k = 0; k <= t.dim(p); ++k) s.push_back(ray_index(t, p, static_cast<std::size_t>(k)));
  return s;
}

/// The primitive relation for P_p read off the b-vectors:
///   u_p^0 + ... + u_p^{n_p}
///     = sum_q ( -mu(b_{p,q}) u_{p+q}^0 + sum_k (b_{p,q}^{(k)} - mu(b_{p,q})) u_{p+q}^k )
/// with degree (n_p + 1) - sum_q nu(b_{p,q}).
inline PrimitiveCollectionData expected_primitive_relation(const GeneralizedBottTower& t, const BVectors& bv,
                                                           std::size_t p) {
  const std::size_t m = t.stages();
  if (p < 1 || p > m)
    throw ValidationError("expected_primitive_relation: stage " + std::to_string(p) + " outside 1.." +
                          std::to_string(m));
  PrimitiveCollectionData out;
  out.members = stage_collection(t, p);
  out.degree = t.dim(p) + 1;
  for (std::size_t q = 1; p + q <= m; ++q) {
    const IntVec& b = bv.at(p, q);
    const Int low = bv.mu(p, q);
    if (low != 0) out.relation_rhs[ray_index(t, p + q, 0)] = checked::neg(low);
    for (std::size_t k = 1; k <= b.size(); ++k) {
      const Int c = checked::sub(b[k - 1], low);
      if (c != 0) out.relation_rhs[ray_index(t, p + q, k)] = c;
    }
    out.degree = checked::sub(out.degree, nu(b));
  }
  return out;
}

struct WallData {
  /// The n-1 rays of the wall.
  RaySet wall;
  /// The two rays completing the wall to its adjacent maximal cones.
  std::array<std::size_t, 2> adjacent{};
  /// Primitive integer relation among the n+1 rays, nonzero entries only,
  /// positive on the adjacent rays.
  std::map<std::size_t, Int> relation;

  bool operator==(const WallData&) const = default;
};

/// The wall tau_p spanned by u_l^k (l < p, k >= 1), u_p^1..u_p^{n_p - 1}, and
/// u_{p+q}^k for k != i_{p,q}, together with its wall relation.
inline WallData wall_relation(const Fan& f, const GeneralizedBottTower& t, const BVectors& bv, std::size_t p) {
  const std::size_t m = t.stages();
  if (p < 1 || p > m)
    throw ValidationError("wall_relation: stage " + std::to_string(p) + " outside 1.." + std::to_string(m));

  WallData out;
  for (std::size_t l = 1; l < p; ++l)
    for (int k = 1; k <= t.dim(l); ++k) out.wall.push_back(ray_index(t, l, static_cast<std::size_t>(k)));
  for (int k = 1; k < t.dim(p); ++k) out.wall.push_back(ray_index(t, p, static_cast<std::size_t>(k)));
  for (std::size_t q = 1; p + q <= m; ++q)
    for (int k = 0; k <= t.dim(p + q); ++k)
      if (k != bv.argmin(p, q)) out.wall.push_back(ray_index(t, p + q, static_cast<std::size_t>(k)));
  std::sort(out.wall.begin(), out.wall.end());

  std::vector<std::size_t> outside;
  for (const RaySet& cone : f.max_cones) {
    if (!std::includes(cone.begin(), cone.end(), out.wall.begin(), out.wall.end())) continue;
    RaySet extra;
    std::set_difference(cone.begin(), cone.end(), out.wall.begin(), out.wall.end(), std::back_inserter(extra));
    if (extra.size() != 1) throw InternalError("wall_relation: tau_" + std::to_string(p) + " is not a facet");
    outside.push_back(extra[0]);
  }
  if (outside.size() != 2)
    throw InternalError("wall_relation: tau_" + std::to_string(p) + " lies in " + std::to_string(outside.size()) +
                        " maximal cones, expected 2");
  std::sort(outside.begin(), outside.end());
  out.adjacent = {outside[0], outside[1]};

  std::vector<std::size_t> order = out.wall;
  order.push_back(outside[0]);
  order.push_back(outside[1]);
  std::vector<IntVec> cols;
  for (std::size_t r : order) cols.push_back(f.rays[r]);
  IntVec v = kernel_primitive(IntMat::from_columns(cols));

  const Int left = v[v.size() - 2];
  const Int right = v[v.size() - 1];
  if (left == 0 || right == 0 || (left > 0) != (right > 0))
    throw InternalError("wall_relation: adjacent rays of tau_" + std::to_string(p) + " have inconsistent signs");
  if (left < 0)
    for (Int& c : v) c = -c;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (v[i] != 0) out.relation[order[i]] = v[i];
  return out;
}

}  // namespace fanobott
