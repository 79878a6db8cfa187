#pragma once

// Generalized Bott towers and the closed-form Fano / weak Fano criterion.
//
// Indices in the public interface are 1-based and follow the usual
// notation: stage j has fiber dimension n_j, and the tower is determined by
// integer vectors a_{j,l} in Z^{n_j} for 2 <= j <= m, 1 <= l <= j-1.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fanobott/error.hpp"
#include "fanobott/lattice.hpp"

namespace fanobott {

struct GeneralizedBottTower {
  /// n_1, ..., n_m.
  std::vector<int> stage_dims;
  /// coeffs[j-2][l-1] holds a_{j,l}.
  std::vector<std::vector<IntVec>> coeffs;

  std::size_t stages() const noexcept { return stage_dims.size(); }

  int dim(std::size_t j) const { return stage_dims.at(j - 1); }

  const IntVec& a(std::size_t j, std::size_t l) const { return coeffs.at(j - 2).at(l - 1); }

  /// n = n_1 + ... + n_m.
  int total_dim() const {
    int n = 0;
    for (int d : stage_dims) n += d;
    return n;
  }

  /// The product of projective spaces with the given fiber dimensions.
  static GeneralizedBottTower zero(std::vector<int> dims) {
    GeneralizedBottTower t{std::move(dims), {}};
    for (std::size_t j = 2; j <= t.stages(); ++j)
      t.coeffs.emplace_back(j - 1, IntVec(static_cast<std::size_t>(std::max(t.dim(j), 0)), 0));
    return t;
  }

  bool operator==(const GeneralizedBottTower&) const = default;
};

/// Checks the index range and vector lengths; errors name the offending (j,l).
inline void validate(const GeneralizedBottTower& t) {
  const std::size_t m = t.stages();
  if (m == 0) throw ValidationError("tower has no stages");
  for (std::size_t j = 1; j <= m; ++j)
    if (t.dim(j) < 1)
      throw ValidationError("stage " + std::to_string(j) + ": dimension n_" + std::to_string(j) + " = " +
                            std::to_string(t.dim(j)) + " must be positive");

  auto where = [](std::size_t j, std::size_t l) {
    return "a_{" + std::to_string(j) + "," + std::to_string(l) + "}";
  };
  if (t.coeffs.size() > m - 1)
    throw ValidationError("extra coefficient vector " + where(m + 1, 1) + ": tower has only " +
                          std::to_string(m) + " stages");
  for (std::size_t j = 2; j <= m; ++j) {
    if (t.coeffs.size() < j - 1) throw ValidationError("missing coefficient vector " + where(j, 1));
    const auto& row = t.coeffs[j - 2];
    if (row.size() < j - 1) throw ValidationError("missing coefficient vector " + where(j, row.size() + 1));
    if (row.size() > j - 1) throw ValidationError("extra coefficient vector " + where(j, j));
    for (std::size_t l = 1; l < j; ++l) {
      const auto len = row[l - 1].size();
      if (len != static_cast<std::size_t>(t.dim(j)))
        throw ValidationError("dimension mismatch in " + where(j, l) + ": length " + std::to_string(len) +
                              ", expected n_" + std::to_string(j) + " = " + std::to_string(t.dim(j)));
    }
  }
}

/// The b_{p,q} vectors with their cached minima.
struct BVectors {
  /// b[p-1][q-1] holds b_{p,q}.
  std::vector<std::vector<IntVec>> b;
  /// mins[p-1][q-1] = mu(b_{p,q}).
  std::vector<std::vector<Int>> mins;
  /// argmins[p-1][q-1] = i_{p,q}, indexing the vector (0, b^{(1)}, ..., b^{(n)}).
  std::vector<std::vector<int>> argmins;

  const IntVec& at(std::size_t p, std::size_t q) const { return b.at(p - 1).at(q - 1); }
  Int mu(std::size_t p, std::size_t q) const { return mins.at(p - 1).at(q - 1); }
  int argmin(std::size_t p, std::size_t q) const { return argmins.at(p - 1).at(q - 1); }

  bool operator==(const BVectors&) const = default;
};

/// b_{p,1} = a_{p+1,p};  b_{p,q} = a_{p+q,p} + sum_{r<q} mu(b_{p,r}) a_{p+q,p+r}.
///
/// i_{p,q} is 0 when mu(b_{p,q}) = 0, else the smallest k attaining the minimum.
inline BVectors compute_b(const GeneralizedBottTower& t) {
  validate(t);
  const std::size_t m = t.stages();
  BVectors bv;
  for (std::size_t p = 1; p + 1 <= m; ++p) {
    std::vector<IntVec> row;
    std::vector<Int> mins;
    std::vector<int> args;
    for (std::size_t q = 1; q <= m - p; ++q) {
      IntVec b = t.a(p + q, p);
      for (std::size_t r = 1; r < q; ++r) axpy(b, mins[r - 1], t.a(p + q, p + r));
      const Int lowest = mu(b);
      int arg = 0;
      if (lowest < 0) arg = static_cast<int>(std::find(b.begin(), b.end(), lowest) - b.begin()) + 1;
      row.push_back(std::move(b));
      mins.push_back(lowest);
      args.push_back(arg);
    }
    bv.b.push_back(std::move(row));
    bv.mins.push_back(std::move(mins));
    bv.argmins.push_back(std::move(args));
  }
  return bv;
}

enum class Verdict { Fano, WeakFanoNotFano, NotWeakFano };

/// Stable machine names: "fano", "weak_fano_not_fano", "not_weak_fano".
inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Fano: return "fano";
    case Verdict::WeakFanoNotFano: return "weak_fano_not_fano";
    case Verdict::NotWeakFano: return "not_weak_fano";
  }
  return "?";
}

inline Verdict verdict_from_string(std::string_view s) {
  if (s == "fano") return Verdict::Fano;
  if (s == "weak_fano_not_fano") return Verdict::WeakFanoNotFano;
  if (s == "not_weak_fano") return Verdict::NotWeakFano;
  throw ParseError("unknown verdict '" + std::string(s) + "'");
}

/// Fano iff every degree is positive, weak Fano iff every degree is nonnegative.
inline Verdict verdict_from_degrees(std::span<const Int> degrees) {
  Verdict v = Verdict::Fano;
  for (Int d : degrees) {
    if (d < 0) return Verdict::NotWeakFano;
    if (d == 0) v = Verdict::WeakFanoNotFano;
  }
  return v;
}

struct Classification {
  Verdict verdict = Verdict::Fano;
  /// nu_sums[p-1] = sum_q nu(b_{p,q}) for p = 1..m-1. Empty when the
  /// classification came from a fan.
  std::vector<Int> nu_sums;
  /// (n_p, n_p + 1) for p = 1..m-1.
  std::vector<std::pair<Int, Int>> thresholds;
  /// Degrees of the primitive collections P_1, ..., P_m.
  std::vector<Int> degrees;

  bool operator==(const Classification&) const = default;
};

inline Classification classify(const GeneralizedBottTower& t, const BVectors& bv) {
  const std::size_t m = t.stages();
  Classification c;
  for (std::size_t p = 1; p < m; ++p) {
    Int sum = 0;
    for (std::size_t q = 1; q <= m - p; ++q) sum = checked::add(sum, nu(bv.at(p, q)));
    const Int np = t.dim(p);
    c.nu_sums.push_back(sum);
    c.thresholds.emplace_back(np, np + 1);
    c.degrees.push_back(checked::sub(np + 1, sum));
  }
  c.degrees.push_back(t.dim(m) + 1);
  c.verdict = Verdict::Fano;
  for (std::size_t i = 0; i < c.nu_sums.size(); ++i) {
    if (c.nu_sums[i] > c.thresholds[i].second) {
      c.verdict = Verdict::NotWeakFano;
      break;
    }
    if (c.nu_sums[i] > c.thresholds[i].first) c.verdict = Verdict::WeakFanoNotFano;
  }
  return c;
}

inline Classification classify(const GeneralizedBottTower& t) { return classify(t, compute_b(t)); }

/// The Picard-number-two case: the tower with stages (n1, n2) and a_{2,1} = a.
inline Classification classify_picard_two(int n1, int n2, const IntVec& a) {
  if (a.size() != static_cast<std::size_t>(n2))
    throw ValidationError("classify_picard_two: a_{2,1} has length " + std::to_string(a.size()) +
                          ", expected n_2 = " + std::to_string(n2));
  return classify(GeneralizedBottTower{{n1, n2}, {{a}}});
}

/// Characterization of Fano Bott manifolds (all n_j = 1) by three explicit
/// clauses on the scalars a_{p+r,p}, checked for every p.
inline bool bott_fano(const GeneralizedBottTower& t) {
  validate(t);
  for (std::size_t j = 1; j <= t.stages(); ++j)
    if (t.dim(j) != 1)
      throw ValidationError("bott_fano: stage " + std::to_string(j) + " has n_" + std::to_string(j) + " = " +
                            std::to_string(t.dim(j)) + ", expected 1");

  const std::size_t m = t.stages();
  auto a = [&](std::size_t j, std::size_t l) { return t.a(j, l)[0]; };

  for (std::size_t p = 1; p < m; ++p) {
    const std::size_t tail = m - p;

    bool all_zero = true;
    for (std::size_t r = 1; r <= tail; ++r) all_zero = all_zero && a(p + r, p) == 0;
    if (all_zero) continue;

    bool single_plus_one = false;
    for (std::size_t q = 1; q <= tail && !single_plus_one; ++q) {
      bool ok = a(p + q, p) == 1;
      for (std::size_t r = 1; r <= tail && ok; ++r)
        if (r != q) ok = a(p + r, p) == 0;
      single_plus_one = ok;
    }
    if (single_plus_one) continue;

    bool minus_one_then_copy = false;
    for (std::size_t q = 1; q <= tail && !minus_one_then_copy; ++q) {
      bool ok = a(p + q, p) == -1;
      for (std::size_t r = 1; r < q && ok; ++r) ok = a(p + r, p) == 0;
      for (std::size_t r = q + 1; r <= tail && ok; ++r) ok = a(p + r, p) == a(p + r, p + q);
      minus_one_then_copy = ok;
    }
    if (!minus_one_then_copy) return false;
  }
  return true;
}

/// Upper-triangular integer matrix with unit diagonal.
class BottMatrix {
 public:
  explicit BottMatrix(IntMat beta) : beta_(std::move(beta)) {
    if (!beta_.square() || beta_.rows() == 0) throw ValidationError("BottMatrix: expected a nonempty square matrix");
    for (std::size_t i = 0; i < size(); ++i) {
      if (beta_(i, i) != 1)
        throw ValidationError("BottMatrix: diagonal entry beta_{" + std::to_string(i + 1) + "," +
                              std::to_string(i + 1) + "} must be 1");
      for (std::size_t j = 0; j < i; ++j)
        if (beta_(i, j) != 0)
          throw ValidationError("BottMatrix: entry beta_{" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                "} below the diagonal must be 0");
    }
  }

  /// The identity of size r with the given strictly-upper entries, listed
  /// row by row: beta_{12}, ..., beta_{1r}, beta_{23}, ...
  static BottMatrix from_upper(std::size_t r, std::span<const Int> upper) {
    if (upper.size() != r * (r - 1) / 2) throw ValidationError("BottMatrix: wrong number of upper entries");
    IntMat m(r, r);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < r; ++i) {
      m(i, i) = 1;
      for (std::size_t j = i + 1; j < r; ++j) m(i, j) = upper[idx++];
    }
    return BottMatrix(std::move(m));
  }

  std::size_t size() const noexcept { return beta_.rows(); }

  /// 1-based beta_{ij}.
  Int operator()(std::size_t i, std::size_t j) const { return beta_(i - 1, j - 1); }

  const IntMat& matrix() const noexcept { return beta_; }

 private:
  IntMat beta_;
};

/// m = r, every n_j = 1 and a_{j,l} = -beta_{lj}.
inline GeneralizedBottTower from_bott_matrix(const BottMatrix& beta) {
  const std::size_t r = beta.size();
  GeneralizedBottTower t{std::vector<int>(r, 1), {}};
  for (std::size_t j = 2; j <= r; ++j) {
    std::vector<IntVec> row;
    for (std::size_t l = 1; l < j; ++l) row.push_back({checked::neg(beta(l, j))});
    t.coeffs.push_back(std::move(row));
  }
  return t;
}

/// Chary's proposed criterion, stated in terms of
///   eta_i^+ = { j > i : beta_ij > 0 },  eta_i^- = { j > i : beta_ij < 0 }.
/// Sufficient for Fano, but not necessary.
inline bool chary_condition(const BottMatrix& beta) {
  const std::size_t r = beta.size();
  for (std::size_t i = 1; i <= r; ++i) {
    std::vector<std::size_t> plus, minus;
    for (std::size_t j = i + 1; j <= r; ++j) {
      if (beta(i, j) > 0) plus.push_back(j);
      if (beta(i, j) < 0) minus.push_back(j);
    }

    bool first = plus.empty() && minus.size() <= 1;
    if (first && minus.size() == 1) first = beta(i, minus[0]) == -1;

    bool second = minus.empty() && plus.size() <= 1;
    if (second && plus.size() == 1) {
      const std::size_t k = plus[0];
      second = beta(i, k) == 1;
      for (std::size_t after = k + 1; after <= r && second; ++after) second = beta(k, after) == 0;
    }

    if (!first && !second) return false;
  }
  return true;
}

}  // namespace fanobott
