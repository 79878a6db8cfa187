#pragma once

// Exhaustive sweeps over coefficient boxes.
//
// Candidates are enumerated lexicographically over their canonical listing,
// first entry most significant. For towers the listing is
// a_{j,l}^{(k)} with (j, l, k) ascending; for Bott matrices it is
// beta_{12}, ..., beta_{1r}, beta_{23}, ... (row by row).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "fanobott/error.hpp"
#include "fanobott/lattice.hpp"
#include "fanobott/tower.hpp"

namespace fanobott {

enum class SweepMode { Fano, WeakFano, Census, CharyCompare };

inline std::string_view to_string(SweepMode m) {
  switch (m) {
    case SweepMode::Fano: return "fano";
    case SweepMode::WeakFano: return "weak_fano";
    case SweepMode::Census: return "census";
    case SweepMode::CharyCompare: return "chary_compare";
  }
  return "?";
}

inline SweepMode sweep_mode_from_string(std::string_view s) {
  if (s == "fano") return SweepMode::Fano;
  if (s == "weak_fano") return SweepMode::WeakFano;
  if (s == "census") return SweepMode::Census;
  if (s == "chary_compare") return SweepMode::CharyCompare;
  throw ValidationError("unknown sweep mode '" + std::string(s) + "'");
}

/// Inclusive integer interval.
struct Interval {
  Int lo = 0;
  Int hi = 0;
  bool operator==(const Interval&) const = default;
};

inline constexpr std::uint64_t kDefaultSweepCap = 1'000'000;

struct SweepSpec {
  std::vector<int> stage_dims;
  Interval coeff_range;
  SweepMode mode = SweepMode::Fano;
  std::uint64_t cap = kDefaultSweepCap;
  unsigned threads = 1;
};

struct VerdictCounts {
  std::uint64_t fano = 0;
  std::uint64_t weak_fano_not_fano = 0;
  std::uint64_t not_weak_fano = 0;

  void add(Verdict v) {
    switch (v) {
      case Verdict::Fano: ++fano; break;
      case Verdict::WeakFanoNotFano: ++weak_fano_not_fano; break;
      case Verdict::NotWeakFano: ++not_weak_fano; break;
    }
  }
  void merge(const VerdictCounts& o) {
    fano += o.fano;
    weak_fano_not_fano += o.weak_fano_not_fano;
    not_weak_fano += o.not_weak_fano;
  }
  std::uint64_t sum() const { return fano + weak_fano_not_fano + not_weak_fano; }
  bool operator==(const VerdictCounts&) const = default;
};

struct SweepReport {
  std::uint64_t total = 0;
  /// Candidates satisfying the mode's predicate, in enumeration order. In
  /// chary-compare runs: Fano matrices failing Chary's condition.
  std::vector<IntVec> hits;
  /// Chary-compare only: matrices satisfying Chary's condition that are not Fano.
  std::vector<IntVec> violations;
  /// Closed-form verdict tallies over all candidates.
  VerdictCounts counts;

  bool operator==(const SweepReport&) const = default;
};

/// Number of scalar coefficients a_{j,l}^{(k)} of a tower with these dimensions.
inline std::size_t coefficient_count(std::span<const int> stage_dims) {
  std::size_t count = 0;
  for (std::size_t j = 2; j <= stage_dims.size(); ++j)
    count += (j - 1) * static_cast<std::size_t>(std::max(stage_dims[j - 1], 0));
  return count;
}

/// Inverse of flatten(): builds the tower from its canonical listing.
inline GeneralizedBottTower tower_from_listing(std::span<const int> stage_dims, std::span<const Int> listing) {
  if (listing.size() != coefficient_count(stage_dims))
    throw ValidationError("tower_from_listing: expected " + std::to_string(coefficient_count(stage_dims)) +
                          " coefficients, got " + std::to_string(listing.size()));
  GeneralizedBottTower t{std::vector<int>(stage_dims.begin(), stage_dims.end()), {}};
  std::size_t idx = 0;
  for (std::size_t j = 2; j <= t.stages(); ++j) {
    std::vector<IntVec> row;
    for (std::size_t l = 1; l < j; ++l) {
      IntVec a(listing.begin() + static_cast<std::ptrdiff_t>(idx),
               listing.begin() + static_cast<std::ptrdiff_t>(idx + static_cast<std::size_t>(t.dim(j))));
      idx += static_cast<std::size_t>(t.dim(j));
      row.push_back(std::move(a));
    }
    t.coeffs.push_back(std::move(row));
  }
  return t;
}

/// Canonical listing: a_{j,l}^{(k)} with (j, l, k) ascending.
inline IntVec flatten(const GeneralizedBottTower& t) {
  IntVec out;
  for (const auto& row : t.coeffs)
    for (const auto& a : row) out.insert(out.end(), a.begin(), a.end());
  return out;
}

namespace detail {

inline std::uint64_t candidate_count(std::size_t entries, const Interval& range, std::uint64_t cap) {
  if (range.lo > range.hi)
    throw ValidationError("empty coefficient range " + std::to_string(range.lo) + ":" + std::to_string(range.hi));
  const auto width = static_cast<unsigned __int128>(static_cast<__int128>(range.hi) - range.lo + 1);
  unsigned __int128 count = 1;
  for (std::size_t i = 0; i < entries; ++i) {
    count *= width;
    if (count > cap) {
      const auto shown = count > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(count);
      throw LimitError("sweep refused: at least " + std::to_string(shown) + " candidates exceed the cap of " +
                           std::to_string(cap),
                       shown, cap);
    }
  }
  return static_cast<std::uint64_t>(count);
}

/// Listing number `index` in lexicographic order over range^entries.
inline IntVec decode(std::uint64_t index, std::size_t entries, const Interval& range) {
  const auto width = static_cast<std::uint64_t>(static_cast<__int128>(range.hi) - range.lo + 1);
  IntVec out(entries);
  for (std::size_t i = entries; i-- > 0;) {
    out[i] = range.lo + static_cast<Int>(index % width);
    index /= width;
  }
  return out;
}

// Evaluates candidates in contiguous blocks, one per worker, and
// concatenates the partial reports in block order.
template <typename Visit>
SweepReport run_blocks(std::uint64_t total, unsigned threads, Visit visit) {
  const std::uint64_t workers = std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(total, 1));
  std::vector<SweepReport> parts(workers);
  std::vector<std::exception_ptr> failures(workers);
  auto work = [&](std::uint64_t w) {
    const auto begin = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * w / workers);
    const auto end = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * (w + 1) / workers);
    try {
      for (std::uint64_t i = begin; i < end; ++i) visit(i, parts[w]);
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& failure : failures)
    if (failure) std::rethrow_exception(failure);

  SweepReport out;
  out.total = total;
  for (auto& part : parts) {
    out.counts.merge(part.counts);
    std::move(part.hits.begin(), part.hits.end(), std::back_inserter(out.hits));
    std::move(part.violations.begin(), part.violations.end(), std::back_inserter(out.violations));
  }
  return out;
}

}  // namespace detail

/// Compares Chary's condition with the closed-form Fano test over all Bott
/// matrices of size r with off-diagonal entries in `beta_range`.
inline SweepReport chary_compare(std::size_t r, Interval beta_range, std::uint64_t cap = kDefaultSweepCap,
                                 unsigned threads = 1) {
  if (r < 2) throw ValidationError("chary_compare: r must be at least 2");
  const std::size_t entries = r * (r - 1) / 2;
  const std::uint64_t total = detail::candidate_count(entries, beta_range, cap);
  return detail::run_blocks(total, threads, [&](std::uint64_t i, SweepReport& part) {
    IntVec upper = detail::decode(i, entries, beta_range);
    const BottMatrix beta = BottMatrix::from_upper(r, upper);
    const Verdict v = classify(from_bott_matrix(beta)).verdict;
    part.counts.add(v);
    const bool fano = v == Verdict::Fano;
    const bool chary = chary_condition(beta);
    if (fano && !chary) part.hits.push_back(upper);
    if (chary && !fano) part.violations.push_back(std::move(upper));
  });
}

/// Exhaustive sweep of towers with the given stage dimensions, classifying
/// each candidate with the closed-form criterion. Chary-compare mode requires
/// every n_j = 1 and reads the range as the range of the beta entries.
inline SweepReport sweep(const SweepSpec& spec) {
  validate(GeneralizedBottTower::zero(spec.stage_dims));
  if (spec.mode == SweepMode::CharyCompare) {
    if (std::any_of(spec.stage_dims.begin(), spec.stage_dims.end(), [](int d) { return d != 1; }))
      throw ValidationError("chary_compare sweeps need every stage dimension equal to 1");
    return chary_compare(spec.stage_dims.size(), spec.coeff_range, spec.cap, spec.threads);
  }

  const std::size_t entries = coefficient_count(spec.stage_dims);
  const std::uint64_t total = detail::candidate_count(entries, spec.coeff_range, spec.cap);
  return detail::run_blocks(total, spec.threads, [&](std::uint64_t i, SweepReport& part) {
    IntVec listing = detail::decode(i, entries, spec.coeff_range);
    const Verdict v = classify(tower_from_listing(spec.stage_dims, listing)).verdict;
    part.counts.add(v);
    const bool hit = (spec.mode == SweepMode::Fano && v == Verdict::Fano) ||
                     (spec.mode == SweepMode::WeakFano && v != Verdict::NotWeakFano);
    if (hit) part.hits.push_back(std::move(listing));
  });
}

}  // namespace fanobott
