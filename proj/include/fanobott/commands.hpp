#pragma once

// The command layer behind the fanobott tool. Each command turns validated
// input into a Report; exit_code() maps a finished report to the process
// status. Errors propagate as exceptions (see exit_code_for()).

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fanobott/enumeration.hpp"
#include "fanobott/error.hpp"
#include "fanobott/fan.hpp"
#include "fanobott/report.hpp"
#include "fanobott/tower.hpp"

namespace fanobott {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitExpectation = 3,
};

/// The fifteen Fano 3-stage Bott towers as (a_{2,1}, a_{3,1}, a_{3,2}).
inline const std::vector<IntVec>& fano_three_stage_bott() {
  static const std::vector<IntVec> rows = {
      {0, 0, 0},  {0, 0, 1},  {0, 0, -1},  {0, 1, 0},  {0, 1, 1},
      {0, 1, -1}, {0, -1, 0}, {0, -1, 1},  {0, -1, -1}, {1, 0, 0},
      {1, 0, 1},  {1, 0, -1}, {-1, 0, 0},  {-1, 1, 1}, {-1, -1, -1},
  };
  return rows;
}

/// Key used by hit-label maps: the listing joined with commas, e.g. "0,-1,1".
inline std::string listing_key(const IntVec& listing) {
  std::string key;
  for (std::size_t i = 0; i < listing.size(); ++i) key += (i ? "," : "") + std::to_string(listing[i]);
  return key;
}

inline Report cmd_check(const GeneralizedBottTower& t, bool verify) {
  const BVectors bv = compute_b(t);
  const Classification c = classify(t, bv);

  Report r;
  r.command = "check";
  r.verdict = c.verdict;
  r.stages = t.stage_dims;
  r.nu_sums = c.nu_sums;
  r.thresholds = c.thresholds;
  r.degrees = c.degrees;
  for (std::size_t p = 1; p < t.stages(); ++p)
    for (std::size_t q = 1; p + q <= t.stages(); ++q)
      r.b_vectors.push_back({static_cast<int>(p), static_cast<int>(q), bv.at(p, q), bv.mu(p, q), bv.argmin(p, q),
                             nu(bv.at(p, q))});

  if (verify) {
    const Fan f = build_fan(t);
    validate_smooth_complete(f);
    const Classification oracle = batyrev_classify(f);
    r.verified = oracle.verdict == c.verdict && oracle.degrees == c.degrees;
  }
  return r;
}

/// Rays, maximal cones and primitive relations. The collections come from
/// the exhaustive search when the fan is small enough, otherwise they are
/// the stage collections P_1, ..., P_m; relations are always computed from
/// the fan itself.
inline Report cmd_fan(const GeneralizedBottTower& t, bool relations_only) {
  const Fan f = build_fan(t);
  validate_smooth_complete(f);

  std::vector<RaySet> collections;
  if (f.rays.size() <= kBruteForceRayLimit) {
    collections = primitive_collections_bruteforce(f);
  } else {
    for (std::size_t p = 1; p <= t.stages(); ++p) collections.push_back(stage_collection(t, p));
  }

  Report r;
  r.command = relations_only ? "relations" : "fan";
  r.stages = t.stage_dims;
  for (const RaySet& p : collections) {
    const PrimitiveCollectionData pc = primitive_relation(f, p);
    r.collections.push_back({pc.members, pc.relation_rhs, pc.degree});
    r.degrees.push_back(pc.degree);
  }
  r.verdict = verdict_from_degrees(r.degrees);
  if (relations_only) {
    r.ray_labels = f.labels;
  } else {
    r.fan = FanDump{f.dim, f.rays, f.labels, f.max_cones};
  }
  return r;
}

inline Report cmd_enumerate(const SweepSpec& spec, bool expect_table1,
                            const std::map<std::string, std::string>& labels = {}) {
  const SweepReport sr = sweep(spec);

  SweepDump d;
  d.mode = spec.mode;
  d.stages = spec.stage_dims;
  d.range = spec.coeff_range;
  d.total = sr.total;
  d.counts = sr.counts;
  d.hits = sr.hits;
  d.violations = sr.violations;
  if (!labels.empty())
    for (const auto& h : d.hits) {
      const auto it = labels.find(listing_key(h));
      d.hit_labels.push_back(it == labels.end() ? "" : it->second);
    }
  if (expect_table1) {
    const auto& table = fano_three_stage_bott();
    const std::set<IntVec> expected(table.begin(), table.end());
    const std::set<IntVec> found(sr.hits.begin(), sr.hits.end());
    d.expectation_met = spec.mode == SweepMode::Fano && spec.stage_dims == std::vector<int>{1, 1, 1} &&
                        found.size() == sr.hits.size() && found == expected;
  }

  Report r;
  r.command = "enumerate";
  r.sweep = std::move(d);
  return r;
}

inline Report cmd_chary_compare(std::size_t r_size, Interval range, std::uint64_t cap, unsigned threads) {
  const SweepReport sr = chary_compare(r_size, range, cap, threads);
  SweepDump d;
  d.mode = SweepMode::CharyCompare;
  d.stages = std::vector<int>(r_size, 1);
  d.range = range;
  d.total = sr.total;
  d.counts = sr.counts;
  d.hits = sr.hits;
  d.violations = sr.violations;

  Report r;
  r.command = "chary-compare";
  r.sweep = std::move(d);
  return r;
}

/// 3 when an oracle disagreed or an expectation failed, else 0.
inline int exit_code(const Report& r) {
  if (r.verified && !*r.verified) return kExitExpectation;
  if (r.sweep && r.sweep->expectation_met && !*r.sweep->expectation_met) return kExitExpectation;
  return kExitOk;
}

}  // namespace fanobott
