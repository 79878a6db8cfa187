// Acceptance checks for the library. Prints one PASS/FAIL line per criterion
// and exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fanobott/commands.hpp"
#include "fanobott/fanobott.hpp"
#include "support/oracles.hpp"

using namespace fanobott;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs >= limit_seconds)
    out.require(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(limit_seconds) + " s");
  if (!out.ok) ++failures;
  std::printf("[%s] AC%d %s (%.3f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, title, secs, out.ok ? "" : ": ",
              out.detail.c_str());
  std::fflush(stdout);
}

std::vector<GeneralizedBottTower> sample() {
  std::mt19937_64 rng(20240611);
  std::vector<GeneralizedBottTower> towers;
  for (int i = 0; i < 500; ++i) towers.push_back(testing::random_tower(rng, 4, 3, -2, 2));
  return towers;
}

// Every (n-1)-subset of a maximal cone, counted over all cones.
std::map<RaySet, int> facet_counts(const Fan& f) {
  std::map<RaySet, int> counts;
  for (const RaySet& cone : f.max_cones)
    for (std::size_t drop = 0; drop < cone.size(); ++drop) {
      RaySet facet = cone;
      facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(drop));
      ++counts[facet];
    }
  return counts;
}

}  // namespace

int main() {
  criterion(1, "four-stage example is Fano with the expected b-vectors", 1.0, [](Outcome& o) {
    const auto t = testing::four_stage_fano_example();
    const BVectors bv = compute_b(t);
    const std::map<std::pair<int, int>, IntVec> expected = {
        {{1, 1}, {-1, -1}}, {{1, 2}, {0, 1}}, {{1, 3}, {0, 1}},
        {{2, 1}, {0, -1}},  {{2, 2}, {0, 0}}, {{3, 1}, {0, 1}},
    };
    for (const auto& [pq, b] : expected)
      o.require(bv.at(pq.first, pq.second) == b,
                "b_{" + std::to_string(pq.first) + "," + std::to_string(pq.second) + "} mismatch");
    const Classification c = classify(t, bv);
    o.require(c.nu_sums == IntVec{3, 2, 1}, "nu-sums differ from (3,2,1)");
    o.require(c.verdict == Verdict::Fano, "verdict is not fano");
  });

  criterion(2, "three-stage example is not weak Fano with nu-sum 5", 1.0, [](Outcome& o) {
    const auto t = testing::three_stage_not_weak_example();
    const BVectors bv = compute_b(t);
    o.require(nu(bv.at(1, 1)) + nu(bv.at(1, 2)) == 5, "nu(b_{1,1}) + nu(b_{1,2}) != 5");
    o.require(classify(t, bv).verdict == Verdict::NotWeakFano, "verdict is not not_weak_fano");
  });

  criterion(3, "three-stage Bott sweep reproduces the 15 Fano triples", 1.0, [](Outcome& o) {
    const auto expected = testing::published_fano_three_stage();
    for (Int w : {1, 2}) {
      const SweepReport r = sweep({{1, 1, 1}, {-w, w}, SweepMode::Fano});
      const std::set<IntVec> found(r.hits.begin(), r.hits.end());
      o.require(found.size() == r.hits.size() && found == expected,
                "range [-" + std::to_string(w) + "," + std::to_string(w) + "] gives " +
                    std::to_string(r.hits.size()) + " hits");
    }
  });

  criterion(4, "Chary's condition: counterexample and sufficiency up to r = 4", 10.0, [](Outcome& o) {
    const std::vector<Int> ones{1, 1, 1};
    const BottMatrix beta = BottMatrix::from_upper(3, ones);
    const auto t = from_bott_matrix(beta);
    for (std::size_t j = 2; j <= 3; ++j)
      for (std::size_t l = 1; l < j; ++l) o.require(t.a(j, l) == IntVec{-1}, "conversion is not a_{j,l} = -1");
    o.require(classify(t).verdict == Verdict::Fano, "all-ones matrix is not Fano");
    o.require(!chary_condition(beta), "all-ones matrix satisfies Chary's condition");
    for (std::size_t r = 2; r <= 4; ++r)
      o.require(chary_compare(r, {-2, 2}).violations.empty(),
                "r = " + std::to_string(r) + " has Chary-but-not-Fano matrices");
  });

  const auto towers = sample();

  criterion(5, "fan oracle agrees with the closed form on 500 random towers", 60.0, [&](Outcome& o) {
    for (std::size_t i = 0; i < towers.size() && o.ok; ++i) {
      const auto& t = towers[i];
      const std::string tag = "tower #" + std::to_string(i) + ": ";
      const BVectors bv = compute_b(t);
      const Classification closed = classify(t, bv);
      const Fan f = build_fan(t);
      const Classification geo = batyrev_classify(f);
      o.require(geo.verdict == closed.verdict && geo.degrees == closed.degrees, tag + "classification differs");
      std::vector<RaySet> stages;
      for (std::size_t p = 1; p <= t.stages(); ++p) stages.push_back(stage_collection(t, p));
      o.require(primitive_collections_bruteforce(f) == stages, tag + "primitive collections differ");
      for (std::size_t p = 1; p <= t.stages(); ++p)
        o.require(primitive_relation(f, stages[p - 1]) == expected_primitive_relation(t, bv, p),
                  tag + "relation for P_" + std::to_string(p) + " differs");
    }
  });

  criterion(6, "fans are smooth and complete on the same sample", 0, [&](Outcome& o) {
    for (std::size_t i = 0; i < towers.size() && o.ok; ++i) {
      const auto& t = towers[i];
      const std::string tag = "tower #" + std::to_string(i) + ": ";
      const Fan f = build_fan(t);
      std::size_t cones = 1;
      for (int n : t.stage_dims) cones *= static_cast<std::size_t>(n + 1);
      o.require(f.rays.size() == static_cast<std::size_t>(t.total_dim()) + t.stages(), tag + "ray count");
      o.require(f.max_cones.size() == cones, tag + "maximal-cone count");
      for (const RaySet& cone : f.max_cones) {
        std::vector<IntVec> rows;
        for (std::size_t r : cone) rows.push_back(f.rays[r]);
        const Int d = det(IntMat::from_rows(rows));
        o.require(d == 1 || d == -1, tag + "determinant " + std::to_string(d));
      }
      for (const auto& [facet, count] : facet_counts(f))
        o.require(count == 2, tag + describe(f, facet) + " lies in " + std::to_string(count) + " cones");
      validate_smooth_complete(f);
    }
  });

  criterion(7, "wall relations coincide with primitive relations", 0, [&](Outcome& o) {
    for (std::size_t i = 0; i < towers.size() && o.ok; ++i) {
      const auto& t = towers[i];
      const BVectors bv = compute_b(t);
      const Fan f = build_fan(t);
      for (std::size_t p = 1; p <= t.stages(); ++p)
        o.require(wall_relation(f, t, bv, p).relation == signed_relation(primitive_relation(f, stage_collection(t, p))),
                  "tower #" + std::to_string(i) + ", p = " + std::to_string(p));
    }
  });

  criterion(8, "Hirzebruch ladder and last-stage degree", 0, [&](Outcome& o) {
    for (Int a = -5; a <= 5; ++a) {
      const Verdict v = classify(testing::hirzebruch(a)).verdict;
      const Verdict want = a >= -1 && a <= 1   ? Verdict::Fano
                           : a >= -2 && a <= 2 ? Verdict::WeakFanoNotFano
                                               : Verdict::NotWeakFano;
      o.require(v == want, "a = " + std::to_string(a) + " gives " + std::string(to_string(v)));
    }
    for (std::size_t i = 0; i < towers.size(); ++i) {
      const auto& t = towers[i];
      o.require(classify(t).degrees.back() == t.dim(t.stages()) + 1, "tower #" + std::to_string(i));
    }
  });

  criterion(9, "Bott-tower criterion agrees with the general classifier", 30.0, [](Outcome& o) {
    std::uint64_t checked_count = 0;
    for (int m = 2; m <= 4; ++m) {
      const std::vector<int> dims(static_cast<std::size_t>(m), 1);
      const std::size_t entries = coefficient_count(dims);
      const std::uint64_t total = detail::candidate_count(entries, {-2, 2}, kDefaultSweepCap);
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        const auto t = tower_from_listing(dims, detail::decode(idx, entries, {-2, 2}));
        const bool general = classify(t).verdict == Verdict::Fano;
        o.require(bott_fano(t) == general, "disagreement at " + listing_key(flatten(t)));
        ++checked_count;
      }
    }
    o.require(checked_count == 15625 + 125 + 5, "candidate count " + std::to_string(checked_count));
  });

  return failures == 0 ? 0 : 1;
}
