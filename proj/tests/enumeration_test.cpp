#include <gtest/gtest.h>

#include <set>

#include "fanobott/enumeration.hpp"
#include "support/oracles.hpp"

namespace fanobott {
namespace {

std::set<IntVec> as_set(const std::vector<IntVec>& v) { return {v.begin(), v.end()}; }

TEST(Sweep, ThreeStageBottFanoMatchesPublishedTable) {
  const auto report = sweep({{1, 1, 1}, {-1, 1}, SweepMode::Fano});
  EXPECT_EQ(report.total, 27u);
  EXPECT_EQ(report.hits.size(), 15u);
  EXPECT_EQ(as_set(report.hits), testing::published_fano_three_stage());
}

TEST(Sweep, WiderRangeAddsNoFanoTowers) {
  const auto report = sweep({{1, 1, 1}, {-2, 2}, SweepMode::Fano});
  EXPECT_EQ(report.total, 125u);
  EXPECT_EQ(as_set(report.hits), testing::published_fano_three_stage());
}

TEST(Sweep, HirzebruchModes) {
  EXPECT_EQ(sweep({{1, 1}, {-2, 2}, SweepMode::Fano}).hits, (std::vector<IntVec>{{-1}, {0}, {1}}));
  EXPECT_EQ(sweep({{1, 1}, {-2, 2}, SweepMode::WeakFano}).hits,
            (std::vector<IntVec>{{-2}, {-1}, {0}, {1}, {2}}));
  const auto census = sweep({{1, 1}, {-2, 2}, SweepMode::Census});
  EXPECT_TRUE(census.hits.empty());
  EXPECT_EQ(census.counts, (VerdictCounts{3, 2, 0}));
}

TEST(Sweep, LexicographicOrder) {
  const auto report = sweep({{1, 1, 1}, {0, 1}, SweepMode::WeakFano});
  ASSERT_EQ(report.total, 8u);
  EXPECT_EQ(report.hits.front(), (IntVec{0, 0, 0}));
  EXPECT_TRUE(std::is_sorted(report.hits.begin(), report.hits.end()));
}

TEST(Sweep, CountsSumToTotal) {
  for (const auto& dims : std::vector<std::vector<int>>{{2, 1}, {1, 2, 1}, {3}, {1, 1, 1, 1}}) {
    const auto report = sweep({dims, {-2, 1}, SweepMode::Census});
    EXPECT_EQ(report.counts.sum(), report.total);
  }
}

TEST(Sweep, ParallelMatchesSerial) {
  for (SweepMode mode : {SweepMode::Fano, SweepMode::WeakFano, SweepMode::Census}) {
    SweepSpec spec{{1, 2, 1}, {-2, 2}, mode};
    const auto serial = sweep(spec);
    for (unsigned threads : {2u, 3u, 8u}) {
      spec.threads = threads;
      EXPECT_EQ(sweep(spec), serial);
    }
  }
  EXPECT_EQ(chary_compare(4, {-2, 2}, kDefaultSweepCap, 5), chary_compare(4, {-2, 2}));
}

TEST(Sweep, RerunIsDeterministic) {
  const SweepSpec spec{{1, 1, 1, 1}, {-1, 1}, SweepMode::WeakFano};
  EXPECT_EQ(sweep(spec), sweep(spec));
}

TEST(Sweep, CapRefusesAndReportsCount) {
  try {
    sweep({{1, 1, 1, 1}, {-2, 2}, SweepMode::Census, 100});
    FAIL() << "expected LimitError";
  } catch (const LimitError& e) {
    EXPECT_EQ(e.limit(), 100u);
    EXPECT_GT(e.requested(), 100u);
  }
  // 5^6 = 15625 candidates pass a cap of exactly 15625.
  EXPECT_EQ(sweep({{1, 1, 1, 1}, {-2, 2}, SweepMode::Census, 15625}).total, 15625u);
  EXPECT_THROW(sweep({{1, 1, 1, 1}, {-2, 2}, SweepMode::Census, 15624}), LimitError);
}

TEST(Sweep, RejectsBadSpecs) {
  EXPECT_THROW(sweep({{1, 1}, {2, 1}, SweepMode::Fano}), ValidationError);
  EXPECT_THROW(sweep({{1, 0}, {0, 1}, SweepMode::Fano}), ValidationError);
  EXPECT_THROW(sweep({{1, 2}, {0, 1}, SweepMode::CharyCompare}), ValidationError);
}

TEST(Sweep, SingleStageHasOneCandidate) {
  const auto report = sweep({{3}, {-5, 5}, SweepMode::Fano});
  EXPECT_EQ(report.total, 1u);
  EXPECT_EQ(report.hits, (std::vector<IntVec>{{}}));
}

TEST(CharyCompare, ThreeByThree) {
  const auto report = chary_compare(3, {-1, 1});
  EXPECT_EQ(report.total, 27u);
  EXPECT_TRUE(report.violations.empty());
  EXPECT_FALSE(report.hits.empty());
  EXPECT_TRUE(as_set(report.hits).count(IntVec{1, 1, 1}));
}

TEST(CharyCompare, TwoByTwoIsExact) {
  const auto report = chary_compare(2, {-1, 1});
  EXPECT_EQ(report.total, 3u);
  EXPECT_TRUE(report.hits.empty());
  EXPECT_TRUE(report.violations.empty());
}

TEST(CharyCompare, ProductCase) {
  const auto report = chary_compare(3, {0, 0});
  EXPECT_EQ(report.total, 1u);
  EXPECT_TRUE(report.hits.empty());
  EXPECT_TRUE(report.violations.empty());
}

TEST(CharyCompare, SufficiencyHoldsUpToFour) {
  for (std::size_t r = 2; r <= 4; ++r) EXPECT_TRUE(chary_compare(r, {-2, 2}).violations.empty()) << r;
  EXPECT_THROW(chary_compare(1, {0, 0}), ValidationError);
}

TEST(CharyCompare, SweepModeDelegates) {
  EXPECT_EQ(sweep({{1, 1, 1}, {-1, 1}, SweepMode::CharyCompare}), chary_compare(3, {-1, 1}));
}

TEST(Listing, RoundTrip) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = testing::random_tower(rng, 5, 3, -4, 4);
    EXPECT_EQ(tower_from_listing(t.stage_dims, flatten(t)), t);
  }
  EXPECT_THROW(tower_from_listing(std::vector<int>{1, 1}, IntVec{1, 2}), ValidationError);
}

}  // namespace
}  // namespace fanobott
