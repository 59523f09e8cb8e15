#include <gtest/gtest.h>

#include <random>
#include <string>

#include "blockwave/oracle.hpp"
#include "blockwave/wavefront_engine.hpp"
#include "test_support.hpp"

using namespace blockwave;
using blockwave::tu::make_task;

namespace {

constexpr int kGroupSizes[] = {1, 2, 4, 8, 16, 32};

EngineConfig checked(int g) {
  EngineConfig c;
  c.group_size = g;
  c.check_scratch = true;
  return c;
}

}  // namespace

TEST(Wavefront, Examples) {
  const ScoringScheme s{1, -4, 6, 1};
  const auto r = align_one(make_task("ACGT", "ACGT"), s, checked(4));
  EXPECT_EQ(r.score, 4);
  EXPECT_EQ(r.end_query, 3u);
  EXPECT_EQ(r.end_target, 3u);
  EXPECT_EQ(align_one(make_task("AAAA", "TTTT"), s, checked(4)).score, 0);

  // One deletion; frozen from an independent scalar implementation.
  const auto d = align_one(make_task("ACGTACGTAC", "ACGTCGTAC"), {1, -4, 2, 1}, checked(4));
  EXPECT_EQ(d.score, 7);
  EXPECT_EQ(d.end_query, 9u);
  EXPECT_EQ(d.end_target, 8u);
}

TEST(Wavefront, RejectsBadGroupSize) {
  EngineConfig c;
  c.group_size = 3;
  EXPECT_THROW(align_one(make_task("A", "A"), {}, c), error);
  c.group_size = 64;
  EXPECT_THROW(align_one(make_task("A", "A"), {}, c), error);
}

TEST(Wavefront, ChunkSteps) {
  EXPECT_EQ(chunk_steps(40, 32), 71u);
  EXPECT_EQ(chunk_steps(1, 1), 1u);
  EXPECT_EQ(chunk_steps(256, 8), 263u);
}

TEST(Wavefront, SpillFlushCount) {
  EXPECT_EQ(spill_flush_count(256, 32), 8u);
  EXPECT_EQ(spill_flush_count(1, 32), 1u);
  EXPECT_EQ(spill_flush_count(100, 16), 7u);
}

TEST(Wavefront, InstrumentedSpillCountMatchesClosedForm) {
  // Q = 100 query blocks, two chunks of 16 strips: one interior boundary.
  std::mt19937_64 rng(1);
  const auto task = make_task(tu::random_dna(rng, 800), tu::random_dna(rng, 256));
  const auto r = align_one(task, {}, checked(16));
  EXPECT_EQ(r.chunks, 2u);
  EXPECT_EQ(r.counters.spill_transactions, 7u);
  EXPECT_EQ(r.counters.fill_transactions, 7u);
  EXPECT_EQ(r.counters.eager_transactions_equiv, 100u);
}

TEST(Wavefront, PhaseUtilization) {
  const auto u = phase_utilization(32, 32);
  EXPECT_EQ(u.overall, Rational(32, 63));
  EXPECT_NEAR(u.overall.value(), 0.5079, 1e-4);
  EXPECT_FALSE(u.main_loop_absent);
  EXPECT_EQ(u.prologue_steps, 31u);
  EXPECT_EQ(u.main_loop_steps, 1u);
  EXPECT_EQ(u.epilogue_steps, 31u);
  for (int g : kGroupSizes) {
    const auto v = phase_utilization(100, g);
    if (g == 1) {
      EXPECT_FALSE(v.ramp.has_value());
    } else {
      ASSERT_TRUE(v.ramp.has_value());
      EXPECT_EQ(*v.ramp, Rational(1, 2));
    }
    EXPECT_EQ(v.overall, Rational(100, 100 + g - 1));
  }
  EXPECT_TRUE(phase_utilization(4, 8).main_loop_absent);
  EXPECT_EQ(phase_utilization(4, 8).overall, Rational(4, 11));
  EXPECT_GT(phase_utilization(1000000, 8).overall.value(), 0.99999);
}

TEST(Wavefront, MatchesOracleForEveryGroupSize) {
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 400; ++iter) {
    const auto s = tu::random_scheme(rng);
    const auto q = tu::random_dna(rng, 1 + rng() % 300, iter % 3 == 0);
    const auto t = iter % 2 ? tu::perturb(rng, q, 0.1) : tu::random_dna(rng, 1 + rng() % 300);
    const auto task = make_task(q, t);
    const auto ref = oracle_align(task, s);
    for (int g : kGroupSizes) {
      const auto r = align_one(task, s, checked(g));
      ASSERT_EQ(r.score, ref.score) << "G=" << g << " iter=" << iter;
      ASSERT_EQ(r.end_query, ref.end_query) << "G=" << g;
      ASSERT_EQ(r.end_target, ref.end_target) << "G=" << g;
    }
  }
}

TEST(Wavefront, TieBreakPrefersSmallestTargetThenQuery) {
  // Two equal-scoring matches; the one ending on the earlier target row wins.
  const ScoringScheme s{1, -4, 6, 1};
  for (int g : kGroupSizes) {
    const auto r = align_one(make_task("ACGTTTTTTTTTTTTTTTTTTACGT", "GGGGGGGGGGGGGGGGGACGTCCCCCCCCCCCCCCACGT"), s,
                             checked(g));
    const auto ref = oracle_align(make_task("ACGTTTTTTTTTTTTTTTTTTACGT", "GGGGGGGGGGGGGGGGGACGTCCCCCCCCCCCCCCACGT"), s);
    EXPECT_EQ(r.score, ref.score);
    EXPECT_EQ(r.end_target, ref.end_target);
    EXPECT_EQ(r.end_query, ref.end_query);
    EXPECT_EQ(ref.end_target, 20u);
    EXPECT_EQ(ref.end_query, 3u);
  }
}

TEST(Wavefront, TrafficConservationAndStepLaw) {
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 60; ++iter) {
    const auto task = make_task(tu::random_dna(rng, 1 + rng() % 700), tu::random_dna(rng, 1 + rng() % 700));
    const std::uint64_t Q = task.query.blocks(), R = task.target.blocks();
    for (int g : kGroupSizes) {
      const auto r = align_one(task, {}, checked(g));
      const std::uint64_t chunks = (R + g - 1) / g;
      const std::uint64_t interior = chunks - 1;
      ASSERT_EQ(r.chunks, chunks);
      ASSERT_EQ(r.steps_taken, chunks * chunk_steps(Q, g));
      ASSERT_EQ(r.counters.boundary_cells_written, 2 * 8 * interior * Q);
      ASSERT_EQ(r.counters.boundary_cells_read, r.counters.boundary_cells_written);
      ASSERT_EQ(r.counters.spill_transactions, interior * spill_flush_count(Q, g));
      ASSERT_EQ(r.counters.fill_transactions, interior * spill_flush_count(Q, g));
      ASSERT_EQ(r.counters.eager_transactions_equiv, interior * Q);
      ASSERT_EQ(r.counters.active_lane_steps, Q * R);
      ASSERT_EQ(r.counters.lane_step_slots, g * r.steps_taken);
    }
  }
}

TEST(Wavefront, CountersOnlyRunsTheSameSchedule) {
  std::mt19937_64 rng(9);
  for (int iter = 0; iter < 20; ++iter) {
    const auto task = make_task(tu::random_dna(rng, 1 + rng() % 900), tu::random_dna(rng, 1 + rng() % 900));
    for (int g : kGroupSizes) {
      EngineConfig c = checked(g);
      const auto full = align_one(task, {}, c);
      c.counters_only = true;
      const auto dry = align_one(task, {}, c);
      ASSERT_EQ(full.counters, dry.counters);
      ASSERT_EQ(full.steps_taken, dry.steps_taken);
      ASSERT_EQ(dry.score, 0);
    }
  }
}

TEST(Wavefront, InstrumentedUtilizationMatchesFormula) {
  std::mt19937_64 rng(10);
  for (int g : kGroupSizes) {
    // one full chunk: exactly g strips
    const auto task = make_task(tu::random_dna(rng, 8 * 37), tu::random_dna(rng, 8 * g));
    const auto r = align_one(task, {}, checked(g));
    EXPECT_EQ(Rational(r.counters.active_lane_steps, r.counters.lane_step_slots), phase_utilization(37, g).overall);
  }
}

TEST(ChunkScratch, DetectsOutOfOrderReads) {
  ChunkScratch scratch(4, true);
  scratch.fill(0, {});
  EXPECT_NO_THROW(scratch.read(0, 0, 0));
  scratch.write(0, 0, 0, {});
  EXPECT_NO_THROW(scratch.read(0, 1, 1));
  // lane 2 at step 1 did not get its input from lane 1 at step 0
  EXPECT_THROW(scratch.read(0, 2, 1), std::logic_error);
  // lane 0 expects a staged chunk-top entry, not a lane output
  EXPECT_THROW(scratch.read(0, 0, 1), std::logic_error);
  // slot 8 aliases slot 0 but holds a different column
  EXPECT_THROW(scratch.read(8, 1, 1), std::logic_error);
  EXPECT_EQ(scratch.slot_count(), 8u);
}
