#pragma once

// Inter-query baseline: one lane walks the whole table strip by strip, block
// by block, row-major. The bottom row of every block in a strip goes to the
// backing store and is read back by the strip below, one transfer per block.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "blockwave/alignment.hpp"
#include "blockwave/block_kernel.hpp"
#include "blockwave/rational.hpp"
#include "blockwave/scoring.hpp"
#include "blockwave/wavefront_engine.hpp"

namespace blockwave {

namespace detail {

template <bool Compute>
AlignmentResult baseline_align(const AlignmentTask& task, const ScoringScheme& scheme) {
  const std::size_t Q = task.query.blocks();
  const std::size_t R = task.target.blocks();
  const auto q_words = task.query.words();
  const auto t_words = task.target.words();

  AlignmentResult out;
  out.id = task.id;
  TrafficCounters& tc = out.counters;

  // Read and overwritten in place: column c of strip r-1 is consumed right
  // before column c of strip r replaces it.
  std::vector<BlockBoundary> store(Q);
  Best best;

  for (std::size_t r = 0; r < R; ++r) {
    LaneCarry carry;
    const int t_valid = static_cast<int>(task.target.valid_in_block(r));
    for (std::size_t c = 0; c < Q; ++c) {
      if (r > 0) {
        tc.boundary_cells_read += kCellsPerBoundary;
        ++tc.fill_transactions;
      }
      if constexpr (Compute) {
        const BlockResult br = compute_block(q_words[c], t_words[r], static_cast<int>(task.query.valid_in_block(c)),
                                             t_valid, carry, store[c], scheme);
        carry = br.right;
        store[c] = br.bottom;
        best.merge({br.local_max.score, r * kBlockDim + br.local_max.row, c * kBlockDim + br.local_max.col});
      }
      if (r + 1 < R) {
        tc.boundary_cells_written += kCellsPerBoundary;
        ++tc.spill_transactions;
        ++tc.eager_transactions_equiv;
      }
      ++tc.active_lane_steps;
      ++tc.lane_step_slots;
      ++out.steps_taken;
    }
  }

  out.chunks = R;
  store_best(out, best);
  return out;
}

}  // namespace detail

inline AlignmentResult align_one_baseline(const AlignmentTask& task, const ScoringScheme& scheme,
                                          const EngineConfig& config = {}) {
  validate(task);
  validate(scheme);
  return config.counters_only ? detail::baseline_align<false>(task, scheme)
                              : detail::baseline_align<true>(task, scheme);
}

enum class AccessGranularity { pre_volta, post_volta };

struct TrafficModel {
  std::uint64_t n = 0;
  AccessGranularity granularity = AccessGranularity::post_volta;
};

struct TrafficPrediction {
  Rational necessary;
  Rational stored;
  Rational accessed;
};

// Closed-form volumes for an n x n table under the baseline strategy:
//   necessary = 2n                 (the two input sequences)
//   stored    = 2n + n^2/4         (inputs plus strip-bottom H and F values)
//   accessed  = 128n + 16n^2       (128-byte minimum access)
//             = 32n + 4n^2         (32-byte minimum access)
//
// The n^2/4 term counts 4-byte boundary values: n/8 strips, n columns, two
// values (H, F) per column. The baseline engine skips the last strip, so its
// boundary_cells_written for n divisible by 8 is 16 * (n/8 - 1) * (n/8)
// = n^2/4 - 2n; see stored_quadratic_term() and baseline_interior_cells().
inline TrafficPrediction predict_traffic(const TrafficModel& m) {
  const std::uint64_t n = m.n;
  TrafficPrediction p;
  p.necessary = Rational(2 * n);
  p.stored = Rational(8 * n + n * n, 4);
  p.accessed = m.granularity == AccessGranularity::pre_volta ? Rational(128 * n + 16 * n * n)
                                                             : Rational(32 * n + 4 * n * n);
  return p;
}

inline Rational stored_quadratic_term(std::uint64_t n) { return Rational(n * n, 4); }

// Interior strip-bottom values the baseline writes for an n x n table.
constexpr std::uint64_t baseline_interior_cells(std::uint64_t n) noexcept {
  const std::uint64_t blocks = (n + 7) / 8;
  return blocks == 0 ? 0 : kCellsPerBoundary * (blocks - 1) * blocks;
}

}  // namespace blockwave
