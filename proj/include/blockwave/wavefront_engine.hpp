#pragma once

// Intra-query wavefront engine.
//
// The table is cut into chunks of G strips (8*G target rows). Inside a chunk,
// lane k owns strip k and at step s processes block column s - k, so the G
// lanes sweep the chunk along block anti-diagonals in lockstep:
//
//   steps 0 .. G-2        prologue, lanes join one per step
//   steps G-1 .. Q-1      main loop, all lanes busy (only when Q >= G)
//   steps Q .. Q+G-2      epilogue, lanes retire one per step
//
// for Q + G - 1 steps per chunk. A lane keeps its left dependency (and the
// diagonal corner) in a LaneCarry; the top dependency arrives through a
// rotating scratch of 2G BlockBoundary slots. Block column c always uses slot
// c mod 2G: lane k reads it at step c+k and overwrites it with its own bottom
// row, which lane k+1 reads at the next step.
//
// The last lane's outputs are the chunk bottom. They pile up in one half of
// the scratch and are flushed to the backing store as one batch when the lead
// lane wraps into that half; the same half is then refilled with the next G
// chunk-top entries the lead lane will need. Transfers to and from the
// backing store therefore happen once per G block columns instead of once per
// block.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blockwave/alignment.hpp"
#include "blockwave/block_kernel.hpp"
#include "blockwave/rational.hpp"
#include "blockwave/scoring.hpp"

namespace blockwave {

// Cells moved per block boundary entry: 8 H values and 8 F values.
inline constexpr std::uint64_t kCellsPerBoundary = 2 * kBlockDim;

class ChunkScratch {
 public:
  explicit ChunkScratch(int group_size, bool check)
      : group_(static_cast<std::size_t>(group_size)), check_(check), slots_(2 * group_), stamps_(2 * group_) {}

  std::size_t group_size() const noexcept { return group_; }
  std::size_t slot_count() const noexcept { return slots_.size(); }
  std::size_t slot_of(std::size_t column) const noexcept { return column % slots_.size(); }
  std::size_t half_of(std::size_t column) const noexcept { return (column / group_) % 2; }

  // Chunk-top entry for `column`, staged for the lead lane.
  void fill(std::size_t column, const BlockBoundary& b) {
    const std::size_t i = slot_of(column);
    slots_[i] = b;
    if (check_) stamps_[i] = {kFilled, -1, column};
  }

  const BlockBoundary& read(std::size_t column, int lane, std::int64_t step) const {
    const std::size_t i = slot_of(column);
    if (check_) {
      const Stamp& st = stamps_[i];
      const bool ok = lane == 0 ? (st.step == kFilled && st.column == column)
                                : (st.step == step - 1 && st.writer == lane - 1 && st.column == column);
      if (!ok) {
        throw std::logic_error("scratch slot " + std::to_string(i) + " read by lane " + std::to_string(lane) +
                               " at step " + std::to_string(step) + " for column " + std::to_string(column) +
                               " holds column " + std::to_string(st.column) + " from lane " +
                               std::to_string(st.writer) + " step " + std::to_string(st.step));
      }
    }
    return slots_[i];
  }

  void write(std::size_t column, int lane, std::int64_t step, const BlockBoundary& b) {
    const std::size_t i = slot_of(column);
    slots_[i] = b;
    if (check_) stamps_[i] = {step, lane, column};
  }

  // Chunk-bottom entry for `column` written by the last lane.
  const BlockBoundary& trail(std::size_t column) const { return slots_[slot_of(column)]; }

 private:
  static constexpr std::int64_t kFilled = -2;

  struct Stamp {
    std::int64_t step = -1;
    int writer = -1;
    std::size_t column = static_cast<std::size_t>(-1);
  };

  std::size_t group_;
  bool check_;
  std::vector<BlockBoundary> slots_;
  std::vector<Stamp> stamps_;
};

constexpr std::uint64_t chunk_steps(std::uint64_t query_blocks, std::uint64_t group_size) noexcept {
  return query_blocks + group_size - 1;
}

constexpr std::uint64_t spill_flush_count(std::uint64_t query_blocks, std::uint64_t group_size) noexcept {
  return (query_blocks + group_size - 1) / group_size;
}

namespace detail {

// Columns of the chunk bottom currently parked in one half of the scratch.
struct PendingSpill {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool empty() const noexcept { return begin == end; }
};

template <bool Compute>
AlignmentResult wavefront_align(const AlignmentTask& task, const ScoringScheme& scheme, const EngineConfig& config) {
  const int G = config.group_size;
  const std::size_t Q = task.query.blocks();
  const std::size_t R = task.target.blocks();
  const std::size_t chunks = (R + G - 1) / G;
  const std::size_t steps = chunk_steps(Q, G);

  const auto q_words = task.query.words();
  const auto t_words = task.target.words();

  AlignmentResult out;
  out.id = task.id;
  TrafficCounters& tc = out.counters;

  // Backing store: bottom of the previous chunk (read) and of this one (written).
  std::vector<BlockBoundary> store_top(Q), store_bottom(Q);
  ChunkScratch scratch(G, config.check_scratch);
  std::vector<LaneCarry> carry(G);
  std::vector<Best> lane_best(G);
  Best best;

  for (std::size_t chunk = 0; chunk < chunks; ++chunk) {
    const std::size_t first_strip = chunk * G;
    const int live_lanes = static_cast<int>(std::min<std::size_t>(G, R - first_strip));
    const bool has_top = chunk > 0;
    const bool has_bottom = chunk + 1 < chunks;
    std::array<PendingSpill, 2> pending{};

    std::fill(carry.begin(), carry.end(), LaneCarry{});
    std::fill(lane_best.begin(), lane_best.end(), Best{});

    auto fill_half = [&](std::size_t from) {
      const std::size_t to = std::min(from + G, Q);
      for (std::size_t c = from; c < to; ++c) scratch.fill(c, has_top ? store_top[c] : BlockBoundary{});
      if (has_top) {
        tc.boundary_cells_read += kCellsPerBoundary * (to - from);
        ++tc.fill_transactions;
      }
    };
    auto spill_half = [&](std::size_t half) {
      PendingSpill& p = pending[half];
      if (p.empty()) return;
      for (std::size_t c = p.begin; c < p.end; ++c) store_bottom[c] = scratch.trail(c);
      tc.boundary_cells_written += kCellsPerBoundary * (p.end - p.begin);
      tc.eager_transactions_equiv += p.end - p.begin;
      ++tc.spill_transactions;
      p = {};
    };

    fill_half(0);
    for (std::size_t s = 0; s < steps; ++s) {
      // Lead lane wraps into a half: flush its trail, then restage chunk tops.
      if (s > 0 && s % G == 0 && s < Q) {
        spill_half(scratch.half_of(s));
        fill_half(s);
      }
      const auto step = static_cast<std::int64_t>(s);
      for (int k = 0; k < live_lanes; ++k) {
        if (s < static_cast<std::size_t>(k)) break;
        const std::size_t c = s - k;
        if (c >= Q) continue;

        const BlockBoundary& top = scratch.read(c, k, step);
        BlockBoundary bottom;
        if constexpr (Compute) {
          const std::size_t strip = first_strip + k;
          const BlockResult br =
              compute_block(q_words[c], t_words[strip], static_cast<int>(task.query.valid_in_block(c)),
                            static_cast<int>(task.target.valid_in_block(strip)), carry[k], top, scheme);
          carry[k] = br.right;
          bottom = br.bottom;
          lane_best[k].merge({br.local_max.score, strip * kBlockDim + br.local_max.row,
                              c * kBlockDim + br.local_max.col});
        } else {
          bottom = top;
        }
        scratch.write(c, k, step, bottom);
        ++tc.active_lane_steps;

        if (has_bottom && k == G - 1) {
          PendingSpill& p = pending[scratch.half_of(c)];
          if (p.empty()) p = {c, c + 1};
          else if (p.end == c) p.end = c + 1;
          else throw std::logic_error("chunk bottom column " + std::to_string(c) + " overran an unflushed half");
        }
      }
    }
    tc.lane_step_slots += static_cast<std::uint64_t>(G) * steps;
    out.steps_taken += steps;

    // Remaining trail, lower columns first.
    const std::size_t a = pending[0].empty() || (!pending[1].empty() && pending[1].begin < pending[0].begin) ? 1 : 0;
    spill_half(a);
    spill_half(1 - a);

    for (const Best& b : lane_best) best.merge(b);
    std::swap(store_top, store_bottom);
  }

  out.chunks = chunks;
  store_best(out, best);
  return out;
}

}  // namespace detail

inline AlignmentResult align_one(const AlignmentTask& task, const ScoringScheme& scheme,
                                 const EngineConfig& config) {
  validate(task);
  validate(scheme);
  validate(config);
  return config.counters_only ? detail::wavefront_align<false>(task, scheme, config)
                              : detail::wavefront_align<true>(task, scheme, config);
}

struct Utilization {
  // Active lane-steps over all lane-step slots of a chunk: Q / (Q + G - 1).
  Rational overall;
  // Mean lane occupancy over prologue and epilogue steps combined. Empty
  // (and therefore absent) when G = 1.
  std::optional<Rational> ramp;
  std::uint64_t prologue_steps = 0;
  std::uint64_t main_loop_steps = 0;
  std::uint64_t epilogue_steps = 0;
  // Q < G: the lanes never all work at once. Still computed, but flagged.
  bool main_loop_absent = false;
};

// Counts lane occupancy step by step rather than using the closed forms, so
// it also covers Q < G where the ramps overlap.
inline Utilization phase_utilization(std::uint64_t query_blocks, std::uint64_t group_size) {
  if (query_blocks == 0 || group_size == 0) throw std::domain_error("Q and G must be >= 1");
  const std::uint64_t Q = query_blocks;
  const std::uint64_t G = group_size;
  const std::uint64_t steps = chunk_steps(Q, G);

  Utilization u;
  u.main_loop_absent = Q < G;
  std::uint64_t active_total = 0;
  std::uint64_t ramp_active = 0;
  std::uint64_t ramp_steps = 0;
  for (std::uint64_t s = 0; s < steps; ++s) {
    // lanes k with 0 <= s - k < Q
    const std::uint64_t lo = s >= Q ? s - Q + 1 : 0;
    const std::uint64_t hi = std::min(s, G - 1);
    const std::uint64_t active = hi - lo + 1;
    active_total += active;
    if (s + 1 < G) {
      ++u.prologue_steps;
    } else if (s >= Q) {
      ++u.epilogue_steps;
    } else {
      ++u.main_loop_steps;
      continue;
    }
    ramp_active += active;
    ++ramp_steps;
  }
  u.overall = Rational(active_total, G * steps);
  if (ramp_steps > 0) u.ramp = Rational(ramp_active, G * ramp_steps);
  return u;
}

}  // namespace blockwave
