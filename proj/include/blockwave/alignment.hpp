#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "blockwave/error.hpp"
#include "blockwave/scoring.hpp"
#include "blockwave/seqpack.hpp"

namespace blockwave {

// The DP table has one row per target base and one column per query base.
// Rows of 8x8 blocks are "strips"; Q is the number of query blocks.
struct AlignmentTask {
  std::string id;
  PackedSequence query;
  PackedSequence target;
};

// Counts are in cells (one 32-bit H or F value each). Transactions count
// contiguous transfers to or from the backing store.
struct TrafficCounters {
  std::uint64_t boundary_cells_written = 0;
  std::uint64_t boundary_cells_read = 0;
  std::uint64_t spill_transactions = 0;
  std::uint64_t fill_transactions = 0;
  std::uint64_t eager_transactions_equiv = 0;
  std::uint64_t active_lane_steps = 0;
  std::uint64_t lane_step_slots = 0;

  TrafficCounters& operator+=(const TrafficCounters& o) noexcept {
    boundary_cells_written += o.boundary_cells_written;
    boundary_cells_read += o.boundary_cells_read;
    spill_transactions += o.spill_transactions;
    fill_transactions += o.fill_transactions;
    eager_transactions_equiv += o.eager_transactions_equiv;
    active_lane_steps += o.active_lane_steps;
    lane_step_slots += o.lane_step_slots;
    return *this;
  }

  friend bool operator==(const TrafficCounters&, const TrafficCounters&) = default;
};

struct AlignmentResult {
  std::string id;
  score_t score = 0;
  std::size_t end_query = 0;
  std::size_t end_target = 0;
  std::uint64_t steps_taken = 0;
  std::uint64_t chunks = 0;
  TrafficCounters counters;
};

enum class EngineKind { wavefront, baseline, oracle };

inline const char* to_string(EngineKind kind) noexcept {
  switch (kind) {
    case EngineKind::wavefront: return "wavefront";
    case EngineKind::baseline: return "baseline";
    case EngineKind::oracle: return "oracle";
  }
  return "unknown";
}

struct EngineConfig {
  int group_size = 16;
  EngineKind engine = EngineKind::wavefront;
  // Stamp every scratch slot and verify each read against the lane/step that
  // must have produced it. Costs a little time; tests turn it on.
  bool check_scratch = false;
  // Run the schedule and traffic accounting without evaluating any cells.
  // Scores in the result are left at zero.
  bool counters_only = false;

  int block_dim() const noexcept { return 8; }
  int scratch_slots() const noexcept { return 2 * group_size; }
  int chunk_rows() const noexcept { return 8 * group_size; }
};

inline bool is_admissible_group_size(int g) noexcept {
  return g == 1 || g == 2 || g == 4 || g == 8 || g == 16 || g == 32;
}

inline void validate(const EngineConfig& config) {
  if (!is_admissible_group_size(config.group_size)) {
    throw error(errc::invalid_config,
                "group size must be one of 1,2,4,8,16,32, got " + std::to_string(config.group_size));
  }
}

inline void validate(const AlignmentTask& task) {
  if (task.query.length() == 0 || task.target.length() == 0) {
    throw error(errc::empty_sequence, "task '" + task.id + "' has an empty sequence");
  }
}

// Ordering of candidate maxima shared by every engine and the oracle:
// higher score first, then smaller target row, then smaller query column.
struct Best {
  score_t score = 0;
  std::size_t target = 0;
  std::size_t query = 0;

  bool improves_on(const Best& o) const noexcept {
    if (score != o.score) return score > o.score;
    if (target != o.target) return target < o.target;
    return query < o.query;
  }

  void merge(const Best& o) noexcept {
    if (o.improves_on(*this)) *this = o;
  }
};

inline void store_best(AlignmentResult& r, const Best& b) noexcept {
  r.score = b.score;
  // A zero score has no meaningful end point; report (0, 0).
  r.end_query = b.score > 0 ? b.query : 0;
  r.end_target = b.score > 0 ? b.target : 0;
}

}  // namespace blockwave
