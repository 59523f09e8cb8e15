#pragma once

// The 8x8 block is the unit of work of every engine: one 32-bit word of
// target (8 rows) against one 32-bit word of query (8 columns).
//
// Dependencies are wired as follows:
//   top   - bottom row (H, F) of the block above, plus its corner H
//   left  - rightmost column (H, E) of the block to the left, plus the
//           H value diagonally above-left of this block's first cell
// E only ever flows rightward and F only downward, which is all the
// recurrence needs.

#include <array>
#include <cstdint>
#include <string>

#include "blockwave/error.hpp"
#include "blockwave/scoring.hpp"

namespace blockwave {

inline constexpr int kBlockDim = 8;

using lane_vec = std::array<score_t, kBlockDim>;

struct BlockBoundary {
  lane_vec h{};
  lane_vec f{};
  score_t corner_h = 0;

  friend bool operator==(const BlockBoundary&, const BlockBoundary&) = default;
};

struct LaneCarry {
  lane_vec h{};
  lane_vec e{};
  score_t diag_h = 0;

  friend bool operator==(const LaneCarry&, const LaneCarry&) = default;
};

struct BlockMax {
  score_t score = 0;
  int row = 0;
  int col = 0;

  friend bool operator==(const BlockMax&, const BlockMax&) = default;
};

struct BlockResult {
  LaneCarry right;
  BlockBoundary bottom;
  BlockMax local_max;
};

// Cells are evaluated row-major. Cells at row >= t_valid or column >= q_valid
// are never evaluated; the corresponding boundary entries are zero.
// local_max keeps the first maximum in row-major order.
inline BlockResult compute_block(std::uint32_t q_word, std::uint32_t t_word, int q_valid, int t_valid,
                                 const LaneCarry& left, const BlockBoundary& top, const ScoringScheme& scheme) {
  if (q_valid < 1 || q_valid > kBlockDim || t_valid < 1 || t_valid > kBlockDim) {
    throw error(errc::invalid_valid_count,
                "q_valid=" + std::to_string(q_valid) + " t_valid=" + std::to_string(t_valid));
  }

  std::array<base_code, kBlockDim> q_codes{};
  for (int c = 0; c < q_valid; ++c) q_codes[c] = static_cast<base_code>((q_word >> (4 * c)) & 0xFu);

  BlockResult out;
  lane_vec h_up = top.h;
  lane_vec f_up = top.f;
  BlockMax best;

  for (int r = 0; r < t_valid; ++r) {
    const auto t_code = static_cast<base_code>((t_word >> (4 * r)) & 0xFu);
    score_t diag = r == 0 ? left.diag_h : left.h[r - 1];
    score_t h_left = left.h[r];
    score_t e_left = left.e[r];
    for (int c = 0; c < q_valid; ++c) {
      const score_t s = substitution_score(t_code, q_codes[c], scheme);
      const CellState cell = cell_update(diag, h_left, e_left, h_up[c], f_up[c], s, scheme);
      diag = h_up[c];
      h_up[c] = cell.h;
      f_up[c] = cell.f;
      h_left = cell.h;
      e_left = cell.e;
      if (cell.h > best.score) best = {cell.h, r, c};
    }
    out.right.h[r] = h_left;
    out.right.e[r] = e_left;
  }

  for (int c = 0; c < q_valid; ++c) {
    out.bottom.h[c] = h_up[c];
    out.bottom.f[c] = f_up[c];
  }
  out.bottom.corner_h = h_up[q_valid - 1];
  out.right.diag_h = top.corner_h;
  out.local_max = best;
  return out;
}

}  // namespace blockwave
