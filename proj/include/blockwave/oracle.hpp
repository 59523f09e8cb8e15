#pragma once

// Full-table local aligner. Keeps all three matrices, evaluates cells in
// plain row-major order and shares nothing with the blocked engines except
// the scoring scheme and the tie-break rule. Every engine is checked against
// it.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "blockwave/alignment.hpp"
#include "blockwave/error.hpp"
#include "blockwave/scoring.hpp"

namespace blockwave {

inline constexpr std::size_t kOracleMaxLength = 16384;

struct FullTable {
  std::size_t rows = 0;  // target length
  std::size_t cols = 0;  // query length
  std::vector<score_t> h, e, f;

  score_t H(std::size_t i, std::size_t j) const { return h[i * cols + j]; }
  score_t E(std::size_t i, std::size_t j) const { return e[i * cols + j]; }
  score_t F(std::size_t i, std::size_t j) const { return f[i * cols + j]; }
};

struct OracleOptions {
  // When false, E and F may go negative and out-of-table E/F are minus
  // infinity; H must come out identical either way.
  bool clamp_gaps = true;
  bool keep_table = false;
  bool validate_scheme = true;
};

struct OracleOutput {
  AlignmentResult result;
  std::optional<FullTable> table;
};

inline OracleOutput oracle_align_full(const AlignmentTask& task, const ScoringScheme& scheme,
                                      const OracleOptions& opts = {}) {
  validate(task);
  if (opts.validate_scheme) validate(scheme);
  const std::size_t rows = task.target.length();
  const std::size_t cols = task.query.length();
  if (rows > kOracleMaxLength || cols > kOracleMaxLength) {
    throw error(errc::table_too_large, std::to_string(rows) + " x " + std::to_string(cols) + " exceeds " +
                                           std::to_string(kOracleMaxLength) + " per side");
  }

  // Large enough to never win a max, small enough to never overflow.
  constexpr score_t kNegInf = std::numeric_limits<score_t>::min() / 4;
  const score_t gap_floor = opts.clamp_gaps ? 0 : kNegInf;

  FullTable t;
  t.rows = rows;
  t.cols = cols;
  t.h.assign(rows * cols, 0);
  t.e.assign(rows * cols, 0);
  t.f.assign(rows * cols, 0);

  std::vector<base_code> q(cols), r(rows);
  for (std::size_t j = 0; j < cols; ++j) q[j] = task.query.code_at(j);
  for (std::size_t i = 0; i < rows; ++i) r[i] = task.target.code_at(i);

  Best best;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const score_t h_diag = (i > 0 && j > 0) ? t.H(i - 1, j - 1) : 0;
      const score_t h_left = j > 0 ? t.H(i, j - 1) : 0;
      const score_t e_left = j > 0 ? t.E(i, j - 1) : gap_floor;
      const score_t h_up = i > 0 ? t.H(i - 1, j) : 0;
      const score_t f_up = i > 0 ? t.F(i - 1, j) : gap_floor;

      score_t e = std::max(h_left - scheme.gap_open, e_left - scheme.gap_extend);
      score_t f = std::max(h_up - scheme.gap_open, f_up - scheme.gap_extend);
      if (opts.clamp_gaps) {
        e = std::max(e, score_t{0});
        f = std::max(f, score_t{0});
      } else {
        e = std::max(e, kNegInf);
        f = std::max(f, kNegInf);
      }
      const score_t s = (q[j] == r[i] && q[j] != kCodeN) ? scheme.match_score : scheme.mismatch_score;
      const score_t h = std::max({score_t{0}, e, f, h_diag + s});

      t.h[i * cols + j] = h;
      t.e[i * cols + j] = e;
      t.f[i * cols + j] = f;
      if (h > best.score) best = {h, i, j};
    }
  }

  OracleOutput out;
  out.result.id = task.id;
  store_best(out.result, best);
  out.result.steps_taken = rows * cols;
  if (opts.keep_table) out.table = std::move(t);
  return out;
}

inline AlignmentResult oracle_align(const AlignmentTask& task, const ScoringScheme& scheme) {
  return oracle_align_full(task, scheme).result;
}

}  // namespace blockwave
