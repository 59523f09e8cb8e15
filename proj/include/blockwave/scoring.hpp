#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include "blockwave/error.hpp"
#include "blockwave/seqpack.hpp"

namespace blockwave {

using score_t = std::int32_t;

// Affine gap penalties are literal: the first base of a gap costs gap_open,
// every further base costs gap_extend. A BWA-MEM style (o=6, e=1) scheme,
// which charges o+e for the first base, corresponds to gap_open=7, gap_extend=1.
struct ScoringScheme {
  score_t match_score = 1;
  score_t mismatch_score = -4;
  score_t gap_open = 6;
  score_t gap_extend = 1;

  friend bool operator==(const ScoringScheme&, const ScoringScheme&) = default;
};

inline void validate(const ScoringScheme& s) {
  if (s.match_score < 1) throw error(errc::invalid_scheme, "match score must be >= 1, got " + std::to_string(s.match_score));
  if (s.mismatch_score > -1) throw error(errc::invalid_scheme, "mismatch score must be <= -1, got " + std::to_string(s.mismatch_score));
  if (s.gap_extend < 1) throw error(errc::invalid_scheme, "gap extend must be >= 1, got " + std::to_string(s.gap_extend));
  if (s.gap_open < s.gap_extend) {
    throw error(errc::invalid_scheme, "gap open (" + std::to_string(s.gap_open) +
                                          ") must be >= gap extend (" + std::to_string(s.gap_extend) + ")");
  }
}

// N never matches anything, itself included.
constexpr score_t substitution_score(base_code a, base_code b, const ScoringScheme& s) noexcept {
  return (a == b && a != kCodeN) ? s.match_score : s.mismatch_score;
}

struct CellState {
  score_t h = 0;
  score_t e = 0;  // gap running along the query (horizontal)
  score_t f = 0;  // gap running along the target (vertical)

  friend bool operator==(const CellState&, const CellState&) = default;
};

// One cell of the local affine-gap recurrence. E and F are clamped at zero,
// which never changes H because H itself is a max with zero.
constexpr CellState cell_update(score_t h_diag, score_t h_left, score_t e_left, score_t h_up, score_t f_up,
                                score_t s, const ScoringScheme& scheme) noexcept {
  CellState c;
  c.e = std::max({score_t{0}, h_left - scheme.gap_open, e_left - scheme.gap_extend});
  c.f = std::max({score_t{0}, h_up - scheme.gap_open, f_up - scheme.gap_extend});
  c.h = std::max({score_t{0}, c.e, c.f, h_diag + s});
  return c;
}

}  // namespace blockwave
