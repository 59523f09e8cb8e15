#pragma once

// Text formats emitted by the command-line tool.
//
//   alignments  TSV, no header: id, score, end_query, end_target
//   histogram   TSV with header: bin_start, query_count, target_count
//   report      JSON, see to_json(const BatchReport&)
//   pairs       FASTA, 60 bases per line

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"

#include "blockwave/alignment.hpp"
#include "blockwave/batch_runner.hpp"

namespace blockwave {

inline void write_alignment_tsv(std::ostream& os, std::span<const AlignmentResult> results) {
  for (const auto& r : results) {
    os << r.id << '\t' << r.score << '\t' << r.end_query << '\t' << r.end_target << '\n';
  }
}

inline void write_histogram_tsv(std::ostream& os, const LengthHistogram& h) {
  os << "bin_start\tquery_count\ttarget_count\n";
  for (std::size_t k = 0; k < h.query_counts.size(); ++k) {
    os << k * h.bin_width << '\t' << h.query_counts[k] << '\t' << h.target_counts[k] << '\n';
  }
}

inline void write_fasta_record(std::ostream& os, std::string_view name, std::string_view seq,
                               std::size_t line_width = 60) {
  os << '>' << name << '\n';
  for (std::size_t i = 0; i < seq.size(); i += line_width) os << seq.substr(i, line_width) << '\n';
}

inline nlohmann::json to_json(const TrafficCounters& c) {
  return {
      {"boundary_cells_written", c.boundary_cells_written},
      {"boundary_cells_read", c.boundary_cells_read},
      {"spill_transactions", c.spill_transactions},
      {"fill_transactions", c.fill_transactions},
      {"eager_transactions_equiv", c.eager_transactions_equiv},
      {"active_lane_steps", c.active_lane_steps},
      {"lane_step_slots", c.lane_step_slots},
  };
}

inline nlohmann::json to_json(const Imbalance& im) {
  return {{"max_over_mean", im.max_over_mean}, {"coefficient_of_variation", im.coefficient_of_variation}};
}

inline nlohmann::json to_json(const LengthHistogram& h) {
  return {{"bin_width", h.bin_width}, {"query_counts", h.query_counts}, {"target_counts", h.target_counts}};
}

inline nlohmann::json to_json(const AlignmentResult& r) {
  return {
      {"id", r.id},
      {"score", r.score},
      {"end_query", r.end_query},
      {"end_target", r.end_target},
      {"steps_taken", r.steps_taken},
      {"chunks", r.chunks},
      {"counters", to_json(r.counters)},
  };
}

inline nlohmann::json to_json(const BatchReport& report, bool include_results = true) {
  nlohmann::json j = {
      {"task_count", report.results.size()},
      {"wall_seconds", report.wall_seconds},
      {"cells", report.cells},
      {"imbalance", to_json(report.imbalance)},
      {"histogram", to_json(report.histogram)},
      {"counters", to_json(report.counters)},
  };
  if (include_results) {
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : report.results) rs.push_back(to_json(r));
    j["results"] = std::move(rs);
    j["costs"] = report.costs;
  }
  return j;
}

}  // namespace blockwave
