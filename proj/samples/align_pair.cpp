// Aligns one pair with every engine and prints score, end point and traffic.
//
//   sample_align_pair ACGTACGTAC ACGTCGTAC

#include <iostream>
#include <string>

#include "blockwave/blockwave.hpp"

int main(int argc, char** argv) {
  using namespace blockwave;
  const std::string query = argc > 1 ? argv[1] : "ACGTACGTACGTTTGACCA";
  const std::string target = argc > 2 ? argv[2] : "ACGTACGACGTTTGACCA";

  const AlignmentTask task{"pair", pack_sequence(query), pack_sequence(target)};
  const ScoringScheme scheme{1, -4, 6, 1};

  const auto ref = oracle_align(task, scheme);
  std::cout << "oracle     score=" << ref.score << " end=(" << ref.end_query << ", " << ref.end_target << ")\n";

  for (int g : {1, 4, 32}) {
    EngineConfig config;
    config.group_size = g;
    const auto r = align_one(task, scheme, config);
    std::cout << "wavefront  G=" << g << " score=" << r.score << " end=(" << r.end_query << ", " << r.end_target
              << ") steps=" << r.steps_taken << " spills=" << r.counters.spill_transactions << '\n';
  }

  const auto b = align_one_baseline(task, scheme);
  std::cout << "baseline   score=" << b.score << " boundary cells written=" << b.counters.boundary_cells_written
            << '\n';
}
