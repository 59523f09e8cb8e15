// Closed-form traffic next to instrumented counts for square n x n tables.

#include <iostream>

#include "blockwave/blockwave.hpp"

int main() {
  using namespace blockwave;
  std::cout << "n\tstored\taccessed_32B\taccessed_128B\tbaseline_cells\twavefront_cells_G32\n";
  for (std::uint64_t n : {256u, 1024u, 4096u}) {
    const std::string seq = generate_reference(n, n);
    const AlignmentTask task{"sq", pack_sequence(seq), pack_sequence(seq)};
    EngineConfig config;
    config.group_size = 32;
    config.counters_only = true;
    const auto w = align_one(task, {}, config);
    const auto b = align_one_baseline(task, {}, config);
    std::cout << n << '\t' << predict_traffic({n, AccessGranularity::post_volta}).stored << '\t'
              << predict_traffic({n, AccessGranularity::post_volta}).accessed << '\t'
              << predict_traffic({n, AccessGranularity::pre_volta}).accessed << '\t'
              << b.counters.boundary_cells_written << '\t' << w.counters.boundary_cells_written << '\n';
  }
}
