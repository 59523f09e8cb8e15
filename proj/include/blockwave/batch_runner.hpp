#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "blockwave/alignment.hpp"
#include "blockwave/baseline_engine.hpp"
#include "blockwave/error.hpp"
#include "blockwave/oracle.hpp"
#include "blockwave/wavefront_engine.hpp"

namespace blockwave {

inline AlignmentResult run_engine(const AlignmentTask& task, const ScoringScheme& scheme, const EngineConfig& config) {
  switch (config.engine) {
    case EngineKind::wavefront: return align_one(task, scheme, config);
    case EngineKind::baseline: return align_one_baseline(task, scheme, config);
    case EngineKind::oracle: return oracle_align(task, scheme);
  }
  throw error(errc::invalid_config, "unknown engine");
}

struct LengthHistogram {
  std::size_t bin_width = 1;
  // Bin k covers [k * bin_width, (k + 1) * bin_width). Both vectors have the
  // same size, running up to the bin of the longest sequence.
  std::vector<std::uint64_t> query_counts;
  std::vector<std::uint64_t> target_counts;
};

inline LengthHistogram length_histogram(std::span<const AlignmentTask> tasks, std::size_t bin_width) {
  if (bin_width < 1) throw error(errc::invalid_config, "histogram bin width must be >= 1");
  if (tasks.empty()) throw error(errc::empty_batch, "no tasks");
  std::size_t longest = 0;
  for (const auto& t : tasks) longest = std::max({longest, t.query.length(), t.target.length()});
  LengthHistogram h;
  h.bin_width = bin_width;
  h.query_counts.assign(longest / bin_width + 1, 0);
  h.target_counts.assign(longest / bin_width + 1, 0);
  for (const auto& t : tasks) {
    ++h.query_counts[t.query.length() / bin_width];
    ++h.target_counts[t.target.length() / bin_width];
  }
  return h;
}

// Work of one task in 8x8 blocks: Q * R.
inline std::uint64_t task_cost(const AlignmentTask& t) noexcept {
  return static_cast<std::uint64_t>(t.query.blocks()) * t.target.blocks();
}

struct Imbalance {
  double max_over_mean = 0.0;
  double coefficient_of_variation = 0.0;  // population standard deviation / mean
};

inline Imbalance imbalance_of(std::span<const std::uint64_t> costs) {
  if (costs.empty()) throw error(errc::empty_batch, "no costs");
  long double sum = 0;
  std::uint64_t mx = 0;
  for (auto c : costs) {
    sum += c;
    mx = std::max(mx, c);
  }
  const long double mean = sum / costs.size();
  long double var = 0;
  for (auto c : costs) var += (c - mean) * (c - mean);
  var /= costs.size();
  Imbalance im;
  if (mean > 0) {
    im.max_over_mean = static_cast<double>(mx / mean);
    im.coefficient_of_variation = static_cast<double>(std::sqrt(var) / mean);
  }
  return im;
}

struct BatchReport {
  std::vector<AlignmentResult> results;
  double wall_seconds = 0.0;
  std::vector<std::uint64_t> costs;
  Imbalance imbalance;
  LengthHistogram histogram;
  TrafficCounters counters;
  std::uint64_t cells = 0;  // DP cells covered by the batch
};

struct BatchOptions {
  std::size_t worker_count = 1;
  std::size_t histogram_bin = 25;
};

// Tasks are handed out dynamically from a shared cursor; result i always
// belongs to task i. The first failing task (lowest index) is rethrown with
// its id attached.
inline BatchReport run_batch(std::span<const AlignmentTask> tasks, const ScoringScheme& scheme,
                             const EngineConfig& config, const BatchOptions& opts = {}) {
  if (tasks.empty()) throw error(errc::empty_batch, "no tasks");
  if (opts.worker_count < 1) throw error(errc::invalid_config, "worker count must be >= 1");
  validate(scheme);
  validate(config);

  BatchReport report;
  report.results.resize(tasks.size());
  report.costs.reserve(tasks.size());
  for (const auto& t : tasks) {
    report.costs.push_back(task_cost(t));
    report.cells += static_cast<std::uint64_t>(t.query.length()) * t.target.length();
  }
  report.imbalance = imbalance_of(report.costs);
  report.histogram = length_histogram(tasks, opts.histogram_bin);

  std::atomic<std::size_t> cursor{0};
  std::mutex failure_mutex;
  std::size_t failed_index = tasks.size();
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
      if (i >= tasks.size()) return;
      try {
        report.results[i] = run_engine(tasks[i], scheme, config);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };

  const auto start = std::chrono::steady_clock::now();
  const std::size_t n_threads = std::min(opts.worker_count, tasks.size());
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t w = 0; w < n_threads; ++w) pool.emplace_back(worker);
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (failure) {
    const std::string prefix = "task '" + tasks[failed_index].id + "': ";
    try {
      std::rethrow_exception(failure);
    } catch (const error& e) {
      throw error(e.code(), prefix + e.detail());
    } catch (const std::exception& e) {
      throw error(errc::task_failed, prefix + e.what());
    }
  }

  for (const auto& r : report.results) report.counters += r.counters;
  return report;
}

}  // namespace blockwave
