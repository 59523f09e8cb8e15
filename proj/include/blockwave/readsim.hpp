#pragma once

// Wgsim-style synthetic pairs: the target is a substring of a random
// reference, the query is that substring with single-base substitutions,
// insertions and deletions applied independently per base.
//
// Random numbers come from xoshiro256** seeded through splitmix64. Every pair
// i draws from its own generator seeded with splitmix64(seed ^ golden * (i+1)),
// so pair i is the same no matter how many pairs are generated or in what
// order. The generator and the derivation are part of the output contract.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "blockwave/alignment.hpp"
#include "blockwave/error.hpp"
#include "blockwave/seqpack.hpp"

namespace blockwave {

constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept {
    for (auto& word : s_) word = splitmix64(seed);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do x = (*this)(); while (x >= limit);
    return x % bound;
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Stream for item `index` of a run seeded with `seed`.
  static Xoshiro256 for_item(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t st = seed ^ (0x9E3779B97F4A7C15ull * (index + 1));
    return Xoshiro256(splitmix64(st));
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> s_{};
};

struct SimProfile {
  std::size_t min_length = 250;
  std::size_t max_length = 250;  // equal to min_length for fixed-length reads
  std::size_t count = 1000;
  double sub_rate = 0.01;
  double ins_rate = 0.001;
  double del_rate = 0.001;
  std::uint64_t rng_seed = 1;
};

inline void validate(const SimProfile& p) {
  auto in_unit = [](double r) { return r >= 0.0 && r < 1.0; };
  if (p.min_length < 1 || p.max_length < p.min_length) {
    throw error(errc::profile_invalid, "read length range [" + std::to_string(p.min_length) + ", " +
                                           std::to_string(p.max_length) + "] is empty");
  }
  if (p.count < 1) throw error(errc::profile_invalid, "pair count must be >= 1");
  if (!in_unit(p.sub_rate) || !in_unit(p.ins_rate) || !in_unit(p.del_rate) ||
      p.sub_rate + p.ins_rate + p.del_rate >= 1.0) {
    throw error(errc::profile_invalid, "error rates must lie in [0,1) and sum to less than 1");
  }
}

inline constexpr char kAcgt[4] = {'A', 'C', 'G', 'T'};

inline std::string generate_reference(std::size_t length, std::uint64_t seed) {
  if (length == 0) throw error(errc::empty_length, "reference length must be >= 1");
  Xoshiro256 rng(seed);
  std::string ref(length, 'A');
  for (char& b : ref) b = kAcgt[rng.below(4)];
  return ref;
}

struct SimulatedPair {
  std::string id;
  std::string query;
  std::string target;
};

// Applies the per-base error model to `target`. The query is never empty: if
// every base was deleted, one random base is emitted.
inline std::string mutate(const std::string& target, const SimProfile& p, Xoshiro256& rng) {
  std::string query;
  query.reserve(target.size() + target.size() / 16 + 1);
  for (const char base : target) {
    const double u = rng.uniform();
    if (u < p.sub_rate) {
      const std::size_t orig = std::string_view("ACGT").find(base);
      query.push_back(kAcgt[(orig + 1 + rng.below(3)) % 4]);
    } else if (u < p.sub_rate + p.ins_rate) {
      query.push_back(kAcgt[rng.below(4)]);
      query.push_back(base);
    } else if (u < p.sub_rate + p.ins_rate + p.del_rate) {
      // deleted
    } else {
      query.push_back(base);
    }
  }
  if (query.empty()) query.push_back(kAcgt[rng.below(4)]);
  return query;
}

inline std::vector<SimulatedPair> generate_pair_texts(const std::string& reference, const SimProfile& p) {
  validate(p);
  if (reference.size() < p.max_length) {
    throw error(errc::profile_invalid, "reference length " + std::to_string(reference.size()) +
                                           " is shorter than read length " + std::to_string(p.max_length));
  }
  std::vector<SimulatedPair> pairs(p.count);
  for (std::size_t i = 0; i < p.count; ++i) {
    Xoshiro256 rng = Xoshiro256::for_item(p.rng_seed, i);
    const std::size_t len = p.min_length + rng.below(p.max_length - p.min_length + 1);
    const std::size_t start = rng.below(reference.size() - len + 1);
    SimulatedPair& sp = pairs[i];
    sp.id = "sim" + std::to_string(i);
    sp.target = reference.substr(start, len);
    sp.query = mutate(sp.target, p, rng);
  }
  return pairs;
}

inline std::vector<AlignmentTask> generate_pairs(const std::string& reference, const SimProfile& p) {
  std::vector<AlignmentTask> tasks;
  tasks.reserve(p.count);
  for (const SimulatedPair& sp : generate_pair_texts(reference, p)) {
    tasks.push_back({sp.id, pack_sequence(sp.query), pack_sequence(sp.target)});
  }
  return tasks;
}

}  // namespace blockwave
