#pragma once

// Deterministic random streams.
//
// Every random quantity in the library is drawn from a SeedStream, a value
// type whose 64-bit key is a pure function of (master_seed, stream_id,
// replication_index) and of the chain of derive() tags applied to it. Keys
// are mixed with the SplitMix64 finalizer; samples come from xoshiro256**
// seeded by SplitMix64 from the key (Blackman & Vigna). Normals use
// Box-Muller and bounded integers use rejection sampling, so output is
// identical across standard libraries (std::*_distribution is not).

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace srl {

/// SplitMix64 output function applied to a single word.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t combine64(std::uint64_t key, std::uint64_t value) noexcept {
  return mix64(key ^ mix64(value ^ 0x632be59bd9b4e019ULL));
}

/// FNV-1a, used to turn experiment ids into stream ids.
constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// xoshiro256** 1.0. Models std::uniform_random_bit_generator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = sm;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

/// Sampler over one stream: uniforms, normals, bounded integers.
class Sampler {
 public:
  explicit Sampler(std::uint64_t key) noexcept : engine_(key) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1].
  double uniform_open_low() noexcept {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double normal() noexcept;

  bool bernoulli(double prob) noexcept { return uniform() < prob; }

  /// Uniform integer in [0, bound), bound > 0. Unbiased (Lemire rejection).
  std::uint64_t below(std::uint64_t bound) noexcept;

  Xoshiro256& engine() noexcept { return engine_; }

 private:
  Xoshiro256 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Provenance of a stream, recorded in datasets.
struct SeedTrace {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
  std::uint64_t replication_index = 0;

  friend bool operator==(const SeedTrace&, const SeedTrace&) = default;
};

/// Value-type handle to an independent random stream.
class SeedStream {
 public:
  SeedStream(std::uint64_t master_seed, std::uint64_t stream_id,
             std::uint64_t replication_index) noexcept
      : trace_{master_seed, stream_id, replication_index},
        key_(combine64(combine64(mix64(master_seed), stream_id), replication_index)) {}

  /// Child stream for a named purpose; distinct tags give independent streams.
  [[nodiscard]] SeedStream derive(std::string_view tag) const noexcept {
    return derive(fnv1a64(tag));
  }
  [[nodiscard]] SeedStream derive(std::uint64_t tag) const noexcept {
    SeedStream child = *this;
    child.key_ = combine64(key_, tag);
    return child;
  }

  [[nodiscard]] Sampler sampler() const noexcept { return Sampler(key_); }
  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }
  [[nodiscard]] const SeedTrace& trace() const noexcept { return trace_; }

  friend bool operator==(const SeedStream&, const SeedStream&) = default;

 private:
  SeedTrace trace_;
  std::uint64_t key_;
};

}  // namespace srl
