#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

namespace rlan {

// Hierarchical key for counter-based random streams. Child keys are derived
// by hashing, so any (seed, n, replicate, grid index, observation) tuple maps
// to its own stream independent of evaluation order.
class StreamKey {
 public:
  constexpr StreamKey() = default;
  constexpr explicit StreamKey(std::uint64_t value) : value_(value) {}

  StreamKey child(std::uint64_t tag) const;
  StreamKey child(std::string_view tag) const;

  constexpr std::uint64_t value() const { return value_; }
  friend constexpr bool operator==(StreamKey, StreamKey) = default;

 private:
  std::uint64_t value_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

// SplitMix64 generator seeded from a StreamKey: the k-th output is
// mix64(key + k * golden), a pure function of key and counter.
// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(StreamKey key) : state_(key.value()) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += kGolden;
    return mix64(state_);
  }

  // Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal (ziggurat).
  double normal();
  void fill_normal(std::span<double> out);

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

}  // namespace rlan
