#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace boostmargin {

namespace detail {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace detail

/// Derives an independent seed for sub-stream `stream` of `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return detail::mix64(detail::mix64(master + detail::kGolden) ^
                       detail::mix64(stream * 0xd1342543de82ef95ULL + 1));
}

/// Counter-based generator keyed by (master seed, stream id).
///
/// The i-th output is a pure function of (key, i), so streams can be handed
/// to workers in any order and still reproduce bit for bit. Satisfies
/// UniformRandomBitGenerator, but the helpers below avoid the std
/// distributions because their output is implementation-defined.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(derive_seed(seed, stream)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return at(counter_++); }

  /// Output at an absolute counter position; does not advance.
  result_type at(std::uint64_t counter) const {
    return detail::mix64(key_ + (counter + 1) * detail::kGolden);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // Lemire's nearly divisionless method with rejection.
    unsigned __int128 prod = static_cast<unsigned __int128>((*this)()) * n;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        prod = static_cast<unsigned __int128>((*this)()) * n;
        low = static_cast<std::uint64_t>(prod);
      }
    }
    return static_cast<std::uint64_t>(prod >> 64);
  }

  /// Standard exponential variate.
  double exponential() { return -std::log1p(-uniform()); }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace boostmargin
