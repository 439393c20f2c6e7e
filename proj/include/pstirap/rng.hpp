#pragma once

// Counter-based Philox4x32-10 generator. A (seed, stream) pair names an
// independent sequence, so Monte-Carlo realization k can be generated on any
// worker and in any order with identical results.

#include <array>
#include <cstdint>
#include <limits>

namespace pstirap {

using Philox4x32Block = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

/// Ten-round Philox bijection of `counter` under `key`.
Philox4x32Block philox4x32_10(Philox4x32Block counter, Philox4x32Key key);

class CounterRng {
public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [-0.5, 0.5).
  double centered() { return uniform() - 0.5; }

private:
  Philox4x32Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Philox4x32Block buffer_{};
  int used_ = 2;  // 64-bit words consumed from buffer_
};

}  // namespace pstirap
