#pragma once

#include <cmath>
#include <cstdint>

namespace avsec {

/// Deterministic counter-based random stream identified by (seed, stream id).
///
/// Output i of a stream is mix(key + i * golden_gamma) with the Stafford
/// mix13 finalizer, i.e. a keyed SplitMix64 sequence. Streams are plain
/// values: copy one to replay it, call substream() to derive statistically
/// independent children. The draw sequence depends only on (seed, stream id,
/// counter), never on thread scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_(stream_id), key_(derive_key(seed, stream_id)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64() {
    std::uint64_t z = key_ + (counter_++) * golden_gamma;
    return mix(z);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (cosine branch). Consumes exactly two
  /// 64-bit draws per call, so the counter advance is input-independent.
  double gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  /// Child stream for fan-out; (parent id, child index) pairs map to
  /// distinct ids, so pre-split workers never share a sequence.
  RngStream substream(std::uint64_t child) const {
    return RngStream(seed_, mix(stream_ + (child + 1) * golden_gamma));
  }

 private:
  static constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ull;
  static constexpr double two_pi = 6.283185307179586476925286766559;

  // Stafford mix13 variant of the SplitMix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  static constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
    return mix(mix(seed ^ 0x5851f42d4c957f2dull) + mix(stream ^ 0x14057b7ef767814full));
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace avsec
