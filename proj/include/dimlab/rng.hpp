#pragma once

#include <array>
#include <cstdint>

namespace dimlab {

/// Counter-based random stream (Philox4x32-10). The sequence is a pure function of
/// (seed, stream_id), so replicate r always sees the same draws regardless of which
/// thread runs it or in what order.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;  // 32-bit words consumed from block_
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// Gamma(shape, 1) draw (Marsaglia-Tsang, with the U^{1/a} boost for shape < 1).
double sample_gamma(RngStream& rng, double shape);
/// Beta(a, b) draw via the Gamma ratio X/(X+Y).
double sample_beta(RngStream& rng, double a, double b);

}  // namespace dimlab
