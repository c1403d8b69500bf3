#pragma once

#include <array>
#include <cstdint>

namespace assouad {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t z);

/// Seed for the stream identified by (master, replica, coordinate).
///
/// Monte-Carlo batches draw replica i from derive_seed(master, i, 0); the
/// coordinates of a d-dimensional path use derive_seed(seed, 0, j). The
/// result depends only on the triple, never on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replica,
                          std::uint64_t coordinate);

/// Counter-based random stream keyed by a 64-bit seed.
///
/// Draw k of the stream is a pure function of (seed, k), so two streams with
/// the same seed are identical on every platform and thread count.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Standard normal by the Box-Muller transform.
  double normal() noexcept;

  /// Unit-rate exponential.
  double exponential() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

} // namespace assouad
