#ifndef SKG_RNG_HPP_
#define SKG_RNG_HPP_

#include <array>
#include <cstdint>

namespace skg {

// Philox4x32-10 (Salmon et al., Random123). Stateless: one call maps a
// 128-bit counter and a 64-bit key to 128 random bits.
std::array<std::uint32_t, 4> Philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Random stream addressed by (seed, stream id). Draw number i of a stream is a
// pure function of (seed, stream, i), so streams can be consumed in any order
// by any thread with identical results.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t NextU64();
  // Uniform on the open interval (0, 1).
  double NextOpenUnit() {
    return (static_cast<double>(NextU64() >> 11) + 0.5) * 0x1.0p-53;
  }
  std::uint64_t position() const noexcept { return position_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t position_ = 0;
  std::uint64_t block_ = ~std::uint64_t{0};
  std::array<std::uint32_t, 4> buffer_{};
};

// SplitMix64 finalizer; used to derive per-job seeds from a master seed.
std::uint64_t Mix64(std::uint64_t x);
std::uint64_t HashCombine(std::uint64_t a, std::uint64_t b);

}  // namespace skg

#endif  // SKG_RNG_HPP_
