#ifndef HACCV_RNG_HPP
#define HACCV_RNG_HPP

#include <cstdint>
#include <random>

namespace haccv {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}
}  // namespace detail

/// One RNG substream, keyed by (master seed, repetition, series).
///
/// The key fully determines the stream, so draws are reproducible regardless
/// of which thread runs the repetition.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t repetition, std::uint64_t series)
      : engine_(detail::splitmix64(
            detail::splitmix64(master_seed ^ detail::splitmix64(repetition + 1)) ^
            detail::splitmix64(0xA0761D6478BD642FULL * (series + 1)))) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace haccv

#endif
