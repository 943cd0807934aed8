#ifndef OG_RNG_HPP
#define OG_RNG_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace og {

// SplitMix64: the one PRNG used everywhere randomness appears. Seedable,
// splittable, and bit-reproducible across platforms, unlike the std
// distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  bool bernoulli(double p) { return next_double() < p; }

  // Derive an independent child generator. Children of distinct split calls
  // on the same parent have distinct seeds.
  SplitMix64 split() { return SplitMix64(next_u64()); }

  // Inverse-CDF sample from a nonnegative weight vector (need not be
  // normalized). Returns the last index if rounding pushes past the total.
  std::size_t sample_index(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = next_double() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    return weights.empty() ? 0 : weights.size() - 1;
  }

 private:
  std::uint64_t state_;
};

}  // namespace og

#endif  // OG_RNG_HPP
