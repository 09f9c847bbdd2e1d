#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace radcam {

// All randomness in the project flows through this class so that a fixed
// seed reproduces every artifact byte for byte. The engine (mt19937_64) has
// a standard-mandated output sequence; the distribution transforms below are
// implemented by hand because the std:: distributions are not portable.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // Uniform double in [0, 1) with 53 bits of entropy.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; the second deviate of each pair is cached.
  double normal(double mu, double sigma) {
    if (has_cached_) {
      has_cached_ = false;
      return mu + sigma * cached_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return mu + sigma * r * std::cos(a);
  }

  // Knuth's product method; fine for the small rates used here.
  int poisson(double lambda) {
    const double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  // Unbiased integer in [0, n) by rejection.
  uint64_t uniform_int(uint64_t n) {
    const uint64_t threshold = -n % n;  // 2^64 mod n
    for (;;) {
      const uint64_t r = eng_();
      if (r >= threshold) return r % n;
    }
  }

  template <typename V>
  void shuffle(V& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Child stream derivation: seed -> (stream, index) -> child seed.
// Documented contract: derive_seed(s, a, i) == splitmix64(splitmix64(s ^ splitmix64(a)) ^ splitmix64(i)).
inline uint64_t derive_seed(uint64_t master, uint64_t stream, uint64_t index = 0) {
  return splitmix64(splitmix64(master ^ splitmix64(stream)) ^ splitmix64(index));
}

}  // namespace radcam
