#pragma once

#include <cstdint>

namespace detabp {

// Counter-based deterministic generator: output i of stream `seed` is
// splitmix64(seed, i). Stateless apart from the counter, so runs are
// reproducible from the single 64-bit seed regardless of call order
// across platforms and standard libraries.
class rng {
 public:
  explicit rng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed ^ (stream * 0x9e3779b97f4a7c15ull)), counter_(0) {}

  std::uint64_t next() {
    std::uint64_t z = seed_ + (++counter_) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection, n > 0.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  // Uniform in [lo, hi] inclusive.
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool flip() { return (next() & 1) != 0; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace detabp
