#pragma once

#include <cstdint>
#include <string>

namespace pt {

// Deterministic splitmix64 generator. We avoid <random> distributions so that
// reports are byte-identical for a given seed across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n).
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

  int range(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() & 1u) != 0; }

  // Uniform in [0, 1).
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Roughly standard normal (sum of uniforms keeps determinism trivial).
  double gauss() {
    double s = 0.0;
    for (int i = 0; i < 12; ++i) s += real();
    return s - 6.0;
  }

  // Independent stream for a named sub-task; seed derivation is stable.
  Rng fork(const std::string& name) const {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : name) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return Rng(state_ ^ h);
  }

 private:
  uint64_t state_;
};

}  // namespace pt
