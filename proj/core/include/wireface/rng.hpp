#pragma once

#include <cstdint>
#include <random>

namespace wireface {

// Deterministic RNG with explicit bit-to-double mappings. The standard
// distributions are implementation-defined, so all draws go through our
// own conversions to keep corpora and training runs reproducible.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Uniform integer in [0, n).
  int uniform_int(int n);

  // Standard normal via Box-Muller.
  double normal();

  // Derives an independent stream seed from (master, index).
  static uint64_t derive(uint64_t master, uint64_t index);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace wireface
