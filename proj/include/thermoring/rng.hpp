#pragma once

// Deterministic random source for tests, defect sampling, and the CLI.
// mt19937_64 has a standardized sequence, so identical seeds give
// identical streams on every platform.

#include <cstdint>
#include <random>
#include <vector>

namespace thermoring {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi] inclusive.  Modulo bias is irrelevant at
  // the ranges used here and keeps the stream reproducible.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool coin() { return (gen_() & 1u) != 0; }

  // Uniform point on the probability simplex (Dirichlet(1,...,1)) via
  // normalized exponentials.
  std::vector<double> simplex(int n) {
    std::vector<double> p(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double u = uniform();
      if (u <= 0.0) u = 0x1.0p-53;
      p[i] = -std::log(u);
      total += p[i];
    }
    for (int i = 0; i < n; ++i) p[i] /= total;
    return p;
  }

  // Independent child stream; deterministic in (seed, stream).
  Rng fork(std::uint64_t stream) const {
    std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return Rng(z ^ (z >> 31));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace thermoring
