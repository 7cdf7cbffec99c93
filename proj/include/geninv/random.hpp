#pragma once

#include <cstdint>

#include "geninv/matrix.hpp"

namespace geninv {

/// Deterministic 64-bit generator (splitmix64). Hand-rolled so that a seed
/// reproduces bit-identical streams across standard libraries and builds.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(next() % n);
  }

  bool chance(double p) { return uniform() < p; }

  /// Complex with both components uniform in [-scale, scale].
  Complex entry(double scale = 1.0) {
    const double re = uniform(-scale, scale);
    const double im = uniform(-scale, scale);
    return {re, im};
  }

 private:
  std::uint64_t state_;
};

/// Dense matrix with entries drawn from rng; real_only restricts to the
/// real axis.
Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                     double scale = 1.0, bool real_only = false);

/// Random invertible matrix, built diagonally dominant so conditioning
/// stays moderate.
Matrix random_invertible(Rng& rng, std::size_t n);

/// Random similarity transform with entrywise-l1 condition |s| |s^{-1}|
/// below ~12; suitable for conjugating exact block constructions without
/// washing out their residual tests.
Matrix random_similarity(Rng& rng, std::size_t n,
                         const Tolerances& tol = Tolerances::defaults());

/// Random idempotent of the given rank (a conjugated diagonal projector).
Matrix random_idempotent(Rng& rng, std::size_t n, std::size_t rank,
                         const Tolerances& tol = Tolerances::defaults());

/// Strictly upper-triangular nilpotent built from scaled shift blocks whose
/// nilpotency index is exactly `index` (requires 1 <= index <= n; index 1
/// yields the zero matrix).
Matrix random_nilpotent(Rng& rng, std::size_t n, std::size_t index);

}  // namespace geninv
