#pragma once

// Shared builders for planted-structure instances used across the test
// suites and the acceptance runner.

#include "geninv/random.hpp"

namespace geninv::testing {

struct Planted {
  Matrix matrix;
  std::size_t rank = 0;
  std::size_t index = 0;
};

// diag(invertible core of size r, nilpotent of index k), optionally
// conjugated by a well-conditioned similarity. Expected Drazin index is k
// when a tail exists, otherwise 0.
inline Planted planted_matrix(Rng& rng, std::size_t n, std::size_t core,
                              bool conjugate,
                              const Tolerances& tol = Tolerances::defaults()) {
  Planted out;
  const std::size_t tail = n - core;
  Matrix m(n, n);
  if (core > 0) m.set_block(0, 0, random_invertible(rng, core));
  std::size_t k = 0;
  if (tail > 0) {
    k = 1 + rng.index(tail);
    m.set_block(core, core, random_nilpotent(rng, tail, k));
  }
  if (conjugate) {
    m = conjugate_by(random_similarity(rng, n, tol), m, tol);
  }
  out.matrix = std::move(m);
  out.rank = core;  // rank of the core part; powers shed the nilpotent part
  out.index = tail == 0 ? 0 : k;
  return out;
}

// Nilpotent + perturbation pairs satisfying t s^2 = 0 and t s t = 0, mixing
// the cancellation, coupled and degenerate shapes.
inline std::pair<Matrix, Matrix> orthogonal_sum_instance(
    Rng& rng, std::size_t n, const Tolerances& tol = Tolerances::defaults()) {
  Matrix s(n, n), t(n, n);
  switch (rng.index(4)) {
    case 0: {  // s of index <= 3, t = -s: the sum vanishes
      if (n >= 2) s = random_nilpotent(rng, n, std::min<std::size_t>(3, n));
      t = -s;
      break;
    }
    case 1: {  // coupled tail with invertible block
      const std::size_t m1 = 1 + rng.index(n);
      const std::size_t m2 = n - m1;
      Matrix nil(m2, m2);
      if (m2 >= 2) nil = random_nilpotent(rng, m2, 2);
      s.set_block(m1, m1, nil);
      t.set_block(0, 0, random_invertible(rng, m1));
      t.set_block(0, m1, random_matrix(rng, m1, m2, 1.0));
      t.set_block(m1, m1, -nil);
      break;
    }
    case 2: {  // s = 0
      t = random_matrix(rng, n, n, 1.0);
      break;
    }
    default: {  // t = 0
      if (n >= 2) s = random_nilpotent(rng, n, 1 + rng.index(n));
      break;
    }
  }
  if (rng.chance(0.5)) {
    const Matrix sim = random_similarity(rng, n, tol);
    const Matrix inv = inverse(sim, tol);
    s = sim * s * inv;
    t = sim * t * inv;
  }
  return {s, t};
}

// Nilpotent + perturbation pairs satisfying s^2 t = s t s and t^2 s = t s t:
// polynomials in one shift, or a shift against a run-constant diagonal.
inline std::pair<Matrix, Matrix> commuting_sum_instance(
    Rng& rng, std::size_t n, const Tolerances& tol = Tolerances::defaults()) {
  Matrix s(n, n), t(n, n);
  if (rng.chance(0.5)) {
    // Polynomials in the unit shift.
    Matrix shift(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) shift(i, i + 1) = 1.0;
    Matrix pw = shift;
    for (std::size_t k = 1; k < n && k <= 3; ++k) {
      if (k == 1 || rng.chance(0.5)) s = s + rng.entry(1.0) * pw;
      if (rng.chance(0.5)) t = t + rng.entry(1.0) * pw;
      pw = pw * shift;
    }
    if (rng.chance(0.6)) t = t + rng.entry(1.5) * Matrix::identity(n);
  } else {
    // Shift against a diagonal that is constant past the run head.
    const Complex v = rng.chance(0.3) ? Complex{} : rng.entry(1.5);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      s(i, i + 1) = Complex{rng.uniform(0.3, 1.0), 0.0};
      t(i + 1, i + 1) = v;
    }
    t(0, 0) = rng.chance(0.5) ? Complex{} : v;
  }
  if (rng.chance(0.5)) {
    const Matrix sim = random_similarity(rng, n, tol);
    const Matrix inv = inverse(sim, tol);
    s = sim * s * inv;
    t = sim * t * inv;
  }
  return {s, t};
}

// Relative deviation in the internal residual norm.
inline double deviation(const Matrix& x, const Matrix& y) {
  return norm(x - y, NormKind::operator_inf) /
         (1.0 + norm(y, NormKind::operator_inf));
}

}  // namespace geninv::testing
