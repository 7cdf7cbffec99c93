#include "geninv/random.hpp"

#include <algorithm>
#include <cmath>

namespace geninv {

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                     double scale, bool real_only) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = real_only ? Complex{rng.uniform(-scale, scale), 0.0}
                          : rng.entry(scale);
  return m;
}

Matrix random_invertible(Rng& rng, std::size_t n) {
  Matrix m = random_matrix(rng, n, n, 0.5);
  for (std::size_t i = 0; i < n; ++i) {
    double offdiag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) offdiag += std::abs(m(i, j));
    }
    // Push the diagonal past the row sum, with a random phase.
    const double mag = offdiag + rng.uniform(0.5, 1.5);
    const double phase = rng.uniform(0.0, 6.283185307179586);
    m(i, i) = Complex{mag * std::cos(phase), mag * std::sin(phase)};
  }
  return m;
}

Matrix random_similarity(Rng& rng, std::size_t n, const Tolerances& tol) {
  // I + small perturbation, then a mild diagonal scaling. The l1 condition
  // stays near (1+t)/(1-t) * max/min scale, comfortably under the cap the
  // generators assume.
  for (;;) {
    Matrix s = Matrix::identity(n);
    const Matrix r = random_matrix(rng, n, n, 1.0);
    const double rn = std::max(1e-12, norm(r, NormKind::entrywise_l1));
    const double t = rng.uniform(0.05, 0.35) / rn;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s(i, j) += t * r(i, j);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = rng.uniform(0.7, 1.4);
      for (std::size_t j = 0; j < n; ++j) s(i, j) *= d;
    }
    try {
      const Matrix si = inverse(s, tol);
      const double cond = norm(s, NormKind::operator_inf) *
                          norm(si, NormKind::operator_inf);
      if (cond <= 50.0) return s;
    } catch (const SingularError&) {
    }
  }
}

Matrix random_idempotent(Rng& rng, std::size_t n, std::size_t rank,
                         const Tolerances& tol) {
  Matrix d(n, n);
  for (std::size_t i = 0; i < rank && i < n; ++i) d(i, i) = 1.0;
  const Matrix s = random_similarity(rng, n, tol);
  return s * d * inverse(s, tol);
}

Matrix random_nilpotent(Rng& rng, std::size_t n, std::size_t index) {
  if (index > std::max<std::size_t>(n, 1)) {
    throw ShapeError("random_nilpotent: index exceeds dimension");
  }
  Matrix m(n, n);
  if (index <= 1 || n == 0) return m;
  // One chain of length `index` guarantees the exact index; remaining slots
  // get independent shorter chains or zeros.
  std::size_t pos = 0;
  auto add_chain = [&](std::size_t len) {
    for (std::size_t i = 0; i + 1 < len; ++i) {
      double mag = rng.uniform(0.3, 1.0);
      m(pos + i, pos + i + 1) = Complex{mag, 0.0} * (rng.chance(0.5) ? 1.0 : -1.0);
    }
    pos += len;
  };
  add_chain(index);
  while (pos < n) {
    const std::size_t remaining = n - pos;
    const std::size_t len = 1 + rng.index(std::min(remaining, index));
    add_chain(len);
  }
  return m;
}

}  // namespace geninv
