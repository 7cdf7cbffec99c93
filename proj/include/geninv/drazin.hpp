#pragma once

#include "geninv/matrix.hpp"

namespace geninv {

/// Drazin inverse of a square matrix together with the pieces of its
/// core-nilpotent structure.
///
/// The inverse x is the unique matrix with a x = x a, x a x = x and
/// a^{k+1} x = a^k, where k = index is the smallest exponent at which the
/// ranks of successive powers of a stabilize. index 0 means a is invertible,
/// index <= 1 means a is group invertible.
struct DrazinResult {
  Matrix inverse;              ///< a^D
  std::size_t index = 0;       ///< ind(a)
  Matrix spectral_idempotent;  ///< I - a a^D, projects onto the nilpotent part
  Matrix core_part;            ///< a^2 a^D, the group-invertible summand
  Matrix nil_part;             ///< a (I - a a^D), nilpotent of index ind(a)
};

/// Result of the idempotent splitting check: for an idempotent e with
/// e a (1-e) = 0, the Drazin inverse distributes over the split,
/// (e a)^D = e a^D and (a (1-e))^D = a^D (1-e).
struct SplitCheckResult {
  bool holds = false;
  Matrix left_drazin;       ///< (e a)^D computed directly
  Matrix left_projected;    ///< e a^D
  Matrix right_drazin;      ///< (a (1-e))^D computed directly
  Matrix right_projected;   ///< a^D (1-e)
};

/// Computes the Drazin inverse by recursive rank factorization: a = C B,
/// then a^D = C (B C)^D^2-shifted ... recursively, until the inner square
/// factor is invertible (ranks stabilized) or vanishes (a nilpotent). The
/// rank chain visited along the way equals rank(a), rank(a^2), ..., so the
/// reported index is detected exactly by rank stabilization.
///
/// `ambient_scale` widens the rank threshold to the scale of a surrounding
/// computation: when a is a projected product like a^pi b, residual noise
/// of magnitude eps * |a^pi| |b| must collapse to zero instead of being
/// inverted, so callers pass the product of the factor norms.
///
/// Throws NumericError if the three defining identities fail to verify
/// within tolerance on the computed result.
DrazinResult drazin(const Matrix& a,
                    const Tolerances& tol = Tolerances::defaults(),
                    double ambient_scale = 0.0);

/// Independent route for cross-checking: a^D = a^k (a^{2k+1})^+ a^k for any
/// k >= ind(a), with the pseudo-inverse taken through a rank factorization.
Matrix drazin_via_power_formula(const Matrix& a, std::size_t k,
                                const Tolerances& tol = Tolerances::defaults());

/// Group inverse a^# (the Drazin inverse when ind(a) <= 1).
/// Throws NotGroupInvertibleError carrying the measured index otherwise.
Matrix group_inverse(const Matrix& a,
                     const Tolerances& tol = Tolerances::defaults());

/// Inverse of the corner element p m p inside the corner algebra p A p,
/// realized through the invertible completion M = p m p + (I - p):
/// returns y = p M^{-1} p, which satisfies y (p m p) = (p m p) y = p.
/// Throws CornerSingularError when the completion is singular, i.e. the
/// corner element is not invertible in p A p.
Matrix corner_inverse(const Matrix& p, const Matrix& m,
                      const Tolerances& tol = Tolerances::defaults());

/// Verifies the idempotent splitting identities for e and a.
/// Precondition (PreconditionError otherwise): e idempotent, e a (1-e) = 0.
SplitCheckResult split_check(const Matrix& e, const Matrix& a,
                             const Tolerances& tol = Tolerances::defaults());

/// Checks the product-order identity (x y)^D = x ((y x)^D)^2 y.
bool cline_check(const Matrix& x, const Matrix& y,
                 const Tolerances& tol = Tolerances::defaults());

}  // namespace geninv
