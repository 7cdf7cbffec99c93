#include "geninv/drazin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

namespace geninv {

namespace {

double residual_scale(const Matrix& m) {
  return norm(m, NormKind::operator_inf);
}

void require_square(const Matrix& m, const char* op) {
  if (!m.is_square()) {
    throw ShapeError(std::string(op) + ": matrix must be square");
  }
}

// Moore-Penrose pseudo-inverse through one rank factorization:
// m = C B  =>  m^+ = B^* (B B^*)^{-1} (C^* C)^{-1} C^*.
// Internal only; used by the power-formula cross-check route. The rank
// decision honors an ambient scale for the same reason drazin() does.
Matrix pseudo_inverse(const Matrix& m, const Tolerances& tol,
                      double ambient_scale) {
  const double thresh =
      tol.rank_rel * static_cast<double>(std::max(m.rows(), m.cols())) *
      std::max(norm(m, NormKind::operator_inf), ambient_scale);
  auto [c, b] = detail::full_rank_factorization_at_threshold(m, thresh);
  if (c.cols() == 0) return Matrix(m.cols(), m.rows());
  Matrix bh = b.conjugate_transpose();
  Matrix ch = c.conjugate_transpose();
  return bh * inverse(b * bh, tol) * inverse(ch * c, tol) * ch;
}

void verify_drazin_identities(const Matrix& a, const Matrix& x,
                              std::size_t index, const Tolerances& tol) {
  const double na = residual_scale(a);
  const double nx = residual_scale(x);
  const double commute =
      residual_scale(a * x - x * a) / (1.0 + na * nx);
  const double outer = residual_scale(x * a * x - x) / (1.0 + nx);
  Matrix ak = power(a, index);
  const double chain =
      residual_scale(a * ak * x - ak) / (1.0 + residual_scale(ak));
  if (commute > tol.equality_rel || outer > tol.equality_rel ||
      chain > tol.equality_rel) {
    std::ostringstream msg;
    msg << "drazin: identities not met within tolerance (residuals "
        << commute << ", " << outer << ", " << chain << ")";
    throw NumericError(msg.str());
  }
}

}  // namespace

DrazinResult drazin(const Matrix& a, const Tolerances& tol,
                    double ambient_scale) {
  require_square(a, "drazin");
  const std::size_t n = a.rows();

  DrazinResult res;
  if (n == 0) {
    res.inverse = res.spectral_idempotent = res.core_part = res.nil_part =
        Matrix(0, 0);
    res.index = 0;
    return res;
  }

  // Recursive rank factorization. After k steps `cur` is B_k...B_1 C_1...C_k
  // with rank(cur) = rank(a^{k+1}); the chain stops when cur is invertible
  // (index k) or numerically zero (a nilpotent of index k+1). Every rank
  // decision is anchored to the scale of a itself: deeper levels may consist
  // purely of rounding noise, which must collapse to rank zero rather than
  // pass a threshold relative to its own vanishing norm.
  const double pivot_thresh =
      tol.rank_rel * static_cast<double>(n) *
      std::max(norm(a, NormKind::operator_inf), ambient_scale);
  std::vector<Matrix> lefts, rights;
  Matrix cur = a;
  std::size_t k = 0;
  Matrix x;
  for (;;) {
    const std::size_t r = detail::rank_at_threshold(cur, pivot_thresh);
    if (r == cur.rows()) {
      if (k == 0) {
        x = inverse(a, tol);
        res.index = 0;
      } else {
        Matrix core = power(inverse(cur, tol), k + 1);
        for (auto it = lefts.rbegin(); it != lefts.rend(); ++it)
          core = *it * core;
        for (const Matrix& right : rights) core = core * right;
        x = std::move(core);
        res.index = k;
      }
      break;
    }
    if (r == 0) {
      x = Matrix(n, n);
      res.index = k + 1;
      break;
    }
    auto [c, b] =
        detail::full_rank_factorization_at_threshold(cur, pivot_thresh);
    cur = b * c;
    lefts.push_back(std::move(c));
    rights.insert(rights.begin(), std::move(b));
    ++k;
  }

  verify_drazin_identities(a, x, res.index, tol);

  res.inverse = std::move(x);
  res.spectral_idempotent = Matrix::identity(n) - a * res.inverse;
  res.core_part = a * a * res.inverse;
  res.nil_part = a * res.spectral_idempotent;
  return res;
}

Matrix drazin_via_power_formula(const Matrix& a, std::size_t k,
                                const Tolerances& tol) {
  require_square(a, "drazin_via_power_formula");
  Matrix ak = power(a, k);
  // a^{2k+1} can collapse to rounding noise (a nilpotent of index <= k);
  // its rank must be judged against the scale the power would have.
  const double base = std::max(1.0, norm(a, NormKind::operator_inf));
  const double ambient = std::pow(base, static_cast<double>(2 * k + 1));
  return ak * pseudo_inverse(power(a, 2 * k + 1), tol, ambient) * ak;
}

Matrix group_inverse(const Matrix& a, const Tolerances& tol) {
  DrazinResult d = drazin(a, tol);
  if (d.index > 1) {
    std::ostringstream msg;
    msg << "group_inverse: matrix has Drazin index " << d.index;
    throw NotGroupInvertibleError(msg.str(), d.index);
  }
  return d.inverse;
}

Matrix corner_inverse(const Matrix& p, const Matrix& m, const Tolerances& tol) {
  require_square(p, "corner_inverse");
  require_square(m, "corner_inverse");
  if (p.rows() != m.rows()) {
    throw ShapeError("corner_inverse: p and m must have the same size");
  }
  const double pn = residual_scale(p);
  const double idem = residual_scale(p * p - p) / (1.0 + pn * pn);
  if (idem > tol.equality_rel) {
    throw PreconditionError("corner_inverse: p is not idempotent", "p^2=p",
                            idem);
  }
  const Matrix completion =
      p * m * p + (Matrix::identity(p.rows()) - p);
  Matrix inv;
  try {
    inv = inverse(completion, tol);
  } catch (const SingularError&) {
    throw CornerSingularError(
        "corner_inverse: corner element is not invertible in pAp");
  }
  return p * inv * p;
}

SplitCheckResult split_check(const Matrix& e, const Matrix& a,
                             const Tolerances& tol) {
  require_square(e, "split_check");
  require_square(a, "split_check");
  if (e.rows() != a.rows()) {
    throw ShapeError("split_check: e and a must have the same size");
  }
  const Matrix q = Matrix::identity(e.rows()) - e;
  const double en = residual_scale(e);
  const double idem = residual_scale(e * e - e) / (1.0 + en * en);
  if (idem > tol.equality_rel) {
    throw PreconditionError("split_check: e is not idempotent", "e^2=e", idem);
  }
  const Matrix cross = e * a * q;
  const double cross_res = residual_scale(cross) /
                           (1.0 + en * residual_scale(a) * residual_scale(q));
  if (cross_res > tol.zero_rel) {
    throw PreconditionError("split_check: e a (1-e) != 0", "e.a.(1-e)=0",
                            cross_res);
  }

  SplitCheckResult out;
  const double prod_scale = residual_scale(e) * residual_scale(a) +
                            residual_scale(a) * residual_scale(q);
  const Matrix ad = drazin(a, tol).inverse;
  out.left_drazin = drazin(e * a, tol, prod_scale).inverse;
  out.left_projected = e * ad;
  out.right_drazin = drazin(a * q, tol, prod_scale).inverse;
  out.right_projected = ad * q;
  out.holds = approx_equal(out.left_drazin, out.left_projected, tol) &&
              approx_equal(out.right_drazin, out.right_projected, tol);
  return out;
}

bool cline_check(const Matrix& x, const Matrix& y, const Tolerances& tol) {
  require_square(x, "cline_check");
  require_square(y, "cline_check");
  if (x.rows() != y.rows()) {
    throw ShapeError("cline_check: x and y must have the same size");
  }
  const double prod_scale = residual_scale(x) * residual_scale(y);
  const Matrix lhs = drazin(x * y, tol, prod_scale).inverse;
  const Matrix yx_d = drazin(y * x, tol, prod_scale).inverse;
  const Matrix rhs = x * yx_d * yx_d * y;
  return approx_equal(lhs, rhs, tol);
}

}  // namespace geninv
