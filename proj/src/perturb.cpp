#include "geninv/perturb.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace geninv {

namespace {

constexpr double kDenomFloor = 1e-30;
const double kInf = std::numeric_limits<double>::infinity();

double residual_scale(const Matrix& m) {
  return norm(m, NormKind::operator_inf);
}

void require_pair(const Matrix& a, const Matrix& b, const char* op) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw ShapeError(std::string(op) +
                     ": operands must be square and of equal size");
  }
}

void check_corner(const Matrix& m, const Matrix& proj_l, const Matrix& proj_r,
                  const char* name, const Tolerances& tol) {
  const Matrix residual = m - proj_l * m * proj_r;
  const double res = residual_scale(residual) / (1.0 + residual_scale(m));
  if (res > tol.zero_rel) {
    throw PreconditionError(
        std::string("block_triangular_drazin: ") + name +
            " lies outside its corner",
        name, res);
  }
}

std::size_t nil_index_or_throw(const Matrix& m, const Tolerances& tol,
                               const char* what) {
  auto ni = nilpotency_index(m, tol);
  if (!ni) {
    throw NumericError(std::string(what) +
                       ": expected nilpotent part is not nilpotent");
  }
  return *ni;
}

void check_series_tail(const Matrix& extra, double scale,
                       const Tolerances& tol, const char* what) {
  if (residual_scale(extra) > tol.zero_rel * std::max(1.0, scale)) {
    throw NumericError(std::string(what) +
                       ": truncated series has a non-negligible next term");
  }
}

void verify_group_identities(const Matrix& m, const Matrix& g,
                             const Tolerances& tol, const char* what) {
  const double nm = residual_scale(m);
  const double ng = residual_scale(g);
  const double commute = residual_scale(m * g - g * m) / (1.0 + nm * ng);
  const double inner = residual_scale(g * m * g - g) / (1.0 + ng);
  const double outer = residual_scale(m * g * m - m) / (1.0 + nm);
  if (commute > tol.equality_rel || inner > tol.equality_rel ||
      outer > tol.equality_rel) {
    std::ostringstream msg;
    msg << what << ": result fails the group-inverse identities (residuals "
        << commute << ", " << inner << ", " << outer << ")";
    throw NumericError(msg.str());
  }
}

double scaled_residual(double raw, double denom) {
  return raw / (denom + kDenomFloor);
}

}  // namespace

Matrix block_triangular_drazin(const Matrix& p, const Matrix& a,
                               const Matrix& b, const Matrix& c,
                               BlockOrientation orientation,
                               const Tolerances& tol) {
  require_pair(p, a, "block_triangular_drazin");
  require_pair(a, b, "block_triangular_drazin");
  require_pair(b, c, "block_triangular_drazin");
  const Matrix id = Matrix::identity(p.rows());
  const Matrix q = id - p;
  const double pn = residual_scale(p);
  const double idem = residual_scale(p * p - p) / (1.0 + pn * pn);
  if (idem > tol.equality_rel) {
    throw PreconditionError("block_triangular_drazin: p is not idempotent",
                            "p^2=p", idem);
  }
  check_corner(a, p, p, "a", tol);
  check_corner(b, q, q, "b", tol);
  if (orientation == BlockOrientation::lower) {
    check_corner(c, q, p, "c", tol);
  } else {
    check_corner(c, p, q, "c", tol);
  }

  const DrazinResult dza = drazin(a, tol);
  const DrazinResult dzb = drazin(b, tol);

  // The coupling block of the inverse. Both series terminate because their
  // running powers are multiplied into the nilpotent parts of a and b.
  auto coupling = [&](const Matrix& ud, const Matrix& upi, const Matrix& vd,
                      const Matrix& vpi, const Matrix& u, const Matrix& v,
                      const Matrix& cc) {
    // ud/vd: Drazin inverses of u and v; result is
    //   (vd)^2 (sum_i (vd)^i cc u^i) u^pi
    // + v^pi (sum_i v^i cc (ud)^i) (ud)^2
    // - vd cc ud.
    const std::size_t n1 = nil_index_or_throw(u * upi, tol,
                                              "block_triangular_drazin");
    const std::size_t n2 = nil_index_or_throw(v * vpi, tol,
                                              "block_triangular_drazin");
    Matrix s1(p.rows(), p.cols());
    {
      Matrix vp = id, up = id;
      for (std::size_t i = 0; i < n1; ++i) {
        s1 = s1 + vp * cc * up;
        vp = vp * vd;
        up = up * u;
      }
      const Matrix extra = vd * vd * (vp * cc * up) * upi;
      check_series_tail(extra, residual_scale(s1), tol,
                        "block_triangular_drazin");
    }
    Matrix s2(p.rows(), p.cols());
    {
      Matrix vp = id, up = id;
      for (std::size_t i = 0; i < n2; ++i) {
        s2 = s2 + vp * cc * up;
        vp = v * vp;
        up = up * ud;
      }
      const Matrix extra = vpi * (vp * cc * up) * (ud * ud);
      check_series_tail(extra, residual_scale(s2), tol,
                        "block_triangular_drazin");
    }
    return vd * vd * s1 * upi + vpi * s2 * (ud * ud) - vd * cc * ud;
  };

  Matrix z;
  if (orientation == BlockOrientation::lower) {
    z = coupling(dza.inverse, dza.spectral_idempotent, dzb.inverse,
                 dzb.spectral_idempotent, a, b, c);
  } else {
    z = coupling(dzb.inverse, dzb.spectral_idempotent, dza.inverse,
                 dza.spectral_idempotent, b, a, c);
  }
  const Matrix x = a + b + c;
  const Matrix xd = dza.inverse + dzb.inverse + z;

  // xd must be the Drazin inverse of the assembled block matrix; the index
  // of a block-triangular matrix is at most the sum of the corner indices,
  // and the chain identity holds for any exponent at or above it.
  const std::size_t xi = std::max<std::size_t>(1, dza.index + dzb.index + 1);
  const Matrix xk = power(x, xi);
  const double chain =
      residual_scale(x * xk * xd - xk) / (1.0 + residual_scale(xk));
  const double commute = residual_scale(x * xd - xd * x) /
                         (1.0 + residual_scale(x) * residual_scale(xd));
  const double inner =
      residual_scale(xd * x * xd - xd) / (1.0 + residual_scale(xd));
  if (commute > tol.equality_rel || inner > tol.equality_rel ||
      chain > tol.equality_rel) {
    throw NumericError(
        "block_triangular_drazin: assembled inverse fails verification");
  }
  return xd;
}

Matrix drazin_sum_nilpotent_orthogonal(const Matrix& s, const Matrix& t,
                                       const Tolerances& tol) {
  require_pair(s, t, "drazin_sum_nilpotent_orthogonal");
  auto ni = nilpotency_index(s, tol);
  if (!ni) {
    throw PreconditionError(
        "drazin_sum_nilpotent_orthogonal: s is not nilpotent", "s^n=0", 1.0);
  }
  const double ns = residual_scale(s), nt = residual_scale(t);
  const double r1 =
      scaled_residual(residual_scale(t * s * s), nt * ns * ns);
  if (r1 > tol.zero_rel) {
    throw PreconditionError("drazin_sum_nilpotent_orthogonal: t s^2 != 0",
                            "t.s^2=0", r1);
  }
  const double r2 =
      scaled_residual(residual_scale(t * s * t), nt * ns * nt);
  if (r2 > tol.zero_rel) {
    throw PreconditionError("drazin_sum_nilpotent_orthogonal: t s t != 0",
                            "t.s.t=0", r2);
  }

  const Matrix td = drazin(t, tol).inverse;
  const std::size_t n = *ni;
  Matrix sum(s.rows(), s.cols());
  Matrix sp = Matrix::identity(s.rows());  // s^i
  Matrix tp = td;                          // td^{i+1}
  for (std::size_t i = 0; i < n; ++i) {
    sum = sum + sp * tp + sp * tp * td * s;
    sp = sp * s;
    tp = tp * td;
  }
  check_series_tail(sp * tp + sp * tp * td * s, residual_scale(sum), tol,
                    "drazin_sum_nilpotent_orthogonal");
  return sum;
}

Matrix drazin_sum_nilpotent_commuting(const Matrix& s, const Matrix& t,
                                      const Tolerances& tol) {
  require_pair(s, t, "drazin_sum_nilpotent_commuting");
  auto ni = nilpotency_index(s, tol);
  if (!ni) {
    throw PreconditionError(
        "drazin_sum_nilpotent_commuting: s is not nilpotent", "s^n=0", 1.0);
  }
  const double ns = residual_scale(s), nt = residual_scale(t);
  const double r1 = scaled_residual(residual_scale(s * s * t - s * t * s),
                                    ns * ns * nt);
  if (r1 > tol.zero_rel) {
    throw PreconditionError("drazin_sum_nilpotent_commuting: s^2 t != s t s",
                            "s^2.t=s.t.s", r1);
  }
  const double r2 = scaled_residual(residual_scale(t * t * s - t * s * t),
                                    nt * nt * ns);
  if (r2 > tol.zero_rel) {
    throw PreconditionError("drazin_sum_nilpotent_commuting: t^2 s != t s t",
                            "t^2.s=t.s.t", r2);
  }

  const DrazinResult dzt = drazin(t, tol);
  const Matrix& td = dzt.inverse;
  const Matrix tpi = dzt.spectral_idempotent;
  const std::size_t n = *ni;
  Matrix s1(s.rows(), s.cols());
  Matrix s2(s.rows(), s.cols());
  Matrix tp = td;                          // td^{i+1}
  Matrix sp = Matrix::identity(s.rows());  // s^i
  double sign = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    s1 = s1 + sign * (tp * sp);
    s2 = s2 + (sign * static_cast<double>(i + 1)) * (tp * td * sp);
    tp = tp * td;
    sp = sp * s;
    sign = -sign;
  }
  check_series_tail(tp * sp, residual_scale(s1) + residual_scale(s2), tol,
                    "drazin_sum_nilpotent_commuting");
  return s1 + tpi * (s * s2);
}

ConditionReport check_conditions(const Matrix& a, const Matrix& b,
                                 ConditionSet set, NormKind nk,
                                 const Tolerances& tol) {
  require_pair(a, b, "check_conditions");
  ConditionReport rep;
  rep.theorem = set;

  const DrazinResult dza = drazin(a, tol);
  const Matrix& ad = dza.inverse;
  const Matrix& api = dza.spectral_idempotent;
  const DrazinResult dzb = drazin(b, tol);
  const Matrix& bd = dzb.inverse;

  rep.norm_value = norm(ad * b * (a * ad), nk);
  rep.norm_ok = rep.norm_value < 1.0;

  const double na = norm(a, nk);
  const double nb = norm(b, nk);
  const double napi = norm(api, nk);

  auto push = [&](const std::string& key, const Matrix& residual,
                  double denom) {
    const double raw = norm(residual, nk);
    rep.residuals.emplace_back(key, scaled_residual(raw, denom));
    rep.aux["raw:" + key] = raw;
  };

  switch (set) {
    case ConditionSet::orthogonal: {
      push("a^pi.b.a^2", api * b * (a * a), napi * nb * na * na);
      push("a^pi.b.a.b", api * b * a * b, napi * nb * na * nb);
      rep.aux["norm:a^d"] = norm(ad, nk);
      rep.aux["norm:a^d.b"] = norm(ad * b, nk);
      rep.aux["norm:a^pi"] = napi;
      rep.aux["norm:b.a^pi"] = norm(b * api, nk);
      rep.aux["norm:a^pi.a"] = norm(api * a, nk);
      rep.aux["norm:a^pi.b"] = norm(api * b, nk);
      rep.aux["norm:a^pi.b^d"] = norm(api * bd, nk);
      rep.aux["ratio:beta.gamma"] =
          rep.aux["norm:a^pi.a"] * rep.aux["norm:a^pi.b^d"];
      break;
    }
    case ConditionSet::commutative: {
      push("a^2.b.a^pi=a^pi.a.b.a", a * a * b * api - api * a * b * a,
           na * na * nb * napi);
      push("a^pi.b^2.a=b.a.b.a^pi", api * b * b * a - b * a * b * api,
           napi * nb * nb * na);
      const Matrix bpi = dzb.spectral_idempotent;
      rep.aux["norm:a^d"] = norm(ad, nk);
      rep.aux["norm:a^d.b"] = norm(ad * b, nk);
      rep.aux["norm:a^pi"] = napi;
      rep.aux["norm:b^d.a^pi"] = norm(bd * api, nk);
      rep.aux["norm:a.a^pi"] = norm(a * api, nk);
      rep.aux["ratio:mu.nu"] =
          rep.aux["norm:b^d.a^pi"] * rep.aux["norm:a.a^pi"];
      rep.aux["norm:b^pi.a.a^pi"] = norm(bpi * a * api, nk);
      rep.aux["norm:a^pi.b.a.a^d"] = norm(api * b * (a * ad), nk);
      rep.aux["norm:(a+b).a^pi.b.a.a^d"] =
          norm((a + b) * api * b * (a * ad), nk);
      break;
    }
    case ConditionSet::strict_commuting: {
      push("a^pi.b.a=a.b.a^pi", api * b * a - a * b * api, napi * nb * na);
      rep.aux["norm:a^d"] = norm(ad, nk);
      rep.aux["norm:a^d.b"] = norm(ad * b, nk);
      rep.aux["norm:a^pi"] = napi;
      rep.aux["norm:a"] = na;
      rep.aux["norm:b^d"] = norm(bd, nk);
      rep.aux["ratio:b^d.a"] = rep.aux["norm:b^d"] * na;
      break;
    }
  }

  rep.all_hold = rep.norm_ok;
  for (const auto& [key, value] : rep.residuals) {
    if (value > tol.zero_rel) rep.all_hold = false;
  }
  return rep;
}

namespace {

PerturbResult perturbed_orthogonal(const Matrix& a, const Matrix& b,
                                   SeriesMode mode, const Tolerances& tol) {
  PerturbResult res;
  res.mode = mode;

  const DrazinResult dza = drazin(a, tol);
  const Matrix p = a * dza.inverse;
  const Matrix& api = dza.spectral_idempotent;
  const Matrix sum = a + b;
  const Matrix id = Matrix::identity(a.rows());

  const DrazinResult dz_sum = drazin(sum, tol);
  const double proj_scale =
      residual_scale(api) * residual_scale(sum);
  const DrazinResult dz_proj = drazin(api * sum, tol, proj_scale);
  const bool sum_ok = dz_sum.index <= 1;
  const bool proj_ok = dz_proj.index <= 1;
  if (sum_ok != proj_ok) {
    throw NumericError(
        "perturbed_group_inverse: group invertibility of the sum and of its "
        "projection disagree numerically");
  }
  res.exists = sum_ok;
  res.projected_index = dz_proj.index;
  if (!res.exists) return res;

  res.corner_term = corner_inverse(p, sum, tol);

  const Matrix beta =
      mode == SeriesMode::literal
          ? Matrix(api * drazin(b, tol).inverse)
          : drazin(api * b, tol, residual_scale(api) * residual_scale(b))
                .inverse;
  const Matrix apia = api * a;
  const std::size_t n =
      nil_index_or_throw(apia, tol, "perturbed_group_inverse");

  // (projected sum)^# = sum_n (a^pi a)^n beta^{n+1}
  //                   + sum_n (a^pi a)^n beta^{n+2} (a^pi a).
  Matrix tail(a.rows(), a.cols());
  Matrix pw = id;      // (a^pi a)^n
  Matrix bp = beta;    // beta^{n+1}
  for (std::size_t i = 0; i < n; ++i) {
    tail = tail + pw * bp + pw * bp * beta * apia;
    pw = pw * apia;
    bp = bp * beta;
  }
  check_series_tail(pw * bp + pw * bp * beta * apia, residual_scale(tail),
                    tol, "perturbed_group_inverse");
  res.tail_term = tail;

  // The coupling series collapses to its first term because the projected
  // sum is group invertible (its nilpotent part vanishes).
  const Matrix b2 = p * b * api;
  const Matrix proj2 = api * sum * api;
  const Matrix proj_pi = id - proj2 * tail;
  res.z_term = res.corner_term * res.corner_term * b2 * proj_pi -
               res.corner_term * (b2 * tail);

  res.group_inv = res.corner_term + res.z_term + res.tail_term;
  verify_group_identities(sum, res.group_inv, tol, "perturbed_group_inverse");
  return res;
}

PerturbResult perturbed_commutative(const Matrix& a, const Matrix& b,
                                    SeriesMode mode, const Tolerances& tol) {
  PerturbResult res;
  res.mode = mode;

  const DrazinResult dza = drazin(a, tol);
  const Matrix p = a * dza.inverse;
  const Matrix& api = dza.spectral_idempotent;
  const Matrix sum = a + b;
  const Matrix id = Matrix::identity(a.rows());

  const DrazinResult dz_sum = drazin(sum, tol);
  const double proj_scale =
      residual_scale(sum) * residual_scale(api);
  const DrazinResult dz_proj = drazin(sum * api, tol, proj_scale);
  const bool sum_ok = dz_sum.index <= 1;
  const bool proj_ok = dz_proj.index <= 1;
  if (sum_ok != proj_ok) {
    throw NumericError(
        "perturbed_group_inverse: group invertibility of the sum and of its "
        "projection disagree numerically");
  }
  res.exists = sum_ok;
  res.projected_index = dz_proj.index;
  if (!res.exists) return res;

  res.corner_term = corner_inverse(p, sum, tol);

  const DrazinResult dzb = drazin(b, tol);
  const Matrix gamma =
      mode == SeriesMode::literal
          ? Matrix(dzb.inverse * api)
          : drazin(b * api, tol, residual_scale(b) * residual_scale(api))
                .inverse;
  const Matrix aapi = a * api;
  const Matrix bpi = dzb.spectral_idempotent;
  const std::size_t n =
      nil_index_or_throw(aapi, tol, "perturbed_group_inverse");

  // (projected sum)^# = sum_n (-1)^n gamma^{n+1} (a a^pi)^n
  //   + b^pi a a^pi sum_n (-1)^n (n+1) gamma^{n+2} (a a^pi)^n.
  Matrix s1(a.rows(), a.cols());
  Matrix s2(a.rows(), a.cols());
  Matrix gp = gamma;   // gamma^{n+1}
  Matrix pw = id;      // (a a^pi)^n
  double sign = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    s1 = s1 + sign * (gp * pw);
    s2 = s2 + (sign * static_cast<double>(i + 1)) * (gp * gamma * pw);
    gp = gp * gamma;
    pw = pw * aapi;
    sign = -sign;
  }
  check_series_tail(gp * pw, residual_scale(s1) + residual_scale(s2), tol,
                    "perturbed_group_inverse");
  const Matrix tail = s1 + bpi * (aapi * s2);
  res.tail_term = tail;

  const Matrix b4 = api * b * p;
  const Matrix proj_pi = api - tail * (sum * api);
  res.z_term = proj_pi * b4 * (res.corner_term * res.corner_term) -
               tail * (b4 * res.corner_term);

  res.group_inv = res.corner_term + res.z_term + res.tail_term;
  verify_group_identities(sum, res.group_inv, tol, "perturbed_group_inverse");
  return res;
}

}  // namespace

PerturbResult perturbed_group_inverse(const Matrix& a, const Matrix& b,
                                      ConditionSet set, SeriesMode mode,
                                      NormKind nk, const Tolerances& tol) {
  require_pair(a, b, "perturbed_group_inverse");
  if (set == ConditionSet::strict_commuting) {
    throw Error(
        "perturbed_group_inverse: the strict commuting set has no dedicated "
        "formula; use the commutative set");
  }
  const ConditionReport rep = check_conditions(a, b, set, nk, tol);
  if (!rep.all_hold) {
    throw HypothesisError(std::string("perturbed_group_inverse: hypotheses "
                                      "of condition set ") +
                          condition_set_label(set) + " do not hold");
  }
  return set == ConditionSet::orthogonal
             ? perturbed_orthogonal(a, b, mode, tol)
             : perturbed_commutative(a, b, mode, tol);
}

BoundBreakdown perturbation_bound(const Matrix& a, const Matrix& b,
                                  ConditionSet set, NormKind nk,
                                  const Tolerances& tol) {
  require_pair(a, b, "perturbation_bound");
  const ConditionReport rep = check_conditions(a, b, set, nk, tol);
  if (!rep.all_hold) {
    throw HypothesisError(std::string("perturbation_bound: hypotheses of "
                                      "condition set ") +
                          condition_set_label(set) + " do not hold");
  }

  BoundBreakdown out;
  out.norm_kind = nk;

  const DrazinResult dza = drazin(a, tol);
  const Matrix& ad = dza.inverse;
  const Matrix& api = dza.spectral_idempotent;
  const DrazinResult dzb = drazin(b, tol);
  const Matrix& bd = dzb.inverse;

  const double q = rep.norm_value;  // |a^d b a a^d| < 1 at this point
  const double nd = norm(ad, nk);
  const double nadb = norm(ad * b, nk);

  switch (set) {
    case ConditionSet::orthogonal: {
      const double beta = norm(api * a, nk);
      const double gamma = norm(api * bd, nk);
      const double bg = beta * gamma;
      out.scalar_ratios["alpha"] = nd / (1.0 - q);
      out.scalar_ratios["beta"] = beta;
      out.scalar_ratios["gamma"] = gamma;
      out.scalar_ratios["beta.gamma"] = bg;
      out.scalar_ratios["contraction"] = q;
      const double alpha = nd / (1.0 - q);
      const double nbapi = norm(b * api, nk);
      const double napi = norm(api, nk);
      const double napib = norm(api * b, nk);
      if (bg < 1.0) {
        const double t1 =
            alpha * alpha * nbapi *
            (napi + bg / (1.0 - bg) + bg * bg / (1.0 - bg) +
             gamma * (beta + napib));
        const double t2 = (1.0 + nadb / (1.0 - q)) *
                          (nd + gamma / (1.0 - bg) +
                           beta * gamma * gamma / (1.0 - bg));
        out.terms = {{"t1", t1}, {"t2", t2}};
        out.total = t1 + t2;
      } else {
        out.terms = {{"t1", kInf}, {"t2", kInf}};
        out.total = std::nullopt;
      }
      break;
    }
    case ConditionSet::commutative: {
      if (nadb >= 1.0) {
        throw NotContractiveError(
            "perturbation_bound: |a^d b| >= 1, the bound denominators are "
            "not defined");
      }
      const double delta = nd / (1.0 - nadb);
      const double mu = norm(bd * api, nk);
      const double nu = norm(a * api, nk);
      const double mn = mu * nu;
      const double w1 = norm(api * b * (a * ad), nk);
      const double w2 = norm((a + b) * api * b * (a * ad), nk);
      const double w3 = norm(dzb.spectral_idempotent * a * api, nk);
      out.scalar_ratios["delta"] = delta;
      out.scalar_ratios["mu"] = mu;
      out.scalar_ratios["nu"] = nu;
      out.scalar_ratios["mu.nu"] = mn;
      out.scalar_ratios["contraction"] = nadb;
      const double t1 = nadb * nd / (1.0 - nadb);
      const double t2 = w1 * delta * delta;
      if (mn < 1.0) {
        const double s1 = mu / (1.0 - mn);
        const double s2 = (mu / (1.0 - mn)) * (mu / (1.0 - mn));
        const double t3 = w2 * delta * delta * s1;
        const double t4 = w3 * w2 * s2 * delta * delta;
        const double t5 = s1;
        const double t6 = w1 * delta * s1;
        const double t7 = w3 * s2;
        const double t8 = w3 * w1 * delta * s2;
        out.terms = {{"t1", t1}, {"t2", t2}, {"t3", t3}, {"t4", t4},
                     {"t5", t5}, {"t6", t6}, {"t7", t7}, {"t8", t8}};
        out.total = t1 + t2 + t3 + t4 + t5 + t6 + t7 + t8;
      } else {
        out.terms = {{"t1", t1},   {"t2", t2},   {"t3", kInf}, {"t4", kInf},
                     {"t5", kInf}, {"t6", kInf}, {"t7", kInf}, {"t8", kInf}};
        out.total = std::nullopt;
      }
      break;
    }
    case ConditionSet::strict_commuting: {
      if (nadb >= 1.0) {
        throw NotContractiveError(
            "perturbation_bound: |a^d b| >= 1, the bound denominators are "
            "not defined");
      }
      const double nbd = norm(bd, nk);
      const double na = norm(a, nk);
      const double ratio = nbd * na;
      out.scalar_ratios["b^d.a"] = ratio;
      out.scalar_ratios["contraction"] = nadb;
      const double t1 = nadb * nd / (1.0 - nadb);
      if (ratio < 1.0) {
        const double t2 = norm(api, nk) * nbd / (1.0 - ratio);
        out.terms = {{"t1", t1}, {"t2", t2}};
        out.total = t1 + t2;
      } else {
        out.terms = {{"t1", t1}, {"t2", kInf}};
        out.total = std::nullopt;
      }
      break;
    }
  }
  return out;
}

const char* condition_set_label(ConditionSet set) {
  switch (set) {
    case ConditionSet::orthogonal: return "T2.3";
    case ConditionSet::commutative: return "T3.2";
    case ConditionSet::strict_commuting: return "C3.4";
  }
  return "?";
}

const char* condition_set_token(ConditionSet set) {
  switch (set) {
    case ConditionSet::orthogonal: return "t23";
    case ConditionSet::commutative: return "t32";
    case ConditionSet::strict_commuting: return "c34";
  }
  return "?";
}

const char* series_mode_name(SeriesMode mode) {
  return mode == SeriesMode::literal ? "literal" : "block";
}

}  // namespace geninv
