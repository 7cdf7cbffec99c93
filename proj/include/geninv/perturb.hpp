#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geninv/drazin.hpp"
#include "geninv/matrix.hpp"

namespace geninv {

/// The perturbation condition families supported by the library.
///
/// orthogonal ("t23"):       |a^d b a a^d| < 1,  a^pi b a^2 = 0,  a^pi b a b = 0
/// commutative ("t32"):      |a^d b a a^d| < 1,  a^2 b a^pi = a^pi a b a,
///                           a^pi b^2 a = b a b a^pi
/// strict_commuting ("c34"): |a^d b a a^d| < 1,  a^pi b a = a b a^pi
///
/// The third set is strictly stronger than the second; the checker exists so
/// callers can see where a pair sits in the hierarchy.
enum class ConditionSet { orthogonal, commutative, strict_commuting };

/// Which route evaluates the projected Drazin inverses inside the sum
/// formulas: `literal` uses a^pi b^D (resp. b^D a^pi) exactly as the closed
/// forms are stated; `block` computes (a^pi b)^D (resp. (b a^pi)^D) directly.
/// The two coincide under the hypotheses and are cross-checked in the fuzz
/// harness.
enum class SeriesMode { literal, block };

/// Outcome of a hypothesis check for one condition set.
struct ConditionReport {
  ConditionSet theorem = ConditionSet::orthogonal;
  double norm_value = 0.0;  ///< |a^d b a a^d| in the report's norm
  bool norm_ok = false;     ///< norm_value < 1
  /// Residuals of the zero/equality conditions, scaled by the product of the
  /// factor norms so that similarity-conjugated inputs test cleanly.
  std::vector<std::pair<std::string, double>> residuals;
  bool all_hold = false;
  /// Auxiliary scalars: raw (unscaled) residuals under "raw:" keys plus the
  /// norms and ratios the bounds are built from.
  std::map<std::string, double> aux;
};

/// Scalar breakdown of one upper-bound expression. `total` is empty when a
/// required geometric ratio is >= 1 (the bound diverges); the offending
/// terms are reported as +inf.
struct BoundBreakdown {
  std::vector<std::pair<std::string, double>> terms;
  std::optional<double> total;
  NormKind norm_kind = NormKind::entrywise_l1;
  std::map<std::string, double> scalar_ratios;
  bool divergent() const { return !total.has_value(); }
};

/// Result of a perturbed group-inverse evaluation (a+b)^#.
struct PerturbResult {
  bool exists = false;      ///< a+b (equivalently its projection) is group invertible
  Matrix group_inv;         ///< (a+b)^# when exists
  Matrix corner_term;       ///< inverse of the corner of a+b at p = a a^D
  Matrix z_term;            ///< off-corner coupling block of the inverse
  Matrix tail_term;         ///< group inverse of the projected sum
  SeriesMode mode = SeriesMode::block;
  std::size_t projected_index = 0;  ///< Drazin index of the projected sum
};

enum class BlockOrientation { lower, upper };

/// Drazin inverse of the block-triangular matrix assembled from an
/// idempotent p and corner pieces: a in pAp, b in (1-p)A(1-p), and a
/// coupling block c in (1-p)Ap (`lower`) or pA(1-p) (`upper`). The two
/// coupling series are evaluated exactly, truncated at the nilpotency index
/// of the respective nilpotent parts, with the next term checked against
/// zero. Throws PreconditionError when an input sits outside its corner.
Matrix block_triangular_drazin(const Matrix& p, const Matrix& a,
                               const Matrix& b, const Matrix& c,
                               BlockOrientation orientation,
                               const Tolerances& tol = Tolerances::defaults());

/// (s + t)^D for s nilpotent with t s^2 = 0 and t s t = 0, by the series
///   sum_n s^n (t^D)^{n+1} + sum_n s^n (t^D)^{n+2} s.
Matrix drazin_sum_nilpotent_orthogonal(
    const Matrix& s, const Matrix& t,
    const Tolerances& tol = Tolerances::defaults());

/// (s + t)^D for s nilpotent with s^2 t = s t s and t^2 s = t s t, by the
/// alternating series
///   sum_n (t^D)^{n+1} (-s)^n + t^pi s sum_n (-1)^n (n+1) (t^D)^{n+2} s^n.
Matrix drazin_sum_nilpotent_commuting(
    const Matrix& s, const Matrix& t,
    const Tolerances& tol = Tolerances::defaults());

/// Evaluates the hypotheses of one condition set for the pair (a, b).
ConditionReport check_conditions(const Matrix& a, const Matrix& b,
                                 ConditionSet set,
                                 NormKind nk = NormKind::entrywise_l1,
                                 const Tolerances& tol = Tolerances::defaults());

/// Evaluates (a+b)^# by the closed perturbation formula of the chosen
/// condition set (orthogonal or commutative; the strict set has no formula
/// of its own). Throws HypothesisError when the conditions fail. When the
/// projected sum is not group invertible the result carries exists = false
/// and its measured index; existence is computed both through a+b and
/// through the projection, and a disagreement raises NumericError.
PerturbResult perturbed_group_inverse(
    const Matrix& a, const Matrix& b, ConditionSet set,
    SeriesMode mode = SeriesMode::block, NormKind nk = NormKind::entrywise_l1,
    const Tolerances& tol = Tolerances::defaults());

/// Scalar upper bound on |(a+b)^# - a^D| for the chosen condition set, with
/// the geometric pieces summed in closed form. Throws HypothesisError when
/// the set's conditions fail and NotContractiveError when |a^d b| >= 1 is
/// required but violated (commutative and strict sets).
BoundBreakdown perturbation_bound(const Matrix& a, const Matrix& b,
                                  ConditionSet set,
                                  NormKind nk = NormKind::entrywise_l1,
                                  const Tolerances& tol = Tolerances::defaults());

const char* condition_set_label(ConditionSet set);   // "T2.3" / "T3.2" / "C3.4"
const char* condition_set_token(ConditionSet set);   // "t23" / "t32" / "c34"
const char* series_mode_name(SeriesMode mode);

}  // namespace geninv
