#include "geninv/examples.hpp"

#include <cmath>
#include <sstream>

namespace geninv {

namespace {

constexpr double kExampleTol = 1e-12;

std::string describe(double measured, double expected) {
  std::ostringstream os;
  os << "measured " << measured << ", expected " << expected;
  return os.str();
}

}  // namespace

std::pair<Matrix, Matrix> example_pair(ConditionSet set) {
  if (set == ConditionSet::orthogonal) {
    const Matrix a = Matrix::from_real_rows({{0, 1, 0},  //
                                             {0, 0, 1},
                                             {0, 0, 0}});
    return {a, -a};
  }
  const Matrix a = Matrix::from_real_rows({{1, 0, 0, 0},
                                           {0, 1, 0, 0},
                                           {0, 0, 0, 1},
                                           {0, 0, 0, 0}});
  const Matrix b = Matrix::from_real_rows({{0.5, 0, 0, 0},
                                           {0, 0, 0, 0},
                                           {0, 0, 0, 0},
                                           {0, 0, 0, 2}});
  return {a, b};
}

ExampleReport reproduce_examples(NormKind nk, const Tolerances& tol) {
  ExampleReport rep;
  rep.norm_kind = nk;
  const bool l1 = nk == NormKind::entrywise_l1;

  auto check_value = [&](const std::string& name, double measured,
                         double expected, bool norm_dependent) {
    ExampleAssertion a;
    a.name = name;
    a.measured = measured;
    a.expected = expected;
    if (norm_dependent && !l1) {
      a.skipped = true;
      a.detail = "norm-dependent value, skipped under " +
                 std::string(norm_kind_name(nk));
    } else {
      a.passed = std::abs(measured - expected) <= kExampleTol;
      a.detail = describe(measured, expected);
    }
    rep.assertions.push_back(std::move(a));
  };
  auto check_flag = [&](const std::string& name, bool ok,
                        const std::string& detail) {
    ExampleAssertion a;
    a.name = name;
    a.passed = ok;
    a.measured = ok ? 1.0 : 0.0;
    a.expected = 1.0;
    a.detail = detail;
    rep.assertions.push_back(std::move(a));
  };
  auto check_matrix = [&](const std::string& name, const Matrix& measured,
                          const Matrix& expected) {
    const double diff = max_abs(measured - expected);
    ExampleAssertion a;
    a.name = name;
    a.passed = diff <= kExampleTol;
    a.measured = diff;
    a.expected = 0.0;
    a.detail = "max entry deviation " + std::to_string(diff);
    rep.assertions.push_back(std::move(a));
  };

  // ---- orthogonal example: 3x3 shift with b = -a -------------------------
  {
    const auto [a, b] = example_pair(ConditionSet::orthogonal);
    const ConditionReport cond =
        check_conditions(a, b, ConditionSet::orthogonal, nk, tol);
    check_flag("orthogonal: hypotheses hold", cond.all_hold,
               "norm value " + std::to_string(cond.norm_value));
    check_value("orthogonal: |a^d b a a^d| = 0", cond.norm_value, 0.0, false);

    const DrazinResult dza = drazin(a, tol);
    const Matrix api_ba = dza.spectral_idempotent * b * a;
    check_flag("orthogonal: a^pi b a != 0",
               norm(api_ba, NormKind::entrywise_l1) > 0.5,
               "the pair sits outside the zero-product special case");
    Matrix expected_api_ba(3, 3);
    expected_api_ba(0, 2) = -1.0;
    check_matrix("orthogonal: a^pi b a has the single entry -1 at (1,3)",
                 api_ba, expected_api_ba);

    const Matrix zero3(3, 3);
    check_matrix("orthogonal: a^d = 0", dza.inverse, zero3);
    check_matrix("orthogonal: group inverse of a+b is 0",
                 group_inverse(a + b, tol), zero3);
    for (SeriesMode mode : {SeriesMode::block, SeriesMode::literal}) {
      const PerturbResult pr = perturbed_group_inverse(
          a, b, ConditionSet::orthogonal, mode, nk, tol);
      check_flag(std::string("orthogonal: formula (") +
                     series_mode_name(mode) + ") reports existence",
                 pr.exists, "");
      check_matrix(std::string("orthogonal: formula (") +
                       series_mode_name(mode) + ") result is 0",
                   pr.group_inv, zero3);
    }
    const BoundBreakdown bound =
        perturbation_bound(a, b, ConditionSet::orthogonal, nk, tol);
    check_flag("orthogonal: bound is finite", !bound.divergent(), "");
    check_value("orthogonal: bound total = 0",
                bound.total.value_or(-1.0), 0.0, false);
  }

  // ---- commutative example: 4x4 with invertible core and shift tail ------
  {
    const auto [a, b] = example_pair(ConditionSet::commutative);
    const Matrix sum = a + b;

    const DrazinResult dza = drazin(a, tol);
    check_matrix("commutative: a^d",
                 dza.inverse,
                 Matrix::from_real_rows({{1, 0, 0, 0},
                                         {0, 1, 0, 0},
                                         {0, 0, 0, 0},
                                         {0, 0, 0, 0}}));
    check_matrix("commutative: a^pi",
                 dza.spectral_idempotent,
                 Matrix::from_real_rows({{0, 0, 0, 0},
                                         {0, 0, 0, 0},
                                         {0, 0, 1, 0},
                                         {0, 0, 0, 1}}));
    const DrazinResult dzb = drazin(b, tol);
    check_matrix("commutative: b^d",
                 dzb.inverse,
                 Matrix::from_real_rows({{2, 0, 0, 0},
                                         {0, 0, 0, 0},
                                         {0, 0, 0, 0},
                                         {0, 0, 0, 0.5}}));
    check_matrix("commutative: b^pi",
                 dzb.spectral_idempotent,
                 Matrix::from_real_rows({{0, 0, 0, 0},
                                         {0, 1, 0, 0},
                                         {0, 0, 1, 0},
                                         {0, 0, 0, 0}}));

    const ConditionReport cond =
        check_conditions(a, b, ConditionSet::commutative, nk, tol);
    check_flag("commutative: hypotheses hold", cond.all_hold, "");
    double max_raw = 0.0;
    for (const auto& [key, value] : cond.residuals) {
      max_raw = std::max(max_raw, cond.aux.at("raw:" + key));
    }
    check_value("commutative: equality residuals vanish", max_raw, 0.0,
                false);
    check_value("commutative: |a^d b a a^d| = 1/2", cond.norm_value, 0.5,
                true);

    // The strict commuting condition fails: a^pi b a = 0 while a b a^pi has
    // the single entry 2.
    const ConditionReport strict =
        check_conditions(a, b, ConditionSet::strict_commuting, nk, tol);
    check_flag("commutative: strict commuting condition fails",
               !strict.all_hold, "");
    check_value("commutative: |a^pi b a - a b a^pi| = 2 raw",
                strict.aux.at("raw:a^pi.b.a=a.b.a^pi"), 2.0, true);
    check_matrix("commutative: a^pi b a = 0",
                 dza.spectral_idempotent * b * a, Matrix(4, 4));
    Matrix aba_pi_expected(4, 4);
    aba_pi_expected(2, 3) = 2.0;
    check_matrix("commutative: a b a^pi has the single entry 2 at (3,4)",
                 a * b * dza.spectral_idempotent, aba_pi_expected);

    const Matrix printed = Matrix::from_real_rows({{2.0 / 3.0, 0, 0, 0},
                                                   {0, 1, 0, 0},
                                                   {0, 0, 0, 0.25},
                                                   {0, 0, 0, 0.5}});
    check_matrix("commutative: direct group inverse of a+b",
                 group_inverse(sum, tol), printed);
    for (SeriesMode mode : {SeriesMode::block, SeriesMode::literal}) {
      const PerturbResult pr = perturbed_group_inverse(
          a, b, ConditionSet::commutative, mode, nk, tol);
      check_flag(std::string("commutative: formula (") +
                     series_mode_name(mode) + ") reports existence",
                 pr.exists, "");
      check_matrix(std::string("commutative: formula (") +
                       series_mode_name(mode) + ") matches the closed form",
                   pr.group_inv, printed);
    }

    check_value("commutative: |(a+b)^# - a^d| = 13/12",
                norm(group_inverse(sum, tol) - dza.inverse, nk), 13.0 / 12.0,
                true);

    const BoundBreakdown bound =
        perturbation_bound(a, b, ConditionSet::commutative, nk, tol);
    const double expected_terms[8] = {2, 0, 0, 0, 1, 0, 1, 0};
    if (bound.terms.size() == 8) {
      for (std::size_t i = 0; i < 8; ++i) {
        check_value("commutative: bound term " + bound.terms[i].first,
                    bound.terms[i].second, expected_terms[i], true);
      }
    } else {
      check_flag("commutative: bound has eight terms", false, "");
    }
    check_value("commutative: bound total = 4", bound.total.value_or(-1.0),
                4.0, true);

    // The strict set's bound must refuse this pair.
    bool strict_refused = false;
    try {
      perturbation_bound(a, b, ConditionSet::strict_commuting, nk, tol);
    } catch (const HypothesisError&) {
      strict_refused = true;
    }
    check_flag("commutative: strict-set bound rejects the pair",
               strict_refused, "");
  }

  return rep;
}

void require_examples_reproduce(NormKind nk, const Tolerances& tol) {
  const ExampleReport rep = reproduce_examples(nk, tol);
  for (const auto& a : rep.assertions) {
    if (!a.skipped && !a.passed) {
      throw MismatchError("worked-example assertion failed: " + a.name +
                          " (" + a.detail + ")");
    }
  }
}

}  // namespace geninv
