// Acceptance runner: executes every acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "geninv/examples.hpp"
#include "geninv/harness.hpp"
#include "helpers.hpp"

using namespace geninv;
using namespace geninv::testing;

namespace {

const Tolerances kTol;
int failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string name, double time_limit_s = 0.0)
      : number_(number),
        name_(std::move(name)),
        limit_(time_limit_s),
        start_(std::chrono::steady_clock::now()) {}

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      problems_.push_back(what);
    }
  }

  template <typename T>
  void expect_le(T value, T limit, const std::string& what) {
    if (!(value <= limit)) {
      std::ostringstream os;
      os << what << " (" << value << " > " << limit << ")";
      problems_.push_back(os.str());
    }
  }

  ~Criterion() {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_)
            .count();
    if (limit_ > 0.0 && elapsed > limit_) {
      std::ostringstream os;
      os << "runtime " << elapsed << "s exceeds " << limit_ << "s";
      problems_.push_back(os.str());
    }
    if (problems_.empty()) {
      std::printf("PASS  [%d] %s  (%.2fs)\n", number_, name_.c_str(),
                  elapsed);
    } else {
      ++failures;
      std::printf("FAIL  [%d] %s  (%.2fs)\n", number_, name_.c_str(),
                  elapsed);
      for (const std::string& p : problems_) {
        std::printf("      - %s\n", p.c_str());
      }
    }
  }

 private:
  int number_;
  std::string name_;
  double limit_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> problems_;
};

void criterion1_commutative_example() {
  Criterion c(1, "worked example, commutative conditions (closed-form "
                 "values at 1e-12)",
              1.0);
  const ExampleReport rep = reproduce_examples(NormKind::entrywise_l1, kTol);
  for (const auto& a : rep.assertions) {
    if (a.name.rfind("commutative:", 0) == 0) {
      c.expect(a.passed && !a.skipped, a.name + ": " + a.detail);
    }
  }
  // The headline numbers, asserted directly as well.
  const auto [a, b] = example_pair(ConditionSet::commutative);
  const ConditionReport cond =
      check_conditions(a, b, ConditionSet::commutative);
  c.expect(std::abs(cond.norm_value - 0.5) <= 1e-12, "|a^d b a a^d| = 1/2");
  for (const auto& [key, value] : cond.residuals) {
    c.expect_le(cond.aux.at("raw:" + key), 1e-12, "residual " + key);
  }
  const Matrix g = group_inverse(a + b, kTol);
  const Matrix printed = Matrix::from_real_rows({{2.0 / 3.0, 0, 0, 0},
                                                 {0, 1, 0, 0},
                                                 {0, 0, 0, 0.25},
                                                 {0, 0, 0, 0.5}});
  c.expect_le(max_abs(g - printed), 1e-12, "(a+b)^# matches");
  const Matrix ad = drazin(a, kTol).inverse;
  c.expect(std::abs(norm(g - ad, NormKind::entrywise_l1) - 13.0 / 12.0) <=
               1e-12,
           "|(a+b)^# - a^d| = 13/12");
  const BoundBreakdown bound =
      perturbation_bound(a, b, ConditionSet::commutative);
  const double expected_terms[8] = {2, 0, 0, 0, 1, 0, 1, 0};
  c.expect(bound.terms.size() == 8, "eight bound terms");
  for (std::size_t i = 0; i < bound.terms.size() && i < 8; ++i) {
    c.expect(std::abs(bound.terms[i].second - expected_terms[i]) <= 1e-12,
             "bound term " + bound.terms[i].first);
  }
  c.expect(bound.total && std::abs(*bound.total - 4.0) <= 1e-12,
           "bound total = 4");
}

void criterion2_orthogonal_example() {
  Criterion c(2, "worked example, orthogonal conditions (zero sum, "
                 "nonzero projected product)",
              1.0);
  const auto [a, b] = example_pair(ConditionSet::orthogonal);
  const ConditionReport cond =
      check_conditions(a, b, ConditionSet::orthogonal);
  c.expect(cond.all_hold, "hypotheses hold");
  const DrazinResult da = drazin(a, kTol);
  const Matrix api_ba = da.spectral_idempotent * b * a;
  c.expect(std::abs(api_ba(0, 2) - Complex{-1.0, 0.0}) <= 1e-12,
           "a^pi b a has entry -1 at (1,3)");
  c.expect(norm(api_ba, NormKind::entrywise_l1) > 0.5, "a^pi b a != 0");
  const Matrix g = group_inverse(a + b, kTol);
  c.expect(norm(g) == 0.0, "(a+b)^# = 0");
  c.expect(norm(da.inverse) == 0.0, "a^d = 0");
  const BoundBreakdown bound =
      perturbation_bound(a, b, ConditionSet::orthogonal);
  c.expect(bound.total && std::abs(*bound.total) <= 1e-12, "bound total = 0");
}

void criterion3_drazin_axioms() {
  Criterion c(3, "drazin axiom suite: 500 planted matrices, residuals at "
                 "1e-8, exact index recovery",
              30.0);
  Rng rng(0xD13A);
  double worst = 0.0;
  std::size_t index_misses = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng.index(9);  // up to 10
    const std::size_t core = rng.index(n + 1);
    const Planted planted = planted_matrix(rng, n, core, rng.chance(0.7));
    const Matrix& a = planted.matrix;
    DrazinResult d;
    try {
      d = drazin(a, kTol);
    } catch (const Error& e) {
      c.expect(false, std::string("drazin failed: ") + e.what());
      continue;
    }
    if (d.index != planted.index) ++index_misses;
    const Matrix& x = d.inverse;
    const double na = norm(a, NormKind::operator_inf);
    const double nx = norm(x, NormKind::operator_inf);
    const double r1 =
        norm(a * x - x * a, NormKind::operator_inf) / (1.0 + na * nx);
    const double r2 =
        norm(x * a * x - x, NormKind::operator_inf) / (1.0 + nx);
    const Matrix ak = power(a, d.index);
    const double r3 = norm(a * ak * x - ak, NormKind::operator_inf) /
                      (1.0 + norm(ak, NormKind::operator_inf));
    worst = std::max({worst, r1, r2, r3});
  }
  c.expect_le(worst, 1e-8, "max identity residual");
  c.expect(index_misses == 0,
           "index mismatches: " + std::to_string(index_misses));
}

void criterion4_formula_oracle_fuzz() {
  Criterion c(4, "formula vs oracle fuzz: 210 trials per condition set, "
                 "dims 2..8, both modes, 1e-8",
              60.0);
  const BatchSummary ortho =
      run_batch(ConditionSet::orthogonal, 2, 8, 30, 20240601);
  const BatchSummary comm =
      run_batch(ConditionSet::commutative, 2, 8, 30, 20240602);
  for (const auto& [name, s] :
       {std::pair<const char*, const BatchSummary&>{"orthogonal", ortho},
        {"commutative", comm}}) {
    c.expect(s.trials >= 200, std::string(name) + ": enough trials");
    c.expect(s.failed == 0, std::string(name) + ": failed trials = " +
                                std::to_string(s.failed));
    c.expect_le(s.max_formula_err, 1e-8,
                std::string(name) + ": max formula error");
    c.expect(s.bound_violations == 0,
             std::string(name) + ": bound violations = " +
                 std::to_string(s.bound_violations));
    c.expect(s.existing >= 100,
             std::string(name) + ": existing trials = " +
                 std::to_string(s.existing));
    c.expect(s.bound_checked >= 50,
             std::string(name) + ": finite-bound trials = " +
                 std::to_string(s.bound_checked));
  }
}

void criterion5_existence_equivalence() {
  Criterion c(5, "existence equivalence: sum vs projected sum on fuzz "
                 "instances incl. planted index-2 tails");
  const BatchSummary ortho =
      run_batch(ConditionSet::orthogonal, 2, 8, 25, 20240603);
  const BatchSummary comm =
      run_batch(ConditionSet::commutative, 2, 8, 25, 20240604);
  for (const auto& [name, s] :
       {std::pair<const char*, const BatchSummary&>{"orthogonal", ortho},
        {"commutative", comm}}) {
    c.expect(s.failed == 0, std::string(name) + ": failed trials = " +
                                std::to_string(s.failed));
    c.expect(s.equivalence_failures == 0,
             std::string(name) + ": equivalence failures = " +
                 std::to_string(s.equivalence_failures));
    c.expect(s.planted_missing >= 20,
             std::string(name) + ": negative-direction trials = " +
                 std::to_string(s.planted_missing));
  }
}

void criterion6_lemma_suite() {
  Criterion c(6, "lemma suite: block-triangular inverse, both nilpotent-sum "
                 "series, splitting and product-order checks, 100+ each");
  Rng rng(0x1E3A);

  // Block-triangular Drazin vs the direct route.
  double worst_block = 0.0;
  for (int trial = 0; trial < 110; ++trial) {
    const std::size_t n = 3 + rng.index(4);
    const std::size_t r = 1 + rng.index(n - 1);
    Matrix p(n, n);
    for (std::size_t i = 0; i < r; ++i) p(i, i) = 1.0;
    Matrix a(n, n), b(n, n), cc(n, n);
    if (rng.chance(0.7)) {
      a.set_block(0, 0, random_invertible(rng, r));
    } else if (r >= 2) {
      a.set_block(0, 0, random_nilpotent(rng, r, 1 + rng.index(r)));
    }
    if (rng.chance(0.5)) {
      b.set_block(r, r, random_invertible(rng, n - r));
    } else if (n - r >= 2) {
      b.set_block(r, r, random_nilpotent(rng, n - r, 1 + rng.index(n - r)));
    }
    const bool lower = rng.chance(0.5);
    if (lower) {
      cc.set_block(r, 0, random_matrix(rng, n - r, r, 1.0));
    } else {
      cc.set_block(0, r, random_matrix(rng, r, n - r, 1.0));
    }
    try {
      const Matrix xd = block_triangular_drazin(
          p, a, b, cc,
          lower ? BlockOrientation::lower : BlockOrientation::upper, kTol);
      worst_block = std::max(
          worst_block, deviation(xd, drazin(a + b + cc, kTol).inverse));
    } catch (const Error& e) {
      c.expect(false, std::string("block triangular: ") + e.what());
    }
  }
  c.expect_le(worst_block, 1e-8, "block-triangular vs direct");

  // Orthogonal-conditions nilpotent sum.
  double worst_orth = 0.0;
  for (int trial = 0; trial < 110; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const auto [s, t] = orthogonal_sum_instance(rng, n, kTol);
    try {
      worst_orth = std::max(
          worst_orth, deviation(drazin_sum_nilpotent_orthogonal(s, t, kTol),
                                drazin(s + t, kTol).inverse));
    } catch (const Error& e) {
      c.expect(false, std::string("orthogonal sum: ") + e.what());
    }
  }
  c.expect_le(worst_orth, 1e-8, "orthogonal nilpotent sum vs direct");

  // Commuting-conditions nilpotent sum.
  double worst_comm = 0.0;
  for (int trial = 0; trial < 110; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const auto [s, t] = commuting_sum_instance(rng, n, kTol);
    try {
      worst_comm = std::max(
          worst_comm, deviation(drazin_sum_nilpotent_commuting(s, t, kTol),
                                drazin(s + t, kTol).inverse));
    } catch (const Error& e) {
      c.expect(false, std::string("commuting sum: ") + e.what());
    }
  }
  c.expect_le(worst_comm, 1e-8, "commuting nilpotent sum vs direct");

  // Idempotent splitting on block-triangular inputs.
  std::size_t split_failures = 0;
  for (int trial = 0; trial < 110; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const Matrix e = random_idempotent(rng, n, 1 + rng.index(n), kTol);
    const Matrix q = Matrix::identity(n) - e;
    const Matrix a = e * random_matrix(rng, n, n, 1.0) * e +
                     q * random_matrix(rng, n, n, 1.0) * q +
                     q * random_matrix(rng, n, n, 1.0) * e;
    try {
      if (!split_check(e, a, kTol).holds) ++split_failures;
    } catch (const Error& e2) {
      c.expect(false, std::string("split: ") + e2.what());
    }
  }
  c.expect(split_failures == 0,
           "splitting failures: " + std::to_string(split_failures));

  // Product-order identity.
  std::size_t cline_failures = 0;
  for (int trial = 0; trial < 110; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const Matrix x = random_matrix(rng, n, n, 1.0);
    const Matrix y = rng.chance(0.3)
                         ? Matrix(random_nilpotent(rng, n, 1 + rng.index(n)))
                         : random_matrix(rng, n, n, 1.0);
    try {
      if (!cline_check(x, y, kTol)) ++cline_failures;
    } catch (const Error& e) {
      c.expect(false, std::string("product-order: ") + e.what());
    }
  }
  c.expect(cline_failures == 0,
           "product-order failures: " + std::to_string(cline_failures));
}

}  // namespace

int main() {
  criterion1_commutative_example();
  criterion2_orthogonal_example();
  criterion3_drazin_axioms();
  criterion4_formula_oracle_fuzz();
  criterion5_existence_equivalence();
  criterion6_lemma_suite();
  if (failures == 0) {
    std::printf("all acceptance criteria hold\n");
  } else {
    std::printf("%d acceptance criteria failed\n", failures);
  }
  return failures;
}
