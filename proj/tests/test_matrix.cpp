#include <doctest.h>

#include <cmath>
#include <limits>

#include "geninv/examples.hpp"
#include "geninv/matrix.hpp"
#include "geninv/random.hpp"

using namespace geninv;

namespace {
const Tolerances kTol;
}

TEST_CASE("construction and shape checks") {
  Matrix m(2, 3);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(norm(m) == 0.0);

  CHECK_THROWS_AS(Matrix(2, 2, std::vector<Complex>(3)), ShapeError);
  CHECK_THROWS_AS(
      Matrix(1, 1, {Complex{std::numeric_limits<double>::quiet_NaN(), 0.0}}),
      NumericError);

  const Matrix a = Matrix::from_real_rows({{1, 2}, {3, 4}});
  const Matrix wide(2, 3);
  CHECK_THROWS_AS(a + wide, ShapeError);
  CHECK_THROWS_AS(wide * wide, ShapeError);
  CHECK_THROWS_AS(power(wide, 2), ShapeError);
}

TEST_CASE("arithmetic basics") {
  const Matrix id2 = Matrix::identity(2);
  CHECK(norm(id2 + (-id2)) == 0.0);

  // Product of the bundled 4x4 pair: (1,1) entry is 1/2.
  const auto [a, b] = example_pair(ConditionSet::commutative);
  const Matrix ab = a * b;
  CHECK(ab(0, 0) == Complex{0.5, 0.0});
  CHECK(ab(2, 3) == Complex{2.0, 0.0});
  CHECK(max_abs(ab - Matrix::from_real_rows({{0.5, 0, 0, 0},
                                             {0, 0, 0, 0},
                                             {0, 0, 0, 2},
                                             {0, 0, 0, 0}})) == 0.0);

  const Matrix j = Matrix::from_rows({{Complex{0, 1}}});
  CHECK((j * j)(0, 0) == Complex{-1.0, 0.0});
}

TEST_CASE("conjugation by an invertible matrix preserves idempotency") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.index(4);
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = rng.chance(0.5) ? 1.0 : 0.0;
    const Matrix s = random_similarity(rng, n, kTol);
    const Matrix p = conjugate_by(s, d, kTol);
    CHECK(approx_equal(p * p, p, kTol));
  }
  const Matrix singular = Matrix::from_real_rows({{1, 1}, {1, 1}});
  CHECK_THROWS_AS(conjugate_by(singular, Matrix::identity(2), kTol),
                  SingularError);
}

TEST_CASE("norm values on a fixed matrix") {
  const Matrix m = Matrix::from_rows(
      {{Complex{1, 0}, Complex{-2, 0}}, {Complex{0, 3}, Complex{4, 0}}});
  CHECK(norm(m, NormKind::entrywise_l1) == doctest::Approx(10.0));
  CHECK(norm(m, NormKind::operator_one) == doctest::Approx(6.0));
  CHECK(norm(m, NormKind::operator_inf) == doctest::Approx(7.0));
  CHECK(norm(m, NormKind::frobenius) == doctest::Approx(std::sqrt(30.0)));

  for (NormKind kind :
       {NormKind::entrywise_l1, NormKind::operator_one, NormKind::operator_inf,
        NormKind::frobenius}) {
    CHECK(norm(Matrix(3, 3), kind) == 0.0);
  }
}

TEST_CASE("every norm kind is submultiplicative") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.index(5);
    const std::size_t k = 1 + rng.index(5);
    const std::size_t m = 1 + rng.index(5);
    const Matrix a = random_matrix(rng, n, k, 2.0);
    const Matrix b = random_matrix(rng, k, m, 2.0);
    for (NormKind kind :
         {NormKind::entrywise_l1, NormKind::operator_one,
          NormKind::operator_inf, NormKind::frobenius}) {
      const double lhs = norm(a * b, kind);
      const double rhs = norm(a, kind) * norm(b, kind);
      CHECK(lhs <= rhs + 1e-12 * rhs);
    }
  }
}

TEST_CASE("norm is zero exactly on the zero matrix") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.index(5);
    Matrix m = random_matrix(rng, n, n, 1.0);
    if (norm(m) != 0.0) {
      CHECK(!is_zero(m, kTol, 1e-12));
    }
    CHECK(is_zero(Matrix(n, n), kTol));
  }
}

TEST_CASE("rank on fixed matrices") {
  CHECK(rank(Matrix::identity(4), kTol) == 4);
  CHECK(rank(Matrix(3, 3), kTol) == 0);

  const auto [shift_a, shift_b] = example_pair(ConditionSet::orthogonal);
  CHECK(rank(shift_a, kTol) == 2);

  const auto [comm_a, comm_b] = example_pair(ConditionSet::commutative);
  CHECK(rank(comm_a, kTol) == 3);
}

TEST_CASE("rank is invariant under well-conditioned similarity") {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const std::size_t r = rng.index(n + 1);
    Matrix d(n, n);
    for (std::size_t i = 0; i < r; ++i)
      d(i, i) = rng.entry(1.0) + Complex{2.0, 0.0};
    const Matrix s = random_similarity(rng, n, kTol);
    CHECK(rank(conjugate_by(s, d, kTol), kTol) == r);
  }
}

TEST_CASE("inverse on fixed matrices") {
  CHECK(max_abs(inverse(Matrix::identity(3), kTol) - Matrix::identity(3)) ==
        0.0);

  const double diag_in[] = {1.5, 1.0, 1.0, 2.0};
  const double diag_out[] = {2.0 / 3.0, 1.0, 1.0, 0.5};
  const Matrix inv = inverse(Matrix::diagonal(std::span(diag_in)), kTol);
  CHECK(max_abs(inv - Matrix::diagonal(std::span(diag_out))) <= 1e-15);

  const auto [shift_a, shift_b] = example_pair(ConditionSet::orthogonal);
  CHECK_THROWS_AS(inverse(shift_a, kTol), SingularError);
}

TEST_CASE("inverse round-trip on random well-conditioned matrices") {
  Rng rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng.index(6);
    const Matrix a = random_invertible(rng, n);
    const Matrix r = a * inverse(a, kTol) - Matrix::identity(n);
    CHECK(norm(r, NormKind::operator_inf) <= 1e-9);
  }
}

TEST_CASE("nilpotency index") {
  const auto [shift_a, shift_b] = example_pair(ConditionSet::orthogonal);
  CHECK(nilpotency_index(shift_a, kTol) == 3);
  CHECK(nilpotency_index(Matrix(2, 2), kTol) == 1);
  CHECK(nilpotency_index(Matrix(0, 0), kTol) == 0);
  CHECK(!nilpotency_index(Matrix::identity(2), kTol).has_value());

  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const std::size_t k = 1 + rng.index(n);
    const Matrix nil = random_nilpotent(rng, n, k);
    CHECK(nilpotency_index(nil, kTol) == k);
    const Matrix s = random_similarity(rng, n, kTol);
    CHECK(nilpotency_index(conjugate_by(s, nil, kTol), kTol) == k);
  }
}

TEST_CASE("full rank factorization reconstructs the matrix") {
  Rng rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng.index(5);
    const std::size_t m = 1 + rng.index(5);
    const std::size_t r = rng.index(std::min(n, m) + 1);
    const Matrix x = random_matrix(rng, n, r, 1.0);
    const Matrix y = random_matrix(rng, r, m, 1.0);
    const Matrix a = x * y;  // rank <= r
    auto [c, b] = full_rank_factorization(a, kTol);
    CHECK(c.cols() == rank(a, kTol));
    CHECK(approx_equal(c * b, a, kTol));
  }
}

TEST_CASE("tolerance parsing") {
  const Tolerances single = Tolerances::parse("1e-8");
  CHECK(single.rank_rel == doctest::Approx(1e-8));
  CHECK(single.zero_rel == doctest::Approx(1e-8));
  CHECK(single.equality_rel == doctest::Approx(1e-8));

  const Tolerances keyed =
      Tolerances::parse("rank_rel=1e-12,equality_rel=1e-7");
  CHECK(keyed.rank_rel == doctest::Approx(1e-12));
  CHECK(keyed.zero_rel == doctest::Approx(1e-9));
  CHECK(keyed.equality_rel == doctest::Approx(1e-7));

  CHECK_THROWS_AS(Tolerances::parse("nonsense"), ParseError);
  CHECK_THROWS_AS(Tolerances::parse("zero_rel=2.0"), ParseError);
  CHECK_THROWS_AS(Tolerances::parse("frobnitz=0.1"), ParseError);
}

TEST_CASE("norm kind names round-trip") {
  for (NormKind kind :
       {NormKind::entrywise_l1, NormKind::operator_one, NormKind::operator_inf,
        NormKind::frobenius}) {
    CHECK(parse_norm_kind(norm_kind_name(kind)) == kind);
  }
  CHECK(!parse_norm_kind("spectral").has_value());
}
