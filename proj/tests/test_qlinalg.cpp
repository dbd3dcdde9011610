#include <random>

#include "doctest.h"
#include "qgl/qlinalg.hpp"

using namespace qgl;

namespace {

QMatrix random_matrix(std::mt19937& rng, size_t r, size_t c) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<int> exp(-2, 2);
  QMatrix m(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j)
      m.at(i, j) = QScalar(LaurentPoly(exp(rng), coeff(rng)));
  return m;
}

} // namespace

TEST_CASE("matrix arithmetic and identity") {
  QMatrix a(2, 2);
  a.at(0, 0) = QScalar::q_power(1);
  a.at(0, 1) = QScalar(1);
  a.at(1, 1) = QScalar::q_power(-1);
  QMatrix i2 = QMatrix::identity(2);
  CHECK(a * i2 == a);
  CHECK(i2 * a == a);
  CHECK((a - a).is_zero());
  CHECK(a.transpose().transpose() == a);
}

TEST_CASE("inverse of a triangular matrix") {
  QMatrix a(2, 2);
  a.at(0, 0) = QScalar::q_power(1);
  a.at(0, 1) = QScalar(1);
  a.at(1, 1) = QScalar::q_power(-1);
  QMatrix inv = inverse(a);
  CHECK(a * inv == QMatrix::identity(2));
  CHECK(inv * a == QMatrix::identity(2));
  CHECK(inv.at(0, 0) == QScalar::q_power(-1));
  CHECK(inv.at(0, 1) == -QScalar(1));
  CHECK(inv.at(1, 1) == QScalar::q_power(1));

  QMatrix s(2, 2);  // rank-1 matrix is singular
  s.at(0, 0) = QScalar(1);
  s.at(0, 1) = QScalar::q_power(1);
  s.at(1, 0) = QScalar::q_power(-1);
  s.at(1, 1) = QScalar(1);
  CHECK_THROWS_AS(inverse(s), DomainError);
}

TEST_CASE("rank and kernel of a rank-one matrix") {
  QMatrix m(2, 2);
  m.at(0, 0) = QScalar(1);
  m.at(0, 1) = QScalar::q_power(1);
  m.at(1, 0) = QScalar::q_power(-1);
  m.at(1, 1) = QScalar(1);
  CHECK(rank(m) == 1);
  QMatrix k = kernel_basis(m);
  CHECK(k.cols() == 1);
  CHECK((m * k).is_zero());
  // kernel spanned by (-q, 1) up to scale
  CHECK(k.at(0, 0) * QScalar(1) == -QScalar::q_power(1) * k.at(1, 0));
}

TEST_CASE("solve consistent and inconsistent systems") {
  QMatrix a(2, 2);
  a.at(0, 0) = QScalar(1);
  a.at(0, 1) = QScalar::q_power(1);
  a.at(1, 0) = QScalar::q_power(-1);
  a.at(1, 1) = QScalar(1);
  // b in the column span: b = first column
  std::vector<QScalar> b{QScalar(1), QScalar::q_power(-1)};
  auto x = solve(a, b);
  REQUIRE(x.has_value());
  for (size_t i = 0; i < 2; ++i) {
    QScalar acc;
    for (size_t j = 0; j < 2; ++j) acc += a.at(i, j) * (*x)[j];
    CHECK(acc == b[i]);
  }
  // b outside the span (rank 1)
  std::vector<QScalar> bad{QScalar(1), QScalar(1)};
  CHECK(!solve(a, bad).has_value());
}

TEST_CASE("rank-nullity and inverse on random matrices") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 15; ++trial) {
    QMatrix m = random_matrix(rng, 3, 3);
    QMatrix k = kernel_basis(m);
    CHECK(rank(m) + k.cols() == 3);
    if (!k.cols()) {
      QMatrix inv = inverse(m);
      CHECK(m * inv == QMatrix::identity(3));
    } else {
      CHECK((m * k).is_zero());
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    QMatrix m = random_matrix(rng, 2, 4);
    CHECK(rank(m) + kernel_basis(m).cols() == 4);
  }
}

TEST_CASE("rref is idempotent with unit pivots") {
  std::mt19937 rng(99);
  QMatrix m = random_matrix(rng, 3, 4);
  RrefResult r = rref(m);
  RrefResult r2 = rref(r.mat);
  CHECK(r.mat == r2.mat);
  for (size_t i = 0; i < r.pivots.size(); ++i) {
    CHECK(r.mat.at(i, r.pivots[i]).is_one());
    for (size_t ii = 0; ii < r.pivots.size(); ++ii)
      if (ii != i) CHECK(r.mat.at(ii, r.pivots[i]).is_zero());
  }
}
