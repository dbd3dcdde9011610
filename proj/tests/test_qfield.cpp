#include <random>
#include <vector>

#include "doctest.h"
#include "qgl/qfield.hpp"

using namespace qgl;

namespace {

QScalar random_scalar(std::mt19937& rng, bool allow_zero = true) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> exp(-3, 3);
  std::uniform_int_distribution<int> nterms(1, 3);
  auto poly = [&]() {
    LaurentPoly p;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) p = p + LaurentPoly(exp(rng), coeff(rng));
    return p;
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    LaurentPoly num = poly(), den = poly();
    if (den.is_zero()) continue;
    QScalar s(num, den);
    if (!allow_zero && s.is_zero()) continue;
    return s;
  }
  return QScalar(1);
}

} // namespace

TEST_CASE("laurent polynomial basics") {
  LaurentPoly q = LaurentPoly::q_power(1);
  LaurentPoly qinv = LaurentPoly::q_power(-1);
  CHECK((q * qinv) == LaurentPoly::constant(1));
  CHECK((q + (-q)).is_zero());
  LaurentPoly p = q * q + LaurentPoly::constant(1);  // q^2 + 1
  CHECK(p.deg_low() == 0);
  CHECK(p.deg_high() == 2);
  CHECK(p.coeff(2) == 1);
  CHECK(p.coeff(1) == 0);
  CHECK(p.bar() == (qinv * qinv + LaurentPoly::constant(1)));
  CHECK(p.str() == "q^2+1");
}

TEST_CASE("scalar sum has canonical rational form") {
  QScalar s = QScalar::q_power(1) + QScalar::q_power(-1);
  CHECK(s.str() == "(q^2+1)/(q)");
  CHECK(s.is_laurent());
  CHECK(s.as_laurent() == (LaurentPoly::q_power(1) + LaurentPoly::q_power(-1)));
}

TEST_CASE("gcd reduction and sign normalization") {
  // (q^2-1)/(q-1) reduces to q+1.
  LaurentPoly num = LaurentPoly::q_power(2) - LaurentPoly::constant(1);
  LaurentPoly den = LaurentPoly::q_power(1) - LaurentPoly::constant(1);
  CHECK(QScalar(num, den).str() == "q+1");
  // 1/(q-1) + 1/(1-q) = 0.
  QScalar a(LaurentPoly::constant(1), den);
  QScalar b(LaurentPoly::constant(1), -den);
  CHECK((a + b).is_zero());
  // Denominator's lowest coefficient is kept positive.
  CHECK(a.den().coeff(0) > 0);
}

TEST_CASE("q-integers") {
  CHECK_THROWS_AS(q_int(0), DomainError);
  CHECK_THROWS_AS(q_int(-3), DomainError);
  CHECK(q_int(1).is_one());
  CHECK(q_int(2).str() == "(q^2+1)/(q)");
  CHECK(q_int(3).str() == "(q^4+q^2+1)/(q^2)");
  for (long n = 1; n <= 8; ++n) CHECK(q_int(n).bar() == q_int(n));
  // [3] at q=2 is 4 + 1 + 1/4 = 21/4.
  CHECK(q_int(3).eval(Rat(2)) == Rat(21, 4));
  // [n] at q=1 is n.
  for (long n = 1; n <= 8; ++n) CHECK(q_int(n).eval(Rat(1)) == Rat(n));
}

TEST_CASE("q-binomials") {
  CHECK(q_binom(2, 1) == q_int(2));
  QScalar b42 = q_binom(4, 2);
  // q^4+q^2+2+q^-2+q^-4
  QScalar expect = QScalar::q_power(4) + QScalar::q_power(2) + QScalar(2) +
                   QScalar::q_power(-2) + QScalar::q_power(-4);
  CHECK(b42 == expect);
  for (long n = 0; n <= 6; ++n)
    for (long k = 0; k <= n; ++k) {
      QScalar b = q_binom(n, k);
      CHECK(b.is_laurent());
      CHECK(b.bar() == b);          // balanced form is bar-symmetric
      CHECK(b == q_binom(n, n - k));
    }
  CHECK_THROWS_AS(q_binom(2, 3), DomainError);
  CHECK_THROWS_AS(q_binom(2, -1), DomainError);
  // At q=1 the Gaussian binomial specializes to the ordinary one.
  CHECK(q_binom(6, 3).eval(Rat(1)) == Rat(20));
}

TEST_CASE("field axioms on random samples") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    QScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == QScalar());
    QScalar nz = random_scalar(rng, /*allow_zero=*/false);
    CHECK((nz * nz.inv()).is_one());
    CHECK(nz / nz == QScalar(1));
    CHECK(a.bar().bar() == a);
    CHECK((a * b).bar() == a.bar() * b.bar());
  }
}

TEST_CASE("specialization is a field homomorphism") {
  std::mt19937 rng(777);
  const Rat q0(1, 2);
  int used = 0;
  for (int trial = 0; trial < 60 && used < 25; ++trial) {
    QScalar a = random_scalar(rng), b = random_scalar(rng);
    Rat va, vb;
    try {
      va = specialize(a, q0);
      vb = specialize(b, q0);
    } catch (const PoleError&) {
      continue;
    }
    ++used;
    CHECK(specialize(a + b, q0) == va + vb);
    CHECK(specialize(a * b, q0) == va * vb);
    CHECK(specialize(-a, q0) == -va);
  }
  CHECK(used >= 10);
}

TEST_CASE("specialization error modes") {
  // Pole of 1/(q-1) at q=1.
  QScalar s(LaurentPoly::constant(1),
            LaurentPoly::q_power(1) - LaurentPoly::constant(1));
  CHECK_THROWS_AS(specialize(s, Rat(1)), PoleError);
  CHECK(specialize(s, Rat(2)) == Rat(1));
  CHECK_THROWS_AS(specialize(QScalar(1), Rat(0)), DomainError);
  CHECK_THROWS_AS(QScalar(1) / QScalar(), DomainError);
  CHECK_THROWS_AS(QScalar().inv(), DomainError);
}

TEST_CASE("text round-trip") {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 40; ++trial) {
    QScalar a = random_scalar(rng);
    CHECK(QScalar::parse(a.str()) == a);
  }
  CHECK(QScalar::parse("(q^2+1)/(q)") == q_int(2));
  CHECK(QScalar::parse(" q^2 + 1 ") == QScalar::q_power(2) + QScalar(1));
  CHECK(QScalar::parse("-q^-1+2") == QScalar(2) - QScalar::q_power(-1));
  CHECK(QScalar::parse("3*q") == QScalar(3) * QScalar::q_power(1));
  CHECK(QScalar::parse("0").is_zero());
  CHECK(QScalar::parse("(21)/(4)") == QScalar::of_int_ratio(21, 4));
  CHECK_THROWS_AS(QScalar::parse(""), DomainError);
  CHECK_THROWS_AS(QScalar::parse("q^"), DomainError);
  CHECK_THROWS_AS(QScalar::parse("(q"), DomainError);
}

TEST_CASE("stretch substitutes a power of q") {
  QScalar s = q_int(2);             // q + q^-1
  QScalar t = s.stretch(2);         // q^2 + q^-2
  CHECK(t == QScalar::q_power(2) + QScalar::q_power(-2));
  CHECK(q_int(1).stretch(3).is_one());
}
