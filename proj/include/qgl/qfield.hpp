#pragma once
#include <gmpxx.h>
#include <string>
#include <vector>

#include "qgl/errors.hpp"

namespace qgl {

using Int = mpz_class;
using Rat = mpq_class;

// Laurent polynomial in q with arbitrary-precision integer coefficients.
// Dense within its exponent range: coeff(lo_ + i) == c_[i]; invariant: c_ empty
// (zero) or both ends nonzero.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long exp, Int coeff);
  static LaurentPoly constant(Int n) { return LaurentPoly(0, std::move(n)); }
  static LaurentPoly q_power(long k) { return LaurentPoly(k, 1); }

  bool is_zero() const { return c_.empty(); }
  long deg_low() const;   // throws on zero
  long deg_high() const;  // throws on zero
  Int coeff(long e) const;
  long term_count() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const;

  LaurentPoly shifted(long k) const;      // * q^k
  LaurentPoly bar() const;                // q -> q^{-1}
  LaurentPoly stretch(long d) const;      // q -> q^d (d >= 1)
  bool is_monomial() const { return c_.size() == 1; }

  // Integer content (gcd of coefficients, nonnegative; 0 for the zero poly).
  Int content() const;
  // Exact division; throws InternalError if not exact.
  LaurentPoly div_exact(const LaurentPoly& d) const;
  static LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

  Rat eval(const Rat& q0) const;  // q0 != 0

  std::string str() const;  // e.g. "q^2+1", "-q^-1+2"

 private:
  void trim();
  long lo_ = 0;
  std::vector<Int> c_;
  friend class QScalar;
};

// Element of the coefficient field: ratio of integer Laurent polynomials in
// canonical form — numerator and denominator are ordinary polynomials (lowest
// exponent of the pair is 0), gcd-reduced, denominator's lowest-degree nonzero
// coefficient positive; zero is 0/1.
class QScalar {
 public:
  QScalar() : num_(), den_(0, 1) {}
  QScalar(long n) : num_(0, Int(n)), den_(0, 1) {}
  QScalar(Int n) : num_(0, std::move(n)), den_(0, 1) {}
  explicit QScalar(LaurentPoly p) : num_(std::move(p)), den_(0, 1) { canonicalize(); }
  QScalar(LaurentPoly num, LaurentPoly den);

  static QScalar q_power(long k) { return QScalar(LaurentPoly::q_power(k)); }
  static QScalar of_int_ratio(Int a, Int b);

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool operator==(const QScalar& o) const;
  bool operator!=(const QScalar& o) const { return !(*this == o); }

  QScalar operator+(const QScalar& o) const;
  QScalar operator-(const QScalar& o) const;
  QScalar operator*(const QScalar& o) const;
  QScalar operator/(const QScalar& o) const;  // throws DomainError on /0
  QScalar operator-() const;
  QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
  QScalar& operator*=(const QScalar& o) { return *this = *this * o; }
  QScalar inv() const;

  QScalar bar() const;         // q -> q^{-1}
  QScalar stretch(long d) const;  // q -> q^d
  // True if the scalar is +/- q^k (or an integer multiple of a power of q).
  bool is_monomial() const { return den_.is_monomial() && num_.is_monomial(); }
  bool is_laurent() const {
    return den_.is_monomial() && den_.coeff(den_.deg_low()) == 1;
  }
  // For a Laurent scalar, the underlying Laurent polynomial.
  LaurentPoly as_laurent() const;

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  // Exact evaluation at a nonzero rational q0. Throws PoleError if the reduced
  // denominator vanishes there.
  Rat eval(const Rat& q0) const;

  std::string str() const;
  static QScalar parse(const std::string& text);

 private:
  void canonicalize();
  LaurentPoly num_, den_;
};

inline QScalar operator*(long n, const QScalar& s) { return QScalar(n) * s; }

// q-integer [n]_q = (q^n - q^{-n})/(q - q^{-1}); [−n] = −[n], [0] = 0.
QScalar q_int(long n);
QScalar q_factorial(long n);
// Gaussian binomial; throws DomainError unless 0 <= k <= n. Result is a
// Laurent polynomial (asserted).
QScalar q_binom(long n, long k);

// Exact evaluation q -> q0 (nonzero rational). Same as QScalar::eval.
Rat specialize(const QScalar& s, const Rat& q0);

} // namespace qgl
