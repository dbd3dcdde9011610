#include "qgl/qfield.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qgl {
namespace {

// --- integer-vector polynomial helpers (index = exponent offset) ---

void vec_trim_high(std::vector<Int>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

Int vec_content(const std::vector<Int>& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return abs(g);
}

// v := v / d exactly (caller guarantees exactness).
void vec_divexact_int(std::vector<Int>& v, const Int& d) {
  for (Int& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
}

// r := lc(b)*r - lead(r)*q^(dr-db)*b, repeated until deg(r) < deg(b).
// Pseudo-remainder up to a power of lc(b); adequate for a primitive PRS.
std::vector<Int> vec_prem(std::vector<Int> r, const std::vector<Int>& b) {
  const long db = static_cast<long>(b.size()) - 1;
  const Int& lb = b.back();
  vec_trim_high(r);
  while (static_cast<long>(r.size()) - 1 >= db) {
    Int lr = r.back();
    const long shift = static_cast<long>(r.size()) - 1 - db;
    for (Int& x : r) x *= lb;
    for (long i = 0; i <= db; ++i) r[static_cast<size_t>(shift + i)] -= lr * b[static_cast<size_t>(i)];
    vec_trim_high(r);
    if (r.empty()) break;
  }
  return r;
}

// Primitive-PRS gcd of two integer polynomials (vectors, constant term at
// index 0). Result normalized to positive leading coefficient.
std::vector<Int> vec_gcd(std::vector<Int> a, std::vector<Int> b) {
  vec_trim_high(a);
  vec_trim_high(b);
  if (a.empty()) std::swap(a, b);
  if (b.empty()) {
    if (!a.empty() && a.back() < 0)
      for (Int& x : a) x = -x;
    return a;
  }
  const Int ca = vec_content(a), cb = vec_content(b);
  vec_divexact_int(a, ca);
  vec_divexact_int(b, cb);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    std::vector<Int> r = vec_prem(a, b);
    if (!r.empty()) vec_divexact_int(r, vec_content(r));
    a = std::move(b);
    b = std::move(r);
  }
  const Int c = gcd(ca, cb);
  for (Int& x : a) x *= c;
  if (a.back() < 0)
    for (Int& x : a) x = -x;
  return a;
}

Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Rat b = base;
  if (e < 0) {
    if (b == 0) throw DomainError("0^negative in evaluation");
    b = 1 / b;
    e = -e;
  }
  Rat acc(1);
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

} // namespace

// --- LaurentPoly ---

LaurentPoly::LaurentPoly(long exp, Int coeff) {
  if (coeff != 0) {
    lo_ = exp;
    c_.push_back(std::move(coeff));
  }
}

void LaurentPoly::trim() {
  vec_trim_high(c_);
  size_t drop = 0;
  while (drop < c_.size() && c_[drop] == 0) ++drop;
  if (drop) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(drop));
    lo_ += static_cast<long>(drop);
  }
  if (c_.empty()) lo_ = 0;
}

long LaurentPoly::deg_low() const {
  if (is_zero()) throw DomainError("degree of zero polynomial");
  return lo_;
}

long LaurentPoly::deg_high() const {
  if (is_zero()) throw DomainError("degree of zero polynomial");
  return lo_ + static_cast<long>(c_.size()) - 1;
}

Int LaurentPoly::coeff(long e) const {
  const long i = e - lo_;
  if (i < 0 || i >= static_cast<long>(c_.size())) return 0;
  return c_[static_cast<size_t>(i)];
}

long LaurentPoly::term_count() const {
  long n = 0;
  for (const Int& x : c_)
    if (x != 0) ++n;
  return n;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  LaurentPoly r;
  r.lo_ = std::min(lo_, o.lo_);
  const long hi = std::max(deg_high(), o.deg_high());
  r.c_.assign(static_cast<size_t>(hi - r.lo_ + 1), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) r.c_[static_cast<size_t>(lo_ - r.lo_) + i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r.c_[static_cast<size_t>(o.lo_ - r.lo_) + i] += o.c_[i];
  r.trim();
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (Int& x : r.c_) x = -x;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (is_zero() || o.is_zero()) return LaurentPoly();
  LaurentPoly r;
  r.lo_ = lo_ + o.lo_;
  r.c_.assign(c_.size() + o.c_.size() - 1, Int(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      r.c_[i + j] += c_[i] * o.c_[j];
    }
  }
  r.trim();
  return r;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  return lo_ == o.lo_ && c_ == o.c_;
}

LaurentPoly LaurentPoly::shifted(long k) const {
  LaurentPoly r = *this;
  if (!r.is_zero()) r.lo_ += k;
  return r;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly r;
  if (is_zero()) return r;
  r.c_.assign(c_.rbegin(), c_.rend());
  r.lo_ = -deg_high();
  r.trim();
  return r;
}

LaurentPoly LaurentPoly::stretch(long d) const {
  if (d < 1) throw DomainError("stretch factor must be >= 1");
  if (is_zero() || d == 1) return *this;
  LaurentPoly r;
  r.lo_ = lo_ * d;
  r.c_.assign(static_cast<size_t>((c_.size() - 1) * static_cast<size_t>(d) + 1), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i * static_cast<size_t>(d)] = c_[i];
  return r;
}

Int LaurentPoly::content() const { return vec_content(c_); }

LaurentPoly LaurentPoly::div_exact(const LaurentPoly& d) const {
  if (d.is_zero()) throw InternalError("exact division by zero polynomial");
  if (is_zero()) return LaurentPoly();
  LaurentPoly q;
  q.lo_ = lo_ - d.lo_;
  std::vector<Int> rem = c_;
  vec_trim_high(rem);
  const long db = static_cast<long>(d.c_.size()) - 1;
  const Int& lead = d.c_.back();
  if (static_cast<long>(rem.size()) - 1 < db) throw InternalError("inexact polynomial division");
  q.c_.assign(rem.size() - static_cast<size_t>(db), Int(0));
  for (long pos = static_cast<long>(rem.size()) - 1; pos >= db;) {
    if (rem[static_cast<size_t>(pos)] == 0) {
      --pos;
      continue;
    }
    Int qc, rc;
    mpz_tdiv_qr(qc.get_mpz_t(), rc.get_mpz_t(), rem[static_cast<size_t>(pos)].get_mpz_t(),
                lead.get_mpz_t());
    if (rc != 0) throw InternalError("inexact polynomial division");
    const long qpos = pos - db;
    q.c_[static_cast<size_t>(qpos)] = qc;
    for (long i = 0; i <= db; ++i) rem[static_cast<size_t>(qpos + i)] -= qc * d.c_[static_cast<size_t>(i)];
    --pos;
  }
  for (const Int& x : rem)
    if (x != 0) throw InternalError("inexact polynomial division");
  q.trim();
  return q;
}

LaurentPoly LaurentPoly::gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return LaurentPoly();
  LaurentPoly g;
  g.c_ = vec_gcd(a.c_, b.c_);
  if (a.is_zero())
    g.lo_ = b.lo_;
  else if (b.is_zero())
    g.lo_ = a.lo_;
  else
    g.lo_ = std::min(a.lo_, b.lo_);
  g.trim();
  return g;
}

Rat LaurentPoly::eval(const Rat& q0) const {
  if (is_zero()) return Rat(0);
  if (q0 == 0 && lo_ < 0) throw DomainError("evaluation of negative q-power at q=0");
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= q0;
    acc += Rat(*it);
  }
  acc *= rat_pow(q0, lo_);
  acc.canonicalize();
  return acc;
}

std::string LaurentPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = static_cast<long>(c_.size()) - 1; i >= 0; --i) {
    const Int& c = c_[static_cast<size_t>(i)];
    if (c == 0) continue;
    const long e = lo_ + i;
    const bool neg = c < 0;
    Int mag = abs(c);
    if (first) {
      if (neg) os << '-';
      first = false;
    } else {
      os << (neg ? '-' : '+');
    }
    if (e == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << 'q';
      if (e != 1) os << '^' << e;
    }
  }
  return os.str();
}

// --- QScalar ---

QScalar::QScalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("zero denominator");
  canonicalize();
}

QScalar QScalar::of_int_ratio(Int a, Int b) {
  return QScalar(LaurentPoly(0, std::move(a)), LaurentPoly(0, std::move(b)));
}

void QScalar::canonicalize() {
  if (den_.is_zero()) throw DomainError("zero denominator");
  if (num_.is_zero()) {
    num_ = LaurentPoly();
    den_ = LaurentPoly(0, 1);
    return;
  }
  const long s = std::min(num_.deg_low(), den_.deg_low());
  num_ = num_.shifted(-s);
  den_ = den_.shifted(-s);
  const LaurentPoly g = LaurentPoly::gcd(num_, den_);
  num_ = num_.div_exact(g);
  den_ = den_.div_exact(g);
  if (den_.coeff(den_.deg_low()) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

bool QScalar::is_one() const {
  return den_.is_monomial() && den_.coeff(0) == 1 && num_.is_monomial() && num_.coeff(0) == 1;
}

bool QScalar::operator==(const QScalar& o) const { return num_ == o.num_ && den_ == o.den_; }

QScalar QScalar::operator+(const QScalar& o) const {
  return QScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

QScalar QScalar::operator-(const QScalar& o) const {
  return QScalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

QScalar QScalar::operator*(const QScalar& o) const {
  return QScalar(num_ * o.num_, den_ * o.den_);
}

QScalar QScalar::operator/(const QScalar& o) const {
  if (o.is_zero()) throw DomainError("division by zero scalar");
  return QScalar(num_ * o.den_, den_ * o.num_);
}

QScalar QScalar::operator-() const {
  QScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

QScalar QScalar::inv() const {
  if (is_zero()) throw DomainError("inverse of zero scalar");
  return QScalar(den_, num_);
}

QScalar QScalar::bar() const { return QScalar(num_.bar(), den_.bar()); }

QScalar QScalar::stretch(long d) const { return QScalar(num_.stretch(d), den_.stretch(d)); }

LaurentPoly QScalar::as_laurent() const {
  if (!is_laurent()) throw DomainError("scalar is not a Laurent polynomial: " + str());
  return num_.shifted(-den_.deg_low());
}

Rat QScalar::eval(const Rat& q0) const {
  if (q0 == 0) throw DomainError("specialization requires q0 != 0");
  const Rat d = den_.eval(q0);
  if (d == 0) throw PoleError("denominator vanishes at q0: " + den_.str());
  Rat r = num_.eval(q0) / d;
  r.canonicalize();
  return r;
}

std::string QScalar::str() const {
  // Single-term Laurent scalars print without the fraction: "q^-1", "2*q^3".
  if (num_.is_monomial() && is_laurent())
    return num_.shifted(-den_.deg_low()).str();
  if (den_.is_monomial() && den_.coeff(den_.deg_low()) == 1 && den_.deg_low() == 0)
    return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  bool done() const { return i >= s.size(); }
  char peek() const { return done() ? '\0' : s[i]; }
  char take() { return s[i++]; }
};

long parse_long(Cursor& c) {
  bool neg = false;
  if (c.peek() == '+' || c.peek() == '-') neg = (c.take() == '-');
  if (!std::isdigit(static_cast<unsigned char>(c.peek())))
    throw DomainError("expected integer in scalar literal");
  long v = 0;
  while (std::isdigit(static_cast<unsigned char>(c.peek()))) v = v * 10 + (c.take() - '0');
  return neg ? -v : v;
}

Int parse_bigint(Cursor& c) {
  std::string digits;
  while (std::isdigit(static_cast<unsigned char>(c.peek()))) digits += c.take();
  if (digits.empty()) throw DomainError("expected integer in scalar literal");
  return Int(digits);
}

LaurentPoly parse_poly(Cursor& c) {
  LaurentPoly acc;
  bool any = false;
  while (!c.done() && c.peek() != ')') {
    bool neg = false;
    if (c.peek() == '+' || c.peek() == '-') neg = (c.take() == '-');
    Int mag = 1;
    bool have_mag = false;
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
      mag = parse_bigint(c);
      have_mag = true;
    }
    if (c.peek() == '*') c.take();
    long e = 0;
    if (c.peek() == 'q') {
      c.take();
      e = 1;
      if (c.peek() == '^') {
        c.take();
        e = parse_long(c);
      }
    } else if (!have_mag) {
      throw DomainError("malformed scalar literal");
    }
    if (neg) mag = -mag;
    acc = acc + LaurentPoly(e, mag);
    any = true;
  }
  if (!any) throw DomainError("empty polynomial literal");
  return acc;
}

} // namespace

QScalar QScalar::parse(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw DomainError("empty scalar literal");
  Cursor c{t};
  LaurentPoly num, den(0, 1);
  if (c.peek() == '(') {
    c.take();
    num = parse_poly(c);
    if (c.take() != ')') throw DomainError("unbalanced parentheses in scalar literal");
    if (!c.done()) {
      if (c.take() != '/' || c.take() != '(') throw DomainError("malformed scalar literal");
      den = parse_poly(c);
      if (c.take() != ')') throw DomainError("unbalanced parentheses in scalar literal");
    }
  } else {
    num = parse_poly(c);
  }
  if (!c.done()) throw DomainError("trailing characters in scalar literal: " + text);
  return QScalar(std::move(num), std::move(den));
}

// --- q-combinatorics ---

QScalar q_int(long n) {
  if (n <= 0) throw DomainError("q-integer requires n >= 1");
  LaurentPoly p;
  for (long i = 0; i < n; ++i) p = p + LaurentPoly(n - 1 - 2 * i, 1);
  return QScalar(p);
}

QScalar q_factorial(long n) {
  if (n < 0) throw DomainError("q-factorial of negative integer");
  QScalar r(1);
  for (long i = 2; i <= n; ++i) r = r * q_int(i);
  return r;
}

QScalar q_binom(long n, long k) {
  if (k < 0 || k > n) throw DomainError("q-binomial requires 0 <= k <= n");
  QScalar r = q_factorial(n) / (q_factorial(k) * q_factorial(n - k));
  if (!r.is_laurent())
    throw InternalError("q-binomial failed integrality: " + r.str());
  return r;
}

Rat specialize(const QScalar& s, const Rat& q0) { return s.eval(q0); }

} // namespace qgl
