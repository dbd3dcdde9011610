#include "qgl/legged.hpp"

#include <cmath>

namespace qgl {
namespace {

size_t pow_sz(int base, int e) {
  size_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<size_t>(base);
  return r;
}

void check_compat(const LeggedMatrix& a, const LeggedMatrix& b) {
  if (a.alphabet() != b.alphabet()) throw DomainError("legged matrices over different alphabets");
  if (a.legs() != b.legs() || a.dim() != b.dim()) throw DomainError("legged matrix shape mismatch");
}

} // namespace

LeggedMatrix::LeggedMatrix(AlphabetPtr alpha, int legs, int dim)
    : alpha_(std::move(alpha)), legs_(legs), dim_(dim), side_(pow_sz(dim, legs)) {
  if (legs < 1 || dim < 1) throw DomainError("legged matrix needs legs >= 1, dim >= 1");
}

LeggedMatrix LeggedMatrix::identity(AlphabetPtr alpha, int legs, int dim) {
  LeggedMatrix m(std::move(alpha), legs, dim);
  for (size_t i = 0; i < m.side_; ++i) m.set(i, i, NcElement::one(m.alpha_));
  return m;
}

void LeggedMatrix::set(size_t row, size_t col, NcElement e) {
  if (row >= side_ || col >= side_) throw DomainError("legged matrix index out of range");
  if (e.is_zero())
    e_.erase({row, col});
  else
    e_.insert_or_assign({row, col}, std::move(e));
}

void LeggedMatrix::add(size_t row, size_t col, const NcElement& e) {
  set(row, col, entry(row, col) + e);
}

NcElement LeggedMatrix::entry(size_t row, size_t col) const {
  if (row >= side_ || col >= side_) throw DomainError("legged matrix index out of range");
  auto it = e_.find({row, col});
  return it == e_.end() ? NcElement::zero(alpha_) : it->second;
}

size_t LeggedMatrix::flatten(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != legs_) throw DomainError("flatten: wrong index arity");
  size_t f = 0;
  for (int v : idx) {
    if (v < 0 || v >= dim_) throw DomainError("flatten: index out of range");
    f = f * static_cast<size_t>(dim_) + static_cast<size_t>(v);
  }
  return f;
}

LeggedMatrix LeggedMatrix::operator*(const LeggedMatrix& o) const {
  check_compat(*this, o);
  // Group the right factor's entries by row for sparse accumulation.
  std::map<size_t, std::vector<std::pair<size_t, const NcElement*>>> by_row;
  for (const auto& [rc, e] : o.e_) by_row[rc.first].push_back({rc.second, &e});
  LeggedMatrix m(alpha_, legs_, dim_);
  for (const auto& [rc, e] : e_) {
    auto it = by_row.find(rc.second);
    if (it == by_row.end()) continue;
    for (const auto& [col, oe] : it->second) m.add(rc.first, col, e * *oe);
  }
  return m;
}

LeggedMatrix LeggedMatrix::operator+(const LeggedMatrix& o) const {
  check_compat(*this, o);
  LeggedMatrix m = *this;
  for (const auto& [rc, e] : o.e_) m.add(rc.first, rc.second, e);
  return m;
}

LeggedMatrix LeggedMatrix::operator-(const LeggedMatrix& o) const {
  check_compat(*this, o);
  LeggedMatrix m = *this;
  for (const auto& [rc, e] : o.e_) m.add(rc.first, rc.second, -e);
  return m;
}

LeggedMatrix LeggedMatrix::scaled(const QScalar& s) const {
  LeggedMatrix m(alpha_, legs_, dim_);
  for (const auto& [rc, e] : e_) m.set(rc.first, rc.second, e.scaled(s));
  return m;
}

bool LeggedMatrix::operator==(const LeggedMatrix& o) const {
  return alpha_ == o.alpha_ && legs_ == o.legs_ && dim_ == o.dim_ && e_ == o.e_;
}

LeggedMatrix LeggedMatrix::leg_embed(int total_legs, const std::vector<int>& positions) const {
  if (static_cast<int>(positions.size()) != legs_)
    throw DomainError("leg_embed: one position per leg required");
  std::vector<bool> used(static_cast<size_t>(total_legs), false);
  for (int p : positions) {
    if (p < 1 || p > total_legs) throw DomainError("leg_embed: position out of range");
    if (used[static_cast<size_t>(p - 1)]) throw DomainError("leg_embed: duplicate position");
    used[static_cast<size_t>(p - 1)] = true;
  }
  std::vector<int> free_legs;
  for (int p = 0; p < total_legs; ++p)
    if (!used[static_cast<size_t>(p)]) free_legs.push_back(p);

  LeggedMatrix m(alpha_, total_legs, dim_);
  const size_t free_count = pow_sz(dim_, static_cast<int>(free_legs.size()));
  for (const auto& [rc, e] : e_) {
    // Decode this matrix's multi-indices.
    std::vector<int> ri(static_cast<size_t>(legs_)), ci(static_cast<size_t>(legs_));
    size_t r = rc.first, c = rc.second;
    for (int k = legs_ - 1; k >= 0; --k) {
      ri[static_cast<size_t>(k)] = static_cast<int>(r % static_cast<size_t>(dim_));
      ci[static_cast<size_t>(k)] = static_cast<int>(c % static_cast<size_t>(dim_));
      r /= static_cast<size_t>(dim_);
      c /= static_cast<size_t>(dim_);
    }
    for (size_t fill = 0; fill < free_count; ++fill) {
      std::vector<int> row(static_cast<size_t>(total_legs)), col(static_cast<size_t>(total_legs));
      size_t f = fill;
      for (size_t k = free_legs.size(); k-- > 0;) {
        const int v = static_cast<int>(f % static_cast<size_t>(dim_));
        f /= static_cast<size_t>(dim_);
        row[static_cast<size_t>(free_legs[k])] = v;
        col[static_cast<size_t>(free_legs[k])] = v;
      }
      for (int k = 0; k < legs_; ++k) {
        row[static_cast<size_t>(positions[static_cast<size_t>(k)] - 1)] = ri[static_cast<size_t>(k)];
        col[static_cast<size_t>(positions[static_cast<size_t>(k)] - 1)] = ci[static_cast<size_t>(k)];
      }
      m.add(m.flatten(row), m.flatten(col), e);
    }
  }
  return m;
}

LeggedMatrix LeggedMatrix::mapped(const std::function<NcElement(const NcElement&)>& f) const {
  LeggedMatrix m(alpha_, legs_, dim_);
  for (const auto& [rc, e] : e_) m.set(rc.first, rc.second, f(e));
  return m;
}

namespace {

// Shared construction of R / R^{-1}: a Σ e_ii⊗e_ii + Σ_{i≠j} e_ii⊗e_jj +
// b Σ_{i<j} e_ij⊗e_ji, with (a, b) = (q^{-1}, q^{-1}−q) for R and
// (q, q−q^{-1}) for R^{-1}.
void fill_r(const std::function<void(int, int, int, int, QScalar)>& put, int n,
            const QScalar& a, const QScalar& b) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) put(i, j, i, j, i == j ? a : QScalar(1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) put(i, j, j, i, b);
}

} // namespace

LeggedMatrix r_matrix(AlphabetPtr alpha, int n) {
  LeggedMatrix m(std::move(alpha), 2, n);
  fill_r(
      [&](int i, int j, int k, int l, QScalar v) {
        m.set(m.flatten({i, j}), m.flatten({k, l}),
              NcElement::monomial(m.alphabet(), Word(), std::move(v)));
      },
      n, QScalar::q_power(-1), QScalar::q_power(-1) - QScalar::q_power(1));
  return m;
}

LeggedMatrix r_matrix_inv(AlphabetPtr alpha, int n) {
  LeggedMatrix m(std::move(alpha), 2, n);
  fill_r(
      [&](int i, int j, int k, int l, QScalar v) {
        m.set(m.flatten({i, j}), m.flatten({k, l}),
              NcElement::monomial(m.alphabet(), Word(), std::move(v)));
      },
      n, QScalar::q_power(1), QScalar::q_power(1) - QScalar::q_power(-1));
  return m;
}

LeggedMatrix r_hat(AlphabetPtr alpha, int n) {
  const LeggedMatrix r = r_matrix(std::move(alpha), n);
  LeggedMatrix m(r.alphabet(), 2, n);
  for (const auto& [rc, e] : r.entries()) {
    const size_t i = rc.first / static_cast<size_t>(n), j = rc.first % static_cast<size_t>(n);
    m.set(j * static_cast<size_t>(n) + i, rc.second, e);
  }
  return m;
}

namespace {

QMatrix to_qm(const LeggedMatrix& m) {
  QMatrix a(m.side(), m.side());
  for (const auto& [rc, e] : m.entries()) a.at(rc.first, rc.second) = e.scalar_part();
  return a;
}

AlphabetPtr empty_alpha() {
  static AlphabetPtr a = Alphabet::make({});
  return a;
}

} // namespace

QMatrix r_matrix_qm(int n) { return to_qm(r_matrix(empty_alpha(), n)); }
QMatrix r_matrix_inv_qm(int n) { return to_qm(r_matrix_inv(empty_alpha(), n)); }
QMatrix r_hat_qm(int n) { return to_qm(r_hat(empty_alpha(), n)); }

LeggedMatrix gen_matrix(AlphabetPtr alpha, int n,
                        const std::function<NcElement(int, int)>& elem) {
  LeggedMatrix m(std::move(alpha), 1, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(static_cast<size_t>(i), static_cast<size_t>(j), elem(i, j));
  return m;
}

} // namespace qgl
