#include "qgl/qlinalg.hpp"

#include <algorithm>

namespace qgl {
namespace {

// Rough structural size used for pivot selection.
long weight(const QScalar& s) {
  return s.num().term_count() + s.den().term_count();
}

void check_same_shape(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DomainError("matrix shape mismatch");
}

} // namespace

QMatrix QMatrix::identity(size_t n) {
  QMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = QScalar(1);
  return m;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  check_same_shape(*this, o);
  QMatrix m(r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
  return m;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  check_same_shape(*this, o);
  QMatrix m(r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (c_ != o.r_) throw DomainError("matrix product shape mismatch");
  QMatrix m(r_, o.c_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t k = 0; k < c_; ++k) {
      const QScalar& x = at(i, k);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < o.c_; ++j) {
        const QScalar& y = o.at(k, j);
        if (y.is_zero()) continue;
        m.at(i, j) += x * y;
      }
    }
  return m;
}

QMatrix QMatrix::scaled(const QScalar& s) const {
  QMatrix m(r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix m(c_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
  return m;
}

bool QMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const QScalar& s) { return s.is_zero(); });
}

RrefResult rref(const QMatrix& m) {
  RrefResult r{m, {}};
  QMatrix& a = r.mat;
  size_t row = 0;
  for (size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    size_t best = a.rows();
    long best_w = 0;
    for (size_t i = row; i < a.rows(); ++i) {
      if (a.at(i, col).is_zero()) continue;
      const long w = weight(a.at(i, col));
      if (best == a.rows() || w < best_w) {
        best = i;
        best_w = w;
      }
    }
    if (best == a.rows()) continue;
    if (best != row)
      for (size_t j = 0; j < a.cols(); ++j) std::swap(a.at(row, j), a.at(best, j));
    const QScalar inv_p = a.at(row, col).inv();
    for (size_t j = col; j < a.cols(); ++j) a.at(row, j) = a.at(row, j) * inv_p;
    for (size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a.at(i, col).is_zero()) continue;
      const QScalar f = a.at(i, col);
      for (size_t j = col; j < a.cols(); ++j)
        a.at(i, j) = a.at(i, j) - f * a.at(row, j);
    }
    r.pivots.push_back(col);
    ++row;
  }
  return r;
}

size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

QMatrix kernel_basis(const QMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t p : r.pivots) is_pivot[p] = true;
  std::vector<size_t> free_cols;
  for (size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  QMatrix k(m.cols(), free_cols.size());
  for (size_t t = 0; t < free_cols.size(); ++t) {
    const size_t f = free_cols[t];
    k.at(f, t) = QScalar(1);
    for (size_t i = 0; i < r.pivots.size(); ++i)
      k.at(r.pivots[i], t) = -r.mat.at(i, f);
  }
  return k;
}

std::optional<std::vector<QScalar>> solve(const QMatrix& a, const std::vector<QScalar>& b) {
  if (b.size() != a.rows()) throw DomainError("solve: rhs length mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  const RrefResult r = rref(aug);
  for (size_t p : r.pivots)
    if (p == a.cols()) return std::nullopt;  // row (0 ... 0 | 1): inconsistent
  std::vector<QScalar> x(a.cols());
  for (size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.mat.at(i, a.cols());
  return x;
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse of non-square matrix");
  const size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = QScalar(1);
  }
  const RrefResult r = rref(aug);
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1)
    throw DomainError("matrix is singular");
  QMatrix inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv.at(i, j) = r.mat.at(i, n + j);
  return inv;
}

} // namespace qgl
