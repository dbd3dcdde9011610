#pragma once
#include <optional>
#include <vector>

#include "qgl/qfield.hpp"

namespace qgl {

// Dense matrix over the exact coefficient field.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  static QMatrix identity(size_t n);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  QScalar& at(size_t i, size_t j) { return a_[i * c_ + j]; }
  const QScalar& at(size_t i, size_t j) const { return a_[i * c_ + j]; }

  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix operator*(const QMatrix& o) const;
  QMatrix scaled(const QScalar& s) const;
  QMatrix transpose() const;
  bool operator==(const QMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool is_zero() const;

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<QScalar> a_;
};

struct RrefResult {
  QMatrix mat;                 // reduced row-echelon form
  std::vector<size_t> pivots;  // pivot column per nonzero row
};

// Exact Gauss-Jordan elimination; pivot choice favors structurally simple
// entries to limit expression growth.
RrefResult rref(const QMatrix& m);
size_t rank(const QMatrix& m);

// Columns form a basis of the right null space {v : m v = 0}.
QMatrix kernel_basis(const QMatrix& m);

// One solution of A x = b, or nullopt if inconsistent.
std::optional<std::vector<QScalar>> solve(const QMatrix& a, const std::vector<QScalar>& b);

// Inverse of a square matrix; throws DomainError if singular.
QMatrix inverse(const QMatrix& m);

} // namespace qgl
