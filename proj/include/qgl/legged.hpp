#pragma once
#include "qgl/ncalg.hpp"
#include "qgl/qlinalg.hpp"

namespace qgl {

// Square matrix on (C^dim)^{⊗legs} with entries in a free algebra. Sparse:
// absent entries are zero. Flat indices are row-major with leg 1 most
// significant; leg positions are 1-based in the API.
class LeggedMatrix {
 public:
  LeggedMatrix(AlphabetPtr alpha, int legs, int dim);
  static LeggedMatrix identity(AlphabetPtr alpha, int legs, int dim);

  int legs() const { return legs_; }
  int dim() const { return dim_; }
  size_t side() const { return side_; }
  const AlphabetPtr& alphabet() const { return alpha_; }

  void set(size_t row, size_t col, NcElement e);
  void add(size_t row, size_t col, const NcElement& e);
  NcElement entry(size_t row, size_t col) const;
  const std::map<std::pair<size_t, size_t>, NcElement>& entries() const { return e_; }

  size_t flatten(const std::vector<int>& idx) const;  // 0-based leg indices

  LeggedMatrix operator*(const LeggedMatrix& o) const;
  LeggedMatrix operator+(const LeggedMatrix& o) const;
  LeggedMatrix operator-(const LeggedMatrix& o) const;
  LeggedMatrix scaled(const QScalar& s) const;
  bool operator==(const LeggedMatrix& o) const;
  bool is_zero() const { return e_.empty(); }

  // Tensor this matrix with identities into an ambient space of total_legs
  // legs; positions[k] (1-based, distinct) is the ambient leg receiving this
  // matrix's leg k+1.
  LeggedMatrix leg_embed(int total_legs, const std::vector<int>& positions) const;

  // Apply a function to every entry (e.g. normal-form reduction).
  LeggedMatrix mapped(const std::function<NcElement(const NcElement&)>& f) const;

 private:
  AlphabetPtr alpha_;
  int legs_, dim_;
  size_t side_;
  std::map<std::pair<size_t, size_t>, NcElement> e_;
};

// The standard R-matrix on C^N ⊗ C^N, its inverse, and the braided flip
// R̂ = Σ∘R, as 2-leg matrices with scalar entries over the given alphabet.
LeggedMatrix r_matrix(AlphabetPtr alpha, int n);
LeggedMatrix r_matrix_inv(AlphabetPtr alpha, int n);
LeggedMatrix r_hat(AlphabetPtr alpha, int n);

// Scalar (QMatrix) forms on C^{N²} with the same flat index convention.
QMatrix r_matrix_qm(int n);
QMatrix r_matrix_inv_qm(int n);
QMatrix r_hat_qm(int n);

// One-leg matrix of generators: entry (i,j) = elem(i,j) for 0-based i,j.
LeggedMatrix gen_matrix(AlphabetPtr alpha, int n,
                        const std::function<NcElement(int, int)>& elem);

} // namespace qgl
