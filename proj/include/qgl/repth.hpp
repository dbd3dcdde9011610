#pragma once

#include <map>
#include <string>
#include <vector>

#include "qgl/casimir.hpp"
#include "qgl/qgroups.hpp"
#include "qgl/qlinalg.hpp"

namespace qgl {

// -----------------------------------------------------------------------
// Weights. lambda_i = m[i] + shift; the common rational shift supports the
// weakly integral case at the type level. Construction of modules requires
// an integral shift, since q^c for fractional c lies outside the exact
// scalar field.
// -----------------------------------------------------------------------
struct Weight {
  std::vector<long> m;
  Rat shift{0};

  int n() const { return static_cast<int>(m.size()); }
  bool dominant() const;
  long sum() const;
  bool operator<(const Weight& o) const;
  bool operator==(const Weight& o) const { return m == o.m && shift == o.shift; }
  std::string str() const;
};

// -----------------------------------------------------------------------
// A finite-dimensional type-1 highest-weight module, with exact action
// matrices for the Chevalley generators (acting on coordinate columns) and
// for every letter of the triangular algebra.
// -----------------------------------------------------------------------
struct IrrepModule {
  int n = 0;
  size_t dim = 0;
  Weight highest;
  std::vector<std::vector<long>> wt;  // K-weight of each basis vector
  std::vector<QMatrix> actE, actF;    // [i-1], i = 1..n-1
  std::vector<QMatrix> actK, actKinv; // [i-1], i = 1..n
  std::vector<QMatrix> ot_act;        // per triangular-algebra GenId

  QMatrix khat(int i) const;     // K_i K_{i+1}^{-1}
  QMatrix khat_inv(int i) const;
};

// the vector representation: E_i -> e_{i,i+1}, F_i -> e_{i+1,i},
// K_i e_n = q^{delta_in} e_n; triangular letters act through the R-matrix
IrrepModule vector_rep(const AlgebraHandle& ot);

// tensor product along the coproduct; the triangular letters act with the
// tensor legs exchanged (the enveloping algebra sees the co-opposite)
IrrepModule module_tensor(const AlgebraHandle& ot, const IrrepModule& a,
                          const IrrepModule& b);

// braided flip acting in legs (i, i+1) of V^{otimes m}
QMatrix hecke_op(int n, int i, int m);

// highest-weight irreducible: shift to a partition, extract a highest-weight
// vector in the tensor power, close under the F_i, twist back by the
// determinant character. Throws DomainError for non-dominant or fractional-
// shift weights, InternalError if no highest-weight vector exists.
IrrepModule irrep(const AlgebraHandle& ot, const Weight& lambda);

// action of an arbitrary triangular-algebra element
QMatrix act_ot(const IrrepModule& m, const AlgebraHandle& ot, const NcElement& x);

std::map<std::vector<long>, size_t> weight_mults(const IrrepModule& m);

// quantum dimension sum_nu q^{-2 sum_i (N-i+1) nu_i} d_{lambda,nu}
QScalar qdim(const IrrepModule& m);

// central character of a central reflection-algebra element: hc(z) evaluated
// at T_i^2 -> q^{-2 lambda_i}, cross-checked against the scalar by which the
// Cholesky image acts on irrep(lambda). Throws InconsistencyError if the
// module action is not that scalar.
QScalar central_character(const CasimirCtx& ctx, const AlgebraHandle& ot,
                          const NcElement& z, const Weight& lambda,
                          const IrrepModule* module = nullptr);

// the positive density: product of the Cholesky images of B_1..B_N
QMatrix b_density(const CasimirCtx& ctx, const AlgebraHandle& ot,
                  const IrrepModule& m);

// omega(x) = Tr(pi(B) pi(x)) / Tr(pi(B))
QScalar omega_state(const CasimirCtx& ctx, const AlgebraHandle& ot,
                    const IrrepModule& m, const NcElement& x);

// -----------------------------------------------------------------------
// check-level verifications
// -----------------------------------------------------------------------

// all defining relations of the enveloping algebra hold as exact matrix
// identities; K_i act diagonally by the recorded weights; the highest
// weight space is killed by every E_i
VerifyResult verify_module(const AlgebraHandle& uq, const AlgebraHandle& ot,
                           const IrrepModule& m);

// braid + quadratic relations for the braided flips on V^{otimes m}, and
// commutation with the module action
VerifyResult verify_hecke(const AlgebraHandle& ot, int m);

// dims match the Weyl formula on the window (lambda_1 - lambda_N <= window,
// lambda_N = 0, plus shifted copies); qdim specializes to dim at q = 1;
// central characters of the C_k match the module scalars
VerifyResult verify_rep_dims(const CasimirCtx& ctx, const AlgebraHandle& uq,
                             const AlgebraHandle& ot, int window);

// omega(chol(B_k)) equals q^{-(N+1)k} qbinom(N,k)^{-1}
// e_k(q^{2-2l_1}, ..., q^{2N-2l_N}) for each weight in lambdas
VerifyResult verify_ehc(const CasimirCtx& ctx, const AlgebraHandle& ot, int k,
                        const std::vector<Weight>& lambdas);

// pi(S^2(g)) = pi(B)^{-1} pi(g) pi(B) for every triangular letter, and
// omega(1) = 1
VerifyResult verify_omega_invariance(const CasimirCtx& ctx, const AlgebraHandle& ot,
                                     const IrrepModule& m);

// -----------------------------------------------------------------------
// numeric layer
// -----------------------------------------------------------------------

struct FiltrationRow {
  Weight lambda;
  Rat control_value;            // max([2]_{q0}, chi(Tr_{Q^2} T*T), chi(B_N^{-2}))
  std::vector<bool> in_p_leq;   // one flag per threshold
};

// rows over dominant integral weights with |lambda_i| <= window, each
// carrying the control value at q0 and threshold membership flags
std::vector<FiltrationRow> filtration_table(const CasimirCtx& ctx,
                                            const AlgebraHandle& ot, Rat q0,
                                            long window,
                                            const std::vector<Rat>& thresholds);

struct SpectrumReport {
  bool ok = false;
  double residual = 0.0;              // Frobenius norm of the annihilated poly
  std::vector<double> eigenvalues;    // distinct, ascending
  std::vector<double> closed_form;    // q0^{-2(lambda_k - k - 1)}, ascending
  bool closed_form_matches = false;
  std::string note;
};

// numeric check at q0: the block matrix pi_lambda(T*T) is annihilated by the
// characteristic polynomial with exact central-character coefficients
// (asserted within tol); its spectrum is compared against the closed form
// (reported only)
SpectrumReport spectrum_check(const CasimirCtx& ctx, const AlgebraHandle& ot,
                              const Weight& lambda, Rat q0, double tol);

}  // namespace qgl
