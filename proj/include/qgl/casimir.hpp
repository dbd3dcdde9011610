#pragma once

#include <map>
#include <string>
#include <vector>

#include "qgl/legged.hpp"
#include "qgl/qgroups.hpp"

namespace qgl {

// -----------------------------------------------------------------------
// Diagonal Laurent polynomials in the squared diagonal generators T_i^2.
// An exponent vector e means the monomial  prod_i T_i^{2 e_i}.
// -----------------------------------------------------------------------
struct DiagPoly {
  int n = 0;
  std::map<std::vector<int>, QScalar> terms;

  static DiagPoly zero(int n) { return DiagPoly{n, {}}; }
  static DiagPoly constant(int n, const QScalar& c);
  static DiagPoly monomial(int n, std::vector<int> exps, const QScalar& c);

  bool is_zero() const;
  DiagPoly operator+(const DiagPoly& o) const;
  DiagPoly operator-(const DiagPoly& o) const;
  DiagPoly operator*(const DiagPoly& o) const;
  DiagPoly scaled(const QScalar& c) const;
  bool operator==(const DiagPoly& o) const;

  // substitute concrete values for the T_i^2
  QScalar eval_at(const std::vector<QScalar>& ti_squared) const;
  // as an element of the triangular algebra
  NcElement to_element(const AlgebraHandle& ot) const;
  std::string str() const;
};

// q^{-2k} e_k(q^2 T_1^2, q^4 T_2^2, ..., q^{2N} T_N^2)
DiagPoly hc_elementary_target(int n, int k);

// -----------------------------------------------------------------------
// Weighted traces.  Q = Diag(q^{N-i}); tr_weighted(W, s) = sum_i q^{s(N-i)} W_ii
// for s = +2 (Q^2-trace) or s = -2 (Q^{-2}-trace).
// -----------------------------------------------------------------------
NcElement tr_weighted(const LeggedMatrix& w, int s);

// k-th matrix power of a one-legged square matrix (k >= 1)
LeggedMatrix matrix_power(const LeggedMatrix& m, int k);

// -----------------------------------------------------------------------
// Reflection-equation algebra elements
// -----------------------------------------------------------------------

// B_k = sum_{sigma in S_k} (-q)^{-l(sigma)} q^{-e(sigma)} Z_{k,sigma(k)} ... Z_{1,sigma(1)}
// where e(sigma) = #{i : sigma(i) < i}
NcElement b_element(const AlgebraHandle& oh, int k);

// p_j = Tr_{Q^2}(Z^j), reduced to normal form
NcElement casimir_p(const AlgebraHandle& oh, int j);

// partitions of k, reverse-lexicographic ([k] first, [1,...,1] last)
std::vector<std::vector<int>> partitions(int k);

// -----------------------------------------------------------------------
// Harish-Chandra map: z central in the reflection-equation algebra is pushed
// through the Cholesky embedding into the triangular algebra, words with a
// strict-triangular letter are dropped, and the surviving diagonal Laurent
// polynomial is re-expressed in the T_i^2.  An odd diagonal exponent raises
// ConventionError; a non-central input raises DomainError unless
// require_central is false.
// -----------------------------------------------------------------------
struct CasimirCtx {
  const AlgebraHandle* oh = nullptr;
  const AlgebraHandle* ot = nullptr;
  GenImages chol;            // quantum Cholesky embedding
  std::vector<NcElement> C;  // derived CH coefficients C_1..C_N (in the RE algebra)
  std::vector<DiagPoly> hcC; // their Harish-Chandra images
};

DiagPoly hc(const CasimirCtx& ctx, const NcElement& z, bool require_central = true);

// derive the CH coefficients: C_k = sum over partitions mu of k of c_mu p_mu,
// with the c_mu solved exactly from hc(C_k) = q^{-2k} e_k(q^2 T_1^2, ..., q^{2N} T_N^2)
CasimirCtx make_casimir_ctx(const AlgebraHandle& oh, const AlgebraHandle& ot);

// -----------------------------------------------------------------------
// Verifications.  Each returns VerifyResult with ok/witness/notes.
// -----------------------------------------------------------------------

// entrywise Cayley-Hamilton F(Z) = Z^N - C_1 Z^{N-1} + ... + (-1)^N C_N = 0,
// plus the pushforward with Z replaced by T*T and C_k by chi(C_k)
VerifyResult verify_ch(const CasimirCtx& ctx);

// chi(B_k) = T_1^2...T_k^2 for k <= N, and C_N = q^{N(N-1)} B_N
VerifyResult verify_bk(const CasimirCtx& ctx);

// three-case commutation of B_i with Z_kl (trivial / q^2 / q^{-2})
VerifyResult verify_b_commute(const AlgebraHandle& oh);

// hc is multiplicative on central elements (sample products of the p_j)
VerifyResult verify_hc_homomorphism(const CasimirCtx& ctx);

// hc(C_k) = q^{-2k} e_k(q^2 T_1^2, ..., q^{2N} T_N^2) for all k
VerifyResult verify_hc_images(const CasimirCtx& ctx);

// centrality of Tr_{Q^2}((X*X)^k) and Tr_{Q^{-2}}((XX*)^k) in the realified
// algebra for k in ks, plus the exchange relation
// q^{1-N} Tr_{Q^2}((XX*)^k) = q^{N-1} Tr_{Q^{-2}}((X*X)^k)
VerifyResult verify_newton(const AlgebraHandle& glr, const std::vector<int>& ks);

// L_k = F_k^* Z_{N,N+1} F_k pairwise commute and satisfy the product law
// L_N ... L_k = (Z_{N,N+1} F_k)^{N-k+1}
VerifyResult verify_l_family(const AlgebraHandle& oh);

// B_N is, up to a scalar positive at sample points, the vector-state slice
// (omega_q ox id)((Z_{N,N+1} Rhat_{N-1,N} ... Rhat_{12})^N) along the joint
// (-q)-eigenvector of the Rhat_{i,i+1}
VerifyResult verify_bn_slice(const AlgebraHandle& oh);

}  // namespace qgl
