#pragma once
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qgl/legged.hpp"
#include "qgl/rewrite.hpp"

namespace qgl {

// The algebra catalog. OM = quantum N×N matrices, OGL = quantum GL(N), OGLR =
// the realified two-copy quantum GL(N,C), OU = quantum U(N), OT = the
// quantum upper/lower triangular pair ("quantum T(N)"), OH = the reflection
// equation algebra of quantum Hermitian matrices, Uqgl = the quantized
// enveloping algebra of gl_N.
enum class AlgebraKind { OM, OGL, OGLR, OU, OT, OH, Uqgl };

const char* kind_name(AlgebraKind k);

// Coalgebra/Hopf layer on generators. Coproduct images live in carrier
// (base ⊗ base); the antipode vector is empty for bialgebras without one.
struct HopfData {
  std::shared_ptr<const TensorCarrier> carrier;
  std::vector<NcElement> coproduct;  // per GenId, over carrier->combined()
  std::vector<QScalar> counit;       // per GenId
  std::vector<NcElement> antipode;   // per GenId, over the base alphabet
  bool has_antipode() const { return !antipode.empty(); }
};

struct AlgebraHandle {
  AlgebraKind kind = AlgebraKind::OM;
  int n = 0;
  std::shared_ptr<Presentation> pres;
  std::optional<HopfData> hopf;
  // Conjugate-linear involutive anti-automorphism (q itself is *-fixed), as
  // generator images extended antimultiplicatively via star_apply.
  std::optional<GenImages> star;
  std::vector<std::string> notes;  // convention records accumulated at build

  const AlphabetPtr& alphabet() const { return pres->alphabet(); }
  NcElement gen(const std::string& name) const {
    return NcElement::gen(alphabet(), name);
  }
  NcElement nf(const NcElement& a) const { return pres->normal_form(a); }
  bool is_zero(const NcElement& a) const { return pres->is_zero(a); }
};

// Generator names. Matrix letters use 1-based indices: "X12", "U33". The
// triangular algebra uses "Tp12" (strict upper), "T1"/"T1inv" (diagonal),
// "Tm21" (strict lower).
std::string mat_name(char letter, int i, int j);
std::string ot_name(int i, int j);        // entry (i,j) of the T+ / T- pair
std::string ot_diag_name(int i, bool inv);

// Builds a catalog algebra with completed confluent presentation, Hopf data
// where defined, and star structure where defined. N in {2,3} is supported
// (4 best-effort for OM). Throws ConventionError or InconsistencyError if a
// structural self-check fails.
AlgebraHandle build_algebra(AlgebraKind kind, int n);

// The generator matrix of handle h: letter 'X','Y' (OGLR), 'U' (OU), 'Z'
// (OH), 'X' (OM/OGL), 'P' (OT upper incl. diagonal), 'M' (OT lower incl.
// inverse diagonal). One matrix leg; entries are generators (or 0).
LeggedMatrix generator_matrix(const AlgebraHandle& h, char letter);

// Quantum determinant of the letter's generator matrix, one of three
// equivalent expressions:
//   form 1: Σ_σ (−q)^{l(σ)}  X_{1,σ(1)} ··· X_{N,σ(N)}
//   form 2: Σ_σ (−q)^{l(σ)}  X_{σ(1),1} ··· X_{σ(N),N}
//   form 3: Σ_σ (−q)^{−l(σ)} X_{N,σ(N)} ··· X_{1,σ(1)}
NcElement quantum_det(const AlgebraHandle& h, char letter, int form);

// Cofactor antipode candidate for the letter's generator matrix in a
// localized handle (OGL/OU: letter 'X'/'U' with "Dinv"; OGLR: 'X'/'Y' with
// "DinvX"/"DinvY"): S(X)_{ij} = (−q)^{i−j} · minor(delete row j, col i) ·
// Dinv. Validated by X·S(X) = S(X)·X = I after normal form; a failing entry
// raises ConventionError naming it.
LeggedMatrix antipode_matrix(const AlgebraHandle& h, char letter);

// Triangular inverse over the handle's algebra: entries of the inverse of an
// upper (or lower) triangular generator matrix whose diagonal entries have
// the given inverses. Validated by M·M⁻¹ = M⁻¹·M = I after normal form.
LeggedMatrix triangular_inverse(const AlgebraHandle& h, const LeggedMatrix& m,
                                const std::function<NcElement(int)>& diag_inv,
                                bool upper);

// Checks (ε⊗id)Δ = id = (id⊗ε)Δ and, when the antipode is present,
// m(S⊗id)Δ = ε·1 = m(id⊗S)Δ on every generator. Returns a description of
// the first failure, or nullopt if all axioms hold.
std::optional<std::string> hopf_axioms_violation(const AlgebraHandle& h);

// Checks that star is an involutive anti-automorphism: star² = id on
// generators and star(rel) normal-forms to zero for every seeded defining
// relation. Returns the first failure, or nullopt.
std::optional<std::string> star_violation(const AlgebraHandle& h,
                                          const std::vector<NcElement>& relations);

// The seeded defining relations of a catalog algebra (before completion),
// over the handle's alphabet. Deterministic order.
std::vector<NcElement> defining_relations(const AlgebraHandle& h);

// Bilinear Hopf pairing evaluator. Base values are given on generator pairs;
// products in the first argument split through the second argument's
// coproduct and vice versa, with a recorded law convention:
//   first-argument law  A: <g·w, v> = Σ <g, v₍₁₎><w, v₍₂₎>
//                       B: <g·w, v> = Σ <g, v₍₂₎><w, v₍₁₎>
//   second-argument law A: <g, v·h> = Σ <g₍₁₎, h><g₍₂₎, v>
//                       B: <g, v·h> = Σ <g₍₁₎, v><g₍₂₎, h>
class Pairing {
 public:
  Pairing(const AlgebraHandle* left, const AlgebraHandle* right,
          std::map<std::pair<GenId, GenId>, QScalar> base, int law_first,
          int law_second);

  QScalar eval(const NcElement& a, const NcElement& b) const;
  QScalar eval_words(const Word& u, const Word& v) const;

  int law_first() const { return law_first_; }
  int law_second() const { return law_second_; }
  std::string convention() const { return convention_; }
  void set_convention(std::string c) { convention_ = std::move(c); }

  // Extends the base table with values on a localization letter (second /
  // first argument) by solving the linear system expressing
  // <·, det·dinv> = ε  /  <det·dinv, ·> = ε. det_poly is over the opposite
  // side's alphabet. Throws InconsistencyError if the system is singular.
  void solve_right_localization(GenId right_dinv, const NcElement& right_det);
  void solve_left_localization(GenId left_dinv, const NcElement& left_det);

 private:
  const AlgebraHandle* left_;
  const AlgebraHandle* right_;
  std::map<std::pair<GenId, GenId>, QScalar> base_;
  int law_first_, law_second_;
  std::string convention_;
  std::optional<GenId> right_dinv_;
  std::optional<NcElement> right_det_;
  mutable std::map<std::pair<Word, Word>, QScalar> memo_;
  mutable std::map<Word, std::vector<std::pair<std::pair<Word, Word>, QScalar>>>
      right_cop_memo_;
};

// The r-form on OGL × OGL: base values r(X_ij, X_kl) from the R-matrix,
// extended by the pairing laws and pinned among the four (matrix, law)
// conventions by r(Det_q(X), X_ij) = q^{−1}δ_ij. The chosen convention is
// recorded on the returned pairing. Throws ConventionError if none matches.
Pairing pairing_r(const AlgebraHandle& gl);

// Convolution-inverse values: r⁻¹(a, b) = r(a, S(b)).
QScalar pairing_r_inv(const Pairing& r, const AlgebraHandle& gl,
                      const NcElement& a, const NcElement& b);

// The dual pairing of the triangular algebra against OU: base values from
// (id⊗p)(T⁺₁₃ U₂₄) = R and (id⊗p)(T⁻₁₃ U₂₄) = R₂₁⁻¹, extended by the
// pairing laws; the law pair is pinned by the coadjoint action identity
// T⁻¹₁₃ ▷ Z₂₃ = R₁₂ Z₂₃ R₁₂⁻¹ together with p(g, Det_q(U)·Dinv) = ε(g).
// The chosen convention is recorded. Throws ConventionError if none matches.
Pairing pairing_p(const AlgebraHandle& ot, const AlgebraHandle& ou,
                  const AlgebraHandle& oh);

// Quantum Cholesky substitution Z_ij ↦ (T*T)_ij into the triangular algebra.
// Relation preservation is validated at build. Images are normal forms.
GenImages cholesky_map(const AlgebraHandle& oh, const AlgebraHandle& ot);

// Coadjoint coaction Z_ij ↦ Σ_{g,h} Z_gh ⊗ (U*)_{ig} U_{hj} of OH into
// OH ⊗ OU, as generator images over the returned carrier.
struct CoactAd {
  std::shared_ptr<const TensorCarrier> carrier;  // OH ⊗ OU
  GenImages images;
};
CoactAd coact_ad(const AlgebraHandle& oh, const AlgebraHandle& ou);

// The quantum QR morphism x ↦ (π_U ⊗ π_T)Δ(x) on OGLR, with values in
// OU ⊗ OT. Projection relation-preservation is validated at build.
struct QrMap {
  std::shared_ptr<const TensorCarrier> carrier;  // OU ⊗ OT
  GenImages images;
};
QrMap qr_map(const AlgebraHandle& oglr, const AlgebraHandle& ou,
             const AlgebraHandle& ot);

// The isomorphism U_q(gl_N) → OT on generators:
//   K_i ↦ T_i⁻¹, E_i ↦ (q−q⁻¹)⁻¹ T_{i+1} T⁻_{i+1,i},
//   F_i ↦ −(q−q⁻¹)⁻¹ T⁺_{i,i+1} T_{i+1}⁻¹.
// Every defining relation of U_q(gl_N) is checked to map to zero; a failure
// raises ConventionError naming the relation.
GenImages uq_iso(const AlgebraHandle& uq, const AlgebraHandle& ot);

// Slot-wise normal form on a tensor carrier: left components reduced by pl,
// right components by pr.
NcElement tensor_nf(const TensorCarrier& tc, const Presentation& pl,
                    const Presentation& pr, const NcElement& x);

// Iterated coproduct of a word (product of the letters' coproduct images),
// slot-normalized.
NcElement coproduct_of_word(const AlgebraHandle& h, const Word& w);

// Counit of a word / element.
QScalar counit_word(const AlgebraHandle& h, const Word& w);
QScalar counit(const AlgebraHandle& h, const NcElement& a);

// Antimultiplicative application of the antipode to an element.
NcElement antipode_apply(const AlgebraHandle& h, const NcElement& a);

// R₂₁-style flip of a two-leg matrix: entry ((i,k),(j,l)) ↦ ((k,i),(l,j)).
LeggedMatrix flip_legs(const LeggedMatrix& m);

// Shared verification result for check implementations.
struct VerifyResult {
  bool ok = true;
  std::string witness;
  std::vector<std::string> notes;
  void fail(const std::string& w) {
    if (ok) {
      ok = false;
      witness = w;
    }
  }
  void note(std::string s) { notes.push_back(std::move(s)); }
};

// Lazily built, cached algebra catalog for one N.
class QglCtx {
 public:
  explicit QglCtx(int n) : n_(n) {}
  int n() const { return n_; }
  AlgebraHandle& get(AlgebraKind k);

 private:
  int n_;
  std::map<AlgebraKind, std::shared_ptr<AlgebraHandle>> cache_;
};

}  // namespace qgl
