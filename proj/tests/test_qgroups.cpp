#include "doctest.h"

#include "qgl/errors.hpp"
#include "qgl/qgroups.hpp"

using namespace qgl;

namespace {

QScalar qp(long k) { return QScalar::q_power(k); }

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("matrix quantum semigroup at N=2: frozen rewrite rules") {
  auto om = build_algebra(AlgebraKind::OM, 2);
  CHECK(om.alphabet()->size() == 4);
  CHECK(om.pres->rules().size() == 6);
  CHECK(om.pres->completion_added() == 0);
  auto g = [&](const char* s) { return om.gen(s); };
  CHECK(om.is_zero(g("X12") * g("X11") - (g("X11") * g("X12")).scaled(qp(-1))));
  CHECK(om.is_zero(g("X21") * g("X11") - (g("X11") * g("X21")).scaled(qp(-1))));
  CHECK(om.is_zero(g("X21") * g("X12") - g("X12") * g("X21")));
  CHECK(om.is_zero(g("X22") * g("X12") - (g("X12") * g("X22")).scaled(qp(-1))));
  CHECK(om.is_zero(g("X22") * g("X21") - (g("X21") * g("X22")).scaled(qp(-1))));
  CHECK(om.is_zero(g("X22") * g("X11") - g("X11") * g("X22") +
                   (g("X12") * g("X21")).scaled(qp(1) - qp(-1))));
  for (int d = 0; d <= 6; ++d)
    CHECK(om.pres->count_irreducible(d) == Int(binom(d + 3, 3)));
}

TEST_CASE("quantum determinant: three expressions, centrality, grouplikeness") {
  for (int n : {2, 3}) {
    auto om = build_algebra(AlgebraKind::OM, n);
    auto d1 = quantum_det(om, 'X', 1);
    auto d2 = quantum_det(om, 'X', 2);
    auto d3 = quantum_det(om, 'X', 3);
    CHECK(om.is_zero(d1 - d2));
    CHECK(om.is_zero(d1 - d3));
    for (GenId g = 0; g < om.alphabet()->size(); ++g) {
      auto x = NcElement::gen(om.alphabet(), g);
      CHECK(om.is_zero(d1 * x - x * d1));
    }
    // grouplike: Δ(det) = det ⊗ det in the reduced tensor square
    const auto& tc = *om.hopf->carrier;
    auto cpd = NcElement::zero(tc.combined());
    for (const auto& [w, c] : d1.terms())
      cpd = cpd + coproduct_of_word(om, w).scaled(c);
    auto diff = cpd - tc.tensor(d1, d1);
    CHECK(tensor_nf(tc, *om.pres, *om.pres, diff).is_zero());
    CHECK(counit(om, d1) == QScalar(1));
  }
  auto om2 = build_algebra(AlgebraKind::OM, 2);
  auto det = om2.gen("X11") * om2.gen("X22") - (om2.gen("X12") * om2.gen("X21")).scaled(qp(1));
  CHECK(om2.is_zero(quantum_det(om2, 'X', 1) - det));
}

TEST_CASE("quantized GL at N=2: localization and cofactor antipode") {
  auto gl = build_algebra(AlgebraKind::OGL, 2);
  auto det = quantum_det(gl, 'X', 1);
  auto dinv = gl.gen("Dinv");
  CHECK(gl.is_zero(det * dinv - NcElement::one(gl.alphabet())));
  CHECK(gl.is_zero(dinv * det - NcElement::one(gl.alphabet())));
  auto s = antipode_matrix(gl, 'X');
  CHECK(gl.is_zero(s.entry(0, 0) - gl.gen("X22") * dinv));
  CHECK(gl.is_zero(s.entry(0, 1) + (gl.gen("X12") * dinv).scaled(qp(-1))));
  CHECK(gl.is_zero(s.entry(1, 0) + (gl.gen("X21") * dinv).scaled(qp(1))));
  CHECK(gl.is_zero(s.entry(1, 1) - gl.gen("X11") * dinv));
  CHECK(!hopf_axioms_violation(gl));
}

TEST_CASE("triangular algebra at N=2: frozen relations and star") {
  auto ot = build_algebra(AlgebraKind::OT, 2);
  CHECK(ot.pres->completion_added() == 0);
  auto g = [&](const char* s) { return ot.gen(s); };
  auto one = NcElement::one(ot.alphabet());
  CHECK(ot.is_zero(g("T1") * g("T1inv") - one));
  CHECK(ot.is_zero(g("T1") * g("Tp12") - (g("Tp12") * g("T1")).scaled(qp(1))));
  CHECK(ot.is_zero(g("T2") * g("Tp12") - (g("Tp12") * g("T2")).scaled(qp(-1))));
  CHECK(ot.is_zero(g("T2") * g("Tm21") - (g("Tm21") * g("T2")).scaled(qp(1))));
  CHECK(ot.is_zero(g("T1") * g("Tm21") - (g("Tm21") * g("T1")).scaled(qp(-1))));
  CHECK(ot.is_zero(g("T1") * g("T2") - g("T2") * g("T1")));
  // the mixed-triangle correction term
  QScalar mu = qp(-1) - qp(1);
  auto corr = (g("T2") * g("T1inv")).scaled(mu) - (g("T2inv") * g("T1")).scaled(mu);
  CHECK(ot.is_zero(g("Tm21") * g("Tp12") - g("Tp12") * g("Tm21") - corr));
  // determinant is the product of the diagonal
  CHECK(ot.is_zero(quantum_det(ot, 'P', 1) - g("T1") * g("T2")));
  // counts: strict letters are free-commutative, each diagonal pair is
  // either/or Laurent
  for (int d = 0; d <= 5; ++d) {
    long want = 0;
    for (long j = 0; j <= std::min(2L, static_cast<long>(d)); ++j)
      want += binom(2, j) * binom(d - j + 3, 3);
    CHECK(ot.pres->count_irreducible(d) == Int(want));
  }
  // star swaps the triangles through triangular inverses
  CHECK(ot.is_zero(star_apply(*ot.star, g("Tp12")) + g("T2") * g("Tm21") * g("T1")));
  CHECK(ot.is_zero(star_apply(*ot.star, g("T1")) - g("T1")));
  CHECK(!star_violation(ot, defining_relations(ot)));
  CHECK(!hopf_axioms_violation(ot));
}

TEST_CASE("quantized enveloping algebra: commutation and Hopf structure") {
  auto uq = build_algebra(AlgebraKind::Uqgl, 2);
  auto g = [&](const char* s) { return uq.gen(s); };
  QScalar qmq = qp(1) - qp(-1);
  auto khat = g("K1") * g("K2inv");
  auto khatinv = g("K1inv") * g("K2");
  CHECK(uq.is_zero(g("E1") * g("F1") - g("F1") * g("E1") - (khat - khatinv).scaled(qmq.inv())));
  CHECK(uq.is_zero(g("K1") * g("E1") - (g("E1") * g("K1")).scaled(qp(1))));
  CHECK(uq.is_zero(g("K2") * g("E1") - (g("E1") * g("K2")).scaled(qp(-1))));
  CHECK(!hopf_axioms_violation(uq));
  CHECK(!star_violation(uq, defining_relations(uq)));
  // N=3 carries the Serre relations
  auto uq3 = build_algebra(AlgebraKind::Uqgl, 3);
  CHECK(!hopf_axioms_violation(uq3));
  auto e1 = uq3.gen("E1"), e2 = uq3.gen("E2");
  QScalar two = qp(1) + qp(-1);
  CHECK(uq3.is_zero(e1 * e1 * e2 - (e1 * e2 * e1).scaled(two) + e2 * e1 * e1));
}

TEST_CASE("hermitian reflection algebra: presentation and star") {
  auto oh = build_algebra(AlgebraKind::OH, 2);
  CHECK(oh.pres->completion_added() == 0);
  for (int d = 0; d <= 4; ++d)
    CHECK(oh.pres->count_irreducible(d) == Int(binom(d + 3, 3)));
  CHECK(!star_violation(oh, defining_relations(oh)));
}

TEST_CASE("realified quantized GL at N=2: star exchanges the copies") {
  auto glr = build_algebra(AlgebraKind::OGLR, 2);
  auto detx = quantum_det(glr, 'X', 1);
  auto dety = quantum_det(glr, 'Y', 1);
  CHECK(glr.is_zero(star_apply(*glr.star, detx) - glr.gen("DinvY")));
  CHECK(glr.is_zero(star_apply(*glr.star, dety) - glr.gen("DinvX")));
  CHECK(!hopf_axioms_violation(glr));
  CHECK(!star_violation(glr, defining_relations(glr)));
}

TEST_CASE("r-form on quantized GL at N=2: determinant pairing pins the convention") {
  QglCtx ctx(2);
  auto& gl = ctx.get(AlgebraKind::OGL);
  auto r = pairing_r(gl);
  CHECK(!r.convention().empty());
  auto det = quantum_det(gl, 'X', 1);
  CHECK(r.eval(det, gl.gen("X11")) == qp(-1));
  CHECK(r.eval(det, gl.gen("X12")) == QScalar(0));
  CHECK(r.eval(det, gl.gen("X22")) == qp(-1));
  CHECK(r.eval(NcElement::one(gl.alphabet()), NcElement::one(gl.alphabet())) == QScalar(1));
  CHECK(r.eval(gl.gen("X11"), gl.gen("X11")) == qp(-1));
  // convolution inverse against the antipode
  CHECK(pairing_r_inv(r, gl, det, gl.gen("X11")) == qp(1));
  CHECK(pairing_r_inv(r, gl, det, gl.gen("X12")) == QScalar(0));
  // the form vanishes on the defining ideal in either slot (low degrees)
  auto rels = defining_relations(gl);
  std::vector<NcElement> probes;
  for (GenId g = 0; g < gl.alphabet()->size(); ++g)
    probes.push_back(NcElement::gen(gl.alphabet(), g));
  probes.push_back(gl.gen("X11") * gl.gen("X21"));
  probes.push_back(gl.gen("X12") * gl.gen("X21"));
  for (const auto& rel : rels)
    for (const auto& p : probes) {
      CHECK(r.eval(rel, p).is_zero());
      CHECK(r.eval(p, rel).is_zero());
    }
}

TEST_CASE("triangular dual pairing at N=2: coadjoint identity pins the laws") {
  QglCtx ctx(2);
  auto& ot = ctx.get(AlgebraKind::OT);
  auto& ou = ctx.get(AlgebraKind::OU);
  auto& oh = ctx.get(AlgebraKind::OH);
  auto p = pairing_p(ot, ou, oh);
  CHECK(!p.convention().empty());
  CHECK(p.eval(ot.gen("T1"), ou.gen("U11")) == qp(-1));
  CHECK(p.eval(ot.gen("T1"), ou.gen("U22")) == QScalar(1));
  CHECK(p.eval(ot.gen("T1inv"), ou.gen("U11")) == qp(1));
  auto det_u = quantum_det(ou, 'U', 1);
  auto dd = det_u * ou.gen("Dinv");
  CHECK(p.eval(ot.gen("Tp12"), dd) == QScalar(0));
  CHECK(p.eval(ot.gen("T2"), dd) == QScalar(1));
  CHECK(p.eval(ot.gen("T2") * ot.gen("Tp12"), dd) == QScalar(0));
}

TEST_CASE("quantum Cholesky at N=2: frozen images") {
  QglCtx ctx(2);
  auto& oh = ctx.get(AlgebraKind::OH);
  auto& ot = ctx.get(AlgebraKind::OT);
  auto chol = cholesky_map(oh, ot);
  auto g = [&](const char* s) { return ot.gen(s); };
  auto img = [&](int i, int j) {
    return chol.images[oh.alphabet()->id_of(mat_name('Z', i, j))];
  };
  CHECK(ot.is_zero(img(1, 1) - g("T1") * g("T1")));
  CHECK(ot.is_zero(img(1, 2) - g("T1") * g("Tp12")));
  CHECK(ot.is_zero(img(2, 1) + g("T2") * g("Tm21") * g("T1") * g("T1")));
  QScalar mu = qp(-1) - qp(1);
  auto z22 = g("T2") * g("T2") + (g("T1") * g("T1")).scaled(qp(1) * mu) -
             (g("T2") * g("T2")).scaled(qp(1) * mu) -
             (g("Tp12") * g("T1") * g("T2") * g("Tm21")).scaled(qp(1));
  CHECK(ot.is_zero(img(2, 2) - z22));
  // star equivariance: chi(Z_ij)^* = chi(Z_ji)
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      CHECK(ot.is_zero(star_apply(*ot.star, img(i, j)) - img(j, i)));
}

TEST_CASE("coadjoint coaction at N=2 preserves the reflection relations") {
  QglCtx ctx(2);
  auto& oh = ctx.get(AlgebraKind::OH);
  auto& ou = ctx.get(AlgebraKind::OU);
  auto co = coact_ad(oh, ou);
  for (const auto& rel : defining_relations(oh)) {
    auto mapped = substitute(co.images, rel);
    CHECK(tensor_nf(*co.carrier, *oh.pres, *ou.pres, mapped).is_zero());
  }
}

TEST_CASE("quantum QR factorization map at N=2") {
  QglCtx ctx(2);
  auto& glr = ctx.get(AlgebraKind::OGLR);
  auto& ou = ctx.get(AlgebraKind::OU);
  auto& ot = ctx.get(AlgebraKind::OT);
  auto qr = qr_map(glr, ou, ot);
  const auto& tc = *qr.carrier;
  auto want11 = tc.tensor(ou.gen("U11"), ot.gen("T1"));
  CHECK(tensor_nf(tc, *ou.pres, *ot.pres,
                  qr.images.images[glr.alphabet()->id_of("X11")] - want11)
            .is_zero());
  auto want12 = tc.tensor(ou.gen("U11"), ot.gen("Tp12")) +
                tc.tensor(ou.gen("U12"), ot.gen("T2"));
  CHECK(tensor_nf(tc, *ou.pres, *ot.pres,
                  qr.images.images[glr.alphabet()->id_of("X12")] - want12)
            .is_zero());
  CHECK(tensor_nf(tc, *ou.pres, *ot.pres,
                  qr.images.images[glr.alphabet()->id_of("Y21")] -
                      tc.tensor(ou.gen("U21"), ot.gen("T1inv")) -
                      tc.tensor(ou.gen("U22"), ot.gen("Tm21")))
            .is_zero());
}

TEST_CASE("triangular realization of the enveloping algebra") {
  QglCtx ctx(2);
  auto& uq = ctx.get(AlgebraKind::Uqgl);
  auto& ot = ctx.get(AlgebraKind::OT);
  auto iso = uq_iso(uq, ot);
  // sample: image of E1 is (q - q^-1)^{-1} T2 Tm21
  QScalar qmq = qp(1) - qp(-1);
  auto want = (ot.gen("T2") * ot.gen("Tm21")).scaled(qmq.inv());
  CHECK(ot.is_zero(iso.images[uq.alphabet()->id_of("E1")] - want));
}
