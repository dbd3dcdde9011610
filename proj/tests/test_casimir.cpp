#include <vector>

#include "doctest.h"
#include "qgl/casimir.hpp"
#include "qgl/errors.hpp"
#include "qgl/qgroups.hpp"

using namespace qgl;

namespace {

QScalar qp(long k) { return QScalar::q_power(k); }

DiagPoly mono(int n, std::vector<int> e, QScalar c) {
  return DiagPoly::monomial(n, std::move(e), std::move(c));
}

}  // namespace

TEST_CASE("diagonal Laurent polynomials and the elementary targets") {
  DiagPoly a = mono(2, {1, 0}, QScalar(1)) + mono(2, {0, 1}, qp(2));
  CHECK(a.eval_at({qp(-2), qp(-4)}) == qp(-2) + qp(-2));
  CHECK((a * a).terms.size() == 3);
  CHECK((a - a).is_zero());

  // e_1 and e_2 of (q^2 T_1^2, q^4 T_2^2), scaled by q^{-2k}
  CHECK(hc_elementary_target(2, 1) == mono(2, {1, 0}, QScalar(1)) + mono(2, {0, 1}, qp(2)));
  CHECK(hc_elementary_target(2, 2) == mono(2, {1, 1}, qp(2)));
  // N=3, k=2: q^{-4}(q^{2(1+2)} T1T2 + q^{2(1+3)} T1T3 + q^{2(2+3)} T2T3)
  CHECK(hc_elementary_target(3, 2) == mono(3, {1, 1, 0}, qp(2)) +
                                          mono(3, {1, 0, 1}, qp(4)) +
                                          mono(3, {0, 1, 1}, qp(6)));

  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 2);
  NcElement back = hc_elementary_target(2, 2).to_element(ot);
  NcElement want = (ot.gen("T1") * ot.gen("T1") * ot.gen("T2") * ot.gen("T2")).scaled(qp(2));
  CHECK(ot.nf(back - want).is_zero());
}

TEST_CASE("partitions are enumerated largest-part-first") {
  CHECK(partitions(3) == std::vector<std::vector<int>>{{3}, {2, 1}, {1, 1, 1}});
  CHECK(partitions(4).size() == 5);
  CHECK(partitions(4).front() == std::vector<int>{4});
  CHECK(partitions(4).back() == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("quantum minor elements and weighted traces at N=2") {
  AlgebraHandle oh = build_algebra(AlgebraKind::OH, 2);
  const auto& alpha = oh.alphabet();

  NcElement b2 = b_element(oh, 2);
  NcElement want = NcElement::gen(alpha, "Z22") * NcElement::gen(alpha, "Z11") -
                   (NcElement::gen(alpha, "Z21") * NcElement::gen(alpha, "Z12")).scaled(qp(-2));
  CHECK(b2 == want);
  CHECK(b_element(oh, 1) == NcElement::gen(alpha, "Z11"));

  NcElement p1 = casimir_p(oh, 1);
  NcElement trace = oh.gen("Z11").scaled(qp(2)) + oh.gen("Z22");
  CHECK(p1 == oh.nf(trace));
}

TEST_CASE("Harish-Chandra images at N=2") {
  AlgebraHandle oh = build_algebra(AlgebraKind::OH, 2);
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 2);
  CasimirCtx ctx = make_casimir_ctx(oh, ot);

  // hc(Tr_{Q^2} Z) = T_1^2 + q^2 T_2^2
  DiagPoly h1 = hc(ctx, casimir_p(oh, 1));
  CHECK(h1 == mono(2, {1, 0}, QScalar(1)) + mono(2, {0, 1}, qp(2)));

  // first coefficient is the weighted trace itself
  CHECK(ctx.C.size() == 2);
  CHECK(oh.nf(ctx.C[0] - casimir_p(oh, 1)).is_zero());

  // projection kills strictly triangular contributions
  CHECK(hc(ctx, oh.gen("Z12"), /*require_central=*/false).is_zero());
  CHECK(hc(ctx, oh.gen("Z11"), false) == mono(2, {1, 0}, QScalar(1)));
  CHECK_THROWS_AS(hc(ctx, oh.gen("Z12")), DomainError);

  VerifyResult imgs = verify_hc_images(ctx);
  CHECK(imgs.ok);
  VerifyResult hom = verify_hc_homomorphism(ctx);
  CHECK(hom.ok);
}

TEST_CASE("quantum minors under the Cholesky embedding at N=2") {
  AlgebraHandle oh = build_algebra(AlgebraKind::OH, 2);
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 2);
  CasimirCtx ctx = make_casimir_ctx(oh, ot);

  VerifyResult bk = verify_bk(ctx);
  REQUIRE_MESSAGE(bk.ok, bk.witness);

  VerifyResult bc = verify_b_commute(oh);
  REQUIRE_MESSAGE(bc.ok, bc.witness);
}

TEST_CASE("characteristic identity at N=2") {
  AlgebraHandle oh = build_algebra(AlgebraKind::OH, 2);
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 2);
  CasimirCtx ctx = make_casimir_ctx(oh, ot);
  VerifyResult ch = verify_ch(ctx);
  REQUIRE_MESSAGE(ch.ok, ch.witness);
  CHECK(ch.notes.size() == 2);
}

TEST_CASE("weighted power traces in the realified algebra at N=2") {
  AlgebraHandle glr = build_algebra(AlgebraKind::OGLR, 2);
  VerifyResult nw = verify_newton(glr, {1, 2});
  REQUIRE_MESSAGE(nw.ok, nw.witness);
}

TEST_CASE("commuting family at N=2 with explicit members") {
  AlgebraHandle oh = build_algebra(AlgebraKind::OH, 2);
  VerifyResult lf = verify_l_family(oh);
  REQUIRE_MESSAGE(lf.ok, lf.witness);

  // the two members, built by hand: the last one is Z on the second leg, the
  // first is its conjugate by the braided flip
  auto nf = [&](const LeggedMatrix& m) {
    return m.mapped([&](const NcElement& e) { return oh.nf(e); });
  };
  LeggedMatrix zn = generator_matrix(oh, 'Z').leg_embed(2, {2});
  LeggedMatrix rh = r_hat(oh.alphabet(), 2);
  LeggedMatrix l1 = nf(rh * zn * rh);
  LeggedMatrix comm = nf(l1 * zn - zn * l1);
  CHECK(comm.is_zero());
  // product law at the bottom index: L_2 L_1 = (Z_{2,3} Rhat)^2
  LeggedMatrix lhs = nf(zn * l1);
  LeggedMatrix rhs = nf(matrix_power(zn * rh, 2));
  CHECK(nf(lhs - rhs).is_zero());
}

TEST_CASE("top minor as a vector-state slice at N=2") {
  AlgebraHandle oh = build_algebra(AlgebraKind::OH, 2);
  VerifyResult bs = verify_bn_slice(oh);
  REQUIRE_MESSAGE(bs.ok, bs.witness);
  REQUIRE(bs.notes.size() == 2);
  CHECK(bs.notes[1].find("positive") != std::string::npos);
}

TEST_CASE("casimir tower at N=3") {
  AlgebraHandle oh = build_algebra(AlgebraKind::OH, 3);
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 3);
  CasimirCtx ctx = make_casimir_ctx(oh, ot);

  VerifyResult imgs = verify_hc_images(ctx);
  REQUIRE_MESSAGE(imgs.ok, imgs.witness);
  VerifyResult bk = verify_bk(ctx);
  REQUIRE_MESSAGE(bk.ok, bk.witness);
  VerifyResult ch = verify_ch(ctx);
  REQUIRE_MESSAGE(ch.ok, ch.witness);
  VerifyResult bc = verify_b_commute(oh);
  REQUIRE_MESSAGE(bc.ok, bc.witness);
}

TEST_CASE("commuting family and slice at N=3") {
  AlgebraHandle oh = build_algebra(AlgebraKind::OH, 3);
  VerifyResult lf = verify_l_family(oh);
  REQUIRE_MESSAGE(lf.ok, lf.witness);
  VerifyResult bs = verify_bn_slice(oh);
  REQUIRE_MESSAGE(bs.ok, bs.witness);
}

TEST_CASE("weighted power traces in the realified algebra at N=3") {
  AlgebraHandle glr = build_algebra(AlgebraKind::OGLR, 3);
  VerifyResult nw = verify_newton(glr, {1});
  REQUIRE_MESSAGE(nw.ok, nw.witness);
}
