#include <vector>

#include "doctest.h"
#include "qgl/casimir.hpp"
#include "qgl/errors.hpp"
#include "qgl/qgroups.hpp"
#include "qgl/repth.hpp"

using namespace qgl;

namespace {

QScalar qp(long k) { return QScalar::q_power(k); }

Weight wt2(long a, long b) { return Weight{{a, b}, Rat(0)}; }

}  // namespace

TEST_CASE("vector representation matrices at N=2") {
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 2);
  IrrepModule v = vector_rep(ot);
  CHECK(v.dim == 2);
  CHECK(v.wt == std::vector<std::vector<long>>{{1, 0}, {0, 1}});

  // Chevalley action
  QMatrix e12(2, 2), e21(2, 2);
  e12.at(0, 1) = QScalar(1);
  e21.at(1, 0) = QScalar(1);
  CHECK(v.actE[0] == e12);
  CHECK(v.actF[0] == e21);
  QMatrix k1 = QMatrix::identity(2);
  k1.at(0, 0) = qp(1);
  CHECK(v.actK[0] == k1);

  // triangular letters act through the structural matrix
  QMatrix t1(2, 2), t2(2, 2), t1inv(2, 2);
  t1.at(0, 0) = qp(-1);
  t1.at(1, 1) = QScalar(1);
  t2.at(0, 0) = QScalar(1);
  t2.at(1, 1) = qp(-1);
  t1inv.at(0, 0) = qp(1);
  t1inv.at(1, 1) = QScalar(1);
  CHECK(v.ot_act[ot.alphabet()->id_of("T1")] == t1);
  CHECK(v.ot_act[ot.alphabet()->id_of("T2")] == t2);
  CHECK(v.ot_act[ot.alphabet()->id_of("T1inv")] == t1inv);

  QMatrix tm21(2, 2), tp12(2, 2);
  tm21.at(0, 1) = qp(1) - qp(-1);
  tp12.at(1, 0) = qp(-1) - qp(1);
  CHECK(v.ot_act[ot.alphabet()->id_of("Tm21")] == tm21);
  CHECK(v.ot_act[ot.alphabet()->id_of("Tp12")] == tp12);

  // Chevalley generators are recovered from the triangular letters
  QScalar mu = (qp(1) - qp(-1)).inv();
  CHECK(v.ot_act[ot.alphabet()->id_of("T2")] *
            v.ot_act[ot.alphabet()->id_of("Tm21")].scaled(mu) ==
        v.actE[0]);

  AlgebraHandle uq = build_algebra(AlgebraKind::Uqgl, 2);
  VerifyResult res = verify_module(uq, ot, v);
  CHECK(res.ok);
}

TEST_CASE("tensor products are associative and representation-compatible") {
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 2);
  AlgebraHandle uq = build_algebra(AlgebraKind::Uqgl, 2);
  IrrepModule v = vector_rep(ot);
  IrrepModule vv = module_tensor(ot, v, v);
  CHECK(vv.dim == 4);

  VerifyResult res = verify_module(uq, ot, vv);
  CHECK(res.ok);

  IrrepModule l = module_tensor(ot, vv, v);
  IrrepModule r = module_tensor(ot, v, vv);
  CHECK(l.dim == 8);
  for (size_t g = 0; g < l.ot_act.size(); ++g) CHECK(l.ot_act[g] == r.ot_act[g]);
  CHECK(l.actE[0] == r.actE[0]);
  CHECK(l.actF[0] == r.actF[0]);
  CHECK(l.actK[0] == r.actK[0]);
  CHECK(l.actK[1] == r.actK[1]);
}

TEST_CASE("braided flips: braid, quadratic, and centralizing relations") {
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 2);
  CHECK(hecke_op(2, 1, 2) == r_hat_qm(2));
  VerifyResult res = verify_hecke(ot, 3);
  CHECK(res.ok);
  CHECK(res.notes.size() == 2);
}

TEST_CASE("irreducible module dimensions at N=2") {
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 2);
  AlgebraHandle uq = build_algebra(AlgebraKind::Uqgl, 2);

  CHECK(irrep(ot, wt2(1, 0)).dim == 2);
  CHECK(irrep(ot, wt2(1, 1)).dim == 1);
  CHECK(irrep(ot, wt2(3, 0)).dim == 4);

  IrrepModule m = irrep(ot, wt2(2, 0));
  CHECK(m.dim == 3);
  auto mults = weight_mults(m);
  CHECK(mults.size() == 3);
  CHECK(mults.at({2, 0}) == 1);
  CHECK(mults.at({1, 1}) == 1);
  CHECK(mults.at({0, 2}) == 1);
  CHECK(verify_module(uq, ot, m).ok);

  // a genuinely shifted (still integral) weight
  IrrepModule tw = irrep(ot, wt2(1, -1));
  CHECK(tw.dim == 3);
  CHECK(verify_module(uq, ot, tw).ok);

  CHECK_THROWS_AS(irrep(ot, Weight{{0, 0}, Rat(1, 2)}), DomainError);
  CHECK_THROWS_AS(irrep(ot, wt2(0, 1)), DomainError);  // not dominant
}

TEST_CASE("quantum dimensions") {
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 2);
  IrrepModule v = vector_rep(ot);
  CHECK(qdim(v) == qp(-4) + qp(-2));
  CHECK(qdim(v).eval(Rat(1)) == Rat(2));

  IrrepModule det = irrep(ot, wt2(1, 1));
  CHECK(qdim(det) == qp(-6));

  IrrepModule m = irrep(ot, wt2(2, 0));
  CHECK(qdim(m).eval(Rat(1)) == Rat(3));
}

TEST_CASE("central characters at N=2 match the evaluated images") {
  AlgebraHandle oh = build_algebra(AlgebraKind::OH, 2);
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 2);
  CasimirCtx ctx = make_casimir_ctx(oh, ot);

  // chi_lambda(C_1) = q^{-2 l1} + q^{2 - 2 l2}, cross-checked on the module
  IrrepModule m10 = irrep(ot, wt2(1, 0));
  QScalar c1 = central_character(ctx, ot, ctx.C[0], wt2(1, 0), &m10);
  CHECK(c1 == qp(-2) + qp(2));

  IrrepModule m20 = irrep(ot, wt2(2, 0));
  CHECK(central_character(ctx, ot, ctx.C[0], wt2(2, 0), &m20) == qp(-4) + qp(2));

  // the opposite-sign evaluation convention is NOT the module scalar
  QScalar wrong = qp(4 - 2 * 1) + qp(6 - 2 * 0);
  CHECK(wrong != c1);

  // chi_lambda(B_N) = q^{-2(l1+l2)}
  CHECK(central_character(ctx, ot, b_element(oh, 2), wt2(1, 0), &m10) == qp(-2));
  CHECK(central_character(ctx, ot, b_element(oh, 2), wt2(2, 0), &m20) == qp(-4));

  // at the zero weight the character is the counit of the embedded element
  IrrepModule triv = irrep(ot, wt2(0, 0));
  for (int k = 1; k <= 2; ++k) {
    QScalar lhs = central_character(ctx, ot, ctx.C[k - 1], wt2(0, 0), &triv);
    QScalar rhs = counit(ot, ot.nf(substitute(ctx.chol, ctx.C[k - 1])));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("the invariant state and its closed form at N=2") {
  AlgebraHandle oh = build_algebra(AlgebraKind::OH, 2);
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 2);
  CasimirCtx ctx = make_casimir_ctx(oh, ot);

  IrrepModule m10 = irrep(ot, wt2(1, 0));
  CHECK(omega_state(ctx, ot, m10, NcElement::one(ot.alphabet())) == QScalar(1));

  // frozen value: omega(chi(B_1)) at lambda=(1,0) is q^{-2}(1+q^4)/(1+q^2)
  NcElement b1 = ot.nf(substitute(ctx.chol, b_element(oh, 1)));
  QScalar want = qp(-2) * (QScalar(1) + qp(4)) / (QScalar(1) + qp(2));
  CHECK(omega_state(ctx, ot, m10, b1) == want);

  CHECK(verify_ehc(ctx, ot, 1, {wt2(0, 0), wt2(1, 0), wt2(2, 0)}).ok);
  CHECK(verify_ehc(ctx, ot, 2, {wt2(0, 0), wt2(1, 0), wt2(2, 1)}).ok);

  CHECK(verify_omega_invariance(ctx, ot, m10).ok);
  IrrepModule m20 = irrep(ot, wt2(2, 0));
  CHECK(verify_omega_invariance(ctx, ot, m20).ok);
}

TEST_CASE("dimension sweep against the classical formula at N=2") {
  AlgebraHandle oh = build_algebra(AlgebraKind::OH, 2);
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 2);
  AlgebraHandle uq = build_algebra(AlgebraKind::Uqgl, 2);
  CasimirCtx ctx = make_casimir_ctx(oh, ot);
  VerifyResult res = verify_rep_dims(ctx, uq, ot, 3);
  CHECK(res.ok);
  CHECK(res.notes[0] == "dims over the window: {1,2,3,4}");
}

TEST_CASE("filtration table over a small window") {
  AlgebraHandle oh = build_algebra(AlgebraKind::OH, 2);
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 2);
  CasimirCtx ctx = make_casimir_ctx(oh, ot);

  std::vector<Rat> thresholds{Rat(3), Rat(10), Rat(300)};
  auto rows = filtration_table(ctx, ot, Rat(1, 2), 1, thresholds);
  CHECK(rows.size() == 6);

  auto find = [&](long a, long b) -> const FiltrationRow& {
    for (const auto& r : rows)
      if (r.lambda.m == std::vector<long>{a, b}) return r;
    throw InternalError("row not found");
  };

  // lambda = 0: control = max(q0 + 1/q0, 1 + q0^2, 1) = 5/2
  CHECK(find(0, 0).control_value == Rat(5, 2));
  CHECK(find(0, 0).in_p_leq == std::vector<bool>{true, true, true});
  CHECK(find(1, 1).in_p_leq == std::vector<bool>{false, true, true});
  CHECK(find(-1, -1).in_p_leq == std::vector<bool>{false, false, true});

  // membership is monotone along increasing thresholds
  for (const auto& r : rows)
    for (size_t i = 0; i + 1 < r.in_p_leq.size(); ++i)
      CHECK((!r.in_p_leq[i] || r.in_p_leq[i + 1]));

  CHECK_THROWS_AS(filtration_table(ctx, ot, Rat(2), 1, thresholds), DomainError);
}

TEST_CASE("numeric spectrum of the squared-matrix block at N=2") {
  AlgebraHandle oh = build_algebra(AlgebraKind::OH, 2);
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 2);
  CasimirCtx ctx = make_casimir_ctx(oh, ot);

  SpectrumReport rep = spectrum_check(ctx, ot, wt2(1, 0), Rat(1, 2), 1e-9);
  CHECK(rep.ok);
  CHECK(rep.residual < 1e-9);
  REQUIRE(rep.eigenvalues.size() == 2);
  CHECK(rep.eigenvalues[0] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(rep.eigenvalues[1] == doctest::Approx(4.0).epsilon(1e-9));
  CHECK_FALSE(rep.closed_form_matches);
  CHECK(rep.note.find("reported, not asserted") != std::string::npos);
}

TEST_CASE("modules and characters at N=3") {
  AlgebraHandle oh = build_algebra(AlgebraKind::OH, 3);
  AlgebraHandle ot = build_algebra(AlgebraKind::OT, 3);
  AlgebraHandle uq = build_algebra(AlgebraKind::Uqgl, 3);
  CasimirCtx ctx = make_casimir_ctx(oh, ot);

  Weight w100{{1, 0, 0}, Rat(0)};
  Weight w110{{1, 1, 0}, Rat(0)};
  Weight w210{{2, 1, 0}, Rat(0)};

  IrrepModule m100 = irrep(ot, w100);
  CHECK(m100.dim == 3);
  IrrepModule m110 = irrep(ot, w110);
  CHECK(m110.dim == 3);
  IrrepModule m210 = irrep(ot, w210);
  CHECK(m210.dim == 8);
  CHECK(irrep(ot, Weight{{1, 1, 1}, Rat(0)}).dim == 1);

  CHECK(verify_module(uq, ot, m210).ok);
  CHECK(qdim(m210).eval(Rat(1)) == Rat(8));

  // chi_lambda(C_1) = q^{-2 l1} + q^{2 - 2 l2} + q^{4 - 2 l3}
  CHECK(central_character(ctx, ot, ctx.C[0], w210, &m210) ==
        qp(-4) + qp(0) + qp(4));

  CHECK(verify_ehc(ctx, ot, 1, {w100}).ok);
}
