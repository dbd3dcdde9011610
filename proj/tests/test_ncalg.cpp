#include <random>

#include "doctest.h"
#include "qgl/legged.hpp"
#include "qgl/ncalg.hpp"

using namespace qgl;

namespace {

NcElement random_element(std::mt19937& rng, const AlphabetPtr& alpha, int max_len = 3) {
  std::uniform_int_distribution<int> nterms(1, 3);
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<int> exp(-1, 1);
  std::uniform_int_distribution<int> gen(0, static_cast<int>(alpha->size()) - 1);
  NcElement e(alpha);
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Word w;
    const int l = len(rng);
    for (int i = 0; i < l; ++i) w.push_back(static_cast<char>(gen(rng)));
    e.add_term(w, QScalar(LaurentPoly(exp(rng), coeff(rng))));
  }
  return e;
}

} // namespace

TEST_CASE("alphabet lookups") {
  auto a = Alphabet::make({"X11", "X12", "X21", "X22"});
  CHECK(a->size() == 4);
  CHECK(a->id_of("X21") == 2);
  CHECK(a->name_of(3) == "X22");
  CHECK(a->has("X12"));
  CHECK(!a->has("X13"));
  CHECK_THROWS_AS(a->id_of("X13"), DomainError);
  CHECK_THROWS_AS(Alphabet::make({"A", "A"}), DomainError);
}

TEST_CASE("free algebra axioms on random samples") {
  auto alpha = Alphabet::make({"a", "b", "c"});
  std::mt19937 rng(31337);
  NcElement one = NcElement::one(alpha);
  for (int trial = 0; trial < 25; ++trial) {
    NcElement x = random_element(rng, alpha), y = random_element(rng, alpha),
              z = random_element(rng, alpha);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x + y) * z == x * z + y * z);
    CHECK(x * one == x);
    CHECK(one * x == x);
    CHECK(x + y == y + x);
    CHECK((x - x).is_zero());
    CHECK(x.scaled(QScalar(2)) == x + x);
  }
}

TEST_CASE("element dump format") {
  auto alpha = Alphabet::make({"X11", "X12", "X21", "X22"});
  NcElement e(alpha);
  e.add_term(word_of({0, 2}), QScalar::q_power(2));
  e.add_term(word_of({1, 3}), QScalar(-1));
  CHECK(e.str() == "q^2*X11.X21 - X12.X22");
  CHECK(NcElement::zero(alpha).str() == "0");
  CHECK(NcElement::one(alpha).str() == "1");
  NcElement f = NcElement::gen(alpha, "X11").scaled(q_int(2));
  CHECK(f.str() == "(q^2+1)/(q)*X11");
  NcElement g = NcElement::one(alpha).scaled(QScalar::q_power(2) + QScalar(1));
  CHECK(g.str() == "q^2+1");
}

TEST_CASE("leading data and degree") {
  auto alpha = Alphabet::make({"a", "b"});
  NcElement e(alpha);
  e.add_term(word_of({0, 1}), QScalar(3));
  e.add_term(word_of({1, 0}), QScalar::q_power(1));
  e.add_term(word_of({1}), QScalar(1));
  CHECK(e.degree() == 2);
  CHECK(e.leading_word() == word_of({1, 0}));  // deglex: longer, then lex
  CHECK(e.leading_coeff() == QScalar::q_power(1));
  CHECK(NcElement::zero(alpha).degree() == -1);
}

TEST_CASE("alphabet mismatch is rejected") {
  auto a1 = Alphabet::make({"a"});
  auto a2 = Alphabet::make({"a"});
  NcElement x = NcElement::gen(a1, "a"), y = NcElement::gen(a2, "a");
  CHECK_THROWS_AS(x + y, DomainError);
  CHECK_THROWS_AS(x * y, DomainError);
}

TEST_CASE("substitute is a homomorphism") {
  auto alpha = Alphabet::make({"a", "b"});
  GenImages rule{alpha,
                 {NcElement::gen(alpha, "a") + NcElement::gen(alpha, "b"),
                  NcElement::gen(alpha, "b").scaled(QScalar::q_power(1))}};
  std::mt19937 rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    NcElement x = random_element(rng, alpha), y = random_element(rng, alpha);
    CHECK(substitute(rule, x * y) == substitute(rule, x) * substitute(rule, y));
    CHECK(substitute(rule, x + y) == substitute(rule, x) + substitute(rule, y));
  }
  CHECK(substitute(rule, NcElement::one(alpha)) == NcElement::one(alpha));
}

TEST_CASE("star_apply is an antimultiplicative involution") {
  auto alpha = Alphabet::make({"a", "b", "c"});
  // a* = c, b* = b, c* = a : an involutive star rule on generators.
  GenImages star{alpha,
                 {NcElement::gen(alpha, "c"), NcElement::gen(alpha, "b"),
                  NcElement::gen(alpha, "a")}};
  NcElement ab = NcElement::gen(alpha, "a") * NcElement::gen(alpha, "b");
  CHECK(star_apply(star, ab) == NcElement::gen(alpha, "b") * NcElement::gen(alpha, "c"));
  std::mt19937 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    NcElement x = random_element(rng, alpha), y = random_element(rng, alpha);
    CHECK(star_apply(star, x * y) == star_apply(star, y) * star_apply(star, x));
    CHECK(star_apply(star, star_apply(star, x)) == x);
  }
}

TEST_CASE("tensor carrier slot commutation") {
  auto aL = Alphabet::make({"x", "y"});
  auto aR = Alphabet::make({"u", "v"});
  TensorCarrier tc(aL, aR);
  NcElement a = NcElement::gen(aR, "u");
  NcElement b = NcElement::gen(aL, "x");
  // (1 ⊗ a) · (b ⊗ 1) sorts to b-left-before-a-right with coefficient 1.
  NcElement prod = tc.tensor(NcElement::one(aL), a) * tc.tensor(b, NcElement::one(aR));
  CHECK(tc.normalize_slots(prod) == tc.tensor(b, a));
  // split round-trip
  auto [lw, rw] = tc.split(tc.tensor(b, a).leading_word());
  CHECK(lw == word_of({aL->id_of("x")}));
  CHECK(rw == word_of({aR->id_of("u")}));
  // name clash handling
  TensorCarrier same(aL, aL);
  CHECK(same.combined()->has("x@1"));
  CHECK(same.combined()->has("x@2"));
}

TEST_CASE("map_components applies slotwise maps") {
  auto aL = Alphabet::make({"x"});
  auto aR = Alphabet::make({"u"});
  TensorCarrier tc(aL, aR);
  NcElement t = tc.tensor(NcElement::gen(aL, "x"), NcElement::gen(aR, "u"));
  NcElement mapped = tc.map_components(
      t, [&](const Word& w) { return NcElement::monomial(aL, w, QScalar(2)); },
      [&](const Word& w) { return NcElement::monomial(aR, w, QScalar::q_power(1)); });
  CHECK(mapped == t.scaled(QScalar(2) * QScalar::q_power(1)));
}

TEST_CASE("leg_embed structure") {
  auto alpha = Alphabet::make({"X11", "X12", "X21", "X22"});
  auto X = gen_matrix(alpha, 2, [&](int i, int j) {
    return NcElement::gen(alpha, "X" + std::to_string(i + 1) + std::to_string(j + 1));
  });
  // identity embeds to identity
  auto I1 = LeggedMatrix::identity(alpha, 1, 2);
  CHECK(I1.leg_embed(2, {1}) == LeggedMatrix::identity(alpha, 2, 2));
  // X_1 on two legs: entry ((1,k),(2,k)) = X12, zero when middle indices differ
  auto X1 = X.leg_embed(2, {1});
  for (int k = 0; k < 2; ++k) {
    CHECK(X1.entry(X1.flatten({0, k}), X1.flatten({1, k})) == NcElement::gen(alpha, "X12"));
    CHECK(X1.entry(X1.flatten({0, k}), X1.flatten({1, 1 - k})).is_zero());
  }
}

TEST_CASE("disjoint leg embeddings of scalar matrices commute") {
  auto alpha = Alphabet::make({});
  auto r = r_matrix(alpha, 2);
  auto a = r.leg_embed(4, {1, 2});
  auto b = r.leg_embed(4, {3, 4});
  CHECK(a * b == b * a);
}

TEST_CASE("legged_mul keeps left factor first") {
  auto alpha = Alphabet::make({"X11", "X12", "X21", "X22"});
  auto X = gen_matrix(alpha, 2, [&](int i, int j) {
    return NcElement::gen(alpha, "X" + std::to_string(i + 1) + std::to_string(j + 1));
  });
  auto X1 = X.leg_embed(2, {1});
  auto X2 = X.leg_embed(2, {2});
  auto P = X1 * X2;
  // entry ((i,j),(k,l)) = X_{ik} X_{jl}
  NcElement want = NcElement::gen(alpha, "X12") * NcElement::gen(alpha, "X12");
  CHECK(P.entry(P.flatten({0, 0}), P.flatten({1, 1})) == want);
  NcElement want2 = NcElement::gen(alpha, "X11") * NcElement::gen(alpha, "X22");
  CHECK(P.entry(P.flatten({0, 1}), P.flatten({0, 1})) == want2);
}

TEST_CASE("R-matrix identities") {
  auto alpha = Alphabet::make({});
  for (int n : {2, 3, 4}) {
    auto r = r_matrix(alpha, n);
    auto rinv = r_matrix_inv(alpha, n);
    CHECK(r * rinv == LeggedMatrix::identity(alpha, 2, n));
    CHECK(rinv * r == LeggedMatrix::identity(alpha, 2, n));
    // YBE: R12 R13 R23 = R23 R13 R12 on three legs
    auto r12 = r.leg_embed(3, {1, 2});
    auto r13 = r.leg_embed(3, {1, 3});
    auto r23 = r.leg_embed(3, {2, 3});
    CHECK((r12 * r13 * r23 - r23 * r13 * r12).is_zero());
    // computed quadratic relation for the braided flip
    auto rh = r_hat(alpha, n);
    auto lhs = rh * rh + rh.scaled(QScalar::q_power(1) - QScalar::q_power(-1)) -
               LeggedMatrix::identity(alpha, 2, n);
    CHECK(lhs.is_zero());
  }
}

TEST_CASE("braided flip eigenvector at n=2") {
  QMatrix rh = r_hat_qm(2);
  // v = e1⊗e2 - q e2⊗e1 is a (-q)-eigenvector
  QMatrix v(4, 1);
  v.at(1, 0) = QScalar(1);
  v.at(2, 0) = -QScalar::q_power(1);
  CHECK(rh * v == v.scaled(-QScalar::q_power(1)));
}

TEST_CASE("R21 via permuted positions") {
  auto alpha = Alphabet::make({});
  auto r = r_matrix(alpha, 2);
  auto r21 = r.leg_embed(2, {2, 1});
  // R21 entry ((j,i),(l,k)) = R entry ((i,j),(k,l)): check the skew entry
  CHECK(r21.entry(r21.flatten({1, 0}), r21.flatten({0, 1})) ==
        NcElement::monomial(alpha, Word(), QScalar::q_power(-1) - QScalar::q_power(1)));
  CHECK(r21.entry(r21.flatten({0, 1}), r21.flatten({1, 0})).is_zero());
}
