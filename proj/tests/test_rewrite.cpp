#include <random>
#include <vector>

#include "doctest.h"
#include "qgl/errors.hpp"
#include "qgl/legged.hpp"
#include "qgl/ncalg.hpp"
#include "qgl/rewrite.hpp"

using namespace qgl;

namespace {

AlphabetPtr xm_alphabet(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      names.push_back("X" + std::to_string(i) + std::to_string(j));
  return Alphabet::make(names);
}

std::vector<NcElement> rtt_relations(const AlphabetPtr& alpha, int n) {
  LeggedMatrix X = gen_matrix(alpha, n, [&](int i, int j) {
    return NcElement::gen(alpha,
                          "X" + std::to_string(i + 1) + std::to_string(j + 1));
  });
  LeggedMatrix R = r_matrix(alpha, n);
  LeggedMatrix X1 = X.leg_embed(2, {1});
  LeggedMatrix X2 = X.leg_embed(2, {2});
  return relations_from_matrix_eq(R * X1 * X2, X2 * X1 * R);
}

Int binom_ll(long n, long k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (long i = 0; i < k; ++i) r = r * Int(n - i) / Int(i + 1);
  return r;
}

// Random element of degree <= maxdeg with small integer scalars.
NcElement random_element(const AlphabetPtr& alpha, std::mt19937_64& rng,
                         int maxdeg, int nterms) {
  NcElement e = NcElement::zero(alpha);
  for (int t = 0; t < nterms; ++t) {
    Word w;
    int len = static_cast<int>(rng() % (maxdeg + 1));
    for (int i = 0; i < len; ++i)
      w.push_back(static_cast<char>(rng() % alpha->size()));
    long c = static_cast<long>(rng() % 7) - 3;
    if (c != 0) e.add_term(w, QScalar(c));
  }
  return e;
}

}  // namespace

TEST_CASE("matrix relation extraction finds the six independent quadratic relations") {
  auto alpha = xm_alphabet(2);
  auto rels = rtt_relations(alpha, 2);
  CHECK(rels.size() == 6);
  for (const auto& r : rels) {
    CHECK(r.degree() == 2);
    CHECK(r.leading_coeff().is_one());
  }
}

TEST_CASE("completed quantum 2x2 matrix presentation matches the frozen rule set") {
  auto alpha = xm_alphabet(2);
  auto p = orient_and_complete(alpha, rtt_relations(alpha, 2), 6);
  CHECK(p.rules().size() == 6);
  CHECK(p.completion_added() == 0);
  CHECK(!p.confluence_violation().has_value());
  CHECK(p.dump() ==
        "X12.X11 -> q^-1*X11.X12\n"
        "X21.X11 -> q^-1*X11.X21\n"
        "X21.X12 -> X12.X21\n"
        "X22.X11 -> X11.X22 - (q^2-1)/(q)*X12.X21\n"
        "X22.X12 -> q^-1*X12.X22\n"
        "X22.X21 -> q^-1*X21.X22\n");
}

TEST_CASE("normal form reorders a swapped product with the exact coefficient") {
  auto alpha = xm_alphabet(2);
  auto p = orient_and_complete(alpha, rtt_relations(alpha, 2), 6);
  NcElement x11 = NcElement::gen(alpha, "X11");
  NcElement x21 = NcElement::gen(alpha, "X21");
  CHECK(p.normal_form(x21 * x11) == (x11 * x21).scaled(QScalar::q_power(-1)));
  CHECK(p.is_zero(x21 * x11 - (x11 * x21).scaled(QScalar::q_power(-1))));
  // Commuting pair along the antidiagonal.
  NcElement x12 = NcElement::gen(alpha, "X12");
  CHECK(p.is_zero(x21 * x12 - x12 * x21));
}

TEST_CASE("irreducible word counts match commutative monomial counts") {
  auto alpha = xm_alphabet(2);
  auto p = orient_and_complete(alpha, rtt_relations(alpha, 2), 6);
  for (int d = 0; d <= 6; ++d) CHECK(p.count_irreducible(d) == binom_ll(d + 3, 3));
}

TEST_CASE("the 3x3 case also completes with no extra rules") {
  auto alpha = xm_alphabet(3);
  auto rels = rtt_relations(alpha, 3);
  CHECK(rels.size() == 36);
  auto p = orient_and_complete(alpha, rels, 6);
  CHECK(p.rules().size() == 36);
  CHECK(p.completion_added() == 0);
  CHECK(!p.confluence_violation().has_value());
  for (int d = 0; d <= 4; ++d) CHECK(p.count_irreducible(d) == binom_ll(d + 8, 8));
}

TEST_CASE("normal form is idempotent, linear, and multiplicative") {
  auto alpha = xm_alphabet(2);
  auto p = orient_and_complete(alpha, rtt_relations(alpha, 2), 6);
  std::mt19937_64 rng(20260816);
  for (int trial = 0; trial < 20; ++trial) {
    NcElement a = random_element(alpha, rng, 2, 3);
    NcElement b = random_element(alpha, rng, 2, 3);
    NcElement na = p.normal_form(a);
    NcElement nb = p.normal_form(b);
    CHECK(p.normal_form(na) == na);
    CHECK(p.normal_form(a + b) == na + nb);
    CHECK(p.normal_form(a * b) == p.normal_form(na * nb));
  }
}

TEST_CASE("randomized reduction strategies agree with the leftmost strategy") {
  auto alpha = xm_alphabet(2);
  auto p = orient_and_complete(alpha, rtt_relations(alpha, 2), 6);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    NcElement a = random_element(alpha, rng, 3, 3);
    NcElement n = p.normal_form(a);
    for (std::uint64_t seed : {1ull, 2ull, 99ull})
      CHECK(p.normal_form_randomized(a, seed) == n);
  }
}

TEST_CASE("empty relation list yields the free algebra") {
  auto alpha = xm_alphabet(2);
  auto p = orient_and_complete(alpha, {}, 5);
  CHECK(p.rules().empty());
  NcElement w = NcElement::gen(alpha, "X22") * NcElement::gen(alpha, "X11");
  CHECK(p.normal_form(w) == w);
  for (int d = 0; d <= 5; ++d) {
    Int pow = 1;
    for (int i = 0; i < d; ++i) pow *= 4;
    CHECK(p.count_irreducible(d) == pow);
  }
}

TEST_CASE("inverse-pair relations leave only one-sided powers") {
  auto alpha = Alphabet::make({"t", "tinv"});
  NcElement t = NcElement::gen(alpha, "t");
  NcElement ti = NcElement::gen(alpha, "tinv");
  NcElement one = NcElement::one(alpha);
  auto p = orient_and_complete(alpha, {t * ti - one, ti * t - one}, 6);
  CHECK(p.rules().size() == 2);
  CHECK(p.completion_added() == 0);
  CHECK(p.normal_form(t * ti * t) == t);
  CHECK(p.count_irreducible(0) == 1);
  for (int d = 1; d <= 6; ++d) CHECK(p.count_irreducible(d) == 2);
}

TEST_CASE("a non-confluent seed gains rules and ends locally confluent") {
  auto alpha = Alphabet::make({"a", "b", "c"});
  NcElement a = NcElement::gen(alpha, "a");
  NcElement b = NcElement::gen(alpha, "b");
  NcElement c = NcElement::gen(alpha, "c");
  auto p = orient_and_complete(alpha, {c * b - a, b * a - c}, 4);
  CHECK(p.completion_added() >= 1);
  CHECK(!p.confluence_violation().has_value());
  // The founding ambiguity, cba, joins: both one-step reducts share one
  // normal form, so c*c - a*a landed in the ideal.
  CHECK(p.normal_form(c * b * a) == p.normal_form(a * a));
  CHECK(p.is_zero(c * c - a * a));
  CHECK(p.is_zero(c * b - a));
  CHECK(p.is_zero(b * a - c));
}

TEST_CASE("span reduction removes dependent relations") {
  auto alpha = xm_alphabet(2);
  NcElement r = NcElement::gen(alpha, "X12") * NcElement::gen(alpha, "X11");
  NcElement s = NcElement::gen(alpha, "X21") * NcElement::gen(alpha, "X22");
  auto out = span_reduce({r, r.scaled(QScalar(2)), r + s, s,
                          NcElement::zero(alpha)});
  CHECK(out.size() == 2);
  for (const auto& e : out) CHECK(e.leading_coeff().is_one());
}

TEST_CASE("degree cap and fuel guards trip") {
  auto alpha = xm_alphabet(2);
  auto p = orient_and_complete(alpha, rtt_relations(alpha, 2), 6);
  NcElement x22 = NcElement::gen(alpha, "X22");
  NcElement big = x22;
  for (int i = 0; i < 6; ++i) big = big * x22;  // degree 7 > cap 6
  CHECK_THROWS_AS((void)p.normal_form(big), DomainError);

  NcElement x11 = NcElement::gen(alpha, "X11");
  NcElement hard = (x22 * x11) * (x22 * x11) * (x22 * x11);
  p.set_step_budget(2);
  CHECK_THROWS_AS((void)p.normal_form(hard), FuelError);
}

TEST_CASE("rule budget exhaustion reports a completion failure") {
  auto alpha = xm_alphabet(2);
  CompletionOptions opts;
  opts.max_rules = 3;
  CHECK_THROWS_AS(
      (void)orient_and_complete(alpha, rtt_relations(alpha, 2), 6, opts),
      CompletionError);
}

TEST_CASE("a unit in the ideal is diagnosed as inconsistent") {
  auto alpha = Alphabet::make({"x"});
  NcElement x = NcElement::gen(alpha, "x");
  NcElement one = NcElement::one(alpha);
  CHECK_THROWS_AS((void)orient_and_complete(alpha, {x - one, x - one - one}, 4),
                  InconsistencyError);
}
