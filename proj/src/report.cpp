#include "qgl/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "qgl/casimir.hpp"
#include "qgl/errors.hpp"
#include "qgl/legged.hpp"
#include "qgl/qgroups.hpp"
#include "qgl/repth.hpp"

namespace qgl {
namespace {

using Clock = std::chrono::steady_clock;

QScalar qp(long k) { return QScalar::q_power(k); }

Int binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Int(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

// ------------------------------------------------------------------ catalog

std::mutex g_catalog_mx;

std::map<int, std::unique_ptr<QglCtx>>& catalog_map() {
  static std::map<int, std::unique_ptr<QglCtx>> m;
  return m;
}

std::map<int, std::set<AlgebraKind>>& built_kinds() {
  static std::map<int, std::set<AlgebraKind>> m;
  return m;
}

AlgebraHandle& algebra(AlgebraKind k, int n) {
  std::lock_guard<std::mutex> lk(g_catalog_mx);
  auto& ctx = catalog_map()[n];
  if (!ctx) ctx = std::make_unique<QglCtx>(n);
  auto& h = ctx->get(k);
  built_kinds()[n].insert(k);
  return h;
}

std::mutex g_cas_mx;

CasimirCtx& casimir(int n) {
  auto& oh = algebra(AlgebraKind::OH, n);
  auto& ot = algebra(AlgebraKind::OT, n);
  static std::map<int, std::unique_ptr<CasimirCtx>> cache;
  std::lock_guard<std::mutex> lk(g_cas_mx);
  auto& c = cache[n];
  if (!c) c = std::make_unique<CasimirCtx>(make_casimir_ctx(oh, ot));
  return *c;
}

// ------------------------------------------------------------------ helpers

void fail(CheckReport& rep, const std::string& w) {
  if (rep.status == "pass") {
    rep.status = "fail";
    rep.witness = w;
  }
}

void note(CheckReport& rep, std::string s) {
  rep.convention_notes.push_back(std::move(s));
}

void adopt(CheckReport& rep, const VerifyResult& v) {
  for (const auto& s : v.notes) rep.convention_notes.push_back(s);
  if (!v.ok) fail(rep, v.witness);
}

void param(CheckReport& rep, const std::string& k, std::string v) {
  rep.params.emplace_back(k, std::move(v));
}

void param(CheckReport& rep, const std::string& k, long v) {
  rep.params.emplace_back(k, std::to_string(v));
}

std::string word_str(const AlphabetPtr& a, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (char ch : w) {
    if (!s.empty()) s += "*";
    s += a->name_of(static_cast<GenId>(static_cast<unsigned char>(ch)));
  }
  return s;
}

// five dominant integral sample weights, any n >= 2
std::vector<Weight> sample_weights(int n) {
  auto mk = [&](std::initializer_list<long> prefix) {
    std::vector<long> v(static_cast<size_t>(n), 0);
    size_t i = 0;
    for (long x : prefix) v[i++] = x;
    return Weight{v, Rat(0)};
  };
  return {mk({}), mk({1}), mk({1, 1}), mk({2}), mk({2, 1})};
}

// ------------------------------------------------------------------- checks

void check_ybe(CheckReport& rep, const CheckParams& p) {
  int n = p.n;
  auto alpha = Alphabet::make({});
  auto r = r_matrix(alpha, n);
  auto rinv = r_matrix_inv(alpha, n);
  auto id2 = LeggedMatrix::identity(alpha, 2, n);
  if (!(r * rinv == id2) || !(rinv * r == id2))
    fail(rep, "R * R^{-1} differs from the identity at n=" + std::to_string(n));
  auto r12 = r.leg_embed(3, {1, 2});
  auto r13 = r.leg_embed(3, {1, 3});
  auto r23 = r.leg_embed(3, {2, 3});
  if (!(r12 * r13 * r23 - r23 * r13 * r12).is_zero())
    fail(rep, "Yang-Baxter residual nonzero at n=" + std::to_string(n));
  auto rh = r_hat(alpha, n);
  if (!(rh * rh + rh.scaled(qp(1) - qp(-1)) - id2).is_zero())
    fail(rep, "braided flip quadratic relation fails at n=" + std::to_string(n));
  note(rep, "braided flip satisfies Rhat^2 + (q - q^-1) Rhat - 1 = 0");
}

void check_hecke(CheckReport& rep, const CheckParams& p) {
  int n = p.n;
  auto h1 = hecke_op(n, 1, 3);
  auto h2 = hecke_op(n, 2, 3);
  if (!(h1 * h2 * h1 == h2 * h1 * h2))
    fail(rep, "braid relation fails on three tensor legs at n=" + std::to_string(n));
  auto idm = QMatrix::identity(h1.rows());
  if (!(h1 * h1 + h1.scaled(qp(1) - qp(-1)) - idm).is_zero())
    fail(rep, "braided flip quadratic relation fails on tensor legs at n=" +
                  std::to_string(n));
  if (n <= 3) {
    auto& ot = algebra(AlgebraKind::OT, n);
    adopt(rep, verify_hecke(ot, 3));
  } else {
    note(rep, "module-level commutation limited to n <= 3; braid and quadratic "
              "relations checked at the matrix level");
  }
}

void check_pbw(CheckReport& rep, const CheckParams& p) {
  int n = p.n;
  int maxd = p.degree_cap > 0 ? p.degree_cap : 4;
  param(rep, "degree_cap", maxd);
  param(rep, "seed", static_cast<long>(p.seed));
  for (AlgebraKind kind : {AlgebraKind::OM, AlgebraKind::OT, AlgebraKind::OH}) {
    auto& h = algebra(kind, n);
    std::string who = kind_name(kind);
    if (auto viol = h.pres->confluence_violation())
      fail(rep, who + ": unresolved overlap: " + *viol);
    if (h.pres->completion_added() != 0)
      fail(rep, who + ": completion adjoined rules beyond the oriented span");
    long nn = static_cast<long>(n) * n;
    for (int d = 0; d <= maxd; ++d) {
      Int want;
      if (kind == AlgebraKind::OT) {
        want = 0;
        for (long j = 0; j <= std::min<long>(n, d); ++j)
          want += binom(n, j) * binom(d - j + nn - 1, nn - 1);
      } else {
        want = binom(d + nn - 1, nn - 1);
      }
      if (h.pres->count_irreducible(d) != want)
        fail(rep, who + ": irreducible word count at degree " +
                      std::to_string(d) + " differs from the PBW monomial count");
    }
    auto sum = NcElement::zero(h.alphabet());
    for (GenId g = 0; g < h.alphabet()->size(); ++g)
      sum = sum + NcElement::gen(h.alphabet(), g);
    auto probe = sum * sum;
    if (!(h.pres->normal_form_randomized(probe, p.seed) == h.nf(probe)))
      fail(rep, who + ": randomized reduction strategy disagrees with the "
                      "leftmost strategy");
  }
  note(rep, "counts compared against commutative monomial counts (diagonal "
            "letters Laurent for the triangular algebra)");
}

void check_det(CheckReport& rep, const CheckParams& p) {
  auto& om = algebra(AlgebraKind::OM, p.n);
  auto d1 = quantum_det(om, 'X', 1);
  auto d2 = quantum_det(om, 'X', 2);
  auto d3 = quantum_det(om, 'X', 3);
  if (!om.is_zero(d1 - d2))
    fail(rep, "row-wise and column-wise determinant expansions differ");
  if (!om.is_zero(d1 - d3))
    fail(rep, "reverse-ordered determinant expansion differs");
  for (GenId g = 0; g < om.alphabet()->size(); ++g) {
    auto x = NcElement::gen(om.alphabet(), g);
    if (!om.is_zero(d1 * x - x * d1)) {
      fail(rep, "determinant does not commute with " + om.alphabet()->name_of(g));
      break;
    }
  }
  if (!(counit(om, d1) == QScalar(1)))
    fail(rep, "counit of the determinant is not 1");
  const auto& hd = *om.hopf;
  auto cop = NcElement::zero(hd.carrier->combined());
  for (const auto& [w, c] : d1.terms())
    cop = cop + coproduct_of_word(om, w).scaled(c);
  if (!tensor_nf(*hd.carrier, *om.pres, *om.pres,
                 cop - hd.carrier->tensor(d1, d1))
           .is_zero())
    fail(rep, "determinant is not grouplike");
}

void check_det_pairing(CheckReport& rep, const CheckParams& p) {
  auto& gl = algebra(AlgebraKind::OGL, p.n);
  auto r = pairing_r(gl);
  note(rep, r.convention());
  auto det = quantum_det(gl, 'X', 1);
  for (int i = 1; i <= p.n; ++i)
    for (int j = 1; j <= p.n; ++j) {
      auto x = gl.gen(mat_name('X', i, j));
      QScalar want = (i == j) ? qp(-1) : QScalar(0);
      if (!(r.eval(det, x) == want)) {
        fail(rep, "r(det, " + mat_name('X', i, j) +
                      ") differs from q^-1 * delta");
        return;
      }
      QScalar want_inv = (i == j) ? qp(1) : QScalar(0);
      if (!(pairing_r_inv(r, gl, det, x) == want_inv)) {
        fail(rep, "r^{-1}(det, " + mat_name('X', i, j) +
                      ") differs from q * delta");
        return;
      }
    }
}

void check_glr_star(CheckReport& rep, const CheckParams& p) {
  auto& glr = algebra(AlgebraKind::OGLR, p.n);
  auto detx = quantum_det(glr, 'X', 1);
  auto dety = quantum_det(glr, 'Y', 1);
  if (!glr.is_zero(star_apply(*glr.star, detx) - glr.gen("DinvY")))
    fail(rep, "star of the X-determinant differs from the inverse "
              "Y-determinant");
  if (!glr.is_zero(star_apply(*glr.star, dety) - glr.gen("DinvX")))
    fail(rep, "star of the Y-determinant differs from the inverse "
              "X-determinant");
  if (auto v = star_violation(glr, defining_relations(glr)))
    fail(rep, "star structure violation: " + *v);
  if (auto v = hopf_axioms_violation(glr))
    fail(rep, "Hopf axiom violation: " + *v);
}

void check_re_embed(CheckReport& rep, const CheckParams& p) {
  auto& glr = algebra(AlgebraKind::OGLR, p.n);
  int n = p.n;
  const auto& a = glr.alphabet();
  LeggedMatrix m(a, 1, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      auto acc = NcElement::zero(a);
      for (int k = 1; k <= n; ++k)
        acc = acc + star_apply(*glr.star, glr.gen(mat_name('X', k, i))) *
                        glr.gen(mat_name('X', k, j));
      m.set(static_cast<size_t>(i - 1), static_cast<size_t>(j - 1),
            glr.nf(acc));
    }
  auto r = r_matrix(a, n);
  auto r21 = flip_legs(r);
  auto m1 = m.leg_embed(2, {1});
  auto m2 = m.leg_embed(2, {2});
  auto diff = r21 * m1 * r * m2 - m2 * r21 * m1 * r;
  if (!diff.mapped([&](const NcElement& e) { return glr.nf(e); }).is_zero())
    fail(rep, "X*X does not satisfy the reflection equation");
  note(rep, "reflection form R21 M1 R12 M2 = M2 R21 M1 R12 with M = X*X");
}

void check_cholesky(CheckReport& rep, const CheckParams& p) {
  auto& oh = algebra(AlgebraKind::OH, p.n);
  auto& ot = algebra(AlgebraKind::OT, p.n);
  GenImages chol;
  try {
    chol = cholesky_map(oh, ot);
  } catch (const ConventionError& e) {
    fail(rep, e.what());
    return;
  }
  for (const auto& rel : defining_relations(oh))
    if (!ot.is_zero(substitute(chol, rel))) {
      fail(rep, "substitution does not annihilate the relation " + rel.str());
      break;
    }
  int n = p.n;
  const auto& at = ot.alphabet();
  auto img = [&](int i, int j) -> const NcElement& {
    return chol.images[oh.alphabet()->id_of(mat_name('Z', i, j))];
  };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (!ot.is_zero(star_apply(*ot.star, img(i, j)) - img(j, i)))
        fail(rep, "star equivariance fails at entry (" + std::to_string(i) +
                      "," + std::to_string(j) + ")");
  LeggedMatrix m(at, 1, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      m.set(static_cast<size_t>(i - 1), static_cast<size_t>(j - 1), img(i, j));
  auto tmat = generator_matrix(ot, 'P');
  auto tinv = triangular_inverse(
      ot, tmat,
      [&](int i0) { return NcElement::gen(at, ot_diag_name(i0 + 1, true)); },
      true);
  auto r = r_matrix(at, n);
  auto rinv = r_matrix_inv(at, n);
  auto m2 = m.leg_embed(2, {2});
  auto t1 = tmat.leg_embed(2, {1});
  auto t1inv = tinv.leg_embed(2, {1});
  auto diff = r * m2 * rinv - t1inv * m2 * t1;
  if (!diff.mapped([&](const NcElement& e) { return ot.nf(e); }).is_zero())
    fail(rep, "equivariance R12 M2 R12^{-1} = T1^{-1} M2 T1 fails");
  note(rep, "M = T*T; R-conjugation in the spectator leg matches conjugation "
            "by the upper generator matrix");
}

void check_iso_ut(CheckReport& rep, const CheckParams& p) {
  auto& uq = algebra(AlgebraKind::Uqgl, p.n);
  auto& ot = algebra(AlgebraKind::OT, p.n);
  GenImages iso;
  try {
    iso = uq_iso(uq, ot);
  } catch (const ConventionError& e) {
    fail(rep, e.what());
    return;
  }
  size_t checked = 0;
  for (const auto& rel : defining_relations(uq)) {
    ++checked;
    if (!ot.is_zero(substitute(iso, rel))) {
      fail(rep, "enveloping relation maps to a nonzero element: " + rel.str());
      return;
    }
  }
  note(rep, std::to_string(checked) +
                " enveloping-algebra relations mapped into the triangular "
                "algebra and reduced to zero");
}

void check_pairing_ut(CheckReport& rep, const CheckParams& p) {
  int n = p.n;
  auto& ot = algebra(AlgebraKind::OT, n);
  auto& ou = algebra(AlgebraKind::OU, n);
  auto& oh = algebra(AlgebraKind::OH, n);
  auto pp = pairing_p(ot, ou, oh);
  note(rep, pp.convention());
  auto rq = r_matrix_qm(n);
  auto rinvq = r_matrix_inv_qm(n);
  auto ix = [n](int i, int k) {
    return static_cast<size_t>(i - 1) * n + static_cast<size_t>(k - 1);
  };
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= n; ++l) {
      auto u = ou.gen(mat_name('U', k, l));
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          if (!(pp.eval(ot.gen(ot_name(i, j)), u) == rq.at(ix(i, k), ix(j, l))))
            fail(rep, "base value p(" + ot_name(i, j) + ", " +
                          mat_name('U', k, l) + ") differs from the R-matrix");
          if (!(pp.eval(ot.gen(ot_name(j, i)), u) ==
                rinvq.at(ix(k, j), ix(l, i))))
            fail(rep, "base value p(" + ot_name(j, i) + ", " +
                          mat_name('U', k, l) +
                          ") differs from the inverse R-matrix");
        }
        if (!(pp.eval(ot.gen(ot_diag_name(i, false)), u) ==
              rq.at(ix(i, k), ix(i, l))))
          fail(rep, "base value p(" + ot_diag_name(i, false) + ", " +
                        mat_name('U', k, l) + ") differs from the R-matrix");
        QScalar want_inv =
            (k == l) ? qp(k == i ? 1 : 0) : QScalar(0);
        if (!(pp.eval(ot.gen(ot_diag_name(i, true)), u) == want_inv))
          fail(rep, "base value p(" + ot_diag_name(i, true) + ", " +
                        mat_name('U', k, l) + ") differs from q^{delta}");
      }
    }
  auto dd = quantum_det(ou, 'U', 1) * ou.gen("Dinv");
  std::vector<NcElement> probes;
  for (GenId g = 0; g < ot.alphabet()->size(); ++g)
    probes.push_back(NcElement::gen(ot.alphabet(), g));
  probes.push_back(ot.gen(ot_diag_name(1, false)) * ot.gen(ot_name(1, 2)));
  probes.push_back(ot.gen(ot_name(2, 1)) * ot.gen(ot_diag_name(2, true)));
  for (const auto& pr : probes)
    if (!(pp.eval(pr, dd) == counit(ot, pr))) {
      fail(rep, "pairing against det * Dinv differs from the counit on " +
                    pr.str());
      break;
    }
}

void check_ad_coaction(CheckReport& rep, const CheckParams& p) {
  int n = p.n;
  auto& oh = algebra(AlgebraKind::OH, n);
  auto& ou = algebra(AlgebraKind::OU, n);
  auto& ot = algebra(AlgebraKind::OT, n);
  auto co = coact_ad(oh, ou);
  for (const auto& rel : defining_relations(oh))
    if (!tensor_nf(*co.carrier, *oh.pres, *ou.pres, substitute(co.images, rel))
             .is_zero()) {
      fail(rep, "coaction does not preserve the relation " + rel.str());
      break;
    }
  auto pp = pairing_p(ot, ou, oh);
  const auto& ah = oh.alphabet();
  const auto& at = ot.alphabet();
  auto tmat = generator_matrix(ot, 'P');
  auto tinv = triangular_inverse(
      ot, tmat,
      [&](int i0) { return NcElement::gen(at, ot_diag_name(i0 + 1, true)); },
      true);
  auto act = [&](const NcElement& t, GenId z) {
    auto acc = NcElement::zero(ah);
    for (const auto& [w, c] : co.images.images[z].terms()) {
      auto [zw, uw] = co.carrier->split(w);
      QScalar s =
          c * pp.eval(t, NcElement::monomial(ou.alphabet(), uw, QScalar(1)));
      if (!s.is_zero()) acc = acc + NcElement::monomial(ah, zw, s);
    }
    return acc;
  };
  auto r = r_matrix(ah, n);
  auto rinv = r_matrix_inv(ah, n);
  auto rhs = r * generator_matrix(oh, 'Z').leg_embed(2, {2}) * rinv;
  for (int ai = 0; ai < n; ++ai)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          auto t = tinv.entry(static_cast<size_t>(ai), static_cast<size_t>(b));
          auto lhs = t.is_zero()
                         ? NcElement::zero(ah)
                         : act(t, ah->id_of(mat_name('Z', c + 1, d + 1)));
          auto want = rhs.entry(static_cast<size_t>(ai) * n + c,
                                static_cast<size_t>(b) * n + d);
          if (!oh.is_zero(lhs - want)) {
            fail(rep, "coadjoint action identity fails at entry ((" +
                          std::to_string(ai + 1) + "," + std::to_string(c + 1) +
                          "),(" + std::to_string(b + 1) + "," +
                          std::to_string(d + 1) + "))");
            return;
          }
        }
  note(rep, "action of the inverse upper generator matrix matches "
            "R-conjugation in the spectator leg");
}

void check_bk(CheckReport& rep, const CheckParams& p) {
  adopt(rep, verify_bk(casimir(p.n)));
}

void check_ch(CheckReport& rep, const CheckParams& p) {
  adopt(rep, verify_ch(casimir(p.n)));
}

void check_newton(CheckReport& rep, const CheckParams& p) {
  auto& glr = algebra(AlgebraKind::OGLR, p.n);
  adopt(rep, verify_newton(glr, {1, 2}));
  note(rep, "weighted power traces checked for k = 1, 2");
}

void check_hc(CheckReport& rep, const CheckParams& p) {
  auto& c = casimir(p.n);
  adopt(rep, verify_hc_images(c));
  adopt(rep, verify_hc_homomorphism(c));
}

void check_ehc(CheckReport& rep, const CheckParams& p) {
  auto& c = casimir(p.n);
  auto& ot = algebra(AlgebraKind::OT, p.n);
  auto ws = sample_weights(p.n);
  for (int k = 1; k <= p.n; ++k) adopt(rep, verify_ehc(c, ot, k, ws));
}

void check_l_family(CheckReport& rep, const CheckParams& p) {
  adopt(rep, verify_l_family(algebra(AlgebraKind::OH, p.n)));
}

void check_bn_slice(CheckReport& rep, const CheckParams& p) {
  adopt(rep, verify_bn_slice(algebra(AlgebraKind::OH, p.n)));
}

void check_bi_commute(CheckReport& rep, const CheckParams& p) {
  adopt(rep, verify_b_commute(algebra(AlgebraKind::OH, p.n)));
}

// incremental exact echelon over PBW monomials, keyed by leading word
struct Echelon {
  std::map<Word, std::map<Word, QScalar, DegLexLess>, DegLexLess> rows;

  bool add(std::map<Word, QScalar, DegLexLess> v) {
    while (!v.empty()) {
      auto lead = std::prev(v.end());
      auto f = rows.find(lead->first);
      if (f == rows.end()) {
        QScalar inv = lead->second.inv();
        std::map<Word, QScalar, DegLexLess> norm;
        for (const auto& [w, c] : v) {
          auto s = c * inv;
          if (!s.is_zero()) norm.emplace(w, std::move(s));
        }
        rows.emplace(lead->first, std::move(norm));
        return true;
      }
      QScalar c = lead->second;
      for (const auto& [w, rc] : f->second) {
        auto& slot = v[w];
        slot = slot - c * rc;
        if (slot.is_zero()) v.erase(w);
      }
    }
    return false;
  }
};

void check_qr(CheckReport& rep, const CheckParams& p) {
  auto& glr = algebra(AlgebraKind::OGLR, p.n);
  auto& ou = algebra(AlgebraKind::OU, p.n);
  auto& ot = algebra(AlgebraKind::OT, p.n);
  auto qr = qr_map(glr, ou, ot);
  const auto& tc = *qr.carrier;
  int deg = p.degree_cap > 0 ? p.degree_cap : 2;
  param(rep, "degree_cap", deg);
  std::vector<Word> words = {Word()};
  std::vector<Word> prev = {Word()};
  for (int d = 1; d <= deg; ++d) {
    std::vector<Word> cur;
    for (const auto& w : prev)
      for (GenId g = 0; g < glr.alphabet()->size(); ++g) {
        Word nw = w;
        nw.push_back(static_cast<char>(g));
        if (glr.pres->word_irreducible(nw)) cur.push_back(nw);
      }
    words.insert(words.end(), cur.begin(), cur.end());
    prev = std::move(cur);
  }
  Echelon ech;
  for (const auto& w : words) {
    auto img = NcElement::one(tc.combined());
    for (char ch : w)
      img = img * qr.images
                      .images[static_cast<GenId>(static_cast<unsigned char>(ch))];
    img = tensor_nf(tc, *ou.pres, *ot.pres, img);
    std::map<Word, QScalar, DegLexLess> row(img.terms().begin(),
                                            img.terms().end());
    if (!ech.add(std::move(row))) {
      fail(rep, "image of " + word_str(glr.alphabet(), w) +
                    " is linearly dependent on images of earlier basis words");
      return;
    }
  }
  note(rep, "injective on the span of " + std::to_string(words.size()) +
                " basis words of degree <= " + std::to_string(deg));
}

void check_rep_dims(CheckReport& rep, const CheckParams& p) {
  auto& c = casimir(p.n);
  auto& uq = algebra(AlgebraKind::Uqgl, p.n);
  auto& ot = algebra(AlgebraKind::OT, p.n);
  long window = p.window > 0 ? p.window : (p.n == 2 ? 3 : 2);
  param(rep, "window", window);
  adopt(rep, verify_rep_dims(c, uq, ot, static_cast<int>(window)));
}

void check_filtration(CheckReport& rep, const CheckParams& p) {
  auto& c = casimir(p.n);
  auto& ot = algebra(AlgebraKind::OT, p.n);
  long window = p.window > 0 ? p.window : (p.n == 2 ? 10 : 4);
  std::vector<Rat> th = p.thresholds;
  if (th.empty()) th = {Rat(5, 2), Rat(5), Rat(100), Rat(1000000)};
  std::sort(th.begin(), th.end());
  param(rep, "q0", p.q0.get_str());
  param(rep, "window", window);
  {
    std::string ts;
    for (const auto& t : th) {
      if (!ts.empty()) ts += ",";
      ts += t.get_str();
    }
    param(rep, "thresholds", ts);
  }
  auto rows = filtration_table(c, ot, p.q0, window, th);
  Int want = binom(2 * window + p.n, p.n);
  if (Int(static_cast<long>(rows.size())) != want)
    fail(rep, "table has " + std::to_string(rows.size()) +
                  " rows; expected " + want.get_str() +
                  " dominant weights in the window");
  Rat two_q = p.q0 + Rat(1) / p.q0;
  std::vector<size_t> members(th.size(), 0);
  for (const auto& row : rows) {
    for (size_t t = 0; t < th.size(); ++t) {
      if (t > 0 && row.in_p_leq[t - 1] && !row.in_p_leq[t])
        fail(rep, "membership is not nested across thresholds at lambda=" +
                      row.lambda.str());
      if (row.in_p_leq[t]) ++members[t];
    }
    if (row.control_value < two_q)
      fail(rep, "control value below [2]_q0 at lambda=" + row.lambda.str());
  }
  std::string ms;
  for (size_t t = 0; t < th.size(); ++t) {
    if (!ms.empty()) ms += ", ";
    ms += "<= " + th[t].get_str() + ": " + std::to_string(members[t]);
  }
  note(rep, std::to_string(rows.size()) + " rows; members per threshold: " + ms);
}

void check_spectrum(CheckReport& rep, const CheckParams& p) {
  auto& c = casimir(p.n);
  auto& ot = algebra(AlgebraKind::OT, p.n);
  param(rep, "q0", p.q0.get_str());
  const double tol = 1e-9;
  for (const auto& lam : sample_weights(p.n)) {
    auto srep = spectrum_check(c, ot, lam, p.q0, tol);
    std::ostringstream os;
    os << "lambda=" << lam.str() << ": residual=" << srep.residual << "; "
       << srep.note;
    note(rep, os.str());
    if (!srep.ok) {
      std::ostringstream ow;
      ow << "annihilation residual " << srep.residual
         << " exceeds tolerance at lambda=" << lam.str();
      fail(rep, ow.str());
    }
  }
}

// ----------------------------------------------------------------- registry

using CheckFn = void (*)(CheckReport&, const CheckParams&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> v = {
      {"ybe", check_ybe},
      {"hecke", check_hecke},
      {"pbw-confluence", check_pbw},
      {"det", check_det},
      {"det-pairing", check_det_pairing},
      {"glr-star", check_glr_star},
      {"re-embed", check_re_embed},
      {"cholesky", check_cholesky},
      {"iso-ut", check_iso_ut},
      {"pairing-ut", check_pairing_ut},
      {"ad-coaction", check_ad_coaction},
      {"bk", check_bk},
      {"ch", check_ch},
      {"newton-central", check_newton},
      {"hc", check_hc},
      {"ehc", check_ehc},
      {"l-family", check_l_family},
      {"bn-slice", check_bn_slice},
      {"bi-commute", check_bi_commute},
      {"qr-inject", check_qr},
      {"rep-dims", check_rep_dims},
      {"filtration", check_filtration},
      {"spectrum", check_spectrum},
  };
  return v;
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, fn] : registry()) v.push_back(id);
    return v;
  }();
  return ids;
}

bool is_check_id(const std::string& id) {
  for (const auto& [k, fn] : registry())
    if (k == id) return true;
  return false;
}

CheckReport run_check(const std::string& id, const CheckParams& params) {
  CheckFn fn = nullptr;
  for (const auto& [k, f] : registry())
    if (k == id) fn = f;
  if (!fn) throw DomainError("unknown check id: " + id);
  CheckReport rep;
  rep.check = id;
  param(rep, "n", static_cast<long>(params.n));
  auto t0 = Clock::now();
  try {
    fn(rep, params);
  } catch (const std::exception& e) {
    rep.status = "error";
    rep.witness = e.what();
  }
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       Clock::now() - t0)
                       .count();
  return rep;
}

std::vector<CheckReport> run_all(const std::string& profile,
                                 const CheckParams& base, int jobs) {
  if (profile != "quick" && profile != "full")
    throw DomainError("unknown profile: " + profile);
  std::vector<std::pair<std::string, int>> plan;
  for (const auto& id : check_ids()) {
    plan.emplace_back(id, 2);
    if (profile == "full") {
      plan.emplace_back(id, 3);
      if (id == "ybe" || id == "hecke") plan.emplace_back(id, 4);
    }
  }
  std::vector<CheckReport> out(plan.size());
  auto run_one = [&](size_t i) {
    CheckParams p = base;
    p.n = plan[i].second;
    p.profile = profile;
    out[i] = run_check(plan[i].first, p);
  };
  if (jobs <= 1) {
    for (size_t i = 0; i < plan.size(); ++i) run_one(i);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= plan.size()) return;
        run_one(i);
      }
    };
    std::vector<std::thread> pool;
    int k = std::min<int>(jobs, static_cast<int>(plan.size()));
    for (int t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

namespace {

nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  auto po = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) po[k] = v;
  j["params"] = po;
  j["status"] = r.status;
  if (r.witness.empty())
    j["witness"] = nullptr;
  else
    j["witness"] = r.witness;
  j["elapsed_ms"] = r.elapsed_ms;
  j["convention_notes"] = r.convention_notes;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += "\"\"";
    else
      out.push_back(c == '\n' ? ' ' : c);
  }
  out += "\"";
  return out;
}

}  // namespace

std::string report_json(const CheckReport& r) { return to_json(r).dump(2); }

std::string reports_json(const std::vector<CheckReport>& rs) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rs) arr.push_back(to_json(r));
  return arr.dump(2);
}

std::string reports_csv(const std::vector<CheckReport>& rs) {
  std::ostringstream os;
  os << "check,params,status,witness,elapsed_ms,convention_notes\n";
  for (const auto& r : rs) {
    std::string ps;
    for (const auto& [k, v] : r.params) {
      if (!ps.empty()) ps += "; ";
      ps += k + "=" + v;
    }
    std::string ns;
    for (const auto& s : r.convention_notes) {
      if (!ns.empty()) ns += "; ";
      ns += s;
    }
    os << csv_field(r.check) << "," << csv_field(ps) << ","
       << csv_field(r.status) << "," << csv_field(r.witness) << ","
       << r.elapsed_ms << "," << csv_field(ns) << "\n";
  }
  return os.str();
}

std::string catalog_dump(int n) {
  std::lock_guard<std::mutex> lk(g_catalog_mx);
  std::ostringstream os;
  auto itc = catalog_map().find(n);
  if (itc == catalog_map().end()) return os.str();
  for (AlgebraKind k : built_kinds()[n]) {
    auto& h = itc->second->get(k);
    os << "== " << kind_name(k) << " (n=" << n << ", "
       << h.pres->rules().size() << " rules)\n"
       << h.pres->dump() << "\n";
  }
  return os.str();
}

}  // namespace qgl
