#include "qgl/qgroups.hpp"

#include <algorithm>
#include <sstream>

#include "qgl/errors.hpp"
#include "qgl/qlinalg.hpp"

namespace qgl {

namespace {

struct PermData {
  std::vector<int> img;  // 1-based: img[i-1] = sigma(i)
  long inversions = 0;
};

std::vector<PermData> perms_of(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  std::vector<PermData> out;
  do {
    PermData d;
    d.img = p;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++d.inversions;
    out.push_back(std::move(d));
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// (-q)^e for any integer e.
QScalar neg_q_pow(long e) {
  QScalar s = QScalar::q_power(e);
  return (e % 2 != 0) ? -s : s;
}

size_t idx2(int i, int k, int n) {  // flatten of (i,k), 1-based inputs
  return static_cast<size_t>(i - 1) * n + (k - 1);
}

AlphabetPtr matrix_alphabet(char letter, int n,
                            const std::vector<std::string>& extra = {}) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) names.push_back(mat_name(letter, i, j));
  for (const auto& e : extra) names.push_back(e);
  return Alphabet::make(names);
}

AlphabetPtr ot_alphabet(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) names.push_back(ot_name(i, j));
  for (int i = 1; i <= n; ++i) {
    names.push_back(ot_diag_name(i, false));
    names.push_back(ot_diag_name(i, true));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j < i; ++j) names.push_back(ot_name(i, j));
  return Alphabet::make(names);
}

AlphabetPtr uq_alphabet(int n) {
  std::vector<std::string> names;
  for (int i = 1; i < n; ++i) names.push_back("F" + std::to_string(i));
  for (int i = 1; i <= n; ++i) {
    names.push_back("K" + std::to_string(i));
    names.push_back("K" + std::to_string(i) + "inv");
  }
  for (int i = 1; i < n; ++i) names.push_back("E" + std::to_string(i));
  return Alphabet::make(names);
}

LeggedMatrix letter_matrix(const AlphabetPtr& a, char letter, int n) {
  return gen_matrix(a, n, [&](int i, int j) {
    return NcElement::gen(a, mat_name(letter, i + 1, j + 1));
  });
}

LeggedMatrix ot_upper_matrix(const AlphabetPtr& a, int n) {
  return gen_matrix(a, n, [&](int i0, int j0) {
    if (i0 < j0) return NcElement::gen(a, ot_name(i0 + 1, j0 + 1));
    if (i0 == j0) return NcElement::gen(a, ot_diag_name(i0 + 1, false));
    return NcElement::zero(a);
  });
}

LeggedMatrix ot_lower_matrix(const AlphabetPtr& a, int n) {
  return gen_matrix(a, n, [&](int i0, int j0) {
    if (i0 > j0) return NcElement::gen(a, ot_name(i0 + 1, j0 + 1));
    if (i0 == j0) return NcElement::gen(a, ot_diag_name(i0 + 1, true));
    return NcElement::zero(a);
  });
}

// R12 X13 Y23 = Y23 X13 R12, entrywise differences span-reduced.
std::vector<NcElement> frt_relations(const AlphabetPtr& a, int n,
                                     const LeggedMatrix& x,
                                     const LeggedMatrix& y) {
  auto r = r_matrix(a, n);
  auto x1 = x.leg_embed(2, {1});
  auto y2 = y.leg_embed(2, {2});
  return relations_from_matrix_eq(r * x1 * y2, y2 * x1 * r);
}

// R21 Z13 R12 Z23 = Z23 R21 Z13 R12.
std::vector<NcElement> re_relations(const AlphabetPtr& a, int n,
                                    const LeggedMatrix& z) {
  auto r = r_matrix(a, n);
  auto r21 = flip_legs(r);
  auto z1 = z.leg_embed(2, {1});
  auto z2 = z.leg_embed(2, {2});
  return relations_from_matrix_eq(r21 * z1 * r * z2, z2 * r21 * z1 * r);
}

NcElement det_generic(const AlphabetPtr& a, int nn,
                      const std::function<NcElement(int, int)>& entry,
                      int form) {
  if (form < 1 || form > 3) throw DomainError("quantum determinant form must be 1, 2, or 3");
  auto acc = NcElement::zero(a);
  for (const auto& s : perms_of(nn)) {
    auto term = NcElement::one(a);
    if (form == 1) {
      for (int i = 1; i <= nn; ++i) term = term * entry(i, s.img[i - 1]);
    } else if (form == 2) {
      for (int i = 1; i <= nn; ++i) term = term * entry(s.img[i - 1], i);
    } else {
      for (int i = nn; i >= 1; --i) term = term * entry(i, s.img[i - 1]);
    }
    acc = acc + term.scaled(neg_q_pow(form == 3 ? -s.inversions : s.inversions));
  }
  return acc;
}

std::string dinv_name_for(AlgebraKind kind, char letter) {
  if (kind == AlgebraKind::OGLR) return letter == 'X' ? "DinvX" : "DinvY";
  return "Dinv";
}

NcElement uq_khat(const AlphabetPtr& a, int i, bool inv) {
  auto k = [&](int t, bool tv) {
    return NcElement::gen(a, "K" + std::to_string(t) + (tv ? "inv" : ""));
  };
  return inv ? k(i, true) * k(i + 1, false) : k(i, false) * k(i + 1, true);
}

std::vector<NcElement> uq_relations(const AlphabetPtr& a, int n) {
  auto gen = [&](const std::string& s) { return NcElement::gen(a, s); };
  auto K = [&](int i) { return gen("K" + std::to_string(i)); };
  auto Ki = [&](int i) { return gen("K" + std::to_string(i) + "inv"); };
  auto E = [&](int i) { return gen("E" + std::to_string(i)); };
  auto F = [&](int i) { return gen("F" + std::to_string(i)); };
  auto one = NcElement::one(a);
  QScalar qp = QScalar::q_power(1), qm = QScalar::q_power(-1);
  QScalar qmqinv = (qp - qm).inv();

  std::vector<NcElement> rel;
  for (int i = 1; i <= n; ++i) {
    rel.push_back(K(i) * Ki(i) - one);
    rel.push_back(Ki(i) * K(i) - one);
  }
  // the K-block is commutative
  std::vector<NcElement> kl;
  for (int i = 1; i <= n; ++i) {
    kl.push_back(K(i));
    kl.push_back(Ki(i));
  }
  for (size_t p = 0; p < kl.size(); ++p)
    for (size_t r = p + 1; r < kl.size(); ++r)
      rel.push_back(kl[p] * kl[r] - kl[r] * kl[p]);
  // K E / K F commutation: K_i E_j = q^{d_ij - d_{i,j+1}} E_j K_i
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j < n; ++j) {
      long c = (i == j ? 1 : 0) - (i == j + 1 ? 1 : 0);
      rel.push_back(K(i) * E(j) - (E(j) * K(i)).scaled(QScalar::q_power(c)));
      rel.push_back(Ki(i) * E(j) - (E(j) * Ki(i)).scaled(QScalar::q_power(-c)));
      rel.push_back(K(i) * F(j) - (F(j) * K(i)).scaled(QScalar::q_power(-c)));
      rel.push_back(Ki(i) * F(j) - (F(j) * Ki(i)).scaled(QScalar::q_power(c)));
    }
  // E F relations
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) {
      auto r = E(i) * F(j) - F(j) * E(i);
      if (i == j)
        r = r - (uq_khat(a, i, false) - uq_khat(a, i, true)).scaled(qmqinv);
      rel.push_back(r);
    }
  // E E / F F: distant commutation and adjacent Serre relations
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) {
      if (i == j) continue;
      if (std::abs(i - j) >= 2) {
        if (i < j) {
          rel.push_back(E(i) * E(j) - E(j) * E(i));
          rel.push_back(F(i) * F(j) - F(j) * F(i));
        }
      } else {
        QScalar twoq = qp + qm;
        rel.push_back(E(i) * E(i) * E(j) - (E(i) * E(j) * E(i)).scaled(twoq) +
                      E(j) * E(i) * E(i));
        rel.push_back(F(i) * F(i) * F(j) - (F(i) * F(j) * F(i)).scaled(twoq) +
                      F(j) * F(i) * F(i));
      }
    }
  return rel;
}

std::vector<NcElement> assemble_relations(AlgebraKind kind, int n,
                                          const AlphabetPtr& a) {
  std::vector<NcElement> rel;
  auto one = NcElement::one(a);
  auto commutator_seeds = [&](const std::string& dinv,
                              const std::vector<std::string>& others) {
    auto d = NcElement::gen(a, dinv);
    for (const auto& o : others) {
      auto g = NcElement::gen(a, o);
      rel.push_back(d * g - g * d);
    }
  };
  switch (kind) {
    case AlgebraKind::OM: {
      auto x = letter_matrix(a, 'X', n);
      return frt_relations(a, n, x, x);
    }
    case AlgebraKind::OGL:
    case AlgebraKind::OU: {
      char letter = (kind == AlgebraKind::OU) ? 'U' : 'X';
      auto x = letter_matrix(a, letter, n);
      rel = frt_relations(a, n, x, x);
      auto det = det_generic(a, n, [&](int i, int j) { return x.entry(i - 1, j - 1); }, 1);
      auto de = NcElement::gen(a, "Det");
      auto d = NcElement::gen(a, "Dinv");
      rel.push_back(det - de);
      rel.push_back(de * d - one);
      rel.push_back(d * de - one);
      std::vector<std::string> others;
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) others.push_back(mat_name(letter, i, j));
      commutator_seeds("Det", others);
      auto with_det = others;
      with_det.push_back("Det");
      commutator_seeds("Dinv", with_det);
      return rel;
    }
    case AlgebraKind::OGLR: {
      auto x = letter_matrix(a, 'X', n);
      auto y = letter_matrix(a, 'Y', n);
      rel = frt_relations(a, n, x, x);
      auto fy = frt_relations(a, n, y, y);
      rel.insert(rel.end(), fy.begin(), fy.end());
      auto ix = frt_relations(a, n, x, y);
      rel.insert(rel.end(), ix.begin(), ix.end());
      auto detx = det_generic(a, n, [&](int i, int j) { return x.entry(i - 1, j - 1); }, 1);
      auto dety = det_generic(a, n, [&](int i, int j) { return y.entry(i - 1, j - 1); }, 1);
      rel.push_back(detx - NcElement::gen(a, "DetX"));
      rel.push_back(dety - NcElement::gen(a, "DetY"));
      rel.push_back(NcElement::gen(a, "DetX") * NcElement::gen(a, "DinvX") - one);
      rel.push_back(NcElement::gen(a, "DinvX") * NcElement::gen(a, "DetX") - one);
      rel.push_back(NcElement::gen(a, "DetY") * NcElement::gen(a, "DinvY") - one);
      rel.push_back(NcElement::gen(a, "DinvY") * NcElement::gen(a, "DetY") - one);
      std::vector<std::string> others;
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          others.push_back(mat_name('X', i, j));
          others.push_back(mat_name('Y', i, j));
        }
      const char* specials[] = {"DetX", "DetY", "DinvX", "DinvY"};
      for (int s = 0; s < 4; ++s) {
        commutator_seeds(specials[s], others);
        for (int t = 0; t < s; ++t)
          rel.push_back(NcElement::gen(a, specials[s]) * NcElement::gen(a, specials[t]) -
                        NcElement::gen(a, specials[t]) * NcElement::gen(a, specials[s]));
      }
      return rel;
    }
    case AlgebraKind::OT: {
      auto up = ot_upper_matrix(a, n);
      auto lo = ot_lower_matrix(a, n);
      rel = frt_relations(a, n, up, up);
      auto fl = frt_relations(a, n, lo, lo);
      rel.insert(rel.end(), fl.begin(), fl.end());
      auto il = frt_relations(a, n, up, lo);
      rel.insert(rel.end(), il.begin(), il.end());
      for (int i = 1; i <= n; ++i) {
        auto t = NcElement::gen(a, ot_diag_name(i, false));
        auto ti = NcElement::gen(a, ot_diag_name(i, true));
        rel.push_back(t * ti - one);
        rel.push_back(ti * t - one);
      }
      return rel;
    }
    case AlgebraKind::OH: {
      auto z = letter_matrix(a, 'Z', n);
      return re_relations(a, n, z);
    }
    case AlgebraKind::Uqgl:
      return uq_relations(a, n);
  }
  throw InternalError("assemble_relations: unknown algebra kind");
}

int degree_cap_for(AlgebraKind kind, int n) {
  switch (kind) {
    case AlgebraKind::OM:
    case AlgebraKind::OH:
      return 2 * n + 10;
    case AlgebraKind::OT:
      return 8 + 4 * n;
    case AlgebraKind::OGL:
    case AlgebraKind::OU:
      return 12;
    case AlgebraKind::OGLR:
      // the conjugation-involution image of a degree-n determinant word has
      // degree n^2; completion cost over 2n^2+4 letters grows quickly with
      // the cap, so stay close to that bound for larger n
      return n <= 2 ? 12 : n * n + 1;
    case AlgebraKind::Uqgl:
      return 10;
  }
  return 12;
}

}  // namespace

const char* kind_name(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::OM: return "O_M";
    case AlgebraKind::OGL: return "O_GL";
    case AlgebraKind::OGLR: return "O_GLR";
    case AlgebraKind::OU: return "O_U";
    case AlgebraKind::OT: return "O_T";
    case AlgebraKind::OH: return "O_H";
    case AlgebraKind::Uqgl: return "U_qgl";
  }
  return "?";
}

std::string mat_name(char letter, int i, int j) {
  return std::string(1, letter) + std::to_string(i) + std::to_string(j);
}

std::string ot_name(int i, int j) {
  return std::string(i < j ? "Tp" : "Tm") + std::to_string(i) + std::to_string(j);
}

std::string ot_diag_name(int i, bool inv) {
  return "T" + std::to_string(i) + (inv ? "inv" : "");
}

LeggedMatrix flip_legs(const LeggedMatrix& m) {
  if (m.legs() != 2) throw DomainError("flip_legs requires a two-leg matrix");
  int n = m.dim();
  LeggedMatrix out(m.alphabet(), 2, n);
  for (const auto& [rc, val] : m.entries()) {
    int i = static_cast<int>(rc.first) / n, k = static_cast<int>(rc.first) % n;
    int j = static_cast<int>(rc.second) / n, l = static_cast<int>(rc.second) % n;
    out.add(static_cast<size_t>(k) * n + i, static_cast<size_t>(l) * n + j, val);
  }
  return out;
}

LeggedMatrix generator_matrix(const AlgebraHandle& h, char letter) {
  const auto& a = h.alphabet();
  int n = h.n;
  auto expect = [&](bool ok) {
    if (!ok)
      throw DomainError(std::string("generator_matrix: letter '") + letter +
                        "' is not defined for " + kind_name(h.kind));
  };
  switch (h.kind) {
    case AlgebraKind::OM:
    case AlgebraKind::OGL:
      expect(letter == 'X');
      return letter_matrix(a, 'X', n);
    case AlgebraKind::OU:
      expect(letter == 'U');
      return letter_matrix(a, 'U', n);
    case AlgebraKind::OGLR:
      expect(letter == 'X' || letter == 'Y');
      return letter_matrix(a, letter, n);
    case AlgebraKind::OH:
      expect(letter == 'Z');
      return letter_matrix(a, 'Z', n);
    case AlgebraKind::OT:
      expect(letter == 'P' || letter == 'M');
      return letter == 'P' ? ot_upper_matrix(a, n) : ot_lower_matrix(a, n);
    case AlgebraKind::Uqgl:
      expect(false);
  }
  throw InternalError("generator_matrix: unreachable");
}

NcElement quantum_det(const AlgebraHandle& h, char letter, int form) {
  auto m = generator_matrix(h, letter);
  return det_generic(h.alphabet(), h.n,
                     [&](int i, int j) { return m.entry(i - 1, j - 1); }, form);
}

LeggedMatrix antipode_matrix(const AlgebraHandle& h, char letter) {
  if (h.kind != AlgebraKind::OGL && h.kind != AlgebraKind::OU &&
      h.kind != AlgebraKind::OGLR)
    throw DomainError("antipode_matrix requires a localized matrix algebra");
  const auto& a = h.alphabet();
  int n = h.n;
  auto m = generator_matrix(h, letter);
  auto dinv = NcElement::gen(a, dinv_name_for(h.kind, letter));
  LeggedMatrix s(a, 1, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      // minor deleting row j and column i, retained indices ascending
      std::vector<int> rows, cols;
      for (int r = 1; r <= n; ++r)
        if (r != j) rows.push_back(r);
      for (int c = 1; c <= n; ++c)
        if (c != i) cols.push_back(c);
      auto minor = det_generic(
          a, n - 1,
          [&](int r, int c) { return m.entry(rows[r - 1] - 1, cols[c - 1] - 1); },
          1);
      s.add(i - 1, j - 1, (minor * dinv).scaled(neg_q_pow(i - j)));
    }
  // validate M · S(M) = S(M) · M = I
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto want = i == j ? NcElement::one(a) : NcElement::zero(a);
      auto lhs = NcElement::zero(a);
      auto rhs = NcElement::zero(a);
      for (int k = 0; k < n; ++k) {
        lhs = lhs + m.entry(i, k) * s.entry(k, j);
        rhs = rhs + s.entry(i, k) * m.entry(k, j);
      }
      if (!h.pres->is_zero(lhs - want))
        throw ConventionError(std::string("antipode identity fails at entry (") +
                              std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") of " + letter + "*S(" + letter + ")");
      if (!h.pres->is_zero(rhs - want))
        throw ConventionError(std::string("antipode identity fails at entry (") +
                              std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") of S(" + letter + ")*" + letter);
    }
  return s;
}

LeggedMatrix triangular_inverse(const AlgebraHandle& h, const LeggedMatrix& m,
                                const std::function<NcElement(int)>& diag_inv,
                                bool upper) {
  const auto& a = h.alphabet();
  int n = m.dim();
  LeggedMatrix inv(a, 1, n);
  for (int i = 0; i < n; ++i) inv.add(i, i, diag_inv(i));
  if (upper) {
    for (int j = 0; j < n; ++j)
      for (int i = j - 1; i >= 0; --i) {
        auto s = NcElement::zero(a);
        for (int k = i + 1; k <= j; ++k) s = s + m.entry(i, k) * inv.entry(k, j);
        inv.add(i, j, h.pres->normal_form((diag_inv(i) * s).scaled(QScalar(-1))));
      }
  } else {
    for (int j = 0; j < n; ++j)
      for (int i = j + 1; i < n; ++i) {
        auto s = NcElement::zero(a);
        for (int k = j; k < i; ++k) s = s + m.entry(i, k) * inv.entry(k, j);
        inv.add(i, j, h.pres->normal_form((diag_inv(i) * s).scaled(QScalar(-1))));
      }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto want = i == j ? NcElement::one(a) : NcElement::zero(a);
      auto lhs = NcElement::zero(a);
      auto rhs = NcElement::zero(a);
      for (int k = 0; k < n; ++k) {
        lhs = lhs + m.entry(i, k) * inv.entry(k, j);
        rhs = rhs + inv.entry(i, k) * m.entry(k, j);
      }
      if (!h.pres->is_zero(lhs - want) || !h.pres->is_zero(rhs - want))
        throw ConventionError("triangular inverse fails at entry (" +
                              std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  return inv;
}

NcElement tensor_nf(const TensorCarrier& tc, const Presentation& pl,
                    const Presentation& pr, const NcElement& x) {
  if (pl.alphabet() != tc.left() || pr.alphabet() != tc.right())
    throw InternalError("tensor_nf: presentation alphabets do not match the carrier");
  return tc.map_components(
      x, [&](const Word& w) { return pl.normal_form_word(w); },
      [&](const Word& w) { return pr.normal_form_word(w); });
}

NcElement coproduct_of_word(const AlgebraHandle& h, const Word& w) {
  if (!h.hopf) throw DomainError("coproduct_of_word: algebra has no coproduct");
  auto acc = NcElement::one(h.hopf->carrier->combined());
  for (unsigned char c : w) acc = acc * h.hopf->coproduct[static_cast<GenId>(c)];
  return h.hopf->carrier->normalize_slots(acc);
}

QScalar counit_word(const AlgebraHandle& h, const Word& w) {
  if (!h.hopf) throw DomainError("counit_word: algebra has no counit");
  QScalar out(1);
  for (unsigned char c : w) out = out * h.hopf->counit[static_cast<GenId>(c)];
  return out;
}

QScalar counit(const AlgebraHandle& h, const NcElement& a) {
  QScalar out(0);
  for (const auto& [w, c] : a.terms()) out = out + c * counit_word(h, w);
  return out;
}

NcElement antipode_apply(const AlgebraHandle& h, const NcElement& a) {
  if (!h.hopf || !h.hopf->has_antipode())
    throw DomainError("antipode_apply: algebra has no antipode");
  auto acc = NcElement::zero(h.alphabet());
  for (const auto& [w, c] : a.terms()) {
    auto prod = NcElement::one(h.alphabet());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      prod = prod * h.hopf->antipode[static_cast<GenId>(static_cast<unsigned char>(*it))];
    acc = acc + prod.scaled(c);
  }
  return acc;
}

std::optional<std::string> hopf_axioms_violation(const AlgebraHandle& h) {
  if (!h.hopf) return "algebra carries no coalgebra structure";
  const auto& hd = *h.hopf;
  const auto& a = h.alphabet();
  for (GenId g = 0; g < a->size(); ++g) {
    auto gelem = NcElement::gen(a, g);
    auto left = NcElement::zero(a);   // (eps ⊗ id) Δ
    auto right = NcElement::zero(a);  // (id ⊗ eps) Δ
    for (const auto& [w, c] : hd.coproduct[g].terms()) {
      auto [lw, rw] = hd.carrier->split(w);
      left = left + NcElement::monomial(a, rw, c * counit_word(h, lw));
      right = right + NcElement::monomial(a, lw, c * counit_word(h, rw));
    }
    if (!h.is_zero(left - gelem))
      return "counit axiom (eps⊗id)Δ = id fails on generator " + a->name_of(g);
    if (!h.is_zero(right - gelem))
      return "counit axiom (id⊗eps)Δ = id fails on generator " + a->name_of(g);
    if (hd.has_antipode()) {
      auto mS = NcElement::zero(a);   // m (S ⊗ id) Δ
      auto mS2 = NcElement::zero(a);  // m (id ⊗ S) Δ
      for (const auto& [w, c] : hd.coproduct[g].terms()) {
        auto [lw, rw] = hd.carrier->split(w);
        mS = mS + (antipode_apply(h, NcElement::monomial(a, lw, QScalar(1))) *
                   NcElement::monomial(a, rw, QScalar(1)))
                      .scaled(c);
        mS2 = mS2 + (NcElement::monomial(a, lw, QScalar(1)) *
                     antipode_apply(h, NcElement::monomial(a, rw, QScalar(1))))
                        .scaled(c);
      }
      auto eps1 = NcElement::one(a).scaled(hd.counit[g]);
      if (!h.is_zero(mS - eps1))
        return "antipode axiom m(S⊗id)Δ = eps fails on generator " + a->name_of(g);
      if (!h.is_zero(mS2 - eps1))
        return "antipode axiom m(id⊗S)Δ = eps fails on generator " + a->name_of(g);
    }
  }
  return std::nullopt;
}

std::optional<std::string> star_violation(const AlgebraHandle& h,
                                          const std::vector<NcElement>& relations) {
  if (!h.star) return "algebra carries no star structure";
  const auto& a = h.alphabet();
  for (GenId g = 0; g < a->size(); ++g) {
    auto twice = star_apply(*h.star, star_apply(*h.star, NcElement::gen(a, g)));
    if (!h.is_zero(twice - NcElement::gen(a, g)))
      return "star is not involutive on generator " + a->name_of(g);
  }
  for (size_t i = 0; i < relations.size(); ++i) {
    if (!h.is_zero(star_apply(*h.star, relations[i])))
      return "star image of defining relation #" + std::to_string(i) +
             " is not zero: " + relations[i].str();
  }
  return std::nullopt;
}

std::vector<NcElement> defining_relations(const AlgebraHandle& h) {
  return assemble_relations(h.kind, h.n, h.alphabet());
}

// ---------------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<const TensorCarrier> self_carrier(const AlphabetPtr& a) {
  return std::make_shared<TensorCarrier>(a, a);
}

HopfData fresh_hopf(const AlphabetPtr& a) {
  HopfData hd;
  hd.carrier = self_carrier(a);
  hd.coproduct.assign(a->size(), NcElement::zero(hd.carrier->combined()));
  hd.counit.assign(a->size(), QScalar(0));
  return hd;
}

// matrix comultiplication for the block of letters of a generator matrix
void add_matrix_coalgebra(HopfData& hd, const AlphabetPtr& a, char letter, int n) {
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      GenId g = a->id_of(mat_name(letter, i, j));
      auto cp = NcElement::zero(hd.carrier->combined());
      for (int k = 1; k <= n; ++k)
        cp = cp + hd.carrier->tensor(NcElement::gen(a, mat_name(letter, i, k)),
                                     NcElement::gen(a, mat_name(letter, k, j)));
      hd.coproduct[g] = cp;
      hd.counit[g] = QScalar(i == j ? 1 : 0);
    }
}

void add_grouplike(HopfData& hd, const AlphabetPtr& a, const std::string& name) {
  GenId g = a->id_of(name);
  hd.coproduct[g] = hd.carrier->tensor(NcElement::gen(a, name), NcElement::gen(a, name));
  hd.counit[g] = QScalar(1);
}

void require_hopf_axioms(const AlgebraHandle& h) {
  if (auto bad = hopf_axioms_violation(h))
    throw ConventionError(std::string(kind_name(h.kind)) + ": " + *bad);
}

void require_star_involutive(const AlgebraHandle& h) {
  const auto& a = h.alphabet();
  for (GenId g = 0; g < a->size(); ++g) {
    auto twice = star_apply(*h.star, star_apply(*h.star, NcElement::gen(a, g)));
    if (!h.is_zero(twice - NcElement::gen(a, g)))
      throw ConventionError(std::string(kind_name(h.kind)) +
                            ": star is not involutive on generator " + a->name_of(g));
  }
}

void require_central_det(const Presentation& pres, const NcElement& det,
                         const char* label) {
  const auto& a = pres.alphabet();
  for (GenId g = 0; g < a->size(); ++g) {
    auto x = NcElement::gen(a, g);
    if (!pres.is_zero(det * x - x * det))
      throw ConventionError(std::string(label) +
                            " is not central against generator " + a->name_of(g) +
                            "; localization would be unsound");
  }
}

AlgebraHandle build_om(int n) {
  AlgebraHandle h;
  h.kind = AlgebraKind::OM;
  h.n = n;
  auto a = matrix_alphabet('X', n);
  h.pres = std::make_shared<Presentation>(
      orient_and_complete(a, assemble_relations(h.kind, n, a), degree_cap_for(h.kind, n)));
  auto hd = fresh_hopf(a);
  add_matrix_coalgebra(hd, a, 'X', n);
  h.hopf = std::move(hd);
  require_hopf_axioms(h);
  h.notes.push_back("bialgebra only: the matrix quantum semigroup has no antipode");
  return h;
}

AlgebraHandle build_gl_like(AlgebraKind kind, int n) {
  char letter = (kind == AlgebraKind::OU) ? 'U' : 'X';
  // stage 1: verify the determinant is central before localizing
  {
    auto a0 = matrix_alphabet(letter, n);
    auto m0 = letter_matrix(a0, letter, n);
    auto pres0 = orient_and_complete(a0, frt_relations(a0, n, m0, m0), 2 * n + 4);
    auto det0 = det_generic(a0, n, [&](int i, int j) { return m0.entry(i - 1, j - 1); }, 1);
    require_central_det(pres0, det0, "quantum determinant");
  }
  // stage 2: localized algebra
  AlgebraHandle h;
  h.kind = kind;
  h.n = n;
  auto a = matrix_alphabet(letter, n, {"Det", "Dinv"});
  h.pres = std::make_shared<Presentation>(
      orient_and_complete(a, assemble_relations(kind, n, a), degree_cap_for(kind, n)));
  auto hd = fresh_hopf(a);
  add_matrix_coalgebra(hd, a, letter, n);
  add_grouplike(hd, a, "Det");
  add_grouplike(hd, a, "Dinv");
  auto s = antipode_matrix(h, letter);
  hd.antipode.assign(a->size(), NcElement::zero(a));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      hd.antipode[a->id_of(mat_name(letter, i, j))] = s.entry(i - 1, j - 1);
  hd.antipode[a->id_of("Det")] = NcElement::gen(a, "Dinv");
  hd.antipode[a->id_of("Dinv")] = NcElement::gen(a, "Det");
  h.hopf = std::move(hd);
  require_hopf_axioms(h);
  h.notes.push_back("determinant verified central before localization; cofactor antipode validated entrywise");
  if (kind == AlgebraKind::OU) {
    GenImages st{a, std::vector<NcElement>(a->size(), NcElement::zero(a))};
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        st.images[a->id_of(mat_name(letter, i, j))] = s.entry(j - 1, i - 1);
    st.images[a->id_of("Det")] = NcElement::gen(a, "Dinv");
    st.images[a->id_of("Dinv")] = NcElement::gen(a, "Det");
    h.star = std::move(st);
    require_star_involutive(h);
    h.notes.push_back("star U_ab^* = S(U_ba) makes the generator matrix unitary");
  }
  return h;
}

AlgebraHandle build_oglr(int n) {
  // stage 1: both determinants central in the two-copy algebra
  {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) names.push_back(mat_name('X', i, j));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) names.push_back(mat_name('Y', i, j));
    auto a0 = Alphabet::make(names);
    auto x0 = letter_matrix(a0, 'X', n);
    auto y0 = letter_matrix(a0, 'Y', n);
    std::vector<NcElement> rel0 = frt_relations(a0, n, x0, x0);
    auto fy = frt_relations(a0, n, y0, y0);
    rel0.insert(rel0.end(), fy.begin(), fy.end());
    auto ix = frt_relations(a0, n, x0, y0);
    rel0.insert(rel0.end(), ix.begin(), ix.end());
    auto pres0 = orient_and_complete(a0, rel0, 2 * n + 4);
    auto detx0 = det_generic(a0, n, [&](int i, int j) { return x0.entry(i - 1, j - 1); }, 1);
    auto dety0 = det_generic(a0, n, [&](int i, int j) { return y0.entry(i - 1, j - 1); }, 1);
    require_central_det(pres0, detx0, "quantum determinant of the first copy");
    require_central_det(pres0, dety0, "quantum determinant of the second copy");
  }
  AlgebraHandle h;
  h.kind = AlgebraKind::OGLR;
  h.n = n;
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) names.push_back(mat_name('X', i, j));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) names.push_back(mat_name('Y', i, j));
  names.insert(names.end(), {"DetX", "DetY", "DinvX", "DinvY"});
  auto a = Alphabet::make(names);
  h.pres = std::make_shared<Presentation>(
      orient_and_complete(a, assemble_relations(h.kind, n, a), degree_cap_for(h.kind, n)));
  auto hd = fresh_hopf(a);
  add_matrix_coalgebra(hd, a, 'X', n);
  add_matrix_coalgebra(hd, a, 'Y', n);
  for (const char* s : {"DetX", "DetY", "DinvX", "DinvY"}) add_grouplike(hd, a, s);
  auto sx = antipode_matrix(h, 'X');
  auto sy = antipode_matrix(h, 'Y');
  hd.antipode.assign(a->size(), NcElement::zero(a));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      hd.antipode[a->id_of(mat_name('X', i, j))] = sx.entry(i - 1, j - 1);
      hd.antipode[a->id_of(mat_name('Y', i, j))] = sy.entry(i - 1, j - 1);
    }
  hd.antipode[a->id_of("DetX")] = NcElement::gen(a, "DinvX");
  hd.antipode[a->id_of("DetY")] = NcElement::gen(a, "DinvY");
  hd.antipode[a->id_of("DinvX")] = NcElement::gen(a, "DetX");
  hd.antipode[a->id_of("DinvY")] = NcElement::gen(a, "DetY");
  h.hopf = std::move(hd);
  require_hopf_axioms(h);
  // star: X_ab^* = (Y^{-1})_ba, Y_ab^* = (X^{-1})_ba
  GenImages st{a, std::vector<NcElement>(a->size(), NcElement::zero(a))};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      st.images[a->id_of(mat_name('X', i, j))] = sy.entry(j - 1, i - 1);
      st.images[a->id_of(mat_name('Y', i, j))] = sx.entry(j - 1, i - 1);
    }
  st.images[a->id_of("DetX")] = NcElement::gen(a, "DinvY");
  st.images[a->id_of("DetY")] = NcElement::gen(a, "DinvX");
  st.images[a->id_of("DinvX")] = NcElement::gen(a, "DetY");
  st.images[a->id_of("DinvY")] = NcElement::gen(a, "DetX");
  h.star = std::move(st);
  require_star_involutive(h);
  h.notes.push_back("realified algebra: star swaps the two matrix copies through their antipodes");
  return h;
}

AlgebraHandle build_ot(int n) {
  AlgebraHandle h;
  h.kind = AlgebraKind::OT;
  h.n = n;
  auto a = ot_alphabet(n);
  h.pres = std::make_shared<Presentation>(
      orient_and_complete(a, assemble_relations(h.kind, n, a), degree_cap_for(h.kind, n)));
  auto up = ot_upper_matrix(a, n);
  auto lo = ot_lower_matrix(a, n);
  auto hd = fresh_hopf(a);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      GenId g = a->id_of(ot_name(i, j));
      auto cp = NcElement::zero(hd.carrier->combined());
      for (int k = i; k <= j; ++k)
        cp = cp + hd.carrier->tensor(up.entry(i - 1, k - 1), up.entry(k - 1, j - 1));
      hd.coproduct[g] = cp;
      hd.counit[g] = QScalar(0);
      GenId gm = a->id_of(ot_name(j, i));
      auto cm = NcElement::zero(hd.carrier->combined());
      for (int k = i; k <= j; ++k)
        cm = cm + hd.carrier->tensor(lo.entry(j - 1, k - 1), lo.entry(k - 1, i - 1));
      hd.coproduct[gm] = cm;
      hd.counit[gm] = QScalar(0);
    }
  for (int i = 1; i <= n; ++i) {
    add_grouplike(hd, a, ot_diag_name(i, false));
    add_grouplike(hd, a, ot_diag_name(i, true));
  }
  // antipode: inverses of the triangular generator matrices
  auto up_inv = triangular_inverse(
      h, up, [&](int i) { return NcElement::gen(a, ot_diag_name(i + 1, true)); }, true);
  auto lo_inv = triangular_inverse(
      h, lo, [&](int i) { return NcElement::gen(a, ot_diag_name(i + 1, false)); }, false);
  hd.antipode.assign(a->size(), NcElement::zero(a));
  for (int i = 1; i <= n; ++i) {
    hd.antipode[a->id_of(ot_diag_name(i, false))] = NcElement::gen(a, ot_diag_name(i, true));
    hd.antipode[a->id_of(ot_diag_name(i, true))] = NcElement::gen(a, ot_diag_name(i, false));
    for (int j = i + 1; j <= n; ++j) {
      hd.antipode[a->id_of(ot_name(i, j))] = up_inv.entry(i - 1, j - 1);
      hd.antipode[a->id_of(ot_name(j, i))] = lo_inv.entry(j - 1, i - 1);
    }
  }
  h.hopf = std::move(hd);
  require_hopf_axioms(h);
  // star: transpose-inverse across the two triangles, diagonal fixed
  GenImages st{a, std::vector<NcElement>(a->size(), NcElement::zero(a))};
  for (int i = 1; i <= n; ++i) {
    st.images[a->id_of(ot_diag_name(i, false))] = NcElement::gen(a, ot_diag_name(i, false));
    st.images[a->id_of(ot_diag_name(i, true))] = NcElement::gen(a, ot_diag_name(i, true));
    for (int j = i + 1; j <= n; ++j) {
      st.images[a->id_of(ot_name(i, j))] = lo_inv.entry(j - 1, i - 1);
      st.images[a->id_of(ot_name(j, i))] = up_inv.entry(i - 1, j - 1);
    }
  }
  h.star = std::move(st);
  require_star_involutive(h);
  h.notes.push_back("generator order: strict upper entries, then diagonal with inverses, then strict lower entries");
  return h;
}

AlgebraHandle build_oh(int n) {
  AlgebraHandle h;
  h.kind = AlgebraKind::OH;
  h.n = n;
  auto a = matrix_alphabet('Z', n);
  h.pres = std::make_shared<Presentation>(
      orient_and_complete(a, assemble_relations(h.kind, n, a), degree_cap_for(h.kind, n)));
  GenImages st{a, std::vector<NcElement>(a->size(), NcElement::zero(a))};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      st.images[a->id_of(mat_name('Z', i, j))] = NcElement::gen(a, mat_name('Z', j, i));
  h.star = std::move(st);
  require_star_involutive(h);
  if (auto bad = star_violation(h, defining_relations(h)))
    throw ConventionError(std::string(kind_name(h.kind)) + ": " + *bad);
  h.notes.push_back("reflection equation algebra with hermitian star Z_ij^* = Z_ji");
  return h;
}

AlgebraHandle build_uq(int n) {
  AlgebraHandle h;
  h.kind = AlgebraKind::Uqgl;
  h.n = n;
  auto a = uq_alphabet(n);
  h.pres = std::make_shared<Presentation>(
      orient_and_complete(a, assemble_relations(h.kind, n, a), degree_cap_for(h.kind, n)));
  if (h.pres->completion_added() > 0)
    h.notes.push_back("completion added " + std::to_string(h.pres->completion_added()) +
                      " rules beyond the oriented Serre presentation");
  auto hd = fresh_hopf(a);
  auto one = NcElement::one(a);
  for (int i = 1; i <= n; ++i) {
    add_grouplike(hd, a, "K" + std::to_string(i));
    add_grouplike(hd, a, "K" + std::to_string(i) + "inv");
  }
  for (int i = 1; i < n; ++i) {
    auto e = NcElement::gen(a, "E" + std::to_string(i));
    auto f = NcElement::gen(a, "F" + std::to_string(i));
    GenId ge = a->id_of("E" + std::to_string(i));
    GenId gf = a->id_of("F" + std::to_string(i));
    hd.coproduct[ge] =
        hd.carrier->tensor(e, one) + hd.carrier->tensor(uq_khat(a, i, false), e);
    hd.coproduct[gf] =
        hd.carrier->tensor(f, uq_khat(a, i, true)) + hd.carrier->tensor(one, f);
    hd.counit[ge] = QScalar(0);
    hd.counit[gf] = QScalar(0);
  }
  hd.antipode.assign(a->size(), NcElement::zero(a));
  for (int i = 1; i <= n; ++i) {
    hd.antipode[a->id_of("K" + std::to_string(i))] =
        NcElement::gen(a, "K" + std::to_string(i) + "inv");
    hd.antipode[a->id_of("K" + std::to_string(i) + "inv")] =
        NcElement::gen(a, "K" + std::to_string(i));
  }
  for (int i = 1; i < n; ++i) {
    auto e = NcElement::gen(a, "E" + std::to_string(i));
    auto f = NcElement::gen(a, "F" + std::to_string(i));
    hd.antipode[a->id_of("E" + std::to_string(i))] = (uq_khat(a, i, true) * e).scaled(QScalar(-1));
    hd.antipode[a->id_of("F" + std::to_string(i))] = (f * uq_khat(a, i, false)).scaled(QScalar(-1));
  }
  h.hopf = std::move(hd);
  require_hopf_axioms(h);
  // star: compact real form, K self-adjoint
  GenImages st{a, std::vector<NcElement>(a->size(), NcElement::zero(a))};
  for (int i = 1; i <= n; ++i) {
    st.images[a->id_of("K" + std::to_string(i))] = NcElement::gen(a, "K" + std::to_string(i));
    st.images[a->id_of("K" + std::to_string(i) + "inv")] =
        NcElement::gen(a, "K" + std::to_string(i) + "inv");
  }
  for (int i = 1; i < n; ++i) {
    auto e = NcElement::gen(a, "E" + std::to_string(i));
    auto f = NcElement::gen(a, "F" + std::to_string(i));
    st.images[a->id_of("E" + std::to_string(i))] =
        (f * uq_khat(a, i, false)).scaled(QScalar::q_power(-1));
    st.images[a->id_of("F" + std::to_string(i))] =
        (uq_khat(a, i, true) * e).scaled(QScalar::q_power(1));
  }
  h.star = std::move(st);
  require_star_involutive(h);
  if (auto bad = star_violation(h, defining_relations(h)))
    throw ConventionError(std::string(kind_name(h.kind)) + ": " + *bad);
  return h;
}

}  // namespace

AlgebraHandle build_algebra(AlgebraKind kind, int n) {
  if (n < 2) throw DomainError("build_algebra: N must be at least 2");
  switch (kind) {
    case AlgebraKind::OM: return build_om(n);
    case AlgebraKind::OGL: return build_gl_like(AlgebraKind::OGL, n);
    case AlgebraKind::OU: return build_gl_like(AlgebraKind::OU, n);
    case AlgebraKind::OGLR: return build_oglr(n);
    case AlgebraKind::OT: return build_ot(n);
    case AlgebraKind::OH: return build_oh(n);
    case AlgebraKind::Uqgl: return build_uq(n);
  }
  throw InternalError("build_algebra: unknown kind");
}

// ---------------------------------------------------------------------------
// pairings
// ---------------------------------------------------------------------------

Pairing::Pairing(const AlgebraHandle* left, const AlgebraHandle* right,
                 std::map<std::pair<GenId, GenId>, QScalar> base, int law_first,
                 int law_second)
    : left_(left), right_(right), base_(std::move(base)),
      law_first_(law_first), law_second_(law_second) {
  if (!left_->hopf || !right_->hopf)
    throw DomainError("Pairing requires coalgebra structure on both sides");
}

QScalar Pairing::eval_words(const Word& u, const Word& v) const {
  if (u.empty() && v.empty()) return QScalar(1);
  if (u.empty()) return counit_word(*right_, v);
  if (v.empty()) return counit_word(*left_, u);
  auto key = std::make_pair(u, v);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  QScalar out(0);
  if (u.size() >= 2) {
    // split through the coproduct of the second argument
    Word g = u.substr(0, 1), rest = u.substr(1);
    auto it = right_cop_memo_.find(v);
    if (it == right_cop_memo_.end()) {
      std::vector<std::pair<std::pair<Word, Word>, QScalar>> terms;
      auto cp = coproduct_of_word(*right_, v);
      for (const auto& [w, c] : cp.terms())
        terms.push_back({right_->hopf->carrier->split(w), c});
      it = right_cop_memo_.emplace(v, std::move(terms)).first;
    }
    for (const auto& [legs, c] : it->second) {
      if (law_first_ == 0)
        out = out + c * eval_words(g, legs.first) * eval_words(rest, legs.second);
      else
        out = out + c * eval_words(g, legs.second) * eval_words(rest, legs.first);
    }
  } else if (v.size() >= 2) {
    // peel the last letter of the second argument through Δ of the first
    Word vp = v.substr(0, v.size() - 1), hlet = v.substr(v.size() - 1);
    GenId g = static_cast<GenId>(static_cast<unsigned char>(u[0]));
    for (const auto& [w, c] : left_->hopf->coproduct[g].terms()) {
      auto [lw, rw] = left_->hopf->carrier->split(w);
      if (law_second_ == 0)
        out = out + c * eval_words(lw, hlet) * eval_words(rw, vp);
      else
        out = out + c * eval_words(lw, vp) * eval_words(rw, hlet);
    }
  } else {
    auto it = base_.find({static_cast<GenId>(static_cast<unsigned char>(u[0])),
                          static_cast<GenId>(static_cast<unsigned char>(v[0]))});
    if (it == base_.end())
      throw InternalError("pairing base value missing for (" +
                          left_->alphabet()->name_of(static_cast<GenId>(static_cast<unsigned char>(u[0]))) +
                          ", " +
                          right_->alphabet()->name_of(static_cast<GenId>(static_cast<unsigned char>(v[0]))) +
                          ")");
    out = it->second;
  }
  memo_.emplace(std::move(key), out);
  return out;
}

QScalar Pairing::eval(const NcElement& a, const NcElement& b) const {
  QScalar out(0);
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) out = out + cu * cv * eval_words(u, v);
  return out;
}

void Pairing::solve_right_localization(GenId right_dinv, const NcElement& right_det) {
  right_dinv_ = right_dinv;
  right_det_ = right_det;
  std::vector<bool> left_known(left_->alphabet()->size(), false);
  for (const auto& [k, v] : base_) left_known[k.first] = true;
  // unknowns: <g, dinv> for left letters g whose coproduct legs stay within
  // the known block (a left localization letter is deferred to solve_left)
  std::vector<GenId> unk;
  for (GenId g = 0; g < left_->alphabet()->size(); ++g) {
    bool ok = true;
    for (const auto& [w, c] : left_->hopf->coproduct[g].terms()) {
      (void)c;
      for (unsigned char ch : w) {
        GenId base_letter = static_cast<GenId>(ch);
        // letters on both legs of the combined carrier map back to base ids
        GenId mapped = left_->hopf->carrier->is_left_letter(base_letter)
                           ? base_letter
                           : left_->hopf->carrier->from_right(base_letter);
        if (!left_known[mapped]) ok = false;
      }
    }
    if (ok) unk.push_back(g);
  }
  std::map<GenId, size_t> pos;
  for (size_t i = 0; i < unk.size(); ++i) pos[unk[i]] = i;
  QMatrix A(unk.size(), unk.size());
  std::vector<QScalar> rhs(unk.size());
  for (size_t row = 0; row < unk.size(); ++row) {
    GenId g = unk[row];
    for (const auto& [w, c] : left_->hopf->coproduct[g].terms()) {
      auto [lw, rw] = left_->hopf->carrier->split(w);
      const Word& unknown_leg = (law_second_ == 0) ? lw : rw;
      const Word& known_leg = (law_second_ == 0) ? rw : lw;
      if (unknown_leg.size() != 1)
        throw InternalError("localization solve requires single-letter coproduct legs");
      GenId ug = static_cast<GenId>(static_cast<unsigned char>(unknown_leg[0]));
      auto it = pos.find(ug);
      if (it == pos.end())
        throw InternalError("localization solve: unexpected coproduct leg letter");
      QScalar coeff(0);
      for (const auto& [dv, dc] : right_det.terms())
        coeff = coeff + dc * eval_words(known_leg, dv);
      A.at(row, it->second) = A.at(row, it->second) + c * coeff;
    }
    rhs[row] = left_->hopf->counit[g];
  }
  auto sol = solve(A, rhs);
  if (!sol)
    throw InconsistencyError("localization pairing system has no unique solution");
  for (size_t i = 0; i < unk.size(); ++i) base_[{unk[i], right_dinv}] = (*sol)[i];
  memo_.clear();
}

void Pairing::solve_left_localization(GenId left_dinv, const NcElement& left_det) {
  std::vector<bool> right_known(right_->alphabet()->size(), false);
  for (const auto& [k, v] : base_) right_known[k.second] = true;
  std::vector<GenId> unk;
  for (GenId hID = 0; hID < right_->alphabet()->size(); ++hID) {
    bool ok = true;
    for (const auto& [w, c] : right_->hopf->coproduct[hID].terms()) {
      (void)c;
      for (unsigned char ch : w) {
        GenId base_letter = static_cast<GenId>(ch);
        GenId mapped = right_->hopf->carrier->is_left_letter(base_letter)
                           ? base_letter
                           : right_->hopf->carrier->from_right(base_letter);
        if (!right_known[mapped]) ok = false;
      }
    }
    if (ok) unk.push_back(hID);
  }
  std::map<GenId, size_t> pos;
  for (size_t i = 0; i < unk.size(); ++i) pos[unk[i]] = i;
  QMatrix A(unk.size(), unk.size());
  std::vector<QScalar> rhs(unk.size());
  for (size_t row = 0; row < unk.size(); ++row) {
    GenId hID = unk[row];
    for (const auto& [w, c] : right_->hopf->coproduct[hID].terms()) {
      auto [lw, rw] = right_->hopf->carrier->split(w);
      // <u · dinv, h> = Σ <u, h_(1)><dinv, h_(2)>  (law A)  /  flipped (law B)
      const Word& unknown_leg = (law_first_ == 0) ? rw : lw;
      const Word& known_leg = (law_first_ == 0) ? lw : rw;
      if (unknown_leg.size() != 1)
        throw InternalError("localization solve requires single-letter coproduct legs");
      GenId ug = static_cast<GenId>(static_cast<unsigned char>(unknown_leg[0]));
      auto it = pos.find(ug);
      if (it == pos.end())
        throw InternalError("localization solve: unexpected coproduct leg letter");
      QScalar coeff(0);
      for (const auto& [dv, dc] : left_det.terms())
        coeff = coeff + dc * eval_words(dv, known_leg);
      A.at(row, it->second) = A.at(row, it->second) + c * coeff;
    }
    rhs[row] = right_->hopf->counit[hID];
  }
  auto sol = solve(A, rhs);
  if (!sol)
    throw InconsistencyError("localization pairing system has no unique solution");
  for (size_t i = 0; i < unk.size(); ++i) base_[{left_dinv, unk[i]}] = (*sol)[i];
  memo_.clear();
  // cross-argument consistency: <dinv_L, det_R · dinv_R> must equal 1
  if (right_dinv_ && right_det_) {
    auto rd = NcElement::gen(right_->alphabet(), *right_dinv_);
    QScalar chk = eval(NcElement::gen(left_->alphabet(), left_dinv), *right_det_ * rd);
    if (!(chk == QScalar(1)))
      throw ConventionError("pairing localization is inconsistent across the two arguments");
  }
}

Pairing pairing_r(const AlgebraHandle& gl) {
  if (gl.kind != AlgebraKind::OGL)
    throw DomainError("pairing_r expects the quantized GL algebra");
  int n = gl.n;
  const auto& a = gl.alphabet();
  auto det = quantum_det(gl, 'X', 1);
  GenId dinv = a->id_of("Dinv");
  auto rq = r_matrix_qm(n);
  std::string last_err;
  for (int mat = 0; mat < 2; ++mat) {
    std::map<std::pair<GenId, GenId>, QScalar> base;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
          for (int l = 1; l <= n; ++l) {
            QScalar val = (mat == 0) ? rq.at(idx2(i, k, n), idx2(j, l, n))
                                     : rq.at(idx2(k, i, n), idx2(l, j, n));
            base[{a->id_of(mat_name('X', i, j)), a->id_of(mat_name('X', k, l))}] = val;
          }
    for (int law = 0; law < 2; ++law) {
      try {
        // the determinant letter's row and column are forced by the
        // determinant expression; compute them from the generator base
        GenId detg = a->id_of("Det");
        auto full = base;
        {
          Pairing p0(&gl, &gl, base, law, law);
          for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
              GenId g = a->id_of(mat_name('X', i, j));
              full[{detg, g}] = p0.eval(det, gl.gen(mat_name('X', i, j)));
              full[{g, detg}] = p0.eval(gl.gen(mat_name('X', i, j)), det);
            }
          full[{detg, detg}] = p0.eval(det, det);
        }
        Pairing p(&gl, &gl, full, law, law);
        p.solve_right_localization(dinv, NcElement::gen(a, detg));
        p.solve_left_localization(dinv, NcElement::gen(a, detg));
        bool ok = true;
        for (int i = 1; i <= n && ok; ++i)
          for (int j = 1; j <= n && ok; ++j) {
            QScalar want = (i == j) ? QScalar::q_power(-1) : QScalar(0);
            if (!(p.eval(det, gl.gen(mat_name('X', i, j))) == want)) ok = false;
          }
        if (!ok) continue;
        p.set_convention(std::string("r-form: base matrix ") + (mat == 0 ? "R" : "R21") +
                         ", splitting laws (" + (law == 0 ? "A,A" : "B,B") +
                         "); pinned by r(det_q, X_ij) = q^-1 delta_ij");
        return p;
      } catch (const InconsistencyError& e) {
        last_err = e.what();
        continue;
      } catch (const ConventionError& e) {
        last_err = e.what();
        continue;
      }
    }
  }
  throw ConventionError("r-form: no base/law convention reproduces r(det_q, X_ij) = q^-1 delta_ij" +
                        (last_err.empty() ? std::string() : "; last failure: " + last_err));
}

QScalar pairing_r_inv(const Pairing& r, const AlgebraHandle& gl,
                      const NcElement& a, const NcElement& b) {
  return r.eval(a, gl.nf(antipode_apply(gl, b)));
}

namespace {

// lhs entry (a,c),(b,d):  (T^{-1})_ab ▷ Z_cd  with  x ▷ Z_cd = Σ Z_gh p(x, (U*)_cg U_hd)
bool coadjoint_identity_holds(const Pairing& p, const AlgebraHandle& ot,
                              const AlgebraHandle& ou, const AlgebraHandle& oh,
                              const LeggedMatrix& t_inv, const LeggedMatrix& mu) {
  int n = ot.n;
  const auto& ah = oh.alphabet();
  auto um = generator_matrix(ou, 'U');
  auto zm = generator_matrix(oh, 'Z');
  auto r = r_matrix(ah, n);
  auto rinv = r_matrix_inv(ah, n);
  auto rhs = r * zm.leg_embed(2, {2}) * rinv;
  for (int aI = 0; aI < n; ++aI)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          auto x = t_inv.entry(aI, b);
          auto acc = NcElement::zero(ah);
          if (!x.is_zero()) {
            for (int g = 0; g < n; ++g)
              for (int hI = 0; hI < n; ++hI) {
                QScalar s = p.eval(x, mu.entry(c, g) * um.entry(hI, d));
                if (!s.is_zero())
                  acc = acc + NcElement::gen(ah, mat_name('Z', g + 1, hI + 1)).scaled(s);
              }
          }
          auto want = rhs.entry(static_cast<size_t>(aI) * n + c,
                                static_cast<size_t>(b) * n + d);
          if (!oh.is_zero(acc - want)) return false;
        }
  return true;
}

}  // namespace

Pairing pairing_p(const AlgebraHandle& ot, const AlgebraHandle& ou,
                  const AlgebraHandle& oh) {
  if (ot.kind != AlgebraKind::OT || ou.kind != AlgebraKind::OU || oh.kind != AlgebraKind::OH)
    throw DomainError("pairing_p expects the triangular, unitary, and hermitian algebras");
  int n = ot.n;
  const auto& at = ot.alphabet();
  const auto& au = ou.alphabet();
  auto rq = r_matrix_qm(n);
  auto rinvq = r_matrix_inv_qm(n);
  std::map<std::pair<GenId, GenId>, QScalar> base;
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= n; ++l) {
      GenId ukl = au->id_of(mat_name('U', k, l));
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          base[{at->id_of(ot_name(i, j)), ukl}] = rq.at(idx2(i, k, n), idx2(j, l, n));
          base[{at->id_of(ot_name(j, i)), ukl}] = rinvq.at(idx2(k, j, n), idx2(l, i, n));
        }
        base[{at->id_of(ot_diag_name(i, false)), ukl}] = rq.at(idx2(i, k, n), idx2(i, l, n));
        base[{at->id_of(ot_diag_name(i, true)), ukl}] =
            (k == l) ? QScalar::q_power(k == i ? 1 : 0) : QScalar(0);
      }
    }
  auto det_u = quantum_det(ou, 'U', 1);
  GenId dinv_u = au->id_of("Dinv");
  // the inverse of the upper generator matrix, reused across candidates
  LeggedMatrix t_inv(at, 1, n);
  for (int i = 1; i <= n; ++i) {
    t_inv.add(i - 1, i - 1, NcElement::gen(at, ot_diag_name(i, true)));
    for (int j = i + 1; j <= n; ++j)
      t_inv.add(i - 1, j - 1, ot.hopf->antipode[at->id_of(ot_name(i, j))]);
  }
  auto mu = antipode_matrix(ou, 'U');
  std::string last_err;
  for (int lf = 0; lf < 2; ++lf)
    for (int ls = 0; ls < 2; ++ls) {
      try {
        GenId det_g = au->id_of("Det");
        auto full = base;
        {
          Pairing p0(&ot, &ou, base, lf, ls);
          for (GenId g = 0; g < at->size(); ++g)
            full[{g, det_g}] = p0.eval(NcElement::gen(at, g), det_u);
        }
        Pairing p(&ot, &ou, full, lf, ls);
        p.solve_right_localization(dinv_u, NcElement::gen(au, det_g));
        if (!coadjoint_identity_holds(p, ot, ou, oh, t_inv, mu)) continue;
        p.set_convention(std::string("triangular dual pairing: laws (first ") +
                         (lf == 0 ? "A" : "B") + ", second " + (ls == 0 ? "A" : "B") +
                         "); pinned by the coadjoint action identity and p(g, det_q·Dinv) = eps(g)");
        return p;
      } catch (const InconsistencyError& e) {
        last_err = e.what();
        continue;
      } catch (const ConventionError& e) {
        last_err = e.what();
        continue;
      }
    }
  throw ConventionError("triangular dual pairing: no law convention satisfies the coadjoint action identity" +
                        (last_err.empty() ? std::string() : "; last failure: " + last_err));
}

// ---------------------------------------------------------------------------
// structure maps
// ---------------------------------------------------------------------------

GenImages cholesky_map(const AlgebraHandle& oh, const AlgebraHandle& ot) {
  if (oh.kind != AlgebraKind::OH || ot.kind != AlgebraKind::OT)
    throw DomainError("cholesky_map expects the hermitian and triangular algebras");
  int n = oh.n;
  const auto& at = ot.alphabet();
  auto up = ot_upper_matrix(at, n);
  auto lo = ot_lower_matrix(at, n);
  auto t_star = triangular_inverse(
      ot, lo, [&](int i) { return NcElement::gen(at, ot_diag_name(i + 1, false)); },
      false);
  GenImages images{oh.alphabet(), {}};
  images.images.assign(oh.alphabet()->size(), NcElement::zero(at));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      auto acc = NcElement::zero(at);
      for (int k = 1; k <= n; ++k)
        acc = acc + t_star.entry(i - 1, k - 1) * up.entry(k - 1, j - 1);
      images.images[oh.alphabet()->id_of(mat_name('Z', i, j))] = ot.nf(acc);
    }
  for (const auto& rel : defining_relations(oh)) {
    if (!ot.is_zero(substitute(images, rel)))
      throw ConventionError("cholesky substitution does not preserve the relation " + rel.str());
  }
  return images;
}

CoactAd coact_ad(const AlgebraHandle& oh, const AlgebraHandle& ou) {
  if (oh.kind != AlgebraKind::OH || ou.kind != AlgebraKind::OU)
    throw DomainError("coact_ad expects the hermitian and unitary algebras");
  int n = oh.n;
  CoactAd out{std::make_shared<TensorCarrier>(oh.alphabet(), ou.alphabet()),
              GenImages{oh.alphabet(), {}}};
  auto mu = antipode_matrix(ou, 'U');
  auto um = generator_matrix(ou, 'U');
  out.images.images.assign(oh.alphabet()->size(),
                           NcElement::zero(out.carrier->combined()));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      auto acc = NcElement::zero(out.carrier->combined());
      for (int g = 1; g <= n; ++g)
        for (int h = 1; h <= n; ++h)
          acc = acc + out.carrier->tensor(
                          NcElement::gen(oh.alphabet(), mat_name('Z', g, h)),
                          ou.nf(mu.entry(i - 1, g - 1) * um.entry(h - 1, j - 1)));
      out.images.images[oh.alphabet()->id_of(mat_name('Z', i, j))] = acc;
    }
  // counit law: (id ⊗ eps) ∘ coact = id
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      auto acc = NcElement::zero(oh.alphabet());
      const auto& img = out.images.images[oh.alphabet()->id_of(mat_name('Z', i, j))];
      for (const auto& [w, c] : img.terms()) {
        auto [lw, rw] = out.carrier->split(w);
        acc = acc + NcElement::monomial(oh.alphabet(), lw, c * counit_word(ou, rw));
      }
      if (!oh.is_zero(acc - oh.gen(mat_name('Z', i, j))))
        throw ConventionError("coadjoint coaction violates the counit law at Z_" +
                              std::to_string(i) + std::to_string(j));
    }
  return out;
}

QrMap qr_map(const AlgebraHandle& oglr, const AlgebraHandle& ou,
             const AlgebraHandle& ot) {
  if (oglr.kind != AlgebraKind::OGLR)
    throw DomainError("qr_map expects the realified GL algebra");
  int n = oglr.n;
  const auto& ag = oglr.alphabet();
  const auto& au = ou.alphabet();
  const auto& at = ot.alphabet();
  auto up = ot_upper_matrix(at, n);
  auto lo = ot_lower_matrix(at, n);
  // projections
  GenImages pi_u{ag, std::vector<NcElement>(ag->size(), NcElement::zero(au))};
  GenImages pi_t{ag, std::vector<NcElement>(ag->size(), NcElement::zero(at))};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      pi_u.images[ag->id_of(mat_name('X', i, j))] = NcElement::gen(au, mat_name('U', i, j));
      pi_u.images[ag->id_of(mat_name('Y', i, j))] = NcElement::gen(au, mat_name('U', i, j));
      pi_t.images[ag->id_of(mat_name('X', i, j))] = up.entry(i - 1, j - 1);
      pi_t.images[ag->id_of(mat_name('Y', i, j))] = lo.entry(i - 1, j - 1);
    }
  pi_u.images[ag->id_of("DetX")] = NcElement::gen(au, "Det");
  pi_u.images[ag->id_of("DetY")] = NcElement::gen(au, "Det");
  pi_u.images[ag->id_of("DinvX")] = NcElement::gen(au, "Dinv");
  pi_u.images[ag->id_of("DinvY")] = NcElement::gen(au, "Dinv");
  auto diag_word = [&](bool inv) {
    auto acc = NcElement::one(at);
    for (int i = 1; i <= n; ++i) acc = acc * NcElement::gen(at, ot_diag_name(i, inv));
    return acc;
  };
  pi_t.images[ag->id_of("DetX")] = diag_word(false);
  pi_t.images[ag->id_of("DetY")] = diag_word(true);
  pi_t.images[ag->id_of("DinvX")] = diag_word(true);
  pi_t.images[ag->id_of("DinvY")] = diag_word(false);
  for (const auto& rel : defining_relations(oglr)) {
    if (!ou.is_zero(substitute(pi_u, rel)))
      throw ConventionError("unitary projection does not preserve the relation " + rel.str());
    if (!ot.is_zero(substitute(pi_t, rel)))
      throw ConventionError("triangular projection does not preserve the relation " + rel.str());
  }
  QrMap out{std::make_shared<TensorCarrier>(au, at), GenImages{ag, {}}};
  out.images.images.assign(ag->size(), NcElement::zero(out.carrier->combined()));
  for (GenId g = 0; g < ag->size(); ++g) {
    auto acc = NcElement::zero(out.carrier->combined());
    for (const auto& [w, c] : oglr.hopf->coproduct[g].terms()) {
      auto [lw, rw] = oglr.hopf->carrier->split(w);
      auto uimg = ou.nf(substitute(pi_u, NcElement::monomial(ag, lw, QScalar(1))));
      auto timg = ot.nf(substitute(pi_t, NcElement::monomial(ag, rw, QScalar(1))));
      acc = acc + out.carrier->tensor(uimg, timg).scaled(c);
    }
    out.images.images[g] = acc;
  }
  return out;
}

GenImages uq_iso(const AlgebraHandle& uq, const AlgebraHandle& ot) {
  if (uq.kind != AlgebraKind::Uqgl || ot.kind != AlgebraKind::OT)
    throw DomainError("uq_iso expects the enveloping and triangular algebras");
  int n = uq.n;
  const auto& a = uq.alphabet();
  const auto& at = ot.alphabet();
  QScalar qmq = QScalar::q_power(1) - QScalar::q_power(-1);
  GenImages im{a, std::vector<NcElement>(a->size(), NcElement::zero(at))};
  for (int i = 1; i <= n; ++i) {
    im.images[a->id_of("K" + std::to_string(i))] = NcElement::gen(at, ot_diag_name(i, true));
    im.images[a->id_of("K" + std::to_string(i) + "inv")] =
        NcElement::gen(at, ot_diag_name(i, false));
  }
  for (int i = 1; i < n; ++i) {
    im.images[a->id_of("E" + std::to_string(i))] =
        (NcElement::gen(at, ot_diag_name(i + 1, false)) *
         NcElement::gen(at, ot_name(i + 1, i)))
            .scaled(qmq.inv());
    im.images[a->id_of("F" + std::to_string(i))] =
        (NcElement::gen(at, ot_name(i, i + 1)) *
         NcElement::gen(at, ot_diag_name(i + 1, true)))
            .scaled(-qmq.inv());
  }
  auto rel = defining_relations(uq);
  for (size_t i = 0; i < rel.size(); ++i) {
    if (!ot.is_zero(substitute(im, rel[i])))
      throw ConventionError("triangular realization does not preserve relation #" +
                            std::to_string(i) + ": " + rel[i].str());
  }
  return im;
}

AlgebraHandle& QglCtx::get(AlgebraKind k) {
  auto it = cache_.find(k);
  if (it == cache_.end())
    it = cache_.emplace(k, std::make_shared<AlgebraHandle>(build_algebra(k, n_))).first;
  return *it->second;
}

}  // namespace qgl
