#include "qgl/repth.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

#include "qgl/errors.hpp"

namespace qgl {

namespace {

QMatrix kron(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      const QScalar& s = a.at(i, j);
      if (s.is_zero()) continue;
      for (size_t k = 0; k < b.rows(); ++k)
        for (size_t l = 0; l < b.cols(); ++l) {
          const QScalar& t = b.at(k, l);
          if (!t.is_zero()) out.at(i * b.rows() + k, j * b.cols() + l) = s * t;
        }
    }
  return out;
}

QMatrix mat_of_word(const IrrepModule& m, const Word& w) {
  QMatrix out = QMatrix::identity(m.dim);
  for (char ch : w) out = out * m.ot_act[static_cast<GenId>(ch)];
  return out;
}

// exact rank tracker: stored rows have 1 at their own pivot and 0 at every
// other stored pivot, so forward reduction is order-independent
struct RankTracker {
  std::vector<std::vector<QScalar>> rows;
  std::vector<size_t> piv;

  bool add(std::vector<QScalar> v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      const QScalar& f = v[piv[r]];
      if (f.is_zero()) continue;
      QScalar c = f;
      for (size_t j = 0; j < v.size(); ++j) v[j] = v[j] - rows[r][j] * c;
    }
    size_t p = v.size();
    for (size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) {
        p = j;
        break;
      }
    if (p == v.size()) return false;
    QScalar inv = v[p].inv();
    for (auto& c : v) c = c * inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      const QScalar f = rows[r][p];
      if (f.is_zero()) continue;
      for (size_t j = 0; j < v.size(); ++j)
        rows[r][j] = rows[r][j] - v[j] * f;
    }
    piv.push_back(p);
    rows.push_back(std::move(v));
    return true;
  }
};

std::string wt_str(const std::vector<long>& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i)
    s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// Weight
// ---------------------------------------------------------------------------

bool Weight::dominant() const {
  for (size_t i = 0; i + 1 < m.size(); ++i)
    if (m[i] < m[i + 1]) return false;
  return true;
}

long Weight::sum() const { return std::accumulate(m.begin(), m.end(), 0L); }

bool Weight::operator<(const Weight& o) const {
  if (m != o.m) return m < o.m;
  return shift < o.shift;
}

std::string Weight::str() const {
  std::string s = wt_str(m);
  if (shift != 0) s += "+" + shift.get_str() + "*(1..1)";
  return s;
}

// ---------------------------------------------------------------------------
// IrrepModule
// ---------------------------------------------------------------------------

QMatrix IrrepModule::khat(int i) const { return actK[i - 1] * actKinv[i]; }
QMatrix IrrepModule::khat_inv(int i) const { return actKinv[i - 1] * actK[i]; }

IrrepModule vector_rep(const AlgebraHandle& ot) {
  const int n = ot.n;
  IrrepModule m;
  m.n = n;
  m.dim = static_cast<size_t>(n);
  m.highest = Weight{std::vector<long>(n, 0), Rat(0)};
  m.highest.m[0] = 1;
  for (int k = 0; k < n; ++k) {
    std::vector<long> w(n, 0);
    w[k] = 1;
    m.wt.push_back(std::move(w));
  }
  for (int i = 1; i < n; ++i) {
    QMatrix e(n, n), f(n, n);
    e.at(i - 1, i) = QScalar(1);
    f.at(i, i - 1) = QScalar(1);
    m.actE.push_back(std::move(e));
    m.actF.push_back(std::move(f));
  }
  for (int i = 1; i <= n; ++i) {
    QMatrix k = QMatrix::identity(n), ki = QMatrix::identity(n);
    k.at(i - 1, i - 1) = QScalar::q_power(1);
    ki.at(i - 1, i - 1) = QScalar::q_power(-1);
    m.actK.push_back(std::move(k));
    m.actKinv.push_back(std::move(ki));
  }

  // triangular letters through the R-matrix: the upper family acts by
  // R[(i,k),(j,l)], the lower family by R21^{-1}[(i,k),(j,l)]
  const auto& alpha = ot.alphabet();
  QMatrix r = r_matrix_qm(n), rinv = r_matrix_inv_qm(n);
  auto upper = [&](int i, int j) {
    QMatrix a(n, n);
    for (int k = 1; k <= n; ++k)
      for (int l = 1; l <= n; ++l)
        a.at(k - 1, l - 1) =
            r.at((i - 1) * n + (k - 1), (j - 1) * n + (l - 1));
    return a;
  };
  auto lower = [&](int i, int j) {
    QMatrix a(n, n);
    for (int k = 1; k <= n; ++k)
      for (int l = 1; l <= n; ++l)
        a.at(k - 1, l - 1) =
            rinv.at((k - 1) * n + (i - 1), (l - 1) * n + (j - 1));
    return a;
  };
  m.ot_act.resize(alpha->size());
  for (GenId g = 0; g < static_cast<GenId>(alpha->size()); ++g) {
    const std::string& name = alpha->name_of(g);
    if (name[1] == 'p') {
      int i = name[2] - '0', j = name[3] - '0';
      m.ot_act[g] = upper(i, j);
    } else if (name[1] == 'm') {
      int i = name[2] - '0', j = name[3] - '0';
      m.ot_act[g] = lower(i, j);
    } else {
      int i = name[1] - '0';
      bool inv = name.size() > 2;
      m.ot_act[g] = inv ? lower(i, i) : upper(i, i);
    }
  }
  return m;
}

IrrepModule module_tensor(const AlgebraHandle& ot, const IrrepModule& a,
                          const IrrepModule& b) {
  const int n = a.n;
  IrrepModule m;
  m.n = n;
  m.dim = a.dim * b.dim;
  m.highest = Weight{std::vector<long>(n, 0), Rat(0)};  // not a highest-weight module
  for (size_t u = 0; u < a.dim; ++u)
    for (size_t v = 0; v < b.dim; ++v) {
      std::vector<long> w(n);
      for (int i = 0; i < n; ++i) w[i] = a.wt[u][i] + b.wt[v][i];
      m.wt.push_back(std::move(w));
    }
  QMatrix ia = QMatrix::identity(a.dim), ib = QMatrix::identity(b.dim);
  for (int i = 1; i < n; ++i) {
    m.actE.push_back(kron(a.actE[i - 1], ib) + kron(a.khat(i), b.actE[i - 1]));
    m.actF.push_back(kron(a.actF[i - 1], b.khat_inv(i)) + kron(ia, b.actF[i - 1]));
  }
  for (int i = 1; i <= n; ++i) {
    m.actK.push_back(kron(a.actK[i - 1], b.actK[i - 1]));
    m.actKinv.push_back(kron(a.actKinv[i - 1], b.actKinv[i - 1]));
  }

  // triangular letters: tensor legs are exchanged relative to the coproduct
  const auto& alpha = ot.alphabet();
  const auto& hopf = *ot.hopf;
  m.ot_act.resize(alpha->size());
  for (GenId g = 0; g < static_cast<GenId>(alpha->size()); ++g) {
    QMatrix acc(m.dim, m.dim);
    for (const auto& [w, c] : hopf.coproduct[g].terms()) {
      auto [lw, rw] = hopf.carrier->split(w);
      acc = acc + kron(mat_of_word(a, rw), mat_of_word(b, lw)).scaled(c);
    }
    m.ot_act[g] = std::move(acc);
  }
  return m;
}

QMatrix hecke_op(int n, int i, int m) {
  if (i < 1 || i > m - 1) throw DomainError("hecke_op position out of range");
  size_t pre = 1, post = 1;
  for (int t = 1; t < i; ++t) pre *= static_cast<size_t>(n);
  for (int t = i + 1; t < m; ++t) post *= static_cast<size_t>(n);
  return kron(kron(QMatrix::identity(pre), r_hat_qm(n)), QMatrix::identity(post));
}

// ---------------------------------------------------------------------------
// irrep construction
// ---------------------------------------------------------------------------

namespace {

// twist a module by the s-th power of the determinant character
void twist_module(const AlgebraHandle& ot, IrrepModule& m, long s) {
  if (s == 0) return;
  QScalar up = QScalar::q_power(-s), down = QScalar::q_power(s);
  const auto& alpha = ot.alphabet();
  for (GenId g = 0; g < static_cast<GenId>(alpha->size()); ++g) {
    const std::string& name = alpha->name_of(g);
    bool lowers = name[1] == 'm' || (name[1] != 'p' && name.size() > 2);
    m.ot_act[g] = m.ot_act[g].scaled(lowers ? down : up);
  }
  for (int i = 0; i < m.n; ++i) {
    m.actK[i] = m.actK[i].scaled(down);
    m.actKinv[i] = m.actKinv[i].scaled(up);
  }
  for (auto& w : m.wt)
    for (auto& x : w) x += s;
}

}  // namespace

IrrepModule irrep(const AlgebraHandle& ot, const Weight& lambda) {
  const int n = ot.n;
  if (lambda.n() != n) throw DomainError("weight length does not match N");
  if (!lambda.dominant()) throw DomainError("weight is not dominant");
  if (lambda.shift.get_den() != 1)
    throw DomainError("fractional weight shift is not realizable over the exact "
                      "scalar field");

  std::vector<long> lam = lambda.m;
  long c = lambda.shift.get_num().get_si();
  for (auto& x : lam) x += c;
  const long s = lam[n - 1];
  std::vector<long> lp(lam);
  for (auto& x : lp) x -= s;
  const long deg = std::accumulate(lp.begin(), lp.end(), 0L);

  IrrepModule m;
  if (deg == 0) {
    m.n = n;
    m.dim = 1;
    m.wt.push_back(std::vector<long>(n, 0));
    for (int i = 1; i < n; ++i) {
      m.actE.emplace_back(1, 1);
      m.actF.emplace_back(1, 1);
    }
    for (int i = 1; i <= n; ++i) {
      m.actK.push_back(QMatrix::identity(1));
      m.actKinv.push_back(QMatrix::identity(1));
    }
    const auto& alpha = ot.alphabet();
    m.ot_act.resize(alpha->size());
    for (GenId g = 0; g < static_cast<GenId>(alpha->size()); ++g) {
      const std::string& name = alpha->name_of(g);
      QMatrix a(1, 1);
      if (name[1] != 'p' && name[1] != 'm') a.at(0, 0) = QScalar(1);
      m.ot_act[g] = std::move(a);
    }
  } else {
    IrrepModule v = vector_rep(ot);
    IrrepModule amb = v;
    for (long d = 1; d < deg; ++d) amb = module_tensor(ot, amb, v);

    std::vector<size_t> ws;
    for (size_t idx = 0; idx < amb.dim; ++idx)
      if (amb.wt[idx] == lp) ws.push_back(idx);
    if (ws.empty())
      throw InternalError("empty weight space for partition " + wt_str(lp));

    // highest-weight vectors: intersect the kernels of all raising operators
    QMatrix stack(static_cast<size_t>(n - 1) * amb.dim, ws.size());
    for (int i = 0; i < n - 1; ++i)
      for (size_t j = 0; j < ws.size(); ++j)
        for (size_t r = 0; r < amb.dim; ++r)
          stack.at(static_cast<size_t>(i) * amb.dim + r, j) =
              amb.actE[i].at(r, ws[j]);
    QMatrix ker = kernel_basis(stack);
    if (ker.cols() == 0)
      throw InternalError("no highest-weight vector of weight " + wt_str(lp));

    std::vector<QScalar> xi(amb.dim, QScalar(0));
    for (size_t j = 0; j < ws.size(); ++j) xi[ws[j]] = ker.at(j, 0);

    // close the cyclic submodule under the lowering operators, breadth-first
    std::vector<std::vector<QScalar>> basis;
    RankTracker rank;
    std::queue<size_t> todo;
    rank.add(xi);
    basis.push_back(std::move(xi));
    todo.push(0);
    while (!todo.empty()) {
      size_t u = todo.front();
      todo.pop();
      for (int i = 0; i < n - 1; ++i) {
        std::vector<QScalar> img(amb.dim, QScalar(0));
        for (size_t r = 0; r < amb.dim; ++r) {
          QScalar acc(0);
          for (size_t cidx = 0; cidx < amb.dim; ++cidx) {
            const QScalar& f = amb.actF[i].at(r, cidx);
            if (!f.is_zero() && !basis[u][cidx].is_zero()) acc += f * basis[u][cidx];
          }
          img[r] = acc;
        }
        if (rank.add(img)) {
          basis.push_back(std::move(img));
          todo.push(basis.size() - 1);
        }
      }
    }

    m.n = n;
    m.dim = basis.size();

    // record weights; every basis vector is weight-homogeneous
    for (const auto& v2 : basis) {
      const std::vector<long>* w = nullptr;
      for (size_t idx = 0; idx < amb.dim; ++idx)
        if (!v2[idx].is_zero()) {
          if (!w)
            w = &amb.wt[idx];
          else if (*w != amb.wt[idx])
            throw InternalError("submodule basis vector mixes weights");
        }
      m.wt.push_back(*w);
    }

    // coordinates: an invertible row selection of the basis matrix
    QMatrix bm(amb.dim, m.dim);
    for (size_t j = 0; j < m.dim; ++j)
      for (size_t r = 0; r < amb.dim; ++r) bm.at(r, j) = basis[j][r];
    RrefResult rowsel = rref(bm.transpose());
    if (rowsel.pivots.size() != m.dim)
      throw InternalError("submodule basis is not independent");
    QMatrix sub(m.dim, m.dim);
    for (size_t a2 = 0; a2 < m.dim; ++a2)
      for (size_t j = 0; j < m.dim; ++j) sub.at(a2, j) = bm.at(rowsel.pivots[a2], j);
    QMatrix subinv = inverse(sub);

    auto restrict_action = [&](const QMatrix& amb_act, const char* what,
                               bool convention) {
      QMatrix out(m.dim, m.dim);
      for (size_t j = 0; j < m.dim; ++j) {
        std::vector<QScalar> y(amb.dim, QScalar(0));
        for (size_t r = 0; r < amb.dim; ++r) {
          QScalar acc(0);
          for (size_t cidx = 0; cidx < amb.dim; ++cidx) {
            const QScalar& f = amb_act.at(r, cidx);
            if (!f.is_zero() && !bm.at(cidx, j).is_zero()) acc += f * bm.at(cidx, j);
          }
          y[r] = acc;
        }
        std::vector<QScalar> coords(m.dim, QScalar(0));
        for (size_t a2 = 0; a2 < m.dim; ++a2) {
          QScalar acc(0);
          for (size_t t = 0; t < m.dim; ++t) acc += subinv.at(a2, t) * y[rowsel.pivots[t]];
          coords[a2] = acc;
        }
        // exactness: the image must lie in the submodule
        for (size_t r = 0; r < amb.dim; ++r) {
          QScalar acc(0);
          for (size_t a2 = 0; a2 < m.dim; ++a2) acc += bm.at(r, a2) * coords[a2];
          if (!(acc == y[r])) {
            std::string msg =
                std::string(what) + " does not preserve the extracted module";
            if (convention) throw ConventionError(msg);
            throw InternalError(msg);
          }
        }
        for (size_t a2 = 0; a2 < m.dim; ++a2) out.at(a2, j) = coords[a2];
      }
      return out;
    };

    for (int i = 0; i < n - 1; ++i) {
      m.actE.push_back(restrict_action(amb.actE[i], "raising operator", false));
      m.actF.push_back(restrict_action(amb.actF[i], "lowering operator", false));
    }
    for (int i = 0; i < n; ++i) {
      m.actK.push_back(restrict_action(amb.actK[i], "torus generator", false));
      m.actKinv.push_back(
          restrict_action(amb.actKinv[i], "torus generator", false));
    }
    const auto& alpha = ot.alphabet();
    m.ot_act.resize(alpha->size());
    for (GenId g = 0; g < static_cast<GenId>(alpha->size()); ++g)
      m.ot_act[g] =
          restrict_action(amb.ot_act[g], "triangular letter", true);
  }

  twist_module(ot, m, s);
  m.highest = lambda;
  return m;
}

QMatrix act_ot(const IrrepModule& m, const AlgebraHandle& ot, const NcElement& x) {
  (void)ot;
  QMatrix out(m.dim, m.dim);
  for (const auto& [w, c] : x.terms()) out = out + mat_of_word(m, w).scaled(c);
  return out;
}

std::map<std::vector<long>, size_t> weight_mults(const IrrepModule& m) {
  std::map<std::vector<long>, size_t> out;
  for (const auto& w : m.wt) ++out[w];
  return out;
}

QScalar qdim(const IrrepModule& m) {
  QScalar out(0);
  for (const auto& w : m.wt) {
    long e = 0;
    for (int i = 0; i < m.n; ++i) e += (m.n - i) * w[i];
    out += QScalar::q_power(-2 * e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// central characters and the omega state
// ---------------------------------------------------------------------------

QScalar central_character(const CasimirCtx& ctx, const AlgebraHandle& ot,
                          const NcElement& z, const Weight& lambda,
                          const IrrepModule* module) {
  const int n = ctx.oh->n;
  std::vector<QScalar> vals;
  long c = lambda.shift.get_num().get_si();
  if (lambda.shift.get_den() != 1)
    throw DomainError("fractional weight shift is not realizable over the exact "
                      "scalar field");
  for (int i = 0; i < n; ++i) vals.push_back(QScalar::q_power(-2 * (lambda.m[i] + c)));
  DiagPoly image = DiagPoly::zero(n);
  bool cached = false;
  for (size_t k = 0; k < ctx.C.size(); ++k)
    if (z == ctx.C[k]) {
      image = ctx.hcC[k];
      cached = true;
      break;
    }
  if (!cached) image = hc(ctx, z);
  QScalar value = image.eval_at(vals);

  IrrepModule local;
  const IrrepModule* mod = module;
  if (!mod) {
    local = irrep(ot, lambda);
    mod = &local;
  }
  QMatrix a = act_ot(*mod, ot, ot.nf(substitute(ctx.chol, z)));
  QMatrix want = QMatrix::identity(mod->dim).scaled(value);
  if (!(a == want))
    throw InconsistencyError("module action of the central element does not "
                             "match the evaluated image at weight " + lambda.str());
  return value;
}

QMatrix b_density(const CasimirCtx& ctx, const AlgebraHandle& ot,
                  const IrrepModule& m) {
  QMatrix b = QMatrix::identity(m.dim);
  for (int k = 1; k <= ctx.oh->n; ++k)
    b = b * act_ot(m, ot, ot.nf(substitute(ctx.chol, b_element(*ctx.oh, k))));
  return b;
}

namespace {

QScalar trace_of(const QMatrix& a) {
  QScalar t(0);
  for (size_t i = 0; i < a.rows(); ++i) t += a.at(i, i);
  return t;
}

}  // namespace

QScalar omega_state(const CasimirCtx& ctx, const AlgebraHandle& ot,
                    const IrrepModule& m, const NcElement& x) {
  QMatrix b = b_density(ctx, ot, m);
  QScalar den = trace_of(b);
  if (den.is_zero()) throw DomainError("density has zero trace");
  return trace_of(b * act_ot(m, ot, x)) / den;
}

// ---------------------------------------------------------------------------
// verifications
// ---------------------------------------------------------------------------

namespace {

QMatrix act_uq(const IrrepModule& m, const AlgebraHandle& uq, const NcElement& x) {
  const auto& alpha = uq.alphabet();
  auto letter = [&](GenId g) -> const QMatrix& {
    const std::string& name = alpha->name_of(g);
    int i = name[1] - '0';
    if (name[0] == 'E') return m.actE[i - 1];
    if (name[0] == 'F') return m.actF[i - 1];
    return name.size() > 2 ? m.actKinv[i - 1] : m.actK[i - 1];
  };
  QMatrix out(m.dim, m.dim);
  for (const auto& [w, c] : x.terms()) {
    QMatrix prod = QMatrix::identity(m.dim);
    for (char ch : w) prod = prod * letter(static_cast<GenId>(ch));
    out = out + prod.scaled(c);
  }
  return out;
}

}  // namespace

VerifyResult verify_module(const AlgebraHandle& uq, const AlgebraHandle& ot,
                           const IrrepModule& m) {
  VerifyResult res;

  for (const NcElement& rel : defining_relations(uq))
    if (!act_uq(m, uq, rel).is_zero()) {
      res.fail("enveloping-algebra relation acts nonzero: " + rel.str());
      return res;
    }
  res.note("all enveloping-algebra relations act as zero");

  for (const NcElement& rel : defining_relations(ot))
    if (!act_ot(m, ot, rel).is_zero()) {
      res.fail("triangular-algebra relation acts nonzero: " + rel.str());
      return res;
    }
  res.note("all triangular-algebra relations act as zero");

  // K_i acts diagonally by the recorded weights
  for (int i = 1; i <= m.n; ++i) {
    QMatrix want(m.dim, m.dim);
    for (size_t j = 0; j < m.dim; ++j) want.at(j, j) = QScalar::q_power(m.wt[j][i - 1]);
    if (!(m.actK[i - 1] == want)) {
      res.fail("torus generator " + std::to_string(i) +
               " is not diagonal with the recorded weights");
      return res;
    }
  }

  // the first basis vector is annihilated by every raising operator
  for (int i = 0; i < m.n - 1; ++i)
    for (size_t r = 0; r < m.dim; ++r)
      if (!m.actE[i].at(r, 0).is_zero()) {
        res.fail("raising operator " + std::to_string(i + 1) +
                 " does not kill the leading basis vector");
        return res;
      }

  // the isomorphism onto the triangular algebra intertwines the two actions
  GenImages iso = uq_iso(uq, ot);
  const auto& alpha = uq.alphabet();
  for (GenId g = 0; g < static_cast<GenId>(alpha->size()); ++g) {
    QMatrix via_ot = act_ot(m, ot, iso.images[g]);
    QMatrix direct = act_uq(m, uq, NcElement::gen(alpha, g));
    if (!(via_ot == direct)) {
      res.fail("the triangular realization of " + alpha->name_of(g) +
               " acts differently from the Chevalley matrix");
      return res;
    }
  }
  res.note("Chevalley and triangular-letter actions agree through the "
           "defining isomorphism");
  return res;
}

VerifyResult verify_hecke(const AlgebraHandle& ot, int legs) {
  VerifyResult res;
  const int n = ot.n;
  IrrepModule v = vector_rep(ot);
  IrrepModule amb = v;
  for (int d = 1; d < legs; ++d) amb = module_tensor(ot, amb, v);

  std::vector<QMatrix> h;
  for (int i = 1; i < legs; ++i) h.push_back(hecke_op(n, i, legs));
  QMatrix id = QMatrix::identity(amb.dim);
  QScalar mu = QScalar::q_power(1) - QScalar::q_power(-1);

  for (int i = 0; i + 1 < legs - 1; ++i)
    if (!(h[i] * h[i + 1] * h[i] == h[i + 1] * h[i] * h[i + 1])) {
      res.fail("braid relation fails at position " + std::to_string(i + 1));
      return res;
    }
  for (int i = 0; i < legs - 1; ++i)
    if (!(h[i] * h[i] + h[i].scaled(mu) - id).is_zero()) {
      res.fail("quadratic relation fails at position " + std::to_string(i + 1));
      return res;
    }
  res.note("braid and quadratic relations hold on the tensor power");

  for (int i = 0; i < legs - 1; ++i) {
    for (int j = 0; j < n - 1; ++j)
      if (!(h[i] * amb.actE[j] == amb.actE[j] * h[i]) ||
          !(h[i] * amb.actF[j] == amb.actF[j] * h[i])) {
        res.fail("braided flip " + std::to_string(i + 1) +
                 " fails to commute with the Chevalley action");
        return res;
      }
    for (int j = 0; j < n; ++j)
      if (!(h[i] * amb.actK[j] == amb.actK[j] * h[i])) {
        res.fail("braided flip " + std::to_string(i + 1) +
                 " fails to commute with the torus action");
        return res;
      }
  }
  res.note("braided flips commute with the whole module action");
  return res;
}

namespace {

long weyl_dim(const std::vector<long>& lam) {
  const int n = static_cast<int>(lam.size());
  long num = 1, den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      num *= lam[i] - lam[j] + j - i;
      den *= j - i;
    }
  return num / den;
}

// dominant partitions with n parts, largest part <= window, last part 0
void enum_partitions(int n, long window, std::vector<std::vector<long>>& out) {
  std::vector<long> cur(n, 0);
  std::function<void(int, long)> rec = [&](int pos, long maxv) {
    if (pos == n - 1) {
      cur[pos] = 0;
      out.push_back(cur);
      return;
    }
    for (long v = maxv; v >= 0; --v) {
      cur[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, window);
  std::sort(out.begin(), out.end());
}

}  // namespace

VerifyResult verify_rep_dims(const CasimirCtx& ctx, const AlgebraHandle& uq,
                             const AlgebraHandle& ot, int window) {
  VerifyResult res;
  const int n = ot.n;
  std::vector<std::vector<long>> parts;
  enum_partitions(n, window, parts);

  std::string dims;
  for (const auto& lp : parts) {
    Weight lam{lp, Rat(0)};
    IrrepModule m = irrep(ot, lam);
    long want = weyl_dim(lp);
    if (static_cast<long>(m.dim) != want) {
      res.fail("dim irrep" + lam.str() + " = " + std::to_string(m.dim) +
               ", Weyl formula gives " + std::to_string(want));
      return res;
    }
    dims += (dims.empty() ? "" : ",") + std::to_string(m.dim);

    VerifyResult vm = verify_module(uq, ot, m);
    if (!vm.ok) {
      res.fail("module checks fail at " + lam.str() + ": " + vm.witness);
      return res;
    }

    size_t total = 0;
    for (const auto& [w, cnt] : weight_mults(m)) total += cnt;
    if (total != m.dim) {
      res.fail("weight multiplicities do not sum to the dimension at " + lam.str());
      return res;
    }

    if (qdim(m).eval(Rat(1)) != Rat(static_cast<long>(m.dim))) {
      res.fail("quantum dimension does not specialize to the dimension at " +
               lam.str());
      return res;
    }

    for (int k = 1; k <= n; ++k)
      central_character(ctx, ot, ctx.C[k - 1], lam, &m);  // throws on mismatch
  }
  res.note("dims over the window: {" + dims + "}");

  // shifted weights exercise both directions of the determinant twist
  for (long delta : {-1L, 1L}) {
    std::vector<long> sh(parts.back());
    for (auto& x : sh) x += delta;
    Weight shifted{sh, Rat(0)};
    IrrepModule ms = irrep(ot, shifted);
    if (static_cast<long>(ms.dim) != weyl_dim(sh)) {
      res.fail("twisted module dimension mismatch at " + shifted.str());
      return res;
    }
    VerifyResult vs = verify_module(uq, ot, ms);
    if (!vs.ok) {
      res.fail("twisted module checks fail: " + vs.witness);
      return res;
    }
    for (int k = 1; k <= n; ++k)
      central_character(ctx, ot, ctx.C[k - 1], shifted, &ms);
  }
  res.note("central characters agree with module scalars, including under the "
           "determinant twist");
  return res;
}

VerifyResult verify_ehc(const CasimirCtx& ctx, const AlgebraHandle& ot, int k,
                        const std::vector<Weight>& lambdas) {
  VerifyResult res;
  const int n = ctx.oh->n;
  NcElement bk = ot.nf(substitute(ctx.chol, b_element(*ctx.oh, k)));
  for (const Weight& lam : lambdas) {
    IrrepModule m = irrep(ot, lam);
    QScalar lhs = omega_state(ctx, ot, m, bk);

    // e_k(q^{2-2l_1}, ..., q^{2N-2l_N})
    std::vector<QScalar> args;
    for (int i = 1; i <= n; ++i)
      args.push_back(QScalar::q_power(2 * i - 2 * lam.m[i - 1]));
    QScalar ek(0);
    std::vector<int> pick(n, 0);
    std::fill(pick.begin(), pick.begin() + k, 1);
    std::sort(pick.begin(), pick.end());
    do {
      QScalar term(1);
      for (int i = 0; i < n; ++i)
        if (pick[i]) term *= args[i];
      ek += term;
    } while (std::next_permutation(pick.begin(), pick.end()));
    QScalar rhs =
        QScalar::q_power(-static_cast<long>(n + 1) * k) * q_binom(n, k).inv() * ek;

    if (lhs != rhs) {
      std::string extra;
      if (!rhs.is_zero()) {
        QScalar ratio = lhs / rhs;
        extra = "; ratio " + ratio.str();
      }
      res.fail("state value of the k=" + std::to_string(k) + " minor at " +
               lam.str() + " is " + lhs.str() + ", closed form gives " +
               rhs.str() + extra);
      return res;
    }
  }
  res.note("state values match the closed form exactly (no residual power of q)");
  return res;
}

VerifyResult verify_omega_invariance(const CasimirCtx& ctx, const AlgebraHandle& ot,
                                     const IrrepModule& m) {
  VerifyResult res;
  QMatrix b = b_density(ctx, ot, m);
  QMatrix binv = inverse(b);
  const auto& alpha = ot.alphabet();
  for (GenId g = 0; g < static_cast<GenId>(alpha->size()); ++g) {
    NcElement s2 = antipode_apply(ot, antipode_apply(ot, NcElement::gen(alpha, g)));
    QMatrix lhs = act_ot(m, ot, ot.nf(s2));
    QMatrix rhs = binv * m.ot_act[g] * b;
    if (!(lhs == rhs)) {
      res.fail("the squared antipode of " + alpha->name_of(g) +
               " is not conjugation by the density");
      return res;
    }
  }
  res.note("squared antipode acts as conjugation by the density");
  if (omega_state(ctx, ot, m, NcElement::one(ot.alphabet())) != QScalar(1)) {
    res.fail("state is not normalized");
    return res;
  }
  res.note("state is normalized");
  return res;
}

// ---------------------------------------------------------------------------
// numeric layer
// ---------------------------------------------------------------------------

std::vector<FiltrationRow> filtration_table(const CasimirCtx& ctx,
                                            const AlgebraHandle& ot, Rat q0,
                                            long window,
                                            const std::vector<Rat>& thresholds) {
  (void)ot;
  const int n = ctx.oh->n;
  if (q0 <= 0 || q0 >= 1) throw DomainError("q0 must lie in (0,1)");

  // dominant integral weights with |lambda_i| <= window
  std::vector<std::vector<long>> lams;
  std::vector<long> cur(n, 0);
  std::function<void(int, long)> rec = [&](int pos, long maxv) {
    if (pos == n) {
      lams.push_back(cur);
      return;
    }
    for (long v = maxv; v >= -window; --v) {
      cur[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, window);
  std::sort(lams.begin(), lams.end());

  DiagPoly hc_c1 = ctx.hcC[0];
  DiagPoly hc_bn = hc(ctx, b_element(*ctx.oh, n));

  std::vector<FiltrationRow> rows;
  for (const auto& lm : lams) {
    std::vector<QScalar> vals;
    for (int i = 0; i < n; ++i) vals.push_back(QScalar::q_power(-2 * lm[i]));
    Rat tr = hc_c1.eval_at(vals).eval(q0);
    Rat bn = hc_bn.eval_at(vals).eval(q0);
    if (bn == 0) throw DomainError("density character vanishes");
    Rat bninv2 = 1 / (bn * bn);
    Rat two_q = q0 + 1 / q0;
    Rat control = std::max({two_q, tr, bninv2});
    FiltrationRow row;
    row.lambda = Weight{lm, Rat(0)};
    row.control_value = control;
    for (const Rat& t : thresholds) row.in_p_leq.push_back(control <= t);
    rows.push_back(std::move(row));
  }
  return rows;
}

SpectrumReport spectrum_check(const CasimirCtx& ctx, const AlgebraHandle& ot,
                              const Weight& lambda, Rat q0, double tol) {
  SpectrumReport rep;
  const int n = ctx.oh->n;
  IrrepModule m = irrep(ot, lambda);

  // block matrix of the images of the reflection generators
  const size_t side = n * m.dim;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(side, side);
  const auto& alpha_h = ctx.oh->alphabet();
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      QMatrix blk = act_ot(
          m, ot, ctx.chol.images[alpha_h->id_of(mat_name('Z', a, b))]);
      for (size_t i = 0; i < m.dim; ++i)
        for (size_t j = 0; j < m.dim; ++j)
          w(static_cast<long>((a - 1) * m.dim + i),
            static_cast<long>((b - 1) * m.dim + j)) =
              blk.at(i, j).eval(q0).get_d();
    }

  // exact characteristic coefficients, evaluated at q0
  std::vector<double> coeff;  // chi(C_1), ..., chi(C_N)
  for (int k = 1; k <= n; ++k)
    coeff.push_back(central_character(ctx, ot, ctx.C[k - 1], lambda, &m)
                        .eval(q0)
                        .get_d());

  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(side, side);
  for (int k = 1; k <= n; ++k) p = p * w;  // W^N
  Eigen::MatrixXd pw = Eigen::MatrixXd::Identity(side, side);
  std::vector<Eigen::MatrixXd> powers{pw};
  for (int k = 1; k < n; ++k) powers.push_back(powers.back() * w);
  for (int k = 1; k <= n; ++k) {
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    p += sign * coeff[k - 1] * powers[n - k];
  }
  rep.residual = p.norm();
  rep.ok = rep.residual < tol;

  // observed spectrum (distinct values)
  Eigen::EigenSolver<Eigen::MatrixXd> es(w);
  std::vector<double> eigs;
  for (long i = 0; i < es.eigenvalues().size(); ++i)
    eigs.push_back(es.eigenvalues()[i].real());
  std::sort(eigs.begin(), eigs.end());
  for (double e : eigs)
    if (rep.eigenvalues.empty() ||
        std::abs(e - rep.eigenvalues.back()) >
            1e-6 * std::max(1.0, std::abs(e)))
      rep.eigenvalues.push_back(e);

  long c = lambda.shift.get_num().get_si();
  double q0d = q0.get_d();
  std::vector<double> cf;
  for (int k = 1; k <= n; ++k)
    cf.push_back(
        std::pow(q0d, -2.0 * static_cast<double>(lambda.m[k - 1] + c - k - 1)));
  std::sort(cf.begin(), cf.end());
  for (double e : cf)
    if (rep.closed_form.empty() ||
        std::abs(e - rep.closed_form.back()) >
            1e-6 * std::max(1.0, std::abs(e)))
      rep.closed_form.push_back(e);

  rep.closed_form_matches =
      rep.eigenvalues.size() == rep.closed_form.size();
  if (rep.closed_form_matches)
    for (size_t i = 0; i < rep.eigenvalues.size(); ++i)
      if (std::abs(rep.eigenvalues[i] - rep.closed_form[i]) >
          1e-6 * std::max(1.0, std::abs(rep.closed_form[i])))
        rep.closed_form_matches = false;

  std::ostringstream os;
  os << "observed spectrum {";
  for (size_t i = 0; i < rep.eigenvalues.size(); ++i)
    os << (i ? ", " : "") << rep.eigenvalues[i];
  os << "} vs closed form {";
  for (size_t i = 0; i < rep.closed_form.size(); ++i)
    os << (i ? ", " : "") << rep.closed_form[i];
  os << "}: " << (rep.closed_form_matches ? "agree" : "differ")
     << " (reported, not asserted)";
  rep.note = os.str();
  return rep;
}

}  // namespace qgl
