#include "qgl/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <shared_mutex>
#include <sstream>

#include "qgl/errors.hpp"
#include "qgl/qlinalg.hpp"

namespace qgl {

namespace {

std::string word_str(const AlphabetPtr& alpha, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += alpha->name_of(static_cast<GenId>(static_cast<unsigned char>(w[i])));
  }
  return s;
}

std::vector<std::vector<std::size_t>> index_by_first(const std::vector<Rule>& rules,
                                                     std::size_t alphabet_size,
                                                     const std::vector<char>* active) {
  std::vector<std::vector<std::size_t>> by(alphabet_size);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (active && !(*active)[i]) continue;
    by[static_cast<unsigned char>(rules[i].lhs[0])].push_back(i);
  }
  return by;
}

std::optional<std::pair<std::size_t, std::size_t>> find_match_in(
    const Word& w, const std::vector<Rule>& rules,
    const std::vector<std::vector<std::size_t>>& by_first) {
  for (std::size_t p = 0; p < w.size(); ++p) {
    for (std::size_t ri : by_first[static_cast<unsigned char>(w[p])]) {
      const Word& l = rules[ri].lhs;
      if (l.size() <= w.size() - p && w.compare(p, l.size(), l) == 0)
        return std::make_pair(p, ri);
    }
  }
  return std::nullopt;
}

// Shared normal-form engine: iterative depth-first reduction over words with
// coefficient merging, an optional cross-call cache, and a step budget.
struct Evaluator {
  const std::vector<Rule>& rules;
  const std::vector<std::vector<std::size_t>>& by_first;
  AlphabetPtr alpha;
  std::map<Word, NcElement, DegLexLess>* memo = nullptr;
  std::shared_mutex* memo_mx = nullptr;
  std::size_t fuel = 0;

  NcElement nf_word(const Word& w0) {
    if (!find_match_in(w0, rules, by_first))
      return NcElement::monomial(alpha, w0, QScalar(1));

    // Results finished during this call; consulted before the shared cache.
    std::map<Word, NcElement, DegLexLess> local;
    auto lookup = [&](const Word& u) -> const NcElement* {
      auto it = local.find(u);
      if (it != local.end()) return &it->second;
      if (memo) {
        std::shared_lock lk(*memo_mx);
        auto jt = memo->find(u);
        if (jt != memo->end()) return &local.emplace(u, jt->second).first->second;
      }
      return nullptr;
    };

    struct Frame {
      Word w;
      std::vector<std::pair<Word, QScalar>> kids;
      std::size_t next = 0;
      NcElement acc;
      explicit Frame(AlphabetPtr a) : acc(std::move(a)) {}
    };
    // One leftmost reduction step of w, with equal result words merged.
    auto expand = [&](const Word& w, std::size_t pos, std::size_t ri) -> Frame {
      if (fuel == 0) throw FuelError("rewrite step budget exhausted");
      --fuel;
      const Rule& r = rules[ri];
      const Word pre = w.substr(0, pos);
      const Word post = w.substr(pos + r.lhs.size());
      std::map<Word, QScalar, DegLexLess> kidmap;
      for (const auto& [t, c] : r.rhs.terms()) {
        auto [it, fresh] = kidmap.try_emplace(pre + t + post, c);
        if (!fresh) it->second = it->second + c;
      }
      Frame f(alpha);
      f.w = w;
      for (auto& [u, c] : kidmap)
        if (!c.is_zero()) f.kids.emplace_back(u, c);
      return f;
    };

    std::vector<Frame> stack;
    {
      auto m = find_match_in(w0, rules, by_first);
      stack.push_back(expand(w0, m->first, m->second));
    }
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next == f.kids.size()) {
        local.emplace(f.w, f.acc);
        if (memo) {
          std::unique_lock lk(*memo_mx);
          memo->emplace(f.w, f.acc);
        }
        stack.pop_back();
        continue;
      }
      const Word u = f.kids[f.next].first;
      const QScalar c = f.kids[f.next].second;
      if (const NcElement* v = lookup(u)) {
        f.acc += v->scaled(c);
        ++f.next;
        continue;
      }
      auto m = find_match_in(u, rules, by_first);
      if (!m) {
        f.acc.add_term(u, c);
        ++f.next;
        continue;
      }
      stack.push_back(expand(u, m->first, m->second));  // invalidates f
    }
    return local.at(w0);
  }

  NcElement nf_element(const NcElement& a) {
    NcElement out = NcElement::zero(a.alphabet());
    for (const auto& [w, c] : a.terms()) out += nf_word(w).scaled(c);
    return out;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Presentation

struct MemoBox {
  std::map<Word, NcElement, DegLexLess> memo;
  std::shared_mutex mx;
};

Presentation::Presentation(AlphabetPtr alphabet, int degree_cap)
    : alphabet_(std::move(alphabet)),
      degree_cap_(degree_cap),
      memo_box_(std::make_unique<MemoBox>()) {
  if (!alphabet_) throw DomainError("presentation requires an alphabet");
  if (degree_cap_ < 1) throw DomainError("degree cap must be positive");
  by_first_.assign(alphabet_->size(), {});
}

Presentation::~Presentation() = default;
Presentation::Presentation(Presentation&&) noexcept = default;
Presentation& Presentation::operator=(Presentation&&) noexcept = default;

void Presentation::add_rule(Rule r) {
  if (r.lhs.empty()) throw InternalError("rule with empty left-hand side");
  for (const auto& [w, c] : r.rhs.terms())
    if (!DegLexLess{}(w, r.lhs))
      throw InternalError("rule right-hand side not below its left-hand side");
  by_first_[static_cast<unsigned char>(r.lhs[0])].push_back(rules_.size());
  rules_.push_back(std::move(r));
  std::unique_lock lk(memo_box_->mx);
  memo_box_->memo.clear();
}

std::optional<std::pair<std::size_t, std::size_t>> Presentation::find_match(
    const Word& w) const {
  return find_match_in(w, rules_, by_first_);
}

bool Presentation::word_irreducible(const Word& w) const {
  return !find_match(w).has_value();
}

NcElement Presentation::normal_form(const NcElement& a) const {
  if (a.degree() > degree_cap_)
    throw DomainError("degree cap exceeded: input degree " +
                      std::to_string(a.degree()) + " > cap " +
                      std::to_string(degree_cap_));
  Evaluator ev{rules_,           by_first_,       alphabet_,
               &memo_box_->memo, &memo_box_->mx, step_budget_};
  return ev.nf_element(a);
}

NcElement Presentation::normal_form_word(const Word& w) const {
  return normal_form(NcElement::monomial(alphabet_, w, QScalar(1)));
}

NcElement Presentation::normal_form_randomized(const NcElement& a,
                                               std::uint64_t seed) const {
  if (a.degree() > degree_cap_)
    throw DomainError("degree cap exceeded: input degree " +
                      std::to_string(a.degree()) + " > cap " +
                      std::to_string(degree_cap_));
  std::mt19937_64 rng(seed);
  NcElement x = a;
  std::size_t fuel = step_budget_;
  for (;;) {
    // Every reducible site across every term of the current element.
    struct Site {
      Word w;
      QScalar c;
      std::size_t pos, rule;
    };
    std::vector<Site> sites;
    for (const auto& [w, c] : x.terms())
      for (std::size_t p = 0; p < w.size(); ++p)
        for (std::size_t ri : by_first_[static_cast<unsigned char>(w[p])]) {
          const Word& l = rules_[ri].lhs;
          if (l.size() <= w.size() - p && w.compare(p, l.size(), l) == 0)
            sites.push_back({w, c, p, ri});
        }
    if (sites.empty()) return x;
    if (fuel == 0) throw FuelError("rewrite step budget exhausted");
    --fuel;
    const Site& s = sites[rng() % sites.size()];
    const Rule& r = rules_[s.rule];
    NcElement pre = NcElement::monomial(alphabet_, s.w.substr(0, s.pos), QScalar(1));
    NcElement post = NcElement::monomial(
        alphabet_, s.w.substr(s.pos + r.lhs.size()), QScalar(1));
    x += (pre * r.rhs * post).scaled(s.c) - NcElement::monomial(alphabet_, s.w, s.c);
  }
}

Int Presentation::count_irreducible(int degree) const {
  if (degree < 0) throw DomainError("negative degree");
  // States of the factor-avoidance automaton: proper prefixes of rule
  // left-hand sides (the empty word included).  Valid because the system is
  // inter-reduced, so a state never hides a forbidden factor of its own.
  std::set<Word> lhs_set;
  std::set<Word> prefixes;
  prefixes.insert(Word());
  for (const auto& r : rules_) {
    lhs_set.insert(r.lhs);
    for (std::size_t len = 1; len < r.lhs.size(); ++len)
      prefixes.insert(r.lhs.substr(0, len));
  }
  std::vector<Word> states(prefixes.begin(), prefixes.end());
  std::map<Word, std::size_t> state_index;
  for (std::size_t i = 0; i < states.size(); ++i) state_index[states[i]] = i;

  const std::size_t n_letters = alphabet_->size();
  // transition[s][g] = next state, or -1 when s.g completes a forbidden factor.
  std::vector<std::vector<long>> transition(
      states.size(), std::vector<long>(n_letters, -1));
  for (std::size_t si = 0; si < states.size(); ++si)
    for (std::size_t g = 0; g < n_letters; ++g) {
      Word u = states[si];
      u.push_back(static_cast<char>(g));
      bool dead = false;
      for (std::size_t len = u.size(); len >= 1 && !dead; --len)
        if (lhs_set.count(u.substr(u.size() - len))) dead = true;
      if (dead) continue;
      for (std::size_t len = u.size();; --len) {
        Word suf = u.substr(u.size() - len);
        auto it = state_index.find(suf);
        if (it != state_index.end()) {
          transition[si][g] = static_cast<long>(it->second);
          break;
        }
        if (len == 0) break;
      }
    }

  std::vector<Int> cnt(states.size(), 0);
  cnt[state_index.at(Word())] = 1;
  for (int step = 0; step < degree; ++step) {
    std::vector<Int> nxt(states.size(), 0);
    for (std::size_t si = 0; si < states.size(); ++si) {
      if (cnt[si] == 0) continue;
      for (std::size_t g = 0; g < n_letters; ++g)
        if (transition[si][g] >= 0) nxt[transition[si][g]] += cnt[si];
    }
    cnt.swap(nxt);
  }
  Int total = 0;
  for (const Int& c : cnt) total += c;
  return total;
}

std::optional<std::string> Presentation::confluence_violation() const {
  for (std::size_t i = 0; i < rules_.size(); ++i)
    for (std::size_t j = 0; j < rules_.size(); ++j) {
      const Word& u = rules_[i].lhs;
      const Word& v = rules_[j].lhs;
      if (u.empty() || v.empty()) continue;
      const std::size_t smax = std::min(u.size(), v.size()) - 1;
      for (std::size_t s = 1; s <= smax; ++s) {
        if (u.compare(u.size() - s, s, v, 0, s) != 0) continue;
        Word w = u + v.substr(s);
        if (static_cast<int>(w.size()) > degree_cap_) continue;
        NcElement left =
            rules_[i].rhs * NcElement::monomial(alphabet_, v.substr(s), QScalar(1));
        NcElement right =
            NcElement::monomial(alphabet_, u.substr(0, u.size() - s), QScalar(1)) *
            rules_[j].rhs;
        if (normal_form(left) != normal_form(right))
          return word_str(alphabet_, w);
      }
    }
  return std::nullopt;
}

std::string Presentation::dump() const {
  std::vector<std::size_t> order(rules_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return DegLexLess{}(rules_[a].lhs, rules_[b].lhs);
  });
  std::ostringstream os;
  for (std::size_t i : order)
    os << word_str(alphabet_, rules_[i].lhs) << " -> " << rules_[i].rhs.str()
       << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Span reduction and completion

std::vector<NcElement> span_reduce(const std::vector<NcElement>& relations) {
  std::vector<const NcElement*> live;
  for (const auto& e : relations)
    if (!e.is_zero()) live.push_back(&e);
  if (live.empty()) return {};
  AlphabetPtr alpha = live.front()->alphabet();

  std::set<Word, DegLexLess> wordset;
  for (const NcElement* e : live)
    for (const auto& [w, c] : e->terms()) wordset.insert(w);
  // Columns in descending deglex order, so row-echelon pivots are leading words.
  std::vector<Word> cols(wordset.rbegin(), wordset.rend());
  std::map<Word, std::size_t, DegLexLess> colidx;
  for (std::size_t j = 0; j < cols.size(); ++j) colidx[cols[j]] = j;

  QMatrix m(live.size(), cols.size());
  for (std::size_t i = 0; i < live.size(); ++i)
    for (const auto& [w, c] : live[i]->terms()) m.at(i, colidx.at(w)) = c;

  RrefResult rr = rref(m);
  std::vector<NcElement> out;
  for (std::size_t i = 0; i < live.size(); ++i) {
    NcElement e = NcElement::zero(alpha);
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (!rr.mat.at(i, j).is_zero()) e.add_term(cols[j], rr.mat.at(i, j));
    if (!e.is_zero()) out.push_back(std::move(e));
  }
  return out;
}

std::vector<NcElement> relations_from_matrix_eq(const LeggedMatrix& lhs,
                                                const LeggedMatrix& rhs) {
  LeggedMatrix diff = lhs - rhs;
  std::vector<NcElement> rels;
  for (const auto& [pos, e] : diff.entries()) rels.push_back(e);
  return span_reduce(rels);
}

namespace {

Rule orient_element(const NcElement& e) {
  if (e.degree() == 0)
    throw InconsistencyError("relations force 1 = 0 (ideal contains a unit)");
  const Word lead = e.leading_word();
  NcElement rhs = NcElement::monomial(e.alphabet(), lead, QScalar(1)) -
                  e.scaled(e.leading_coeff().inv());
  return Rule{lead, std::move(rhs)};
}

}  // namespace

Presentation orient_and_complete(AlphabetPtr alphabet,
                                 const std::vector<NcElement>& relations,
                                 int degree_cap,
                                 const CompletionOptions& options) {
  if (!alphabet) throw DomainError("completion requires an alphabet");
  std::vector<Rule> rules;
  std::vector<char> active;
  std::vector<std::vector<std::size_t>> by_first =
      index_by_first(rules, alphabet->size(), nullptr);
  std::deque<NcElement> work;
  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t added_by_pairs = 0;
  const std::size_t nf_budget = 5'000'000;

  auto nf_here = [&](const NcElement& a) {
    Evaluator ev{rules, by_first, alphabet, nullptr, nullptr, nf_budget};
    return ev.nf_element(a);
  };
  auto enqueue_pair = [&](std::size_t i, std::size_t j) {
    auto key = std::minmax(i, j);
    if (seen.insert({key.first, key.second}).second)
      pairs.push_back({key.first, key.second});
  };
  auto add_relation = [&](const NcElement& e, bool from_pair) {
    NcElement r = nf_here(e);
    if (r.is_zero()) return;
    Rule R = orient_element(r);
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (!active[i]) continue;
      if (rules[i].lhs.find(R.lhs) != Word::npos) {
        active[i] = false;
        work.push_back(NcElement::monomial(alphabet, rules[i].lhs, QScalar(1)) -
                       rules[i].rhs);
      }
    }
    const std::size_t k = rules.size();
    rules.push_back(std::move(R));
    active.push_back(true);
    by_first = index_by_first(rules, alphabet->size(), &active);
    std::size_t n_active = 0;
    for (char a : active) n_active += (a != 0);
    if (n_active > options.max_rules)
      throw CompletionError("rule budget exhausted (" +
                            std::to_string(options.max_rules) + " rules)");
    for (std::size_t j = 0; j < rules.size(); ++j)
      if (active[j]) enqueue_pair(k, j);
    if (from_pair) ++added_by_pairs;
  };
  // Overlap word u + v.substr(s): resolve both one-step reducts to normal form
  // and feed their difference back in.
  auto resolve_overlaps = [&](std::size_t i, std::size_t j) {
    const Word u = rules[i].lhs;
    const Word v = rules[j].lhs;
    const std::size_t smax = std::min(u.size(), v.size()) - 1;
    for (std::size_t s = 1; s <= smax; ++s) {
      if (!active[i] || !active[j]) return;
      if (u.compare(u.size() - s, s, v, 0, s) != 0) continue;
      Word w = u + v.substr(s);
      if (static_cast<int>(w.size()) > degree_cap) continue;
      NcElement left =
          rules[i].rhs *
          NcElement::monomial(alphabet, v.substr(s), QScalar(1));
      NcElement right =
          NcElement::monomial(alphabet, u.substr(0, u.size() - s), QScalar(1)) *
          rules[j].rhs;
      try {
        add_relation(left - right, true);
      } catch (const CompletionError& ce) {
        throw CompletionError(std::string("at overlap ") +
                                  word_str(alphabet, w) + ": " + ce.what(),
                              word_str(alphabet, w));
      } catch (const FuelError& fe) {
        throw CompletionError(std::string("at overlap ") +
                                  word_str(alphabet, w) + ": " + fe.what(),
                              word_str(alphabet, w));
      }
    }
  };

  for (const NcElement& e : span_reduce(relations)) add_relation(e, false);
  // Rules re-derived because seeding deactivated them are still input span,
  // not completion output; drain them before counting pair-derived rules.
  while (!work.empty()) {
    NcElement e = std::move(work.front());
    work.pop_front();
    add_relation(e, false);
  }

  std::size_t pair_budget = options.max_pairs;
  while (!work.empty() || !pairs.empty()) {
    if (!work.empty()) {
      NcElement e = std::move(work.front());
      work.pop_front();
      add_relation(e, true);
      continue;
    }
    auto [i, j] = pairs.front();
    pairs.pop_front();
    if (!active[i] || !active[j]) continue;
    if (pair_budget == 0)
      throw CompletionError("critical-pair budget exhausted (" +
                            std::to_string(options.max_pairs) + " pairs)");
    --pair_budget;
    resolve_overlaps(i, j);
    if (i != j) resolve_overlaps(j, i);
  }

  // Canonical finish: keep active rules, fully reduce every right-hand side
  // under the final system, sort by leading word.
  std::vector<std::size_t> final_idx;
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (active[i]) final_idx.push_back(i);
  std::sort(final_idx.begin(), final_idx.end(), [&](std::size_t a, std::size_t b) {
    return DegLexLess{}(rules[a].lhs, rules[b].lhs);
  });
  Presentation p(alphabet, degree_cap);
  for (std::size_t i : final_idx)
    p.add_rule(Rule{rules[i].lhs, nf_here(rules[i].rhs)});
  p.set_completion_added(added_by_pairs);
  return p;
}

}  // namespace qgl
