#pragma once

// Rewriting engine for two-sided ideals in free algebras: orientation of
// relations into rules, completion by overlap resolution, and memoized
// normal forms.  Word order is degree-then-lex (DegLexLess from ncalg).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qgl/legged.hpp"
#include "qgl/ncalg.hpp"

namespace qgl {

// One oriented rule  lhs -> rhs  with lhs a word, rhs an element all of whose
// words are deglex-smaller than lhs.  Leading coefficient is normalized to 1.
struct Rule {
  Word lhs;
  NcElement rhs;
};

struct CompletionOptions {
  std::size_t max_rules = 4096;
  // Budget on critical pairs processed before giving up.
  std::size_t max_pairs = 2'000'000;
};

struct MemoBox;

// A finished rule system over an alphabet.  After orient_and_complete the
// system is confluent on all words of length <= degree_cap (rewriting never
// increases word length, so normal forms of such words are canonical).
class Presentation {
 public:
  Presentation(AlphabetPtr alphabet, int degree_cap);
  ~Presentation();
  Presentation(Presentation&&) noexcept;
  Presentation& operator=(Presentation&&) noexcept;
  Presentation(const Presentation&) = delete;
  Presentation& operator=(const Presentation&) = delete;

  const AlphabetPtr& alphabet() const { return alphabet_; }
  int degree_cap() const { return degree_cap_; }
  const std::vector<Rule>& rules() const { return rules_; }

  // Number of rules adjoined by completion beyond the oriented input span.
  std::size_t completion_added() const { return completion_added_; }
  void set_completion_added(std::size_t n) { completion_added_ = n; }

  // Optional star rule on generators (antilinear antihomomorphism data),
  // attached by the algebra builders for *-algebras.
  std::optional<GenImages> star;

  // Appends a rule; the caller guarantees rhs < lhs and unit leading
  // coefficient.  Invalidate any cached normal forms.
  void add_rule(Rule r);

  // Canonical representative of `a` modulo the rule system.  Inputs of
  // degree > degree_cap are rejected with DomainError; runaway reductions
  // exhaust the step budget with FuelError.
  NcElement normal_form(const NcElement& a) const;
  NcElement normal_form_word(const Word& w) const;
  bool is_zero(const NcElement& a) const { return normal_form(a).is_zero(); }

  // Normal form computed with a seeded random choice of reduction site at
  // every step, bypassing the cache.  Confluence makes the result
  // independent of the strategy; tests exercise exactly that.
  NcElement normal_form_randomized(const NcElement& a, std::uint64_t seed) const;

  bool word_irreducible(const Word& w) const;
  // Leftmost reducible site: (position, rule index), or nullopt.
  std::optional<std::pair<std::size_t, std::size_t>> find_match(const Word& w) const;

  // Number of irreducible words of exactly the given degree (the PBW
  // monomial count in that degree once the system is complete).
  Int count_irreducible(int degree) const;

  // Independent confluence certificate: re-checks that every proper overlap
  // between rule left-hand sides whose overlap word fits in the degree cap
  // reduces to a join.  Returns the first offending overlap, or nullopt.
  std::optional<std::string> confluence_violation() const;

  // One line per rule, "LHS -> rhs", sorted by leading word.
  std::string dump() const;

  std::size_t step_budget() const { return step_budget_; }
  void set_step_budget(std::size_t n) { step_budget_ = n; }

 private:
  AlphabetPtr alphabet_;
  int degree_cap_ = 0;
  std::size_t completion_added_ = 0;
  std::vector<Rule> rules_;
  // Rule indices grouped by first letter of lhs, for fast match scans.
  std::vector<std::vector<std::size_t>> by_first_;
  std::size_t step_budget_ = 20'000'000;

  // Cache of word normal forms plus its lock, boxed so the class stays movable.
  mutable std::unique_ptr<MemoBox> memo_box_;
};

// Entrywise differences lhs - rhs of two legged matrices over the same
// alphabet, span-reduced to an independent canonical set of relations.
std::vector<NcElement> relations_from_matrix_eq(const LeggedMatrix& lhs,
                                                const LeggedMatrix& rhs);

// Gaussian span reduction of a list of elements: returns a deglex-echelon
// basis of their linear span (each leading word occurs in exactly one
// element, with unit coefficient, and in no other element at all).
std::vector<NcElement> span_reduce(const std::vector<NcElement>& relations);

// Orients the span of `relations` into rules and completes by resolving all
// proper overlaps whose overlap word fits within degree_cap.  Throws
// CompletionError (carrying the offending overlap word) when budgets are
// exceeded, and InconsistencyError if the ideal contains a unit.
Presentation orient_and_complete(AlphabetPtr alphabet,
                                 const std::vector<NcElement>& relations,
                                 int degree_cap,
                                 const CompletionOptions& options = {});

}  // namespace qgl
