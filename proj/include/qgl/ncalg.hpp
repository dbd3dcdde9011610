#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qgl/qfield.hpp"

namespace qgl {

using GenId = std::uint8_t;

// Ordered generator alphabet. The listed order is the generator order used by
// the degree-lexicographic word order everywhere downstream.
class Alphabet {
 public:
  static std::shared_ptr<const Alphabet> make(std::vector<std::string> names);
  GenId id_of(const std::string& name) const;  // throws DomainError if absent
  const std::string& name_of(GenId g) const;
  bool has(const std::string& name) const;
  size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, GenId> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

// A word is a sequence of generator ids (one byte each); empty word = unit.
using Word = std::string;

inline Word word_of(std::initializer_list<GenId> gs) {
  Word w;
  for (GenId g : gs) w.push_back(static_cast<char>(g));
  return w;
}

// Degree-lexicographic order: shorter first, then byte-lexicographic.
struct DegLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Element of the free algebra over the QScalar field on a fixed alphabet.
class NcElement {
 public:
  using TermMap = std::map<Word, QScalar, DegLexLess>;

  explicit NcElement(AlphabetPtr alpha) : alpha_(std::move(alpha)) {}
  static NcElement zero(AlphabetPtr alpha) { return NcElement(std::move(alpha)); }
  static NcElement one(AlphabetPtr alpha);
  static NcElement gen(AlphabetPtr alpha, GenId g);
  static NcElement gen(AlphabetPtr alpha, const std::string& name);
  static NcElement monomial(AlphabetPtr alpha, Word w, QScalar c);

  const AlphabetPtr& alphabet() const { return alpha_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_scalar() const;  // zero or multiple of the empty word
  QScalar scalar_part() const;  // coefficient of the empty word
  long degree() const;  // max word length; -1 for zero
  const Word& leading_word() const;  // throws DomainError on zero
  const QScalar& leading_coeff() const;

  NcElement operator+(const NcElement& o) const;
  NcElement operator-(const NcElement& o) const;
  NcElement operator*(const NcElement& o) const;
  NcElement operator-() const;
  NcElement& operator+=(const NcElement& o);
  NcElement scaled(const QScalar& s) const;
  bool operator==(const NcElement& o) const;
  bool operator!=(const NcElement& o) const { return !(*this == o); }

  void add_term(const Word& w, const QScalar& c);  // fuses, drops zeros

  std::string str() const;

 private:
  AlphabetPtr alpha_;
  TermMap terms_;
};

inline NcElement operator*(const QScalar& s, const NcElement& x) { return x.scaled(s); }

// Generator images for a homomorphic or antimultiplicative extension. All
// images live over one common target alphabet.
struct GenImages {
  AlphabetPtr domain;
  std::vector<NcElement> images;  // indexed by GenId; size == domain->size()
};

// Multiplicative extension g1 g2 ... gk -> img(g1) img(g2) ... img(gk).
NcElement substitute(const GenImages& rule, const NcElement& a);

// Antimultiplicative, QScalar-linear extension (q is fixed by *):
// g1 ... gk -> img(gk) ... img(g1).
NcElement star_apply(const GenImages& rule, const NcElement& a);

// Tensor-square carrier: words over the disjoint union of two alphabets, with
// left-slot letters commuting past right-slot letters. Normalization stably
// sorts every word so left letters precede right letters.
class TensorCarrier {
 public:
  TensorCarrier(AlphabetPtr left, AlphabetPtr right);

  const AlphabetPtr& combined() const { return combined_; }
  const AlphabetPtr& left() const { return left_; }
  const AlphabetPtr& right() const { return right_; }

  NcElement embed_left(const NcElement& a) const;
  NcElement embed_right(const NcElement& b) const;
  NcElement tensor(const NcElement& a, const NcElement& b) const;
  // Stable slot sort of every word (left letters first, internal order kept).
  NcElement normalize_slots(const NcElement& x) const;
  bool is_left_letter(GenId g) const { return g < left_->size(); }
  GenId to_left(GenId g) const { return g; }
  GenId to_right(GenId g) const { return static_cast<GenId>(g + left_->size()); }
  GenId from_right(GenId g) const { return static_cast<GenId>(g - left_->size()); }
  // Split a slot-sorted word into its left and right components.
  std::pair<Word, Word> split(const Word& w) const;
  // Apply componentwise maps and recombine: Σ c·(f(u) ⊗ g(v)).
  NcElement map_components(const NcElement& x,
                           const std::function<NcElement(const Word&)>& f,
                           const std::function<NcElement(const Word&)>& g) const;

 private:
  AlphabetPtr left_, right_, combined_;
};

} // namespace qgl
