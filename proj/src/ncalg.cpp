#include "qgl/ncalg.hpp"

#include <algorithm>
#include <sstream>

namespace qgl {

std::shared_ptr<const Alphabet> Alphabet::make(std::vector<std::string> names) {
  if (names.size() > 250) throw DomainError("alphabet too large");
  auto a = std::make_shared<Alphabet>();
  a->names_ = std::move(names);
  for (size_t i = 0; i < a->names_.size(); ++i) {
    if (!a->index_.emplace(a->names_[i], static_cast<GenId>(i)).second)
      throw DomainError("duplicate generator name: " + a->names_[i]);
  }
  return a;
}

GenId Alphabet::id_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw DomainError("unknown generator: " + name);
  return it->second;
}

const std::string& Alphabet::name_of(GenId g) const {
  if (g >= names_.size()) throw DomainError("generator id out of range");
  return names_[g];
}

bool Alphabet::has(const std::string& name) const { return index_.count(name) != 0; }

namespace {

void check_alpha(const NcElement& a, const NcElement& b) {
  if (a.alphabet() != b.alphabet())
    throw DomainError("elements over different alphabets");
}

} // namespace

NcElement NcElement::one(AlphabetPtr alpha) {
  NcElement e(std::move(alpha));
  e.add_term(Word(), QScalar(1));
  return e;
}

NcElement NcElement::gen(AlphabetPtr alpha, GenId g) {
  if (g >= alpha->size()) throw DomainError("generator id out of range");
  NcElement e(std::move(alpha));
  e.add_term(Word(1, static_cast<char>(g)), QScalar(1));
  return e;
}

NcElement NcElement::gen(AlphabetPtr alpha, const std::string& name) {
  GenId g = alpha->id_of(name);
  return gen(std::move(alpha), g);
}

NcElement NcElement::monomial(AlphabetPtr alpha, Word w, QScalar c) {
  for (char ch : w)
    if (static_cast<GenId>(ch) >= alpha->size())
      throw DomainError("word contains out-of-range generator id");
  NcElement e(std::move(alpha));
  e.add_term(w, c);
  return e;
}

bool NcElement::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

QScalar NcElement::scalar_part() const {
  auto it = terms_.find(Word());
  return it == terms_.end() ? QScalar() : it->second;
}

long NcElement::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<long>(terms_.rbegin()->first.size());
}

const Word& NcElement::leading_word() const {
  if (terms_.empty()) throw DomainError("leading word of zero element");
  return terms_.rbegin()->first;
}

const QScalar& NcElement::leading_coeff() const {
  if (terms_.empty()) throw DomainError("leading coefficient of zero element");
  return terms_.rbegin()->second;
}

void NcElement::add_term(const Word& w, const QScalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NcElement NcElement::operator+(const NcElement& o) const {
  check_alpha(*this, o);
  NcElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

NcElement& NcElement::operator+=(const NcElement& o) {
  check_alpha(*this, o);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NcElement NcElement::operator-(const NcElement& o) const { return *this + (-o); }

NcElement NcElement::operator-() const {
  NcElement r(alpha_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

NcElement NcElement::operator*(const NcElement& o) const {
  check_alpha(*this, o);
  NcElement r(alpha_);
  for (const auto& [wa, ca] : terms_)
    for (const auto& [wb, cb] : o.terms_) r.add_term(wa + wb, ca * cb);
  return r;
}

NcElement NcElement::scaled(const QScalar& s) const {
  NcElement r(alpha_);
  if (s.is_zero()) return r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, c * s);
  return r;
}

bool NcElement::operator==(const NcElement& o) const {
  return alpha_ == o.alpha_ && terms_ == o.terms_;
}

std::string NcElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, stored] : terms_) {
    QScalar c = stored;
    const bool neg = !c.num().is_zero() && c.num().coeff(c.num().deg_high()) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << '-';
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    if (w.empty()) {
      os << c.str();
      continue;
    }
    if (!c.is_one()) {
      std::string coeff = c.str();
      if (c.den().is_monomial() && c.den().coeff(c.den().deg_low()) == 1 &&
          c.den().deg_low() == 0 && c.num().term_count() > 1)
        coeff = "(" + coeff + ")";
      os << coeff << '*';
    }
    bool dot = false;
    for (char ch : w) {
      if (dot) os << '.';
      os << alpha_->name_of(static_cast<GenId>(ch));
      dot = true;
    }
  }
  return os.str();
}

NcElement substitute(const GenImages& rule, const NcElement& a) {
  if (rule.domain != a.alphabet())
    throw DomainError("substitution rule domain mismatch");
  if (rule.images.size() != rule.domain->size())
    throw DomainError("substitution rule must cover every generator");
  const AlphabetPtr& target = rule.images.empty() ? a.alphabet() : rule.images.front().alphabet();
  NcElement r(target);
  for (const auto& [w, c] : a.terms()) {
    NcElement prod = NcElement::monomial(target, Word(), c);
    for (char ch : w) prod = prod * rule.images[static_cast<GenId>(ch)];
    r += prod;
  }
  return r;
}

NcElement star_apply(const GenImages& rule, const NcElement& a) {
  if (rule.domain != a.alphabet())
    throw DomainError("star rule domain mismatch");
  if (rule.images.size() != rule.domain->size())
    throw DomainError("star rule must cover every generator");
  const AlphabetPtr& target = rule.images.empty() ? a.alphabet() : rule.images.front().alphabet();
  NcElement r(target);
  for (const auto& [w, c] : a.terms()) {
    NcElement prod = NcElement::monomial(target, Word(), c);
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      prod = prod * rule.images[static_cast<GenId>(*it)];
    r += prod;
  }
  return r;
}

TensorCarrier::TensorCarrier(AlphabetPtr left, AlphabetPtr right)
    : left_(std::move(left)), right_(std::move(right)) {
  std::vector<std::string> names;
  const bool clash = [&] {
    for (const auto& n : right_->names())
      if (left_->has(n)) return true;
    return false;
  }();
  for (const auto& n : left_->names()) names.push_back(clash ? n + "@1" : n);
  for (const auto& n : right_->names()) names.push_back(clash ? n + "@2" : n);
  combined_ = Alphabet::make(std::move(names));
}

NcElement TensorCarrier::embed_left(const NcElement& a) const {
  if (a.alphabet() != left_) throw DomainError("embed_left alphabet mismatch");
  NcElement r(combined_);
  for (const auto& [w, c] : a.terms()) r.add_term(w, c);
  return r;
}

NcElement TensorCarrier::embed_right(const NcElement& b) const {
  if (b.alphabet() != right_) throw DomainError("embed_right alphabet mismatch");
  NcElement r(combined_);
  for (const auto& [w, c] : b.terms()) {
    Word t;
    for (char ch : w) t.push_back(static_cast<char>(to_right(static_cast<GenId>(ch))));
    r.add_term(t, c);
  }
  return r;
}

NcElement TensorCarrier::tensor(const NcElement& a, const NcElement& b) const {
  return embed_left(a) * embed_right(b);
}

NcElement TensorCarrier::normalize_slots(const NcElement& x) const {
  if (x.alphabet() != combined_) throw DomainError("tensor carrier alphabet mismatch");
  NcElement r(combined_);
  for (const auto& [w, c] : x.terms()) {
    Word t = w;
    std::stable_sort(t.begin(), t.end(), [&](char a, char b) {
      return is_left_letter(static_cast<GenId>(a)) && !is_left_letter(static_cast<GenId>(b));
    });
    r.add_term(t, c);
  }
  return r;
}

std::pair<Word, Word> TensorCarrier::split(const Word& w) const {
  Word l, r;
  for (char ch : w) {
    const GenId g = static_cast<GenId>(ch);
    if (is_left_letter(g)) {
      if (!r.empty()) throw DomainError("split requires a slot-sorted word");
      l.push_back(ch);
    } else {
      r.push_back(static_cast<char>(from_right(g)));
    }
  }
  return {l, r};
}

NcElement TensorCarrier::map_components(
    const NcElement& x, const std::function<NcElement(const Word&)>& f,
    const std::function<NcElement(const Word&)>& g) const {
  NcElement sorted = normalize_slots(x);
  NcElement out(combined_);
  for (const auto& [w, c] : sorted.terms()) {
    auto [lw, rw] = split(w);
    out += tensor(f(lw), g(rw)).scaled(c);
  }
  return out;
}

} // namespace qgl
