#include "qcanon/uqn.hpp"

#include <algorithm>
#include <functional>

#include "qcanon/errors.hpp"
#include "qcanon/modp.hpp"

namespace qcanon {

NegElement NegElement::one(int rank) {
  NegElement x(Weight(static_cast<std::size_t>(rank)));
  x.terms_.emplace(Word{}, Scalar(1));
  return x;
}

NegElement NegElement::generator(int rank, int i) { return from_word(rank, Word{i}); }

NegElement NegElement::from_word(int rank, const Word& w, const Scalar& c) {
  Weight content(static_cast<std::size_t>(rank));
  for (int letter : w) content[letter] += 1;
  NegElement x(content);
  x.add(w, c);
  return x;
}

void NegElement::check_content(const Word& w) const {
  Weight c(content_.rank());
  for (int letter : w) c[letter] += 1;
  if (c != content_) throw DomainError("word " + word_to_string(w) + " does not match element weight");
}

void NegElement::add(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

NegElement& NegElement::operator+=(const NegElement& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty() && content_.rank() == 0) content_ = o.content_;
  if (content_ != o.content_) throw DomainError("adding elements of different weights");
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

NegElement& NegElement::operator-=(const NegElement& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty() && content_.rank() == 0) content_ = o.content_;
  if (content_ != o.content_) throw DomainError("subtracting elements of different weights");
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

NegElement& NegElement::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

NegElement operator*(const NegElement& a, const NegElement& b) {
  NegElement r(a.content_ + b.content_);
  for (const auto& [u, cu] : a.terms_)
    for (const auto& [v, cv] : b.terms_) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      r.add(w, cu * cv);
    }
  return r;
}

std::string NegElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ") ";
    if (w.empty()) {
      out += "1";
      continue;
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k) out += ".";
      out += "F" + std::to_string(w[k] + 1);
    }
  }
  return out;
}

NegElement derivation(const RootDatum& rd, const NegElement& x, int i, Side side) {
  Weight content = x.content();
  if (content[i] == 0) return NegElement(content - Weight::simple(content.rank(), i));
  content[i] -= 1;
  NegElement r(content);
  for (const auto& [w, c] : x.terms()) {
    const auto n = w.size();
    if (side == Side::right) {
      int e = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (w[k] == i) {
          Word v = w;
          v.erase(v.begin() + static_cast<long>(k));
          r.add(v, c * Scalar::q_power(-e));
        }
        e += rd.form(i, w[k]);
      }
    } else {
      int e = 0;
      for (std::size_t k = n; k-- > 0;) {
        if (w[k] == i) {
          Word v = w;
          v.erase(v.begin() + static_cast<long>(k));
          r.add(v, c * Scalar::q_power(-e));
        }
        e += rd.form(i, w[k]);
      }
    }
  }
  return r;
}

NegElement derivation_power(const RootDatum& rd, const NegElement& x, int i, int p, Side side) {
  NegElement y = x;
  for (int k = 0; k < p; ++k) y = derivation(rd, y, i, side);
  return y;
}

std::pair<NegElement, LaurentPoly> clear_denominators(const NegElement& x) {
  LaurentPoly den(1);
  for (const auto& [w, c] : x.terms()) {
    const LaurentPoly& d = c.denominator();
    if (d.is_one()) continue;
    LaurentPoly g = poly_gcd(den, d);
    den *= g.is_one() ? d : exact_divide(d, g);
  }
  if (den.is_one()) return {x, den};
  NegElement y(x.content());
  for (const auto& [w, c] : x.terms())
    y.add(w, Scalar(c.numerator() * exact_divide(den, c.denominator())));
  return {std::move(y), den};
}

namespace {

Scalar divide_by(const Scalar& v, const LaurentPoly& den) {
  if (den.is_one() || v.is_zero()) return v;
  return Scalar(v.laurent(), den);
}

}  // namespace

Scalar coordinate(const RootDatum& rd, const NegElement& x, const Word& w) {
  auto [cleared, den] = clear_denominators(x);
  NegElement y = std::move(cleared);
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    y = derivation(rd, y, *it, Side::right);
    if (y.empty()) return Scalar();
  }
  if (!y.content().is_zero()) throw DomainError("coordinate word does not match element weight");
  auto it = y.terms().find(Word{});
  return it == y.terms().end() ? Scalar() : divide_by(it->second, den);
}

std::vector<Scalar> coordinates_on(const RootDatum& rd, const NegElement& x, const std::vector<Word>& words) {
  std::vector<Scalar> out(words.size());
  if (words.empty()) return out;
  const std::size_t len = words.front().size();
  std::vector<std::size_t> all(words.size());
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (words[k].size() != len) throw DomainError("coordinate words of different lengths");
    all[k] = k;
  }
  // depth = number of trailing letters already applied
  std::function<void(const NegElement&, const std::vector<std::size_t>&, std::size_t)> rec =
      [&](const NegElement& y, const std::vector<std::size_t>& idx, std::size_t depth) {
        if (depth == len) {
          auto it = y.terms().find(Word{});
          Scalar v = it == y.terms().end() ? Scalar() : it->second;
          for (auto k : idx) out[k] = v;
          return;
        }
        std::map<int, std::vector<std::size_t>> groups;
        for (auto k : idx) groups[words[k][len - 1 - depth]].push_back(k);
        for (const auto& [letter, sub] : groups) {
          NegElement z = derivation(rd, y, letter, Side::right);
          if (z.empty()) continue;
          rec(z, sub, depth + 1);
        }
      };
  auto [cleared, den] = clear_denominators(x);
  rec(cleared, all, 0);
  for (auto& v : out) v = divide_by(v, den);
  return out;
}

std::vector<Word> words_of_content(const Weight& content) {
  std::vector<Word> out;
  Word w;
  Weight rest = content;
  int total = content.height();
  std::function<void()> go = [&] {
    if (static_cast<int>(w.size()) == total) {
      out.push_back(w);
      return;
    }
    for (std::size_t i = 0; i < rest.rank(); ++i) {
      if (rest[i] == 0) continue;
      rest[i] -= 1;
      w.push_back(static_cast<int>(i));
      go();
      w.pop_back();
      rest[i] += 1;
    }
  };
  if (content.is_nonnegative()) go();
  return out;
}

unsigned long long count_words_of_content(const Weight& content) {
  // multinomial coefficient
  unsigned long long r = 1;
  int n = 0;
  for (std::size_t i = 0; i < content.rank(); ++i) {
    for (int k = 1; k <= content[i]; ++k) {
      ++n;
      r = r * static_cast<unsigned long long>(n) / static_cast<unsigned long long>(k);
    }
  }
  return r;
}

std::map<Word, Scalar> coordinates(const RootDatum& rd, const NegElement& x) {
  std::map<Word, Scalar> out;
  for (const auto& w : words_of_content(x.content())) out.emplace(w, Scalar());
  // suffix holds the applied letters, last letter of the word first
  Word suffix;
  std::function<void(const NegElement&)> rec = [&](const NegElement& y) {
    if (y.content().is_zero()) {
      auto it = y.terms().find(Word{});
      if (it == y.terms().end()) return;
      Word w(suffix.rbegin(), suffix.rend());
      out[w] = it->second;  // scaled below
      return;
    }
    for (int j = 0; j < y.rank(); ++j) {
      if (y.content()[j] == 0) continue;
      NegElement z = derivation(rd, y, j, Side::right);
      if (z.empty()) continue;
      suffix.push_back(j);
      rec(z);
      suffix.pop_back();
    }
  };
  auto [cleared, den] = clear_denominators(x);
  rec(cleared);
  for (auto& [w, v] : out) v = divide_by(v, den);
  return out;
}

bool is_zero_by_coordinates(const RootDatum& rd, const NegElement& x) {
  if (x.empty()) return true;
  bool nonzero = false;
  std::function<void(const NegElement&)> rec = [&](const NegElement& y) {
    if (nonzero) return;
    if (y.content().is_zero()) {
      if (!y.empty()) nonzero = true;
      return;
    }
    for (int j = 0; j < y.rank() && !nonzero; ++j) {
      if (y.content()[j] == 0) continue;
      NegElement z = derivation(rd, y, j, Side::right);
      if (!z.empty()) rec(z);
    }
  };
  rec(clear_denominators(x).first);
  return !nonzero;
}

Scalar form_normalizer(const RootDatum& rd, const Weight& content) {
  Scalar r(1);
  for (int j = 0; j < rd.rank(); ++j) {
    if (content[j] == 0) continue;
    Scalar f = Scalar(LaurentPoly(1) - LaurentPoly::q_power(2 * rd.d(j)));
    r *= f.pow(-content[j]);
  }
  return r;
}

Scalar bilinear_form(const RootDatum& rd, const NegElement& x, const NegElement& y) {
  if (x.content() != y.content() || x.empty() || y.empty()) return Scalar();
  std::vector<Word> rev;
  std::vector<Scalar> coef;
  for (const auto& [u, c] : x.terms()) {
    rev.emplace_back(u.rbegin(), u.rend());
    coef.push_back(c);
  }
  auto phi = coordinates_on(rd, y, rev);
  Scalar s;
  for (std::size_t k = 0; k < rev.size(); ++k) s += coef[k] * phi[k];
  return s * form_normalizer(rd, x.content());
}

NegElement star(const NegElement& x) {
  NegElement r(x.content());
  for (const auto& [w, c] : x.terms()) r.add(Word(w.rbegin(), w.rend()), c);
  return r;
}

NegElement bar_elem(const NegElement& x) {
  NegElement r(x.content());
  for (const auto& [w, c] : x.terms()) r.add(w, c.bar());
  return r;
}

NegElement divided_power(const RootDatum& rd, int i, int n) {
  Scalar c = Scalar(LaurentPoly(1)) / Scalar(quantum_factorial(n, rd.d(i)));
  return NegElement::from_word(rd.rank(), Word(static_cast<std::size_t>(n), i), c);
}

ZeroTest full_zero_test(const RootDatum& rd) {
  return [&rd](const NegElement& x) { return is_zero_by_coordinates(rd, x); };
}

std::vector<StringComponent> i_string_decompose(const RootDatum& rd, const NegElement& x, int i,
                                                const ZeroTest& is_zero) {
  std::vector<StringComponent> parts;
  NegElement rest = x;
  while (!is_zero(rest)) {
    // top of the string
    NegElement top = rest;
    int n = 0;
    while (true) {
      NegElement next = derivation(rd, top, i, Side::right);
      if (next.empty() || is_zero(next)) break;
      top = std::move(next);
      ++n;
    }
    Scalar c = Scalar::q_power(rd.d(i) * n * (n - 1) / 2);
    NegElement u = top * c;
    rest -= divided_power(rd, i, n) * u;
    parts.push_back({n, std::move(u)});
  }
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  return parts;
}

NegElement i_string_recompose(const RootDatum& rd, const std::vector<StringComponent>& parts, int i,
                              const Weight& content) {
  NegElement x(content);
  for (const auto& p : parts) x += divided_power(rd, i, p.n) * p.u;
  return x;
}

NegElement kashiwara_op(const RootDatum& rd, const NegElement& x, int i, KashiwaraDir dir,
                        const ZeroTest& is_zero) {
  Weight content = x.content();
  content[i] += dir == KashiwaraDir::f ? 1 : -1;
  NegElement r(content);
  if (dir == KashiwaraDir::e && x.content()[i] == 0) return r;
  for (const auto& p : i_string_decompose(rd, x, i, is_zero)) {
    int m = dir == KashiwaraDir::f ? p.n + 1 : p.n - 1;
    if (m < 0) continue;
    r += divided_power(rd, i, m) * p.u;
  }
  return r;
}

FunctionalBases::FunctionalBases(const RootDatum& rd, Spanning spanning)
    : rd_(rd), spanning_(std::move(spanning)) {}

const std::vector<Word>& FunctionalBases::words(const Weight& content) {
  return cache_.get(content, [&] { return select(content); });
}

std::vector<Word> FunctionalBases::select(const Weight& content) {
  if (content.is_zero()) return {Word{}};
  const auto dim = static_cast<std::size_t>(rd_.kostant_count(content));
  if (dim == 0) return {};
  std::vector<NegElement> span = spanning_(content);
  std::vector<std::map<Word, Scalar>> coords;
  coords.reserve(span.size());
  for (const auto& x : span) coords.push_back(coordinates(rd_, x));
  std::vector<Word> all = words_of_content(content);
  for (std::uint64_t t : {7919ULL, 104729ULL, 1299709ULL, 15485863ULL, 179424673ULL}) {
    modp::Echelon ech(span.size());
    std::vector<Word> chosen;
    bool bad = false;
    for (const auto& w : all) {
      std::vector<std::uint64_t> col(span.size());
      for (std::size_t r = 0; r < span.size() && !bad; ++r) {
        auto v = modp::evaluate(coords[r].at(w), t);
        if (!v) bad = true;
        else col[r] = *v;
      }
      if (bad) break;
      if (ech.add(std::move(col))) chosen.push_back(w);
      if (chosen.size() == dim) return chosen;
    }
  }
  throw IntegrityError("could not find " + std::to_string(dim) + " independent coordinate functionals at weight -(" +
                       content.key() + ")");
}

std::vector<Scalar> FunctionalBases::coords(const NegElement& x) {
  return coordinates_on(rd_, x, words(x.content()));
}

bool FunctionalBases::is_zero(const NegElement& x) {
  if (x.empty()) return true;
  for (const auto& c : coords(x))
    if (!c.is_zero()) return false;
  return true;
}

bool FunctionalBases::equal(const NegElement& a, const NegElement& b) {
  if (a.content() != b.content()) return a.empty() && b.empty();
  return is_zero(a - b);
}

ZeroTest FunctionalBases::zero_test() {
  return [this](const NegElement& x) { return is_zero(x); };
}

}  // namespace qcanon
