#include "qcanon/pbw.hpp"

#include <cctype>
#include <functional>

#include "qcanon/errors.hpp"
#include "qcanon/mixedalg.hpp"

namespace qcanon {

std::string tuple_to_string(const Tuple& c) {
  std::string out = "(";
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(c[k]);
  }
  return out + ")";
}

Tuple parse_tuple(std::string_view text) {
  Tuple t;
  std::string cur;
  for (char ch : text) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      cur += ch;
    } else if (ch == ',' || ch == ')') {
      if (!cur.empty()) t.push_back(std::stoi(cur));
      cur.clear();
    } else if (ch != '(' && !std::isspace(static_cast<unsigned char>(ch))) {
      throw ParseError("bad exponent tuple '" + std::string(text) + "'");
    }
  }
  if (!cur.empty()) t.push_back(std::stoi(cur));
  return t;
}

std::vector<NegElement> compute_root_vectors(const RootDatum& rd, const Word& word) {
  rd.positive_roots_of(word);  // validates the word
  ZeroTest zero = full_zero_test(rd);
  std::vector<NegElement> out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    MixedElement x = MixedElement::f(rd.rank(), word[k]);
    NegElement current = NegElement::generator(rd.rank(), word[k]);
    for (std::size_t m = k; m-- > 0;) {
      x = braid(rd, MixedElement::from_neg(current), word[m], BraidVariant::t_double_prime, 1);
      current = project_to_neg(rd, x, zero);
    }
    out.push_back(current);
  }
  return out;
}

PbwBasis::PbwBasis(const RootDatum& rd, Word word, PbwLimits limits, FunctionalBases& functionals,
                   std::vector<NegElement> root_vectors)
    : rd_(rd), word_(std::move(word)), limits_(limits), functionals_(functionals) {
  roots_ = rd_.positive_roots_of(word_);
  root_vectors_ = root_vectors.empty() ? compute_root_vectors(rd_, word_) : std::move(root_vectors);
  if (root_vectors_.size() != word_.size()) throw IntegrityError("root vector count mismatch");
  for (std::size_t k = 0; k < roots_.size(); ++k)
    if (root_vectors_[k].content() != roots_[k])
      throw IntegrityError("root vector " + std::to_string(k + 1) + " has the wrong weight");
}

void PbwBasis::check_capacity(const Weight& content) const {
  if (content.height() > limits_.height_bound)
    throw CapacityError("weight -(" + content.to_string() + ") of height " + std::to_string(content.height()) +
                        " exceeds the height bound " + std::to_string(limits_.height_bound));
  if (count_words_of_content(content) > limits_.max_words)
    throw CapacityError("weight space -(" + content.to_string() + ") has too many words");
}

Weight PbwBasis::content_of(const Tuple& c) const {
  Weight w(static_cast<std::size_t>(rd_.rank()));
  for (std::size_t k = 0; k < c.size(); ++k) w += c[k] * roots_[k];
  return w;
}

const std::vector<Tuple>& PbwBasis::tuples(const Weight& content) {
  return tuples_.get(content, [&] {
    std::vector<Tuple> out;
    Tuple c(roots_.size(), 0);
    std::function<void(std::size_t, const Weight&)> go = [&](std::size_t k, const Weight& rest) {
      if (k == roots_.size()) {
        if (rest.is_zero()) out.push_back(c);
        return;
      }
      Weight r = rest;
      for (int n = 0; r.is_nonnegative(); ++n) {
        c[k] = n;
        go(k + 1, r);
        r -= roots_[k];
      }
      c[k] = 0;
    };
    if (content.is_nonnegative()) go(0, content);
    return out;
  });
}

const NegElement& PbwBasis::root_power(int k, int n) {
  return powers_.get({k, n}, [&] {
    NegElement x = NegElement::one(rd_.rank());
    for (int j = 0; j < n; ++j) x = x * root_vectors_[k];
    return x * (Scalar(1) / Scalar(quantum_factorial(n, root_d(k))));
  });
}

const NegElement& PbwBasis::monomial(const Tuple& c) {
  if (c.size() != roots_.size()) throw DomainError("tuple length does not match the word");
  return monomials_.get(c, [&] {
    std::size_t k = 0;
    while (k < c.size() && c[k] == 0) ++k;
    if (k == c.size()) return NegElement::one(rd_.rank());
    Tuple rest = c;
    rest[k] = 0;
    return root_power(static_cast<int>(k), c[k]) * monomial(rest);
  });
}

Scalar PbwBasis::dual_factor(const Tuple& d) const {
  Scalar f(1);
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] == 0) continue;
    int dk = root_d(static_cast<int>(k));
    LaurentPoly one_minus = LaurentPoly(1) - LaurentPoly::q_power(2 * dk);
    f *= Scalar(LaurentPoly::q_power(dk * d[k] * (d[k] - 1) / 2) * one_minus.pow(static_cast<unsigned>(d[k])) *
                quantum_factorial(d[k], dk));
  }
  return f;
}

NegElement PbwBasis::dual_monomial(const Tuple& d) { return monomial(d) * dual_factor(d); }

const PbwBasis::PairingTable& PbwBasis::pairing_table(const Weight& content) {
  check_capacity(content);
  return tables_.get(content, [&] {
    const auto& ts = tuples(content);
    PairingTable t;
    t.normalizer = form_normalizer(rd_, content);
    for (std::size_t c = 0; c < ts.size(); ++c) {
      Scalar f = dual_factor(ts[c]);
      for (auto& [w, v] : coordinates(rd_, monomial(ts[c]))) {
        if (v.is_zero()) continue;
        auto& row = t.rows[Word(w.rbegin(), w.rend())];
        row.resize(ts.size());
        row[c] = v * f;
      }
    }
    return t;
  });
}

const ScalarMatrix& PbwBasis::coordinate_matrix(const Weight& content) {
  check_capacity(content);
  return matrices_.get(content, [&] {
    const auto& ts = tuples(content);
    const auto& words = functionals_.words(content);
    if (words.size() != ts.size())
      throw IntegrityError("functional basis and PBW tuples differ in size at -(" + content.to_string() + ")");
    ScalarMatrix p(ts.size(), std::vector<Scalar>(ts.size()));
    for (std::size_t c = 0; c < ts.size(); ++c) {
      auto col = coordinates_on(rd_, monomial(ts[c]), words);
      for (std::size_t r = 0; r < ts.size(); ++r) p[r][c] = col[r];
    }
    return p;
  });
}

const ScalarMatrix& PbwBasis::inverse_matrix(const Weight& content) {
  check_capacity(content);
  return inverses_.get(content, [&] { return inverse(coordinate_matrix(content)); });
}

void PbwBasis::preload_inverse(const Weight& content, ScalarMatrix inv) { inverses_.put(content, std::move(inv)); }

std::vector<Weight> PbwBasis::computed_weights() const {
  std::vector<Weight> out;
  inverses_.for_each([&](const Weight& w, const ScalarMatrix&) { out.push_back(w); });
  return out;
}

std::vector<Scalar> PbwBasis::expand_dense(const NegElement& x) {
  const Weight& content = x.content();
  if (content.is_zero()) {
    auto it = x.terms().find(Word{});
    return {it == x.terms().end() ? Scalar() : it->second};
  }
  const auto& table = pairing_table(content);
  const std::size_t n = tuples(content).size();
  auto [y, den] = clear_denominators(x);
  std::vector<Scalar> out(n);
  for (const auto& [u, c] : y.terms()) {
    auto it = table.rows.find(u);
    if (it == table.rows.end()) continue;
    for (std::size_t k = 0; k < n; ++k)
      if (!it->second[k].is_zero()) out[k] += c * it->second[k];
  }
  Scalar scale = table.normalizer / Scalar(den);
  for (auto& v : out)
    if (!v.is_zero()) v *= scale;
  return out;
}

std::vector<Scalar> PbwBasis::expand_by_solve(const NegElement& x) {
  const Weight& content = x.content();
  if (content.is_zero()) return expand_dense(x);
  return multiply(inverse_matrix(content), functionals_.coords(x));
}

std::map<Tuple, Scalar> PbwBasis::expand(const NegElement& x) {
  auto z = expand_dense(x);
  const auto& ts = tuples(x.content());
  std::map<Tuple, Scalar> out;
  for (std::size_t k = 0; k < ts.size(); ++k)
    if (!z[k].is_zero()) out.emplace(ts[k], z[k]);
  return out;
}

std::map<Tuple, Scalar> PbwBasis::expand_by_pairing(const NegElement& x) {
  check_capacity(x.content());
  std::map<Tuple, Scalar> out;
  for (const auto& t : tuples(x.content())) {
    Scalar v = bilinear_form(rd_, dual_monomial(t), x);
    if (!v.is_zero()) out.emplace(t, v);
  }
  return out;
}

}  // namespace qcanon
