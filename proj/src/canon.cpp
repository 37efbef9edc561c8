#include "qcanon/canon.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "qcanon/errors.hpp"

namespace qcanon {

std::size_t CanonicalBasisSlice::index_of(const Tuple& t) const {
  auto it = std::lower_bound(tuples.begin(), tuples.end(), t);
  if (it == tuples.end() || *it != t) throw DomainError("no canonical element with datum " + tuple_to_string(t));
  return static_cast<std::size_t>(it - tuples.begin());
}

std::map<Tuple, Scalar> CanonicalBasisSlice::pbw_coords(std::size_t b) const {
  std::map<Tuple, Scalar> out;
  for (std::size_t c = 0; c < tuples.size(); ++c)
    if (!coeffs[b][c].is_zero()) out.emplace(tuples[c], coeffs[b][c]);
  return out;
}

std::vector<Scalar> CanonicalBasisSlice::canonical_coords(const std::vector<Scalar>& pbw) const {
  std::vector<Scalar> residual = pbw, y(tuples.size());
  for (std::size_t b : solve_order) {
    y[b] = residual[b];
    if (y[b].is_zero()) continue;
    for (std::size_t c = 0; c < tuples.size(); ++c)
      if (!coeffs[b][c].is_zero()) residual[c] -= y[b] * coeffs[b][c];
  }
  return y;
}

std::optional<std::size_t> crystal_leading_index(const std::vector<Scalar>& coeffs) {
  std::optional<std::size_t> lead;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Scalar& c = coeffs[k];
    if (c.is_zero()) continue;
    // The denominator has constant term 1, so c is regular at q = 0 iff the
    // numerator has no negative powers; its value there is the constant term.
    if (c.numerator().low_degree() < 0)
      throw IntegrityError("crystal expansion coefficient " + c.to_string() + " is not regular at q = 0");
    mpq_class v = c.numerator().coeff(0);
    if (v == 0) continue;
    if (v != 1 || lead)
      throw IntegrityError("crystal expansion does not reduce to a single basis element mod q");
    lead = k;
  }
  return lead;
}

Context::Context(RootDatum rd, ContextOptions options, std::optional<Word> reference)
    : rd_(std::move(rd)), options_(options) {
  reference_ = reference.value_or(rd_.reference_word());
  rd_.positive_roots_of(reference_);
  functionals_ = std::make_unique<FunctionalBases>(rd_, [this](const Weight& content) {
    PbwBasis& b = reference_basis();
    b.check_capacity(content);
    std::vector<NegElement> span;
    for (const auto& t : b.tuples(content)) span.push_back(b.monomial(t));
    return span;
  });
}

void Context::check_capacity(const Weight& content) const {
  if (content.height() > options_.height_bound)
    throw CapacityError("weight -(" + content.to_string() + ") of height " + std::to_string(content.height()) +
                        " exceeds the height bound " + std::to_string(options_.height_bound));
}

PbwBasis& Context::basis(const Word& w) {
  return *bases_.get(w, [&] {
    std::vector<NegElement> rv;
    if (const auto* pre = preloaded_roots_.find(w)) rv = *pre;
    return std::make_unique<PbwBasis>(rd_, w, PbwLimits{options_.height_bound, options_.max_words}, *functionals_,
                                      std::move(rv));
  });
}

std::vector<Word> Context::known_words() const {
  std::vector<Word> out;
  bases_.for_each([&](const Word& w, const auto&) { out.push_back(w); });
  return out;
}

void Context::preload_root_vectors(const Word& w, std::vector<NegElement> rv) {
  preloaded_roots_.put(w, std::move(rv));
}

void Context::preload_slice(CanonicalBasisSlice s) {
  check_capacity(s.content);
  PbwBasis& pb = basis(s.word);
  const std::size_t n = s.tuples.size();
  bool ok = s.tuples == pb.tuples(s.content) && s.coeffs.size() == n && s.solve_order.size() == n;
  for (std::size_t k = 0; ok && k < n; ++k) ok = s.coeffs[k].size() == n && s.coeffs[k][k].is_one();
  if (!ok) throw IntegrityError("stored slice does not match the PBW basis at -(" + s.content.to_string() + ")");
  if (s.elements.empty()) {
    for (std::size_t k = 0; k < n; ++k) {
      NegElement x(s.content);
      for (std::size_t c = 0; c < n; ++c)
        if (!s.coeffs[k][c].is_zero()) x += pb.monomial(s.tuples[c]) * s.coeffs[k][c];
      s.elements.push_back(std::move(x));
    }
  }
  auto key = std::make_pair(s.word, s.content);
  slices_.put(key, std::move(s));
}

std::vector<std::pair<Word, Weight>> Context::computed_slices() const {
  std::vector<std::pair<Word, Weight>> out;
  slices_.for_each([&](const auto& key, const auto&) { out.push_back(key); });
  return out;
}

const CanonicalBasisSlice& Context::slice(const Word& w, const Weight& content) {
  check_capacity(content);
  return slices_.get({w, content}, [&] { return compute_slice(w, content); });
}

CanonicalBasisSlice Context::compute_slice(const Word& w, const Weight& content) {
  PbwBasis& pb = basis(w);
  CanonicalBasisSlice s;
  s.word = w;
  s.content = content;
  s.tuples = pb.tuples(content);
  const std::size_t n = s.tuples.size();

  // bar matrix: m[k][j] = coefficient of F^{t_j} in bar(F^{t_k})
  ScalarMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) m[k] = pb.expand_dense(bar_elem(pb.monomial(s.tuples[k])));

  bool lex = true;
  for (std::size_t k = 0; k < n && lex; ++k) {
    if (!m[k][k].is_one()) lex = false;
    for (std::size_t j = 0; j < k && lex; ++j)
      if (!m[k][j].is_zero()) lex = false;
  }
  std::vector<std::size_t> order;
  if (lex) {
    s.order = "left-lex";
    for (std::size_t k = 0; k < n; ++k) order.push_back(k);
  } else {
    s.order = "topological";
    std::vector<int> indegree(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      if (!m[k][k].is_one())
        throw IntegrityError("bar matrix has a non-unit diagonal at -(" + content.to_string() + ")");
      for (std::size_t j = 0; j < n; ++j)
        if (j != k && !m[k][j].is_zero()) ++indegree[j];
    }
    std::set<std::size_t> ready;
    for (std::size_t k = 0; k < n; ++k)
      if (indegree[k] == 0) ready.insert(k);
    while (!ready.empty()) {
      std::size_t k = *ready.begin();
      ready.erase(ready.begin());
      order.push_back(k);
      for (std::size_t j = 0; j < n; ++j)
        if (j != k && !m[k][j].is_zero() && --indegree[j] == 0) ready.insert(j);
    }
    if (order.size() != n)
      throw IntegrityError("no unitriangular order for the bar matrix at -(" + content.to_string() + ")");
  }
  s.solve_order = order;

  s.coeffs.assign(n, std::vector<Scalar>(n));
  for (std::size_t a = n; a-- > 0;) {
    const std::size_t k = order[a];
    // sum_{later j} m[k][j] F_j rewritten in the already computed G_j
    std::vector<Scalar> residual(n), y(n);
    for (std::size_t b = a + 1; b < n; ++b) residual[order[b]] = m[k][order[b]];
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::size_t j = order[b];
      y[j] = residual[j];
      if (y[j].is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (!s.coeffs[j][c].is_zero()) residual[c] -= y[j] * s.coeffs[j][c];
    }
    std::vector<Scalar>& g = s.coeffs[k];
    g[k] = Scalar(1);
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::size_t j = order[b];
      if (y[j].is_zero()) continue;
      if (!y[j].is_laurent() || !(y[j].bar() == -y[j]))
        throw IntegrityError("bar matrix entry is not antisymmetric at -(" + content.to_string() + ")");
      // r - bar(r) = y with r in qZ[q]: r is the positive-degree part of y
      Scalar r(y[j].laurent() - truncate_below(y[j].laurent(), 1));
      if (r.is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (!s.coeffs[j][c].is_zero()) g[c] += r * s.coeffs[j][c];
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    NegElement x(content);
    for (std::size_t c = 0; c < n; ++c)
      if (!s.coeffs[k][c].is_zero()) x += pb.monomial(s.tuples[c]) * s.coeffs[k][c];
    s.elements.push_back(std::move(x));
  }
  return s;
}

std::vector<Scalar> Context::canonical_expand(const Word& w, const NegElement& x) {
  const auto& s = slice(w, x.content());
  return s.canonical_coords(basis(w).expand_dense(x));
}

Tuple Context::identify(const Word& w, const NegElement& x) {
  auto y = canonical_expand(w, x);
  const auto& s = slice(w, x.content());
  std::optional<std::size_t> hit;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (y[k].is_zero()) continue;
    if (!y[k].is_one() || hit) throw IntegrityError("element is not a canonical basis element");
    hit = k;
  }
  if (!hit) throw IntegrityError("element is zero");
  return s.tuples[*hit];
}

const NegElement& Context::element(const Word& w, const Tuple& datum) {
  const auto& s = slice(w, basis(w).content_of(datum));
  return s.elements[s.index_of(datum)];
}

const CrystalLabel& Context::label(const Word& w, const Tuple& datum) {
  return labels_.get({w, datum}, [&] { return compute_label(w, datum); });
}

const CrystalLabel& Context::unit_label(const Word& w) { return label(w, Tuple(w.size(), 0)); }

const CrystalLabel& Context::star_label(const CrystalLabel& b) {
  return label(b.word, identify(b.word, star(element(b.word, b.datum))));
}

const Word& Context::string_word(int i) {
  return string_words_.get(i, [&] {
    return !reference_.empty() && reference_.front() == i ? reference_ : rd_.reduced_word_with_prefix({i});
  });
}

CrystalLabel Context::compute_label(const Word& w, const Tuple& datum) {
  CrystalLabel b;
  b.word = w;
  b.datum = datum;
  b.content = basis(w).content_of(datum);
  const NegElement& g = element(w, datum);
  const NegElement gs = star(g);
  for (int i = 0; i < rd_.rank(); ++i) {
    // x lies in F_i^(p) U^- iff its PBW expansion for a word starting with i
    // only involves first exponents >= p.
    auto lowest = [&](const NegElement& x) {
      auto z = basis(string_word(i)).expand(x);
      if (z.empty()) throw IntegrityError("canonical element vanishes");
      int m = z.begin()->first.front();
      for (const auto& [t, c] : z) m = std::min(m, t.front());
      return m;
    };
    int e = lowest(g);
    int es = lowest(gs);
    int pair = rd_.pairing(b.weight(), i);
    b.eps.push_back(e);
    b.eps_star.push_back(es);
    b.phi.push_back(e + pair);
    b.phi_star.push_back(es + pair);
  }
  return b;
}

std::vector<Weight> Context::contents_of_height(int h) const {
  std::vector<Weight> out;
  Weight c(static_cast<std::size_t>(rd_.rank()));
  std::function<void(int, int)> go = [&](int k, int rest) {
    if (k == rd_.rank() - 1) {
      c[k] = rest;
      out.push_back(c);
      return;
    }
    for (int v = rest; v >= 0; --v) {
      c[k] = v;
      go(k + 1, rest - v);
    }
  };
  go(0, h);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CrystalLabel> Context::labels_up_to(int h, std::optional<Word> w) {
  Word word = w.value_or(reference_);
  std::vector<CrystalLabel> out;
  for (int ht = 0; ht <= h; ++ht)
    for (const auto& c : contents_of_height(ht))
      for (const auto& t : slice(word, c).tuples) out.push_back(label(word, t));
  return out;
}

std::optional<Tuple> Context::string_step(const Word& j, const NegElement& x, bool raise) {
  PbwBasis& pb = basis(j);
  Weight target = x.content();
  target[j.front()] += raise ? -1 : 1;
  if (target[j.front()] < 0) return std::nullopt;
  check_capacity(target);
  std::map<Tuple, Scalar> shifted;
  for (const auto& [t, c] : pb.expand(x)) {
    Tuple u = t;
    u.front() += raise ? -1 : 1;
    if (u.front() >= 0) shifted.emplace(std::move(u), c);
  }
  if (shifted.empty()) return std::nullopt;
  const auto& s = slice(j, target);
  std::vector<Scalar> dense(s.size());
  for (const auto& [t, c] : shifted) dense[s.index_of(t)] = c;
  auto lead = crystal_leading_index(s.canonical_coords(dense));
  if (!lead) return std::nullopt;
  return s.tuples[*lead];
}

std::optional<CrystalLabel> Context::crystal_step(const CrystalLabel& b, int i, CrystalDir dir) {
  const bool raising = dir == CrystalDir::e || dir == CrystalDir::e_star;
  const bool starred = dir == CrystalDir::e_star || dir == CrystalDir::f_star;
  Weight target = b.content;
  target[i] += raising ? -1 : 1;
  if (target[i] < 0) return std::nullopt;
  check_capacity(target);
  const Word& j = string_word(i);
  const NegElement& g = element(b.word, b.datum);
  auto t = string_step(j, starred ? star(g) : g, raising);
  if (!t) {
    if (!raising) throw IntegrityError("lowering crystal operator vanished mod q");
    return std::nullopt;
  }
  if (!starred && j == b.word) return label(b.word, *t);
  const NegElement& y = element(j, *t);
  return label(b.word, identify(b.word, starred ? star(y) : y));
}

namespace {

CrystalLabel must(std::optional<CrystalLabel> b, const char* what) {
  if (!b) throw IntegrityError(std::string("crystal step unexpectedly null in ") + what);
  return *b;
}

}  // namespace

CrystalLabel Context::saito_reflect(const CrystalLabel& b, int i, SaitoDir dir) {
  CrystalLabel cur = b;
  if (dir == SaitoDir::lambda_inverse) {
    if (b.eps[i] != 0) throw DomainError("inverse Saito reflection needs eps_i(b) = 0");
    int up = b.eps_star[i], down = b.phi_star[i];
    for (int k = 0; k < up; ++k) cur = must(crystal_step(cur, i, CrystalDir::e_star), "saito");
    for (int k = 0; k < down; ++k) cur = must(crystal_step(cur, i, CrystalDir::f), "saito");
  } else {
    if (b.eps_star[i] != 0) throw DomainError("Saito reflection needs eps_i^*(b) = 0");
    int up = b.eps[i], down = b.phi[i];
    for (int k = 0; k < up; ++k) cur = must(crystal_step(cur, i, CrystalDir::e), "saito");
    for (int k = 0; k < down; ++k) cur = must(crystal_step(cur, i, CrystalDir::f_star), "saito");
  }
  return cur;
}

std::pair<CrystalLabel, int> Context::kashiwara_embed(const CrystalLabel& b, int i) {
  CrystalLabel cur = b;
  for (int k = 0; k < b.eps_star[i]; ++k) cur = must(crystal_step(cur, i, CrystalDir::e_star), "embedding");
  return {cur, -b.eps_star[i]};
}

}  // namespace qcanon
