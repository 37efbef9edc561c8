#include "qcanon/transition.hpp"

#include <functional>

#include "qcanon/errors.hpp"

namespace qcanon {

std::vector<Word> rotated_words(const RootDatum& rd, const Word& w) {
  std::vector<Word> out{w};
  Word cur = w;
  for (std::size_t l = 1; l < w.size(); ++l) {
    int first = cur.front();
    cur.erase(cur.begin());
    cur.push_back(rd.star_index(first));
    out.push_back(cur);
  }
  return out;
}

namespace {

// Contents of b_0, ..., b_{N-1} along a chain for exponent tuple d.
std::vector<Weight> chain_contents(const std::vector<std::vector<Weight>>& rot_roots, const Tuple& d) {
  const std::size_t n = d.size();
  std::vector<Weight> out;
  for (std::size_t l = 0; l < n; ++l) {
    Weight c(rot_roots[0][0].rank());
    for (std::size_t m = l; m < n; ++m) c += d[m] * rot_roots[l][m - l];
    out.push_back(c);
  }
  return out;
}

std::vector<std::vector<Weight>> rotation_roots(const RootDatum& rd, const Word& w) {
  std::vector<std::vector<Weight>> out;
  for (const auto& r : rotated_words(rd, w)) out.push_back(rd.positive_roots_of(r));
  return out;
}

void enumerate_tuples(const std::vector<Weight>& roots, const Weight& content,
                      const std::function<void(const Tuple&)>& f) {
  Tuple c(roots.size(), 0);
  std::function<void(std::size_t, const Weight&)> go = [&](std::size_t k, const Weight& rest) {
    if (k == roots.size()) {
      if (rest.is_zero()) f(c);
      return;
    }
    Weight r = rest;
    for (int n = 0; r.is_nonnegative(); ++n) {
      c[k] = n;
      go(k + 1, r);
      r -= roots[k];
    }
    c[k] = 0;
  };
  go(0, content);
}

}  // namespace

int formula_height(const RootDatum& rd, const Word& w, int bound) {
  auto rr = rotation_roots(rd, w);
  int best = 0;
  std::function<void(int, Weight&)> contents = [&](int k, Weight& c) {
    if (k == rd.rank()) {
      if (c.height() > bound) return;
      enumerate_tuples(rr[0], c, [&](const Tuple& d) {
        auto cc = chain_contents(rr, d);
        for (std::size_t l = 0; l < d.size(); ++l)
          if (d[l] > 0) best = std::max(best, cc[l].height());
      });
      return;
    }
    for (int v = 0; v <= bound; ++v) {
      c[k] = v;
      contents(k + 1, c);
    }
    c[k] = 0;
  };
  Weight c(static_cast<std::size_t>(rd.rank()));
  contents(0, c);
  return std::max(best, bound);
}

const Row& TransitionEngine::row(Kind kind, const Word& w, int i, int p, const Tuple& b) {
  return rows_.get({static_cast<int>(kind), w, i, p, b}, [&] { return compute_row(kind, w, i, p, b); });
}

Row TransitionEngine::compute_row(Kind kind, const Word& w, int i, int p, const Tuple& b) {
  const RootDatum& rd = ctx_.datum();
  const NegElement& g = ctx_.element(w, b);
  if (p == 0) return Row{{b, Scalar(1)}};
  NegElement x;
  if (kind == Kind::c) {
    x = divided_power(rd, i, p) * g;
  } else {
    if (g.content()[i] < p) return Row{};
    x = derivation_power(rd, g, i, p, kind == Kind::d_hat ? Side::right : Side::left);
  }
  const auto& s = ctx_.slice(w, x.content());
  auto y = ctx_.canonical_expand(w, x);
  Row out;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (y[k].is_zero()) continue;
    if (!y[k].is_laurent())
      throw IntegrityError("structure constant " + y[k].to_string() + " is not a Laurent polynomial");
    out.emplace(s.tuples[k], y[k]);
  }
  return out;
}

const Row& TransitionEngine::c_row(const Word& w, int i, int p, const Tuple& b) { return row(Kind::c, w, i, p, b); }
const Row& TransitionEngine::d_hat_row(const Word& w, int i, int p, const Tuple& b) {
  return row(Kind::d_hat, w, i, p, b);
}
const Row& TransitionEngine::d_row(const Word& w, int i, int p, const Tuple& b) { return row(Kind::d, w, i, p, b); }

StructureConstants TransitionEngine::structure_constants(const Word& w, int i, int p, const Tuple& b) {
  return {c_row(w, i, p, b), d_row(w, i, p, b), d_hat_row(w, i, p, b)};
}

Row TransitionEngine::zeta_direct(const Word& w, const CrystalLabel& b) {
  Row out = ctx_.basis(w).expand(ctx_.element(b.word, b.datum));
  for (const auto& [t, c] : out)
    if (!c.is_laurent()) throw IntegrityError("transition coefficient " + c.to_string() + " is not Laurent");
  return out;
}

Scalar TransitionEngine::zeta_formula(const Word& w, const CrystalLabel& b, const Tuple& d) {
  const RootDatum& rd = ctx_.datum();
  const std::size_t n = w.size();
  if (d.size() != n) throw DomainError("tuple length does not match the word");
  const auto words = rotated_words(rd, w);
  std::vector<std::vector<Weight>> rr;
  for (const auto& r : words) rr.push_back(rd.positive_roots_of(r));
  const auto contents = chain_contents(rr, d);
  if (contents[0] != b.content) return Scalar();

  const Tuple start = b.word == w ? b.datum : ctx_.identify(w, ctx_.element(b.word, b.datum));
  std::map<std::pair<std::size_t, Tuple>, Scalar> memo;
  // step l (1-based) consumes d_l with b_{l-1} given by its datum w.r.t. words[l-1]
  std::function<Scalar(std::size_t, const Tuple&)> rec = [&](std::size_t l, const Tuple& t) -> Scalar {
    auto key = std::make_pair(l, t);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int i = w[l - 1];
    const int p = d[l - 1];
    Scalar total;
    auto shift = [&](const Tuple& s) {
      Tuple u(s.begin() + 1, s.end());
      u.push_back(0);
      return u;
    };
    if (l == n) {
      if (p == 0) {
        total = contents[n - 1].is_zero() ? Scalar(1) : Scalar();
      } else {
        const Row& r = d_hat_row(words[l - 1], i, p, t);
        auto it = r.find(Tuple(n, 0));
        if (it != r.end()) total = it->second;
      }
    } else if (p == 0) {
      // d^{i,0} is the identity; b~ = b_{l-1} must have eps_i = 0
      if (t.front() == 0) total = rec(l + 1, shift(t));
    } else {
      for (const auto& [s, v] : d_hat_row(words[l - 1], i, p, t)) {
        if (s.front() != 0) continue;  // only images of the Saito reflection
        total += v * rec(l + 1, shift(s));
      }
    }
    memo.emplace(key, total);
    return total;
  };
  Scalar pref(1);
  for (std::size_t k = 0; k < n; ++k) pref *= Scalar::q_power(rd.d(w[k]) * d[k] * (d[k] - 1) / 2);
  return pref * rec(1, start);
}

Row TransitionEngine::zeta_formula_row(const Word& w, const CrystalLabel& b) {
  Row out;
  for (const auto& t : ctx_.basis(w).tuples(b.content)) {
    Scalar v = zeta_formula(w, b, t);
    if (!v.is_zero()) out.emplace(t, v);
  }
  return out;
}

}  // namespace qcanon
