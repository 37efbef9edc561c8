#include "qcanon/mixedalg.hpp"

#include "qcanon/errors.hpp"

namespace qcanon {

namespace {

Weight letters_content(int rank, const Word& w) {
  Weight c(static_cast<std::size_t>(rank));
  for (int x : w) c[x] += 1;
  return c;
}

Scalar inv_qi_minus(const RootDatum& rd, int i) {
  // 1 / (q_i - q_i^{-1})
  LaurentPoly den = LaurentPoly::q_power(rd.d(i)) - LaurentPoly::q_power(-rd.d(i));
  return Scalar(LaurentPoly(1), den);
}

// F_i . y
MixedElement left_f(const MixedElement& y, int i) {
  MixedElement r(y.rank());
  for (const auto& [t, c] : y.terms()) {
    MixedTerm u = t;
    u.f.insert(u.f.begin(), i);
    r.add(u, c);
  }
  return r;
}

// K_mu . y
MixedElement left_k(const RootDatum& rd, const MixedElement& y, const Weight& mu) {
  MixedElement r(y.rank());
  for (const auto& [t, c] : y.terms()) {
    MixedTerm u = t;
    u.k += mu;
    int e = -rd.form(mu, letters_content(y.rank(), t.f));
    r.add(u, c * Scalar::q_power(e));
  }
  return r;
}

// E_i . y
MixedElement left_e(const RootDatum& rd, const MixedElement& y, int i) {
  MixedElement r(y.rank());
  const Scalar inv = inv_qi_minus(rd, i);
  const Weight ai = rd.simple_root(i);
  for (const auto& [t, c] : y.terms()) {
    MixedTerm moved{t.f, t.k, t.e};
    moved.e.insert(moved.e.begin(), i);
    r.add(moved, c * Scalar::q_power(-rd.form_with_simple(t.k, i)));
    int s = 0;  // sum over letters to the right of position j of (alpha_i, alpha_{f_m})
    for (std::size_t j = t.f.size(); j-- > 0;) {
      if (t.f[j] == i) {
        Word f = t.f;
        f.erase(f.begin() + static_cast<long>(j));
        r.add(MixedTerm{f, t.k + ai, t.e}, c * inv * Scalar::q_power(-s));
        r.add(MixedTerm{f, t.k - ai, t.e}, -(c * inv * Scalar::q_power(s)));
      }
      s += rd.form(i, t.f[j]);
    }
  }
  return r;
}

}  // namespace

MixedElement MixedElement::one(int rank) {
  MixedElement x(rank);
  x.add(MixedTerm{{}, Weight(static_cast<std::size_t>(rank)), {}}, Scalar(1));
  return x;
}

MixedElement MixedElement::f(int rank, int i) {
  MixedElement x(rank);
  x.add(MixedTerm{{i}, Weight(static_cast<std::size_t>(rank)), {}}, Scalar(1));
  return x;
}

MixedElement MixedElement::e(int rank, int i) {
  MixedElement x(rank);
  x.add(MixedTerm{{}, Weight(static_cast<std::size_t>(rank)), {i}}, Scalar(1));
  return x;
}

MixedElement MixedElement::k(const Weight& mu) {
  MixedElement x(static_cast<int>(mu.rank()));
  x.add(MixedTerm{{}, mu, {}}, Scalar(1));
  return x;
}

MixedElement MixedElement::from_neg(const NegElement& x) {
  MixedElement r(x.rank());
  for (const auto& [w, c] : x.terms()) r.add(MixedTerm{w, Weight(x.content().rank()), {}}, c);
  return r;
}

void MixedElement::add(const MixedTerm& t, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

MixedElement& MixedElement::operator+=(const MixedElement& o) {
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

MixedElement& MixedElement::operator-=(const MixedElement& o) {
  for (const auto& [t, c] : o.terms_) add(t, -c);
  return *this;
}

MixedElement& MixedElement::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, x] : terms_) x *= c;
  return *this;
}

std::string MixedElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [t, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    for (int x : t.f) out += " F" + std::to_string(x + 1);
    if (!t.k.is_zero()) out += " K[" + t.k.to_string() + "]";
    for (int x : t.e) out += " E" + std::to_string(x + 1);
    if (t.f.empty() && t.e.empty() && t.k.is_zero()) out += " 1";
  }
  return out;
}

MixedElement multiply(const RootDatum& rd, const MixedElement& x, const MixedElement& y) {
  MixedElement r(rd.rank());
  for (const auto& [t, c] : x.terms()) {
    MixedElement z = y;
    for (auto it = t.e.rbegin(); it != t.e.rend(); ++it) z = left_e(rd, z, *it);
    if (!t.k.is_zero()) z = left_k(rd, z, t.k);
    for (auto it = t.f.rbegin(); it != t.f.rend(); ++it) z = left_f(z, *it);
    z *= c;
    r += z;
  }
  return r;
}

namespace {

// sum over r+s = n of (-1)^r q_i^{sign*eps*r} X_i^(left) X_j X_i^(right) where
// (left, right) = (r, s) or (s, r) according to r_first.
MixedElement serre_type_image(const RootDatum& rd, int i, int j, int eps, int sign, bool r_first, bool is_e) {
  const int rank = rd.rank();
  const int n = -rd.cartan(i, j);
  MixedElement out(rank);
  for (int r = 0; r <= n; ++r) {
    int s = n - r;
    int left = r_first ? r : s;
    int right = r_first ? s : r;
    Word w(static_cast<std::size_t>(left), i);
    w.push_back(j);
    w.insert(w.end(), static_cast<std::size_t>(right), i);
    Scalar c = Scalar::q_power(rd.d(i) * sign * eps * r);
    if (r % 2) c = -c;
    c /= Scalar(quantum_factorial(r, rd.d(i)) * quantum_factorial(s, rd.d(i)));
    Weight zero(static_cast<std::size_t>(rank));
    out.add(is_e ? MixedTerm{{}, zero, w} : MixedTerm{w, zero, {}}, c);
  }
  return out;
}

}  // namespace

// gen is 'E' or 'F'
MixedElement braid_generator_image(const RootDatum& rd, int i, BraidVariant v, int eps, char gen, int j) {
  const int rank = rd.rank();
  const Weight ai = rd.simple_root(i);
  const bool dbl = v == BraidVariant::t_double_prime;
  if (j == i) {
    MixedElement out(rank);
    if (dbl) {
      // T''(E_i) = -F_i K_{eps i},  T''(F_i) = -K_{-eps i} E_i
      out = gen == 'E' ? multiply(rd, MixedElement::f(rank, i), MixedElement::k(eps * ai))
                       : multiply(rd, MixedElement::k(-eps * ai), MixedElement::e(rank, i));
    } else {
      // T'(E_i) = -K_{eps i} F_i,  T'(F_i) = -E_i K_{-eps i}
      out = gen == 'E' ? multiply(rd, MixedElement::k(eps * ai), MixedElement::f(rank, i))
                       : multiply(rd, MixedElement::e(rank, i), MixedElement::k(-eps * ai));
    }
    return out * Scalar(-1);
  }
  if (dbl) {
    // T''(E_j) = sum (-1)^r q_i^{-eps r} E_i^(s) E_j E_i^(r)
    // T''(F_j) = sum (-1)^r q_i^{eps r} F_i^(r) F_j F_i^(s)
    return gen == 'E' ? serre_type_image(rd, i, j, eps, -1, false, true)
                      : serre_type_image(rd, i, j, eps, +1, true, false);
  }
  // T'(E_j) = sum (-1)^r q_i^{eps r} E_i^(r) E_j E_i^(s)
  // T'(F_j) = sum (-1)^r q_i^{-eps r} F_i^(s) F_j F_i^(r)
  return gen == 'E' ? serre_type_image(rd, i, j, eps, +1, true, true)
                    : serre_type_image(rd, i, j, eps, -1, false, false);
}

MixedElement braid(const RootDatum& rd, const MixedElement& x, int i, BraidVariant v, int eps) {
  const int rank = rd.rank();
  std::vector<MixedElement> img_e, img_f;
  for (int j = 0; j < rank; ++j) {
    img_e.push_back(braid_generator_image(rd, i, v, eps, 'E', j));
    img_f.push_back(braid_generator_image(rd, i, v, eps, 'F', j));
  }
  MixedElement out(rank);
  for (const auto& [t, c] : x.terms()) {
    MixedElement z = MixedElement::one(rank);
    for (int letter : t.f) z = multiply(rd, z, img_f[letter]);
    if (!t.k.is_zero()) z = multiply(rd, z, MixedElement::k(rd.reflect(i, t.k)));
    for (int letter : t.e) z = multiply(rd, z, img_e[letter]);
    out += z * c;
  }
  return out;
}

namespace {

using GroupKey = std::pair<Weight, Weight>;  // (K part, E content)

std::map<GroupKey, std::map<Word, NegElement>> group_terms(const MixedElement& x) {
  std::map<GroupKey, std::map<Word, NegElement>> groups;
  for (const auto& [t, c] : x.terms()) {
    Weight econt = letters_content(x.rank(), t.e);
    auto& slot = groups[{t.k, econt}];
    auto it = slot.find(t.e);
    if (it == slot.end()) it = slot.emplace(t.e, NegElement(letters_content(x.rank(), t.f))).first;
    it->second.add(t.f, c);
  }
  return groups;
}

bool tensor_is_zero(const RootDatum& rd, const std::map<Word, NegElement>& group, const ZeroTest& is_zero) {
  if (group.size() == 1 && group.begin()->first.empty()) return is_zero(group.begin()->second);
  // The E-words are read as F-words; their derivation coordinates are faithful.
  std::vector<std::map<Word, Scalar>> ecoords;
  std::vector<const NegElement*> fparts;
  for (const auto& [e, f] : group) {
    ecoords.push_back(coordinates(rd, NegElement::from_word(rd.rank(), e)));
    fparts.push_back(&f);
  }
  for (const auto& [v, unused] : ecoords.front()) {
    NegElement combo(fparts.front()->content());
    for (std::size_t k = 0; k < fparts.size(); ++k) {
      const Scalar& a = ecoords[k].at(v);
      if (!a.is_zero()) combo += *fparts[k] * a;
    }
    if (!is_zero(combo)) return false;
  }
  return true;
}

}  // namespace

bool mixed_is_zero(const RootDatum& rd, const MixedElement& x, const ZeroTest& is_zero) {
  for (const auto& [key, group] : group_terms(x))
    if (!tensor_is_zero(rd, group, is_zero)) return false;
  return true;
}

NegElement project_to_neg(const RootDatum& rd, const MixedElement& x, const ZeroTest& is_zero) {
  const Weight zero(static_cast<std::size_t>(rd.rank()));
  NegElement out;
  for (const auto& [key, group] : group_terms(x)) {
    if (key.first.is_zero() && key.second.is_zero()) {
      out = group.begin()->second;
      continue;
    }
    if (!tensor_is_zero(rd, group, is_zero))
      throw IntegrityError("element has a nonzero part outside U^- (K=" + key.first.to_string() +
                           ", E content " + key.second.to_string() + ")");
  }
  return out;
}

}  // namespace qcanon
