#include "qcanon/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "qcanon/errors.hpp"

namespace qcanon {

Weight Weight::simple(std::size_t rank, int i) {
  Weight w(rank);
  w.c[static_cast<std::size_t>(i)] = 1;
  return w;
}

int Weight::height() const { return std::accumulate(c.begin(), c.end(), 0); }

bool Weight::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

bool Weight::is_nonnegative() const {
  return std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
}

Weight& Weight::operator+=(const Weight& o) {
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
  return *this;
}

Weight Weight::operator-() const {
  Weight r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}

Weight operator*(int k, Weight a) {
  for (auto& x : a.c) x *= k;
  return a;
}

std::string Weight::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    int a = std::abs(c[i]);
    out += c[i] < 0 ? "-" : (out.empty() ? "" : "+");
    if (a != 1) out += std::to_string(a);
    out += "a" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

std::string Weight::key() const {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c[i]);
  }
  return out;
}

std::string word_to_string(const Word& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(w[k] + 1);
  }
  return out;
}

Word parse_word(std::string_view text) {
  Word w;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw ParseError("empty letter in word '" + std::string(text) + "'");
    int v = std::stoi(cur);
    if (v < 1) throw ParseError("word letters are 1-based: '" + std::string(text) + "'");
    w.push_back(v - 1);
    cur.clear();
  };
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == ',') {
      flush();
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      cur += ch;
    } else {
      throw ParseError("unexpected character in word '" + std::string(text) + "'");
    }
  }
  if (!cur.empty() || !w.empty()) flush();
  return w;
}

RootDatum RootDatum::parse(std::string_view label, RootDatumLimits limits) {
  std::string s;
  for (char ch : label)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '_') s += ch;
  if (s.size() < 2 || !std::isalpha(static_cast<unsigned char>(s[0])))
    throw ParseError("bad Cartan type '" + std::string(label) + "'");
  char family = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  for (std::size_t k = 1; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw ParseError("bad Cartan type '" + std::string(label) + "'");
  return RootDatum(family, std::stoi(s.substr(1)), limits);
}

RootDatum::RootDatum(char family, int rank, RootDatumLimits limits) : family_(family), rank_(rank) {
  label_ = std::string(1, family) + std::to_string(rank);
  bool ok = false;
  switch (family) {
    case 'A': ok = rank >= 1; break;
    case 'B':
    case 'C': ok = rank >= 2; break;
    case 'D': ok = rank >= 4; break;
    case 'E': ok = rank >= 6 && rank <= 8; break;
    case 'F': ok = rank == 4; break;
    case 'G': ok = rank == 2; break;
    default: break;
  }
  if (!ok) throw ParseError("unsupported Cartan type '" + label_ + "'");
  if (rank > limits.max_rank)
    throw CapacityError("type " + label_ + " has rank " + std::to_string(rank) +
                        " above the configured limit " + std::to_string(limits.max_rank));

  auto n = static_cast<std::size_t>(rank);
  cartan_.assign(n, std::vector<int>(n, 0));
  d_.assign(n, 1);
  for (std::size_t i = 0; i < n; ++i) cartan_[i][i] = 2;
  auto link = [&](int i, int j) { cartan_[i][j] = cartan_[j][i] = -1; };
  switch (family) {
    case 'A':
      for (int i = 0; i + 1 < rank; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < rank; ++i) link(i, i + 1);
      if (rank == 2) {
        // alpha_1 short
        cartan_[0][1] = -2;
        d_ = {1, 2};
      } else {
        cartan_[rank - 1][rank - 2] = -2;
        for (int i = 0; i + 1 < rank; ++i) d_[i] = 2;
      }
      break;
    case 'C':
      for (int i = 0; i + 1 < rank; ++i) link(i, i + 1);
      cartan_[rank - 2][rank - 1] = -2;
      d_[rank - 1] = 2;
      break;
    case 'D':
      for (int i = 0; i + 2 < rank; ++i) link(i, i + 1);
      link(rank - 3, rank - 1);
      break;
    case 'E':
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < rank; ++i) link(i, i + 1);
      break;
    case 'F':
      link(0, 1);
      link(1, 2);
      link(2, 3);
      cartan_[2][1] = -2;
      d_ = {2, 2, 1, 1};
      break;
    case 'G':
      cartan_[0][1] = -3;
      cartan_[1][0] = -1;
      d_ = {1, 3};
      break;
    default: break;
  }
  build();
  if (num_positive_roots() > limits.max_positive_roots)
    throw CapacityError("type " + label_ + " has " + std::to_string(num_positive_roots()) +
                        " positive roots, above the configured limit " +
                        std::to_string(limits.max_positive_roots));
}

void RootDatum::build() {
  std::set<Weight> seen;
  std::vector<Weight> frontier;
  for (int i = 0; i < rank_; ++i) {
    seen.insert(simple_root(i));
    frontier.push_back(simple_root(i));
  }
  while (!frontier.empty()) {
    std::vector<Weight> next;
    for (const auto& b : frontier)
      for (int i = 0; i < rank_; ++i) {
        Weight r = reflect(i, b);
        if (r.is_nonnegative() && !r.is_zero() && seen.insert(r).second) next.push_back(r);
      }
    frontier = std::move(next);
  }
  positive_roots_.assign(seen.begin(), seen.end());
  std::stable_sort(positive_roots_.begin(), positive_roots_.end(),
                   [](const Weight& a, const Weight& b) { return a.height() < b.height(); });
  Word w0 = reference_word();
  star_.assign(static_cast<std::size_t>(rank_), -1);
  for (int i = 0; i < rank_; ++i) {
    Weight img = -apply_word(w0, simple_root(i));
    for (int j = 0; j < rank_; ++j)
      if (img == simple_root(j)) star_[i] = j;
  }
}

int RootDatum::form(const Weight& a, const Weight& b) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) s += a[i] * b[j] * form(i, j);
  return s;
}

int RootDatum::pairing(const Weight& mu, int i) const {
  int s = 0;
  for (int j = 0; j < rank_; ++j) s += mu[j] * cartan_[i][j];
  return s;
}

int RootDatum::form_with_simple(const Weight& mu, int i) const { return d_[i] * pairing(mu, i); }

bool RootDatum::simply_laced() const { return family_ == 'A' || family_ == 'D' || family_ == 'E'; }

Weight RootDatum::reflect(int i, const Weight& mu) const {
  Weight r = mu;
  r[i] -= pairing(mu, i);
  return r;
}

Weight RootDatum::apply_word(const Word& w, const Weight& mu) const {
  Weight r = mu;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r = reflect(*it, r);
  return r;
}

bool RootDatum::is_positive_root(const Weight& mu) const {
  return std::binary_search(positive_roots_.begin(), positive_roots_.end(), mu,
                            [](const Weight& a, const Weight& b) {
                              if (a.height() != b.height()) return a.height() < b.height();
                              return a < b;
                            });
}

Word RootDatum::reference_word() const { return reduced_word_with_prefix({}); }

Word RootDatum::reduced_word_with_prefix(const Word& prefix) const {
  // Greedy: the smallest letter that keeps the word reduced. Appending s_i
  // to w increases length iff w(alpha_i) > 0. Any reduced word extends to
  // one of w0.
  Word w;
  for (int letter : prefix) {
    if (!apply_word(w, simple_root(letter)).is_nonnegative())
      throw DomainError("prefix " + word_to_string(prefix) + " is not reduced");
    w.push_back(letter);
  }
  while (true) {
    bool extended = false;
    for (int i = 0; i < rank_; ++i) {
      if (apply_word(w, simple_root(i)).is_nonnegative()) {
        w.push_back(i);
        extended = true;
        break;
      }
    }
    if (!extended) return w;
  }
}

unsigned long long RootDatum::count_longest_words() const {
  // Elements keyed by w(2 rho); counts of reduced words of w.
  Weight two_rho(static_cast<std::size_t>(rank_));
  for (const auto& b : positive_roots_) two_rho += b;
  std::map<Weight, std::pair<Word, unsigned long long>> layer{{two_rho, {Word{}, 1ULL}}};
  for (int len = 0; len < num_positive_roots(); ++len) {
    std::map<Weight, std::pair<Word, unsigned long long>> next;
    for (const auto& [key, entry] : layer) {
      for (int i = 0; i < rank_; ++i) {
        if (!apply_word(entry.first, simple_root(i)).is_nonnegative()) continue;
        Word w = entry.first;
        w.push_back(i);
        auto [it, inserted] = next.try_emplace(apply_word(w, two_rho), w, 0ULL);
        it->second.second += entry.second;
      }
    }
    layer = std::move(next);
  }
  return layer.empty() ? 0ULL : layer.begin()->second.second;
}

std::vector<Word> RootDatum::longest_element_words(std::optional<std::size_t> limit,
                                                   std::size_t max_words) const {
  if (!limit) {
    unsigned long long total = count_longest_words();
    if (total > max_words)
      throw CapacityError("type " + label_ + " has " + std::to_string(total) +
                          " reduced words of w0; request a limit");
  }
  std::size_t cap = limit.value_or(max_words);
  std::vector<Word> out;
  Word w;
  auto n = static_cast<std::size_t>(num_positive_roots());
  std::function<void()> dfs = [&] {
    if (out.size() >= cap) return;
    if (w.size() == n) {
      out.push_back(w);
      return;
    }
    for (int i = 0; i < rank_; ++i) {
      if (!apply_word(w, simple_root(i)).is_nonnegative()) continue;
      w.push_back(i);
      dfs();
      w.pop_back();
    }
  };
  dfs();
  return out;
}

std::vector<Weight> RootDatum::positive_roots_of(const Word& word) const {
  if (static_cast<int>(word.size()) != num_positive_roots())
    throw DomainError("word " + word_to_string(word) + " has the wrong length for " + label_);
  std::vector<Weight> betas;
  std::set<Weight> seen;
  Word prefix;
  for (int letter : word) {
    if (letter < 0 || letter >= rank_)
      throw DomainError("letter out of range in word " + word_to_string(word));
    Weight b = apply_word(prefix, simple_root(letter));
    if (!b.is_nonnegative() || !seen.insert(b).second)
      throw DomainError("word " + word_to_string(word) + " is not reduced");
    betas.push_back(b);
    prefix.push_back(letter);
  }
  return betas;
}

bool RootDatum::is_reduced_longest(const Word& word) const {
  try {
    positive_roots_of(word);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

unsigned long long RootDatum::kostant_count(const Weight& mu) const {
  if (!mu.is_nonnegative()) return 0;
  std::map<std::pair<std::size_t, Weight>, unsigned long long> memo;
  std::function<unsigned long long(std::size_t, const Weight&)> go = [&](std::size_t k,
                                                                          const Weight& rest) {
    if (rest.is_zero()) return 1ULL;
    if (k == positive_roots_.size()) return 0ULL;
    auto key = std::make_pair(k, rest);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    unsigned long long total = 0;
    Weight r = rest;
    while (r.is_nonnegative()) {
      total += go(k + 1, r);
      r -= positive_roots_[k];
    }
    memo.emplace(key, total);
    return total;
  };
  return go(0, mu);
}

}  // namespace qcanon
