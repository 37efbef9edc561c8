#ifndef QCANON_ROOTDATA_HPP
#define QCANON_ROOTDATA_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcanon {

// Element of the root lattice, in the basis of simple roots.
struct Weight {
  std::vector<int> c;

  Weight() = default;
  explicit Weight(std::size_t rank) : c(rank, 0) {}
  explicit Weight(std::vector<int> coords) : c(std::move(coords)) {}
  static Weight simple(std::size_t rank, int i);

  std::size_t rank() const { return c.size(); }
  int operator[](std::size_t i) const { return c[i]; }
  int& operator[](std::size_t i) { return c[i]; }
  int height() const;
  bool is_zero() const;
  bool is_nonnegative() const;

  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  Weight operator-() const;
  friend Weight operator*(int k, Weight a);
  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;

  // "-(a1+a2)" style rendering, e.g. "-2a1-a2", "0".
  std::string to_string() const;
  std::string key() const;  // "2,1"
};

using Word = std::vector<int>;  // 0-based letters

std::string word_to_string(const Word& w);  // 1-based, comma separated
Word parse_word(std::string_view text);     // 1-based input

struct RootDatumLimits {
  int max_rank = 4;
  int max_positive_roots = 36;
};

class RootDatum {
 public:
  // Parses labels like "A2", "G2"; throws ParseError or CapacityError.
  static RootDatum parse(std::string_view label, RootDatumLimits limits = {});
  RootDatum(char family, int rank, RootDatumLimits limits = {});

  const std::string& label() const { return label_; }
  char family() const { return family_; }
  int rank() const { return rank_; }
  int cartan(int i, int j) const { return cartan_[i][j]; }
  int d(int i) const { return d_[i]; }
  // (alpha_i, alpha_j)
  int form(int i, int j) const { return d_[i] * cartan_[i][j]; }
  int form(const Weight& a, const Weight& b) const;
  // <mu, alpha_i^vee>
  int pairing(const Weight& mu, int i) const;
  int form_with_simple(const Weight& mu, int i) const;  // (mu, alpha_i)
  bool simply_laced() const;

  Weight simple_root(int i) const { return Weight::simple(static_cast<std::size_t>(rank_), i); }
  Weight reflect(int i, const Weight& mu) const;
  Weight apply_word(const Word& w, const Weight& mu) const;  // s_{w1}...s_{wk}(mu)

  const std::vector<Weight>& positive_roots() const { return positive_roots_; }
  int num_positive_roots() const { return static_cast<int>(positive_roots_.size()); }
  bool is_positive_root(const Weight& mu) const;
  // index j with alpha_j = -w0(alpha_i)
  int star_index(int i) const { return star_[i]; }

  // Reduced words of w0 in lexicographic order. With no limit, throws
  // CapacityError if there are more than max_words of them.
  std::vector<Word> longest_element_words(std::optional<std::size_t> limit = std::nullopt,
                                          std::size_t max_words = 100000) const;
  // Number of reduced words of w0 (dynamic programming over the group).
  unsigned long long count_longest_words() const;
  // Lexicographically first reduced word of w0.
  Word reference_word() const;
  // Lexicographically first reduced word of w0 beginning with the given prefix.
  Word reduced_word_with_prefix(const Word& prefix) const;

  // (beta^1,..,beta^N) along a reduced word of w0; throws DomainError otherwise.
  std::vector<Weight> positive_roots_of(const Word& word) const;
  bool is_reduced_longest(const Word& word) const;

  // Number of ways to write mu (nonnegative) as a sum of positive roots.
  unsigned long long kostant_count(const Weight& mu) const;

 private:
  void build();

  std::string label_;
  char family_;
  int rank_;
  std::vector<std::vector<int>> cartan_;
  std::vector<int> d_;
  std::vector<Weight> positive_roots_;
  std::vector<int> star_;
};

}  // namespace qcanon

#endif
