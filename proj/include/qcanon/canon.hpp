#ifndef QCANON_CANON_HPP
#define QCANON_CANON_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcanon/memo.hpp"
#include "qcanon/pbw.hpp"

namespace qcanon {

struct CanonicalBasisSlice {
  Word word;
  Weight content;  // the weight is -content
  // Lusztig data in left-lex ascending order; tuples[k] labels elements[k].
  std::vector<Tuple> tuples;
  std::vector<NegElement> elements;
  // coeffs[b][c]: coefficient of F^{tuples[c]} in G(tuples[b])
  ScalarMatrix coeffs;
  // Order in which the bar matrix is unitriangular: "left-lex" or "topological".
  std::string order;
  std::vector<std::size_t> solve_order;

  std::size_t size() const { return tuples.size(); }
  std::size_t index_of(const Tuple& t) const;
  std::map<Tuple, Scalar> pbw_coords(std::size_t b) const;
  // PBW coordinates (indexed like tuples) -> canonical coordinates.
  std::vector<Scalar> canonical_coords(const std::vector<Scalar>& pbw) const;
};

// A point of B(infinity): its Lusztig datum for a given reduced word, with
// cached crystal statistics.
struct CrystalLabel {
  Word word;
  Tuple datum;
  Weight content;
  std::vector<int> eps, eps_star, phi, phi_star;

  Weight weight() const { return -content; }
  friend bool operator==(const CrystalLabel& a, const CrystalLabel& b) {
    return a.word == b.word && a.datum == b.datum;
  }
};

enum class CrystalDir { e, f, e_star, f_star };
enum class SaitoDir { lambda, lambda_inverse };

struct ContextOptions {
  int height_bound = 8;
  unsigned long long max_words = 2000000;
  RootDatumLimits datum_limits{};
};

// Everything attached to one root datum: the reference word and its PBW
// basis (which also fixes the coordinate functionals), PBW bases for other
// words on demand, canonical slices, and crystal labels. Safe for concurrent
// use; all tables are insert-only.
class Context {
 public:
  Context(RootDatum rd, ContextOptions options, std::optional<Word> reference = std::nullopt);
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  const RootDatum& datum() const { return rd_; }
  const Word& reference_word() const { return reference_; }
  int height_bound() const { return options_.height_bound; }
  FunctionalBases& functionals() { return *functionals_; }
  ZeroTest zero_test() { return functionals_->zero_test(); }
  void check_capacity(const Weight& content) const;

  PbwBasis& basis(const Word& w);
  PbwBasis& reference_basis() { return basis(reference_); }
  std::vector<Word> known_words() const;
  void preload_root_vectors(const Word& w, std::vector<NegElement> rv);

  const CanonicalBasisSlice& slice(const Word& w, const Weight& content);
  const CanonicalBasisSlice& slice(const Weight& content) { return slice(reference_, content); }
  // Elements are rebuilt from the coefficients when s.elements is empty.
  // Checks the tuples against the PBW basis; throws IntegrityError.
  void preload_slice(CanonicalBasisSlice s);
  // (word, content) of every slice computed or loaded so far, in key order.
  std::vector<std::pair<Word, Weight>> computed_slices() const;

  // Canonical coordinates of x in the slice of word w at the weight of x.
  std::vector<Scalar> canonical_expand(const Word& w, const NegElement& x);
  // The datum (w.r.t. w) of the canonical element semantically equal to x.
  Tuple identify(const Word& w, const NegElement& x);

  const NegElement& element(const Word& w, const Tuple& datum);
  const CrystalLabel& label(const Word& w, const Tuple& datum);
  const CrystalLabel& label(const Tuple& datum) { return label(reference_, datum); }
  const CrystalLabel& unit_label(const Word& w);
  // The label of *b, w.r.t. the same word.
  const CrystalLabel& star_label(const CrystalLabel& b);
  // All labels of height <= h (reference word unless given), weight by weight.
  std::vector<CrystalLabel> labels_up_to(int h, std::optional<Word> w = std::nullopt);
  // Contents of height exactly h / at most h.
  std::vector<Weight> contents_of_height(int h) const;

  // Reduced word starting with i used for i-string computations (the
  // reference word when it starts with i).
  const Word& string_word(int i);

  std::optional<CrystalLabel> crystal_step(const CrystalLabel& b, int i, CrystalDir dir);
  CrystalLabel saito_reflect(const CrystalLabel& b, int i, SaitoDir dir);
  std::pair<CrystalLabel, int> kashiwara_embed(const CrystalLabel& b, int i);

 private:
  CanonicalBasisSlice compute_slice(const Word& w, const Weight& content);
  CrystalLabel compute_label(const Word& w, const Tuple& datum);
  // Applies e~_i (raise) or f~_i to x through the PBW basis of a word j
  // starting with i, where the i-string decomposition is the first exponent.
  // Returns the datum w.r.t. j of the resulting crystal element.
  std::optional<Tuple> string_step(const Word& j, const NegElement& x, bool raise);

  RootDatum rd_;
  ContextOptions options_;
  Word reference_;
  std::unique_ptr<FunctionalBases> functionals_;
  Memo<Word, std::unique_ptr<PbwBasis>> bases_;
  Memo<Word, std::vector<NegElement>> preloaded_roots_;
  Memo<std::pair<Word, Weight>, CanonicalBasisSlice> slices_;
  Memo<std::pair<Word, Tuple>, CrystalLabel> labels_;
  Memo<int, Word> string_words_;
};

// Expansion of an element in a canonical slice, checked against the crystal
// lattice: returns the index of the unique coefficient = 1 mod q, or nullopt
// if all coefficients vanish mod q. Throws IntegrityError otherwise.
std::optional<std::size_t> crystal_leading_index(const std::vector<Scalar>& coeffs);

}  // namespace qcanon

#endif
