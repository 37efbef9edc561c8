#ifndef QCANON_PBW_HPP
#define QCANON_PBW_HPP

#include <map>
#include <string>
#include <vector>

#include "qcanon/linalg.hpp"
#include "qcanon/memo.hpp"
#include "qcanon/rootdata.hpp"
#include "qcanon/uqn.hpp"

namespace qcanon {

using Tuple = std::vector<int>;  // exponent tuple, one entry per position of the word

std::string tuple_to_string(const Tuple& c);  // "(0,1,0)"
Tuple parse_tuple(std::string_view text);

// Root vectors T''_{i1,1}...T''_{i(k-1),1}(F_ik) computed in the mixed
// algebra, one braid step at a time.
std::vector<NegElement> compute_root_vectors(const RootDatum& rd, const Word& word);

struct PbwLimits {
  int height_bound = 8;
  unsigned long long max_words = 2000000;  // arrangements per weight space
};

class PbwBasis {
 public:
  // functionals supplies the coordinate words per weight. Root vectors can be
  // supplied (e.g. from a cache) or are computed.
  PbwBasis(const RootDatum& rd, Word word, PbwLimits limits, FunctionalBases& functionals,
           std::vector<NegElement> root_vectors = {});

  const RootDatum& datum() const { return rd_; }
  const Word& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  int height_bound() const { return limits_.height_bound; }
  const std::vector<Weight>& roots() const { return roots_; }
  const std::vector<NegElement>& root_vectors() const { return root_vectors_; }
  int root_d(int k) const { return rd_.d(word_[k]); }

  // Throws CapacityError above the height bound or word-space limit.
  void check_capacity(const Weight& content) const;

  Weight content_of(const Tuple& c) const;
  // Tuples of the given content in left-lex ascending order.
  const std::vector<Tuple>& tuples(const Weight& content);

  const NegElement& monomial(const Tuple& c);
  NegElement dual_monomial(const Tuple& d);

  // Coordinates of x in the PBW basis, by pairing against the dual basis
  // through a per-weight table of word coordinates.
  std::map<Tuple, Scalar> expand(const NegElement& x);
  std::vector<Scalar> expand_dense(const NegElement& x);
  // Same coordinates by the exact linear solve against coordinate_matrix.
  std::vector<Scalar> expand_by_solve(const NegElement& x);
  // Same coordinates obtained by pairing with dual monomials.
  std::map<Tuple, Scalar> expand_by_pairing(const NegElement& x);

  // Matrix of coordinate functionals applied to the monomials, and its inverse.
  const ScalarMatrix& coordinate_matrix(const Weight& content);
  const ScalarMatrix& inverse_matrix(const Weight& content);
  // Weights whose matrices have been computed so far.
  std::vector<Weight> computed_weights() const;
  void preload_inverse(const Weight& content, ScalarMatrix inv);

 private:
  const NegElement& root_power(int k, int n);
  Scalar dual_factor(const Tuple& d) const;

  // For each word u: phi_{rev u}(F^c) * dual_factor(c), indexed by tuple.
  struct PairingTable {
    std::map<Word, std::vector<Scalar>> rows;
    Scalar normalizer;
  };
  const PairingTable& pairing_table(const Weight& content);

  const RootDatum& rd_;
  Word word_;
  PbwLimits limits_;
  FunctionalBases& functionals_;
  std::vector<Weight> roots_;
  std::vector<NegElement> root_vectors_;
  Memo<Weight, std::vector<Tuple>> tuples_;
  Memo<Tuple, NegElement> monomials_;
  Memo<std::pair<int, int>, NegElement> powers_;
  Memo<Weight, ScalarMatrix> matrices_;
  Memo<Weight, ScalarMatrix> inverses_;
  Memo<Weight, PairingTable> tables_;
};

}  // namespace qcanon

#endif
