#ifndef QCANON_TRANSITION_HPP
#define QCANON_TRANSITION_HPP

#include <map>
#include <vector>

#include "qcanon/canon.hpp"

namespace qcanon {

using Row = std::map<Tuple, Scalar>;

struct StructureConstants {
  Row c;      // F_i^(p) G(b) = sum c G(b~)
  Row d;      // (_ie')^p G(b) = sum d G(b~)
  Row d_hat;  // (e'_i)^p G(b) = sum d^ G(b~)
};

// (w, rot_1, ..., rot_{N-1}) with rot_l = (i_{l+1},..,i_N, i_1*,..,i_l*).
std::vector<Word> rotated_words(const RootDatum& rd, const Word& w);

// Largest height of a canonical slice the product formula touches for labels
// of height <= bound (steps with d_l = 0 need no slice).
int formula_height(const RootDatum& rd, const Word& w, int bound);

class TransitionEngine {
 public:
  explicit TransitionEngine(Context& ctx) : ctx_(ctx) {}
  Context& context() { return ctx_; }

  // Rows keyed by the target datum w.r.t. the same word as b.
  const Row& c_row(const Word& w, int i, int p, const Tuple& b);
  const Row& d_hat_row(const Word& w, int i, int p, const Tuple& b);
  const Row& d_row(const Word& w, int i, int p, const Tuple& b);
  StructureConstants structure_constants(const Word& w, int i, int p, const Tuple& b);

  // zeta coefficients of G(b) in the PBW basis of w, by direct expansion.
  Row zeta_direct(const Word& w, const CrystalLabel& b);
  // One coefficient by the product formula over chains of structure constants.
  Scalar zeta_formula(const Word& w, const CrystalLabel& b, const Tuple& d);
  Row zeta_formula_row(const Word& w, const CrystalLabel& b);

 private:
  enum class Kind { c, d, d_hat };
  const Row& row(Kind kind, const Word& w, int i, int p, const Tuple& b);
  Row compute_row(Kind kind, const Word& w, int i, int p, const Tuple& b);

  Context& ctx_;
  Memo<std::tuple<int, Word, int, int, Tuple>, Row> rows_;
};

}  // namespace qcanon

#endif
