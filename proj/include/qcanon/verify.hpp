#ifndef QCANON_VERIFY_HPP
#define QCANON_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qcanon/transition.hpp"

namespace qcanon {

// Outcome of one identity or invariant over a family of instances. Measured
// checks are reported but never make a run fail.
struct CheckResult {
  std::string name;
  std::string scope;
  bool asserted = true;
  std::string note;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::uint64_t skipped = 0;
  std::vector<std::string> witnesses;  // first failures, enough to localize them

  static constexpr std::size_t kMaxWitnesses = 5;

  bool ok() const { return !asserted || failed == 0; }
  void pass() { ++checked; }
  void fail(std::string witness);
  void expect(bool holds, const std::string& witness) { holds ? pass() : fail(witness); }
  void merge(const CheckResult& o);
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool ok() const;
};

struct VerifyOptions {
  int bound = 4;
  std::vector<Word> words;  // empty: every reduced word of w0
  int jobs = 1;
  int max_n = 3;            // largest N in the similarity identity
  int samples = 200;        // draws per sampled property
  std::uint64_t seed = 20240601;
};

// positivity, formula, duality, similarity, crystal, properties
const std::vector<std::string>& suite_names();

// Slice height the suite needs for the given options (above the bound for
// the product formula).
int required_height(const RootDatum& rd, const std::string& suite, const VerifyOptions& options);

// ctx must have been built with at least required_height.
SuiteReport run_suite(TransitionEngine& engine, const std::string& suite, const VerifyOptions& options);

// One instance of an identity between structure constants; lhs and rhs are
// the compared (possibly truncated) values.
struct IdentityCheck {
  bool holds = false;
  Scalar lhs, rhs;
};

// c_{-Ni,b}^{b^} against q_i^{d(d-1)/2} [eps_i(b^) choose N]_i d^_{b, e~^eps b^}^{i,d}
// below degree -d_i (d-1) N, with d = eps_i(b^) - N. Needs N <= eps_i(b^).
IdentityCheck check_similarity(TransitionEngine& engine, const Word& w, int i, int n, const Tuple& b,
                               const Tuple& b_hat);
// d^_{b,b~}^{i,p} = d_{*b,*b~}^{i,p}
IdentityCheck check_dhat_star(TransitionEngine& engine, const Word& w, int i, int p, const Tuple& b,
                              const Tuple& b_tilde);
// d^_{b,b~}^{i,p} = q_i^{p<wt b, a_i^v> + p(p+1)} bar(d_{b,b~}^{i,p})
IdentityCheck check_dhat_bar(TransitionEngine& engine, const Word& w, int i, int p, const Tuple& b,
                             const Tuple& b_tilde);

// Coefficient predicates.
bool in_natural_laurent(const Scalar& x);  // N[q, q^-1]
bool in_integer_laurent(const Scalar& x);  // Z[q, q^-1]
// x in q^m Z[q]
bool in_shifted_integer_poly(const Scalar& x, int m);

}  // namespace qcanon

#endif
