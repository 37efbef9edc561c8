// Runs the nine acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is 0 iff every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "qcanon/verify.hpp"

using namespace qcanon;

namespace {

using Clock = std::chrono::steady_clock;

int jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Contexts are shared between criteria so slices are computed once.
class Contexts {
 public:
  TransitionEngine& get(const std::string& type, int height, std::optional<Word> reference = std::nullopt) {
    std::string key = type + (reference ? ":" + word_to_string(*reference) : "");
    auto& e = entries_[key];
    if (!e.ctx || e.ctx->height_bound() < height) {
      ContextOptions o;
      o.height_bound = height;
      e.ctx = std::make_unique<Context>(RootDatum::parse(type), o, reference);
      e.engine = std::make_unique<TransitionEngine>(*e.ctx);
    }
    return *e.engine;
  }

 private:
  struct Entry {
    std::unique_ptr<Context> ctx;
    std::unique_ptr<TransitionEngine> engine;
  };
  std::map<std::string, Entry> entries_;
};

// Requires every named check to be present, asserted checks to pass, and at
// least min_checked instances of each.
void require(Outcome& out, const SuiteReport& r, const std::string& where, const std::vector<std::string>& names,
             std::uint64_t min_checked = 1) {
  for (const auto& name : names) {
    const CheckResult* found = nullptr;
    for (const auto& c : r.checks)
      if (c.name == name) found = &c;
    if (!found) {
      out.ok = false;
      out.detail += " " + where + ": no check '" + name + "';";
      continue;
    }
    if (!found->ok() || found->checked < min_checked) {
      out.ok = false;
      out.detail += " " + where + ": '" + name + "' " + std::to_string(found->failed) + "/" +
                    std::to_string(found->checked) + " failed";
      if (!found->witnesses.empty()) out.detail += " (" + found->witnesses.front() + ")";
      out.detail += ";";
    }
  }
}

std::uint64_t total(const SuiteReport& r, const std::string& name, bool failed) {
  for (const auto& c : r.checks)
    if (c.name == name) return failed ? c.failed : c.checked;
  return 0;
}

SuiteReport run(Contexts& cs, const std::string& type, const std::string& suite, VerifyOptions o,
                std::optional<Word> reference = std::nullopt) {
  o.jobs = jobs();
  RootDatum rd = RootDatum::parse(type);
  return run_suite(cs.get(type, required_height(rd, suite, o), reference), suite, o);
}

Outcome rank_one() {
  Outcome out;
  auto start = Clock::now();
  ContextOptions co;
  co.height_bound = 6;
  Context ctx(RootDatum::parse("A1"), co);
  TransitionEngine eng(ctx);
  ZeroTest zero = ctx.zero_test();
  const Word w = ctx.reference_word();
  int checked = 0;
  auto expect = [&](bool holds, const std::string& what) {
    ++checked;
    if (!holds) {
      out.ok = false;
      out.detail += " " + what + ";";
    }
  };
  for (int n = 0; n <= 6; ++n) {
    const std::string at = " n=" + std::to_string(n);
    const auto& s = ctx.slice(Weight(std::vector<int>{n}));
    expect(s.size() == 1 && zero(s.elements[0] - divided_power(ctx.datum(), 0, n)), "canonical basis" + at);
    expect(eng.zeta_direct(w, ctx.label({n})) == Row{{{n}, Scalar(1)}}, "zeta identity" + at);
    for (int p = 0; p <= n; ++p) {
      Row closed{{{n - p}, Scalar::q_power(-p * n + p * (p + 1) / 2)}};
      expect(eng.d_hat_row(w, 0, p, {n}) == closed, "d^ closed form" + at + " p=" + std::to_string(p));
    }
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  expect(secs < 1.0, "took " + std::to_string(secs) + " s, limit 1 s");
  out.detail = std::to_string(checked) + " exact checks;" + out.detail;
  return out;
}

Outcome type_a2(Contexts& cs) {
  Outcome out;
  VerifyOptions o;
  o.bound = 8;
  SuiteReport r = run(cs, "A2", "positivity", o);
  require(out, r, "A2",
          {"zeta integrality", "zeta unitriangularity", "zeta positivity", "canonical slices agree across words"});
  out.detail = std::to_string(total(r, "zeta positivity", false)) + " rows over both words;" + out.detail;
  return out;
}

Outcome type_a3(Contexts& cs) {
  Outcome out;
  Word w{0, 1, 0, 2, 1, 0};
  VerifyOptions o;
  o.bound = 5;
  o.words = {w};
  SuiteReport r = run(cs, "A3", "positivity", o, w);
  require(out, r, "A3", {"zeta integrality", "zeta unitriangularity", "zeta positivity"});
  out.detail = std::to_string(total(r, "zeta positivity", false)) + " rows for 1,2,1,3,2,1;" + out.detail;
  return out;
}

Outcome non_simply_laced(Contexts& cs) {
  Outcome out;
  for (const auto& [type, bound] : std::vector<std::pair<std::string, int>>{{"B2", 6}, {"G2", 5}}) {
    VerifyOptions o;
    o.bound = bound;
    SuiteReport f = run(cs, type, "formula", o);
    require(out, f, type, {"product formula equals direct expansion"});
    SuiteReport p = run(cs, type, "positivity", o);
    require(out, p, type, {"zeta integrality", "zeta unitriangularity", "zeta positivity"});
    out.detail += " " + type + ": " + std::to_string(total(f, "product formula equals direct expansion", false)) +
                  " rows, positivity measured " + std::to_string(total(p, "zeta positivity", true)) + " non-positive of " +
                  std::to_string(total(p, "zeta positivity", false)) + ";";
  }
  return out;
}

Outcome duality(Contexts& cs) {
  Outcome out;
  for (const auto& [type, bound] : std::vector<std::pair<std::string, int>>{{"A2", 6}, {"B2", 5}}) {
    VerifyOptions o;
    o.bound = bound;
    SuiteReport r = run(cs, type, "duality", o);
    require(out, r, type, {"dual PBW orthogonality"});
    out.detail += " " + type + ": " + std::to_string(total(r, "dual PBW orthogonality", false)) + " pairs;";
  }
  return out;
}

// Criteria 6 to 8 share one run of the similarity suite per type.
std::map<std::string, SuiteReport> similarity_reports(Contexts& cs) {
  std::map<std::string, SuiteReport> out;
  for (const auto& type : {"A2", "B2"}) {
    VerifyOptions o;
    o.bound = 5;
    o.max_n = 3;
    out[type] = run(cs, type, "similarity", o);
  }
  return out;
}

Outcome from_reports(const std::map<std::string, SuiteReport>& reports, const std::vector<std::string>& names) {
  Outcome out;
  for (const auto& [type, r] : reports) {
    require(out, r, type, names);
    std::uint64_t n = 0;
    for (const auto& name : names) n += total(r, name, false);
    out.detail += " " + type + ": " + std::to_string(n) + " instances;";
  }
  return out;
}

Outcome properties() {
  // Own contexts: the sampled scope depends on the computed height.
  Contexts cs;
  Outcome out;
  const std::vector<std::string> names{"form adjointness",
                                       "T'' invariance of the form on Ker e'_i",
                                       "braid inverse pairs",
                                       "i-string reconstruction",
                                       "crystal axioms for e~ and f~",
                                       "crystal axioms for e~* and f~*",
                                       "Saito reflection weight law",
                                       "Kashiwara embedding commutes with e~_j, f~_j"};
  for (const auto& type : {"A2", "B2", "G2", "A3"}) {
    VerifyOptions o;
    o.bound = 4;
    o.samples = 200;
    SuiteReport r = run(cs, type, "properties", o);
    require(out, r, type, names, 200);
    bool all = true;
    for (const auto& c : r.checks) all = all && c.ok();
    if (!all) {
      out.ok = false;
      out.detail += " " + std::string(type) + ": another property failed;";
    }
  }
  out.detail = "200 samples per property in A2, B2, G2, A3;" + out.detail;
  return out;
}

}  // namespace

int main() {
  Contexts cs;
  std::map<std::string, SuiteReport> sim;
  auto similar = [&](const std::vector<std::string>& names) {
    if (sim.empty()) sim = similarity_reports(cs);
    return from_reports(sim, names);
  };
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"rank 1: canonical basis, identity zeta, closed-form d^", rank_one},
      {"A2 height <= 8: zeta positive, unitriangular, words agree", [&] { return type_a2(cs); }},
      {"A3 word 1,2,1,3,2,1 height <= 5: positivity, unitriangularity", [&] { return type_a3(cs); }},
      {"B2 height <= 6, G2 height <= 5: formula equals direct", [&] { return non_simply_laced(cs); }},
      {"dual PBW orthogonality: A2 height <= 6, B2 height <= 5", [&] { return duality(cs); }},
      {"similarity identity: A2, B2 height <= 5, N <= 3", [&] { return similar({"similarity of structure constants"}); }},
      {"d^ against d under * and the bar twist",
       [&] { return similar({"d^ equals d conjugated by *", "d^ equals the bar twist of d"}); }},
      {"degree bounds for every c and d^ entry", [&] { return similar({"degree bound for c", "degree bound for d^"}); }},
      {"property suite, randomized", properties},
  };
  bool all = true;
  int k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    auto start = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("error: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    all = all && o.ok;
    std::printf("criterion %d %s  %s [%.1f s] %s\n", k, o.ok ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
