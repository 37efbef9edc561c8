// Command-line front end: reduced words and root sequences, canonical basis
// slices, transition tables and the verification suites.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcanon/cache.hpp"
#include "qcanon/errors.hpp"
#include "qcanon/parallel.hpp"
#include "qcanon/transition.hpp"
#include "qcanon/verify.hpp"

namespace {

using namespace qcanon;
using json = nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
// Hard limit on slice heights, including those the product formula needs
// above the requested bound.
constexpr int kMaxHeight = 16;

struct JobSpec {
  std::string type;
  std::string word;  // empty: reference word only; "all": every reduced word
  int bound = 4;
  std::string format = "json";
  std::string cache_dir;
  int jobs = default_jobs();
  std::string suite = "all";
  std::string weight;  // canonical: restrict to one content
  int samples = 200;
  std::uint64_t seed = 20240601;
  int max_n = 3;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) out << (k ? "," : "") << csv_field(fields[k]);
  out << "\n";
}

std::string ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out;
}

Weight parse_content(const std::string& text, int rank) {
  std::vector<int> c;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      c.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw ParseError("bad weight '" + text + "'");
    }
  }
  if (static_cast<int>(c.size()) != rank) throw DomainError("weight '" + text + "' does not match the rank");
  for (int x : c)
    if (x < 0) throw DomainError("weight coefficients must be nonnegative");
  return Weight(std::move(c));
}

json header(const JobSpec& spec, const std::string& command) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"type", spec.type}, {"bound", spec.bound}};
}

// Root datum, context (optionally backed by the cache) and chosen words.
class Session {
 public:
  Session(const JobSpec& spec, int height) : spec_(spec), rd_(RootDatum::parse(spec.type)) {
    if (spec.bound < 1) throw DomainError("--bound must be at least 1");
    if (height > kMaxHeight)
      throw CapacityError("needs canonical slices of height " + std::to_string(height) + ", above the limit " +
                          std::to_string(kMaxHeight));
    height_ = height;
    std::optional<Word> ref;
    if (!spec.word.empty() && spec.word != "all") {
      ref = parse_word(spec.word);
      for (int x : *ref)
        if (x >= rd_.rank()) throw DomainError("word letter out of range for " + spec.type);
      if (!rd_.is_reduced_longest(*ref)) throw DomainError("'" + spec.word + "' is not a reduced word of w0");
    }
    reference_ = ref.value_or(rd_.reference_word());
    make_context();
    if (!spec.cache_dir.empty()) {
      cache_ = std::make_unique<SliceCache>(spec.cache_dir, rd_, reference_);
      auto r = cache_->load(*ctx_);
      if (!r.notice.empty()) {
        std::cerr << "notice: " << r.notice << "\n";
        fresh_ = true;
        make_context();
      }
    }
  }

  const RootDatum& datum() const { return rd_; }
  Context& context() { return *ctx_; }
  TransitionEngine& engine() { return *engine_; }

  std::vector<Word> words() const {
    if (spec_.word == "all") return rd_.longest_element_words();
    return {reference_};
  }

  void save() {
    if (cache_) cache_->store(*ctx_, fresh_);
  }

 private:
  void make_context() {
    engine_.reset();
    ctx_ = std::make_unique<Context>(rd_, ContextOptions{height_}, reference_);
    engine_ = std::make_unique<TransitionEngine>(*ctx_);
  }

  const JobSpec& spec_;
  RootDatum rd_;
  int height_ = 0;
  Word reference_;
  std::unique_ptr<Context> ctx_;
  std::unique_ptr<TransitionEngine> engine_;
  std::unique_ptr<SliceCache> cache_;
  bool fresh_ = false;
};

int cmd_roots(const JobSpec& spec) {
  RootDatum rd = RootDatum::parse(spec.type);
  std::vector<Word> words;
  if (spec.word.empty() || spec.word == "all") {
    words = rd.longest_element_words();
  } else {
    words = {parse_word(spec.word)};
  }
  json out = header(spec, "roots");
  out.erase("bound");
  out["words"] = json::array();
  if (spec.format == "csv") csv_row(std::cout, {"word", "position", "root"});
  for (const auto& w : words) {
    auto roots = rd.positive_roots_of(w);
    json rs = json::array();
    for (std::size_t k = 0; k < roots.size(); ++k) {
      rs.push_back(roots[k].key());
      if (spec.format == "csv") csv_row(std::cout, {word_to_string(w), std::to_string(k + 1), roots[k].key()});
    }
    out["words"].push_back({{"word", word_to_string(w)}, {"roots", rs}});
  }
  if (spec.format == "json") std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_canonical(const JobSpec& spec) {
  Session s(spec, spec.bound);
  Context& ctx = s.context();
  std::vector<Weight> contents;
  if (!spec.weight.empty()) {
    Weight c = parse_content(spec.weight, s.datum().rank());
    ctx.check_capacity(c);
    contents.push_back(c);
  } else {
    for (int h = 0; h <= spec.bound; ++h)
      for (const auto& c : ctx.contents_of_height(h)) contents.push_back(c);
  }
  json out = header(spec, "canonical");
  out["words"] = json::array();
  if (spec.format == "csv")
    csv_row(std::cout, {"word", "content", "datum", "eps", "eps_star", "phi", "phi_star", "pbw_tuple", "coeff"});
  for (const auto& w : s.words()) {
    auto slices = parallel_map<const CanonicalBasisSlice*>(
        contents.size(), spec.jobs, [&](std::size_t k) { return &ctx.slice(w, contents[k]); });
    json js = json::array();
    for (const auto* sl : slices) {
      auto labels = parallel_map<const CrystalLabel*>(sl->size(), spec.jobs,
                                                      [&](std::size_t k) { return &ctx.label(w, sl->tuples[k]); });
      json jl = json::array();
      for (std::size_t k = 0; k < sl->size(); ++k) {
        const CrystalLabel& b = *labels[k];
        json pbw = json::array();
        for (const auto& [t, c] : sl->pbw_coords(k)) {
          pbw.push_back({{"tuple", tuple_to_string(t)}, {"coeff", c.to_string()}});
          if (spec.format == "csv")
            csv_row(std::cout, {word_to_string(w), sl->content.key(), tuple_to_string(b.datum), ints(b.eps),
                                ints(b.eps_star), ints(b.phi), ints(b.phi_star), tuple_to_string(t), c.to_string()});
        }
        jl.push_back({{"datum", tuple_to_string(b.datum)},
                      {"eps", b.eps},
                      {"eps_star", b.eps_star},
                      {"phi", b.phi},
                      {"phi_star", b.phi_star},
                      {"pbw", pbw}});
      }
      js.push_back({{"content", sl->content.key()}, {"order", sl->order}, {"labels", jl}});
    }
    out["words"].push_back({{"word", word_to_string(w)}, {"slices", js}});
  }
  s.save();
  if (spec.format == "json") std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_transition(const JobSpec& spec) {
  RootDatum probe = RootDatum::parse(spec.type);
  std::vector<Word> words;
  if (spec.word == "all") {
    words = probe.longest_element_words();
  } else if (!spec.word.empty()) {
    words = {parse_word(spec.word)};
  } else {
    words = {probe.reference_word()};
  }
  int height = spec.bound;
  for (const auto& w : words)
    if (probe.is_reduced_longest(w)) height = std::max(height, formula_height(probe, w, spec.bound));
  Session s(spec, height);
  Context& ctx = s.context();
  TransitionEngine& eng = s.engine();
  bool all_agree = true;
  json out = header(spec, "transition");
  out["tables"] = json::array();
  if (spec.format == "csv") csv_row(std::cout, {"word", "datum", "tuple", "direct", "formula", "agree"});
  for (const auto& w : s.words()) {
    auto labels = ctx.labels_up_to(spec.bound, w);
    struct Computed {
      Row direct, formula;
    };
    auto rows = parallel_map<Computed>(labels.size(), spec.jobs, [&](std::size_t k) {
      return Computed{eng.zeta_direct(w, labels[k]), eng.zeta_formula_row(w, labels[k])};
    });
    json jr = json::array();
    for (std::size_t k = 0; k < labels.size(); ++k) {
      json entries = json::array();
      for (const auto& t : ctx.basis(w).tuples(labels[k].content)) {
        auto d = rows[k].direct.find(t);
        auto f = rows[k].formula.find(t);
        Scalar dv = d == rows[k].direct.end() ? Scalar() : d->second;
        Scalar fv = f == rows[k].formula.end() ? Scalar() : f->second;
        if (dv.is_zero() && fv.is_zero()) continue;
        const bool agree = dv == fv;
        all_agree = all_agree && agree;
        entries.push_back(
            {{"tuple", tuple_to_string(t)}, {"direct", dv.to_string()}, {"formula", fv.to_string()}, {"agree", agree}});
        if (spec.format == "csv")
          csv_row(std::cout, {word_to_string(w), tuple_to_string(labels[k].datum), tuple_to_string(t), dv.to_string(),
                              fv.to_string(), agree ? "true" : "false"});
      }
      jr.push_back({{"datum", tuple_to_string(labels[k].datum)}, {"entries", entries}});
    }
    out["tables"].push_back({{"word", word_to_string(w)}, {"rows", jr}});
  }
  out["all_agree"] = all_agree;
  s.save();
  if (spec.format == "json") std::cout << out.dump(2) << "\n";
  if (!all_agree) std::cerr << "error: the product formula disagrees with the direct expansion\n";
  return all_agree ? 0 : kExitFailure;
}

int cmd_verify(const JobSpec& spec) {
  std::vector<std::string> suites;
  if (spec.suite == "all") {
    suites = suite_names();
  } else {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), spec.suite) == names.end())
      throw DomainError("unknown suite '" + spec.suite + "'");
    suites = {spec.suite};
  }
  RootDatum probe = RootDatum::parse(spec.type);
  VerifyOptions o;
  o.bound = spec.bound;
  o.jobs = spec.jobs;
  o.samples = spec.samples;
  o.seed = spec.seed;
  o.max_n = spec.max_n;
  if (!spec.word.empty() && spec.word != "all") o.words = {parse_word(spec.word)};
  int height = spec.bound;
  for (const auto& name : suites)
    if (o.words.empty() || probe.is_reduced_longest(o.words.front()))
      height = std::max(height, required_height(probe, name, o));
  Session s(spec, height);
  json out = header(spec, "verify");
  out["suites"] = json::array();
  bool ok = true;
  if (spec.format == "csv")
    csv_row(std::cout, {"suite", "check", "asserted", "ok", "checked", "failed", "skipped", "scope", "note"});
  for (const auto& name : suites) {
    SuiteReport r = run_suite(s.engine(), name, o);
    ok = ok && r.ok();
    json checks = json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name},
                        {"scope", c.scope},
                        {"asserted", c.asserted},
                        {"note", c.note},
                        {"ok", c.ok()},
                        {"checked", c.checked},
                        {"failed", c.failed},
                        {"skipped", c.skipped},
                        {"witnesses", c.witnesses}});
      if (spec.format == "csv")
        csv_row(std::cout, {name, c.name, c.asserted ? "true" : "false", c.ok() ? "true" : "false",
                            std::to_string(c.checked), std::to_string(c.failed), std::to_string(c.skipped), c.scope,
                            c.note});
      for (const auto& w : c.witnesses)
        if (c.asserted) std::cerr << "failure: " << name << ": " << c.name << ": " << w << "\n";
    }
    out["suites"].push_back({{"suite", name}, {"ok", r.ok()}, {"checks", checks}});
  }
  out["ok"] = ok;
  s.save();
  if (spec.format == "json") std::cout << out.dump(2) << "\n";
  return ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical bases, PBW bases and transition matrices of U_q(n^-)"};
  app.require_subcommand(1);
  JobSpec spec;
  if (const char* env = std::getenv("QCANON_CACHE_DIR")) spec.cache_dir = env;

  auto common = [&](CLI::App* sub, bool with_bound) {
    sub->add_option("--type", spec.type, "Cartan type: A1-A4, B2-B4, C2-C4, D4, F4, G2")->required();
    sub->add_option("--word", spec.word, "Reduced word of w0, 1-based and comma separated, or 'all'");
    if (with_bound) sub->add_option("--bound", spec.bound, "Height bound (>= 1)")->capture_default_str();
    sub->add_option("--format", spec.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--jobs", spec.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto cached = [&](CLI::App* sub) {
    sub->add_option("--cache-dir", spec.cache_dir, "Slice cache directory (default $QCANON_CACHE_DIR)");
  };

  CLI::App* roots = app.add_subcommand("roots", "Reduced words of w0 and their root sequences");
  common(roots, false);
  CLI::App* canonical = app.add_subcommand("canonical", "Canonical basis slices with crystal data");
  common(canonical, true);
  cached(canonical);
  canonical->add_option("--weight", spec.weight, "Only the slice of this content, e.g. 1,1");
  CLI::App* transition = app.add_subcommand("transition", "Transition tables: direct and product formula");
  common(transition, true);
  cached(transition);
  CLI::App* verify = app.add_subcommand("verify", "Run verification suites");
  common(verify, true);
  cached(verify);
  verify->add_option("--suite", spec.suite, "all, positivity, formula, duality, similarity, crystal or properties")
      ->capture_default_str();
  verify->add_option("--samples", spec.samples, "Draws per sampled property")->capture_default_str();
  verify->add_option("--seed", spec.seed, "Seed of the sampled properties")->capture_default_str();
  verify->add_option("--max-n", spec.max_n, "Largest N in the similarity identity")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*roots) return cmd_roots(spec);
    if (*canonical) return cmd_canonical(spec);
    if (*transition) return cmd_transition(spec);
    return cmd_verify(spec);
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
