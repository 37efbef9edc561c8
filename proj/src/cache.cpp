#include "qcanon/cache.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qcanon/errors.hpp"

namespace qcanon {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string dashed(const std::string& s) {
  std::string out = s;
  std::replace(out.begin(), out.end(), ',', '-');
  return out;
}

Weight parse_key(const std::string& text) {
  std::vector<int> c;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) c.push_back(std::stoi(part));
  return Weight(std::move(c));
}

std::string slice_file(const Word& w, const Weight& content) {
  return "slice_" + dashed(word_to_string(w)) + "_" + dashed(content.key()) + ".json";
}

std::string roots_file(const Word& w) { return "roots_" + dashed(word_to_string(w)) + ".json"; }

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError("cannot read " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(p.string() + ": " + e.what());
  }
}

void write_atomic(const fs::path& p, const json& j) {
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IntegrityError("cannot write " + tmp.string());
    out << j.dump(1) << "\n";
    if (!out) throw IntegrityError("cannot write " + tmp.string());
  }
  fs::rename(tmp, p);
}

json element_to_json(const NegElement& x) {
  json terms = json::array();
  for (const auto& [w, c] : x.terms()) terms.push_back(json::array({word_to_string(w), c.to_string()}));
  return {{"content", x.content().key()}, {"terms", terms}};
}

NegElement element_from_json(const json& j) {
  NegElement x(parse_key(j.at("content").get<std::string>()));
  for (const auto& t : j.at("terms")) x.add(parse_word(t.at(0).get<std::string>()), Scalar::parse(t.at(1).get<std::string>()));
  return x;
}

json slice_to_json(const CanonicalBasisSlice& s) {
  json tuples = json::array(), coeffs = json::array();
  for (const auto& t : s.tuples) tuples.push_back(tuple_to_string(t));
  for (std::size_t k = 0; k < s.size(); ++k)
    for (std::size_t c = 0; c < s.size(); ++c)
      if (!s.coeffs[k][c].is_zero()) coeffs.push_back(json::array({k, c, s.coeffs[k][c].to_string()}));
  return {{"word", word_to_string(s.word)}, {"content", s.content.key()}, {"order", s.order},
          {"solve_order", s.solve_order}, {"tuples", tuples}, {"coeffs", coeffs}};
}

CanonicalBasisSlice slice_from_json(const json& j) {
  CanonicalBasisSlice s;
  s.word = parse_word(j.at("word").get<std::string>());
  s.content = parse_key(j.at("content").get<std::string>());
  s.order = j.at("order").get<std::string>();
  s.solve_order = j.at("solve_order").get<std::vector<std::size_t>>();
  for (const auto& t : j.at("tuples")) s.tuples.push_back(parse_tuple(t.get<std::string>()));
  const std::size_t n = s.tuples.size();
  s.coeffs.assign(n, std::vector<Scalar>(n));
  for (const auto& e : j.at("coeffs")) {
    auto k = e.at(0).get<std::size_t>(), c = e.at(1).get<std::size_t>();
    if (k >= n || c >= n) throw ParseError("coefficient index out of range");
    s.coeffs[k][c] = Scalar::parse(e.at(2).get<std::string>());
  }
  return s;
}

struct Manifest {
  std::set<Word> words;
  std::set<std::pair<Word, Weight>> slices;
};

}  // namespace

SliceCache::SliceCache(fs::path root, const RootDatum& rd, const Word& reference)
    : dir_(std::move(root) / (rd.label() + "_" + dashed(word_to_string(reference)))),
      type_(rd.label()),
      reference_(reference) {}

SliceCache::LoadResult SliceCache::load(Context& ctx) const {
  LoadResult r;
  const fs::path manifest = dir_ / "manifest.json";
  if (!fs::exists(manifest)) return r;
  try {
    json m = read_json(manifest);
    int version = m.value("format_version", 0);
    if (version != kFormatVersion) {
      r.notice = "cache at " + dir_.string() + " has format version " + std::to_string(version) + ", expected " +
                 std::to_string(kFormatVersion) + "; rebuilding";
      return r;
    }
    if (m.at("type").get<std::string>() != type_ ||
        parse_word(m.at("reference_word").get<std::string>()) != reference_)
      throw ParseError("manifest describes a different root datum");
    for (const auto& w : m.at("words")) {
      Word word = parse_word(w.get<std::string>());
      json rj = read_json(dir_ / roots_file(word));
      std::vector<NegElement> rv;
      for (const auto& e : rj.at("root_vectors")) rv.push_back(element_from_json(e));
      auto roots = ctx.datum().positive_roots_of(word);
      if (rv.size() != roots.size()) throw ParseError("wrong number of root vectors");
      for (std::size_t k = 0; k < rv.size(); ++k)
        if (rv[k].content() != roots[k]) throw ParseError("root vector of the wrong weight");
      ctx.preload_root_vectors(word, std::move(rv));
    }
    for (const auto& e : m.at("slices")) {
      Word word = parse_word(e.at("word").get<std::string>());
      Weight content = parse_key(e.at("content").get<std::string>());
      if (content.height() > ctx.height_bound()) continue;
      CanonicalBasisSlice s = slice_from_json(read_json(dir_ / slice_file(word, content)));
      if (s.word != word || s.content != content) throw ParseError("slice file does not match the manifest");
      ctx.preload_slice(std::move(s));
      ++r.slices;
    }
  } catch (const std::exception& e) {
    // Nothing computed from a partial load survives: the caller rebuilds
    // with a fresh context.
    r.slices = 0;
    r.notice = "cache at " + dir_.string() + " is unreadable (" + e.what() + "); rebuilding";
  }
  return r;
}

void SliceCache::store(Context& ctx, bool fresh) const {
  fs::create_directories(dir_);
  const fs::path manifest = dir_ / "manifest.json";
  Manifest m;
  if (!fresh && fs::exists(manifest)) {
    try {
      json old = read_json(manifest);
      if (old.value("format_version", 0) == kFormatVersion) {
        for (const auto& w : old.at("words")) m.words.insert(parse_word(w.get<std::string>()));
        for (const auto& e : old.at("slices"))
          m.slices.emplace(parse_word(e.at("word").get<std::string>()),
                           parse_key(e.at("content").get<std::string>()));
      }
    } catch (const std::exception&) {
      m = Manifest{};  // replaced below
    }
  }
  for (const auto& w : ctx.known_words()) {
    if (m.words.count(w) && fs::exists(dir_ / roots_file(w))) continue;
    json rv = json::array();
    for (const auto& x : ctx.basis(w).root_vectors()) rv.push_back(element_to_json(x));
    write_atomic(dir_ / roots_file(w), {{"word", word_to_string(w)}, {"root_vectors", rv}});
    m.words.insert(w);
  }
  for (const auto& [w, content] : ctx.computed_slices()) {
    if (!m.words.count(w)) continue;
    if (m.slices.count({w, content}) && fs::exists(dir_ / slice_file(w, content))) continue;
    write_atomic(dir_ / slice_file(w, content), slice_to_json(ctx.slice(w, content)));
    m.slices.emplace(w, content);
  }
  int height = 0;
  json words = json::array(), slices = json::array();
  for (const auto& w : m.words) words.push_back(word_to_string(w));
  for (const auto& [w, content] : m.slices) {
    height = std::max(height, content.height());
    slices.push_back({{"word", word_to_string(w)}, {"content", content.key()}});
  }
  write_atomic(manifest, {{"format_version", kFormatVersion},
                          {"type", type_},
                          {"reference_word", word_to_string(reference_)},
                          {"height_bound", height},
                          {"words", words},
                          {"slices", slices}});
}

}  // namespace qcanon
