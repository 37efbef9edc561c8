#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "qcanon/cache.hpp"
#include "qcanon/errors.hpp"
#include "support.hpp"

using namespace qtest;
namespace fs = std::filesystem;

namespace {

ContextOptions small(int h) {
  ContextOptions o;
  o.height_bound = h;
  return o;
}

class Cache : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() / ("qcanon_cache_test_" + std::to_string(std::random_device{}()));
    fs::remove_all(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  // Fills a context for B2 with every slice up to height h and stores it.
  void populate(int h) {
    Context ctx(b2_, small(h));
    for (int k = 0; k <= h; ++k)
      for (const auto& c : ctx.contents_of_height(k)) ctx.slice(c);
    for (const auto& w : b2_.longest_element_words()) ctx.slice(w, W({1, 1}));
    SliceCache(root_, b2_, ctx.reference_word()).store(ctx);
  }

  std::string read(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path root_;
  RootDatum b2_ = RootDatum::parse("B2");
};

}  // namespace

TEST_F(Cache, RoundTrip) {
  populate(4);
  Context fresh(b2_, small(4));
  SliceCache cache(root_, b2_, fresh.reference_word());
  EXPECT_EQ(cache.dir().filename(), "B2_1-2-1-2");
  auto r = cache.load(fresh);
  EXPECT_TRUE(r.notice.empty());
  EXPECT_GT(r.slices, 0);
  Context direct(b2_, small(4));
  ZeroTest zero = direct.zero_test();
  for (const auto& [w, c] : fresh.computed_slices()) {
    const auto& a = fresh.slice(w, c);
    const auto& b = direct.slice(w, c);
    ASSERT_EQ(a.tuples, b.tuples);
    EXPECT_EQ(a.coeffs, b.coeffs);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_TRUE(zero(a.elements[k] - b.elements[k]));
  }
  EXPECT_EQ(static_cast<int>(fresh.computed_slices().size()), r.slices);
}

TEST_F(Cache, LowerBoundSkipsTallSlices) {
  populate(4);
  Context ctx(b2_, small(2));
  auto r = SliceCache(root_, b2_, ctx.reference_word()).load(ctx);
  EXPECT_TRUE(r.notice.empty());
  for (const auto& [w, c] : ctx.computed_slices()) EXPECT_LE(c.height(), 2);
}

TEST_F(Cache, StoreIsIdempotent) {
  populate(3);
  SliceCache cache(root_, b2_, b2_.reference_word());
  std::string before = read(cache.dir() / "manifest.json");
  Context ctx(b2_, small(3));
  ASSERT_TRUE(cache.load(ctx).notice.empty());
  cache.store(ctx);
  EXPECT_EQ(read(cache.dir() / "manifest.json"), before);
  for (const auto& e : fs::directory_iterator(cache.dir()))
    EXPECT_EQ(e.path().extension(), ".json") << e.path();
}

TEST_F(Cache, VersionMismatchIsReported) {
  populate(2);
  SliceCache cache(root_, b2_, b2_.reference_word());
  fs::path m = cache.dir() / "manifest.json";
  std::string text = read(m);
  auto pos = text.find("\"format_version\": 1");
  ASSERT_NE(pos, std::string::npos) << text;
  text.replace(pos, 19, "\"format_version\": 99");
  std::ofstream(m) << text;
  Context ctx(b2_, small(2));
  auto r = cache.load(ctx);
  EXPECT_NE(r.notice.find("format version 99"), std::string::npos) << r.notice;
  EXPECT_EQ(r.slices, 0);
  EXPECT_TRUE(ctx.computed_slices().empty());
  // a fresh store replaces the stale cache
  Context again(b2_, small(2));
  again.slice(W({1, 0}));
  cache.store(again, true);
  Context check(b2_, small(2));
  EXPECT_TRUE(cache.load(check).notice.empty());
}

TEST_F(Cache, CorruptionIsReported) {
  populate(3);
  SliceCache cache(root_, b2_, b2_.reference_word());
  int corrupted = 0;
  for (const auto& e : fs::directory_iterator(cache.dir())) {
    std::string name = e.path().filename().string();
    if (name.rfind("slice_", 0) == 0 && name.find("1-1") != std::string::npos) {
      std::ofstream(e.path()) << "{\"word\": [1, 2";
      ++corrupted;
    }
  }
  ASSERT_GT(corrupted, 0);
  Context ctx(b2_, small(3));
  auto r = cache.load(ctx);
  EXPECT_NE(r.notice.find("unreadable"), std::string::npos) << r.notice;
  EXPECT_EQ(r.slices, 0);
}

TEST_F(Cache, TamperedCoefficientsAreRejected) {
  populate(2);
  SliceCache cache(root_, b2_, b2_.reference_word());
  // Replace a diagonal coefficient: the slice no longer has a unit diagonal.
  bool changed = false;
  for (const auto& e : fs::directory_iterator(cache.dir())) {
    std::string name = e.path().filename().string();
    if (name.rfind("slice_", 0) != 0) continue;
    std::string text = read(e.path());
    auto pos = text.find("\"1\"");
    if (pos == std::string::npos) continue;
    text.replace(pos, 3, "\"2\"");
    std::ofstream(e.path()) << text;
    changed = true;
    break;
  }
  ASSERT_TRUE(changed);
  Context ctx(b2_, small(2));
  EXPECT_FALSE(cache.load(ctx).notice.empty());
}
