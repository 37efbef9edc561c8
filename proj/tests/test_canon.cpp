#include <gtest/gtest.h>

#include "qcanon/canon.hpp"
#include "qcanon/errors.hpp"
#include "qcanon/verify.hpp"
#include "support.hpp"

using namespace qtest;

namespace {

ContextOptions small(int h) {
  ContextOptions o;
  o.height_bound = h;
  return o;
}

std::vector<CrystalLabel> labels_for(Context& ctx, int h) { return ctx.labels_up_to(h); }

}  // namespace

TEST(Canon, RankOneSlicesAreDividedPowers) {
  Context ctx(RootDatum::parse("A1"), small(6));
  ZeroTest zero = ctx.zero_test();
  for (int n = 0; n <= 6; ++n) {
    const auto& s = ctx.slice(W({n}));
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.tuples[0], (Tuple{n}));
    EXPECT_TRUE(zero(s.elements[0] - divided_power(ctx.datum(), 0, n)));
    EXPECT_EQ(s.coeffs[0][0], Scalar(1));
  }
}

TEST(Canon, A2RootSlice) {
  Context ctx(RootDatum::parse("A2"), small(4));
  ZeroTest zero = ctx.zero_test();
  const auto& s = ctx.slice(W({1, 1}));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.tuples, (std::vector<Tuple>{{0, 1, 0}, {1, 0, 1}}));
  // G(0,1,0) = F2 F1 = F^(0,1,0) + q F^(1,0,1), G(1,0,1) = F1 F2
  EXPECT_TRUE(zero(s.elements[0] - elem(2, {{{2, 1}, "1"}})));
  EXPECT_TRUE(zero(s.elements[1] - elem(2, {{{1, 2}, "1"}})));
  EXPECT_EQ(s.pbw_coords(0), (std::map<Tuple, Scalar>{{{0, 1, 0}, S("1")}, {{1, 0, 1}, S("q")}}));
  EXPECT_EQ(s.index_of({1, 0, 1}), 1u);
  EXPECT_EQ(ctx.identify(ctx.reference_word(), elem(2, {{{2, 1}, "1"}})), (Tuple{0, 1, 0}));
  EXPECT_THROW(ctx.identify(ctx.reference_word(), elem(2, {{{2, 1}, "q"}})), IntegrityError);
}

TEST(Canon, A2SecondDegreeSlice) {
  // At 2a1 + a2 the canonical elements are F1^(2) F2 and F2 F1^(2).
  Context ctx(RootDatum::parse("A2"), small(4));
  ZeroTest zero = ctx.zero_test();
  const auto& s = ctx.slice(W({2, 1}));
  EXPECT_EQ(s.size(), 2u);
  for (const auto& g : s.elements) EXPECT_TRUE(zero(bar_elem(g) - g));
  EXPECT_TRUE(zero(s.elements[s.index_of({2, 0, 1})] - elem(2, {{{1, 1, 2}, "(1)/(q + q^-1)"}})));
  EXPECT_TRUE(zero(s.elements[s.index_of({1, 1, 0})] - elem(2, {{{2, 1, 1}, "(1)/(q + q^-1)"}})));
}

TEST(Canon, CrystalLeadingIndex) {
  EXPECT_EQ(crystal_leading_index({S("1"), S("q")}), std::optional<std::size_t>(0));
  EXPECT_EQ(crystal_leading_index({S("q"), S("1 + q^3")}), std::optional<std::size_t>(1));
  EXPECT_EQ(crystal_leading_index({S("q"), S("q^2")}), std::nullopt);
  EXPECT_EQ(crystal_leading_index({S("q"), S("(1)/(1 - q)")}), std::optional<std::size_t>(1));
  EXPECT_THROW(crystal_leading_index({S("1"), S("1")}), IntegrityError);
  EXPECT_THROW(crystal_leading_index({S("2")}), IntegrityError);
  EXPECT_THROW(crystal_leading_index({S("q^-1")}), IntegrityError);
}

TEST(Canon, CrystalExamples) {
  Context ctx(RootDatum::parse("A2"), small(4));
  const Word& w = ctx.reference_word();
  const CrystalLabel& u = ctx.unit_label(w);
  EXPECT_EQ(u.datum, (Tuple{0, 0, 0}));
  EXPECT_EQ(u.eps, (std::vector<int>{0, 0}));
  EXPECT_FALSE(ctx.crystal_step(u, 0, CrystalDir::e).has_value());
  auto f1 = ctx.crystal_step(u, w[0], CrystalDir::f);
  ASSERT_TRUE(f1.has_value());
  EXPECT_EQ(f1->datum, (Tuple{1, 0, 0}));
  auto f2 = ctx.crystal_step(u, 1, CrystalDir::f);
  EXPECT_EQ(f2->datum, (Tuple{0, 0, 1}));
  // f~_1 acts by raising the first exponent for a word starting with 1
  const CrystalLabel& b = ctx.label({0, 1, 0});
  EXPECT_EQ(ctx.crystal_step(b, 0, CrystalDir::f)->datum, (Tuple{1, 1, 0}));
  EXPECT_EQ(b.eps, (std::vector<int>{0, 1}));
  EXPECT_EQ(b.eps_star, (std::vector<int>{1, 0}));
  // *(F2 F1) = F1 F2
  EXPECT_EQ(ctx.star_label(b).datum, (Tuple{1, 0, 1}));
}

TEST(Canon, SaitoAndEmbeddingExamples) {
  Context ctx(RootDatum::parse("A2"), small(4));
  const CrystalLabel& b = ctx.label({0, 1, 0});
  CrystalLabel r = ctx.saito_reflect(b, 0, SaitoDir::lambda_inverse);
  EXPECT_EQ(r.weight(), -W({0, 1}));
  EXPECT_EQ(r.eps_star[0], 0);
  EXPECT_EQ(ctx.saito_reflect(r, 0, SaitoDir::lambda), b);
  EXPECT_THROW(ctx.saito_reflect(ctx.label({1, 0, 0}), 0, SaitoDir::lambda_inverse), DomainError);
  // eps*_2(F2 F1) = 0, so the embedding for 2 is (b, 0)
  auto [b0, n] = ctx.kashiwara_embed(b, 1);
  EXPECT_EQ(b0, b);
  EXPECT_EQ(n, 0);
  auto [b1, m] = ctx.kashiwara_embed(b, 0);
  EXPECT_EQ(m, -1);
  EXPECT_EQ(b1.eps_star[0], 0);
}

TEST(Canon, PreloadChecksIntegrity) {
  Context a(RootDatum::parse("B2"), small(4));
  CanonicalBasisSlice s = a.slice(W({1, 1}));
  Context b(RootDatum::parse("B2"), small(4));
  CanonicalBasisSlice bad = s;
  bad.coeffs[0][0] = Scalar(2);
  EXPECT_THROW(b.preload_slice(bad), IntegrityError);
  bad = s;
  bad.tuples.pop_back();
  EXPECT_THROW(b.preload_slice(bad), IntegrityError);
  CanonicalBasisSlice bare = s;
  bare.elements.clear();
  b.preload_slice(bare);
  ZeroTest zero = b.zero_test();
  const auto& t = b.slice(W({1, 1}));
  ASSERT_EQ(t.size(), s.size());
  for (std::size_t k = 0; k < s.size(); ++k) EXPECT_TRUE(zero(t.elements[k] - s.elements[k]));
  EXPECT_EQ(b.computed_slices().size(), 1u);
}

TEST(Canon, LabelsCountKostant) {
  for (const auto& t : {"A2", "B2", "G2"}) {
    RootDatum rd = RootDatum::parse(t);
    Context ctx(rd, small(4));
    unsigned long long total = 0;
    for (int h = 0; h <= 4; ++h)
      for (const auto& c : ctx.contents_of_height(h)) total += rd.kostant_count(c);
    EXPECT_EQ(labels_for(ctx, 4).size(), total) << t;
  }
}

// ---------------------------------------------------------------- properties

class CanonProperties : public ::testing::TestWithParam<std::string> {
 protected:
  void SetUp() override {
    rd_ = RootDatum::parse(GetParam());
    ctx_ = std::make_unique<Context>(*rd_, small(4));
    labels_ = ctx_->labels_up_to(4);
  }
  const CrystalLabel& pick(Gen& g) { return labels_[static_cast<std::size_t>(g.uniform(0, int(labels_.size()) - 1))]; }

  std::optional<RootDatum> rd_;
  std::unique_ptr<Context> ctx_;
  std::vector<CrystalLabel> labels_;
};

TEST_P(CanonProperties, ElementsAreBarInvariantAndAgreeAcrossWords) {
  Context& ctx = *ctx_;
  ZeroTest zero = ctx.zero_test();
  for (int h = 0; h <= 4; ++h)
    for (const auto& c : ctx.contents_of_height(h)) {
      const auto& s = ctx.slice(c);
      for (std::size_t k = 0; k < s.size(); ++k) {
        EXPECT_TRUE(zero(bar_elem(s.elements[k]) - s.elements[k]));
        EXPECT_EQ(s.coeffs[k][k], Scalar(1));
        for (std::size_t j = 0; j < s.size(); ++j) {
          if (j == k || s.coeffs[k][j].is_zero()) continue;
          EXPECT_TRUE(in_shifted_integer_poly(s.coeffs[k][j], 1));
        }
      }
      for (const auto& w : rd_->longest_element_words()) {
        // every canonical element of the reference word is canonical for w
        for (const auto& g : s.elements) {
          auto coords = ctx.canonical_expand(w, g);
          int ones = 0;
          for (const auto& x : coords) {
            if (x.is_one()) {
              ++ones;
            } else {
              EXPECT_TRUE(x.is_zero());
            }
          }
          EXPECT_EQ(ones, 1);
        }
      }
    }
}

TEST_P(CanonProperties, CrystalAxioms) {
  Context& ctx = *ctx_;
  Gen g(61);
  for (int s = 0; s < kSamples; ++s) {
    const CrystalLabel& b = pick(g);
    int i = g.uniform(0, rd_->rank() - 1);
    EXPECT_EQ(b.phi[i], b.eps[i] + rd_->pairing(b.weight(), i));
    EXPECT_EQ(b.phi_star[i], b.eps_star[i] + rd_->pairing(b.weight(), i));
    EXPECT_EQ(ctx.star_label(b).eps[i], b.eps_star[i]);
    EXPECT_EQ(ctx.star_label(ctx.star_label(b)), b);
    auto e = ctx.crystal_step(b, i, CrystalDir::e);
    EXPECT_EQ(e.has_value(), b.eps[i] > 0);
    if (e) {
      EXPECT_EQ(e->weight(), b.weight() + rd_->simple_root(i));
      EXPECT_EQ(e->eps[i], b.eps[i] - 1);
      EXPECT_EQ(ctx.crystal_step(*e, i, CrystalDir::f), b);
    }
    if (b.content.height() < 4) {
      auto f = ctx.crystal_step(b, i, CrystalDir::f);
      ASSERT_TRUE(f.has_value());
      EXPECT_EQ(f->eps[i], b.eps[i] + 1);
      EXPECT_EQ(ctx.crystal_step(*f, i, CrystalDir::e), b);
      auto fs = ctx.crystal_step(b, i, CrystalDir::f_star);
      ASSERT_TRUE(fs.has_value());
      EXPECT_EQ(fs->eps_star[i], b.eps_star[i] + 1);
      EXPECT_EQ(*fs, ctx.star_label(*ctx.crystal_step(ctx.star_label(b), i, CrystalDir::f)));
    }
  }
}

TEST_P(CanonProperties, SaitoReflectionAndEmbedding) {
  Context& ctx = *ctx_;
  Gen g(62);
  for (int s = 0; s < kSamples; ++s) {
    const CrystalLabel& b = pick(g);
    int i = g.uniform(0, rd_->rank() - 1);
    if (b.eps[i] == 0 && b.content.height() + std::abs(rd_->pairing(b.content, i)) <= 4) {
      CrystalLabel r = ctx.saito_reflect(b, i, SaitoDir::lambda_inverse);
      EXPECT_EQ(r.content, -rd_->reflect(i, -b.content));
      EXPECT_EQ(r.eps_star[i], 0);
      EXPECT_EQ(ctx.saito_reflect(r, i, SaitoDir::lambda), b);
    }
    auto [b0, n] = ctx.kashiwara_embed(b, i);
    EXPECT_EQ(b0.eps_star[i], 0);
    EXPECT_EQ(n, -b.eps_star[i]);
    EXPECT_EQ(b0.content + b.eps_star[i] * rd_->simple_root(i), b.content);
    int j = g.uniform(0, rd_->rank() - 1);
    if (j != i && b.content.height() < 4) {
      // f~_j with j != i acts on the first factor of the embedding
      auto fb = ctx.crystal_step(b, j, CrystalDir::f);
      auto [c0, m] = ctx.kashiwara_embed(*fb, i);
      EXPECT_EQ(m, n);
      EXPECT_EQ(c0, *ctx.crystal_step(b0, j, CrystalDir::f));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Types, CanonProperties, ::testing::Values("A1", "A2", "B2", "G2", "A3"));
