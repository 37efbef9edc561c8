#include <gtest/gtest.h>

#include "qcanon/canon.hpp"
#include "qcanon/errors.hpp"
#include "support.hpp"

using namespace qtest;

namespace {

ContextOptions small(int h) {
  ContextOptions o;
  o.height_bound = h;
  return o;
}

NegElement rebuild(PbwBasis& b, const std::map<Tuple, Scalar>& coords, const Weight& content) {
  NegElement y(content);
  for (const auto& [t, c] : coords) y += b.monomial(t) * c;
  return y;
}

}  // namespace

TEST(Pbw, TupleText) {
  EXPECT_EQ(tuple_to_string({0, 1, 0}), "(0,1,0)");
  EXPECT_EQ(parse_tuple("(2, 0,1)"), (Tuple{2, 0, 1}));
  EXPECT_THROW(parse_tuple("(1,x)"), ParseError);
}

TEST(Pbw, RootVectorsOfA2) {
  Context ctx(RootDatum::parse("A2"), small(4));
  ZeroTest zero = ctx.zero_test();
  const auto& rv = ctx.reference_basis().root_vectors();
  ASSERT_EQ(rv.size(), 3u);
  EXPECT_TRUE(zero(rv[0] - elem(2, {{{1}, "1"}})));
  EXPECT_TRUE(zero(rv[1] - elem(2, {{{2, 1}, "1"}, {{1, 2}, "-q"}})));
  EXPECT_TRUE(zero(rv[2] - elem(2, {{{2}, "1"}})));
  for (std::size_t k = 0; k < rv.size(); ++k) EXPECT_EQ(rv[k].content(), ctx.reference_basis().roots()[k]);
}

TEST(Pbw, RootVectorsAtTheEnds) {
  // The first and last root vectors of every reduced word are simple generators.
  for (const auto& t : {"A2", "B2", "G2", "A3"}) {
    RootDatum rd = RootDatum::parse(t);
    ZeroTest zero = full_zero_test(rd);
    for (const auto& w : rd.longest_element_words()) {
      auto rv = compute_root_vectors(rd, w);
      int last = rd.star_index(w.back());
      EXPECT_TRUE(zero(rv.back() - NegElement::generator(rd.rank(), last))) << t << " " << word_to_string(w);
      EXPECT_TRUE(zero(rv.front() - NegElement::generator(rd.rank(), w.front())));
    }
  }
}

TEST(Pbw, MonomialsAndExpansion) {
  Context ctx(RootDatum::parse("A2"), small(4));
  PbwBasis& b = ctx.reference_basis();
  ZeroTest zero = ctx.zero_test();
  EXPECT_TRUE(zero(b.monomial({1, 0, 1}) - elem(2, {{{1, 2}, "1"}})));
  EXPECT_EQ(b.tuples(W({1, 1})), (std::vector<Tuple>{{0, 1, 0}, {1, 0, 1}}));
  auto coords = b.expand(elem(2, {{{2, 1}, "1"}}));
  EXPECT_EQ(coords, (std::map<Tuple, Scalar>{{{0, 1, 0}, S("1")}, {{1, 0, 1}, S("q")}}));
  EXPECT_EQ(b.content_of({1, 2, 0}), W({3, 2}));
}

TEST(Pbw, RankOneClosedForms) {
  Context ctx(RootDatum::parse("A1"), small(6));
  PbwBasis& b = ctx.reference_basis();
  ZeroTest zero = ctx.zero_test();
  for (int n = 0; n <= 6; ++n) {
    EXPECT_TRUE(zero(b.monomial({n}) - divided_power(ctx.datum(), 0, n)));
    // (F^(n), F^(n)) = prod_{k<=n} 1/(1 - q^{2k})
    Scalar norm(1);
    for (int k = 1; k <= n; ++k) norm /= Scalar(LaurentPoly(1) - LaurentPoly::q_power(2 * k));
    EXPECT_EQ(bilinear_form(ctx.datum(), b.monomial({n}), b.monomial({n})), norm);
  }
  EXPECT_THROW(b.check_capacity(W({7})), CapacityError);
  EXPECT_THROW(ctx.slice(W({7})), CapacityError);
}

TEST(Pbw, TupleCountsAreKostantCounts) {
  for (const auto& t : {"A2", "B2", "G2", "A3"}) {
    RootDatum rd = RootDatum::parse(t);
    Context ctx(rd, small(5));
    for (const auto& w : rd.longest_element_words()) {
      PbwBasis& b = ctx.basis(w);
      for (int h = 0; h <= 5; ++h)
        for (const auto& c : ctx.contents_of_height(h)) {
          const auto& ts = b.tuples(c);
          EXPECT_EQ(ts.size(), rd.kostant_count(c)) << t;
          EXPECT_TRUE(std::is_sorted(ts.begin(), ts.end()));
          for (const auto& x : ts) EXPECT_EQ(b.content_of(x), c);
        }
      if (std::string(t) == "A3") break;
    }
  }
}

class PbwProperties : public ::testing::TestWithParam<std::string> {};

TEST_P(PbwProperties, DualBasisIsOrthonormal) {
  RootDatum rd = RootDatum::parse(GetParam());
  Context ctx(rd, small(4));
  for (const auto& w : rd.longest_element_words()) {
    PbwBasis& b = ctx.basis(w);
    for (int h = 0; h <= 4; ++h)
      for (const auto& c : ctx.contents_of_height(h)) {
        const auto& ts = b.tuples(c);
        for (const auto& x : ts)
          for (const auto& y : ts) {
            Scalar v = bilinear_form(rd, b.monomial(x), b.dual_monomial(y));
            EXPECT_EQ(v, Scalar(x == y ? 1 : 0)) << GetParam() << " " << tuple_to_string(x) << tuple_to_string(y);
          }
      }
    if (rd.rank() > 2) break;
  }
}

TEST_P(PbwProperties, ExpansionsAgree) {
  RootDatum rd = RootDatum::parse(GetParam());
  Context ctx(rd, small(5));
  ZeroTest zero = ctx.zero_test();
  PbwBasis& b = ctx.reference_basis();
  Gen g(51);
  for (int s = 0; s < kSamples; ++s) {
    Weight c = g.content(rd.rank(), g.uniform(0, 4));
    NegElement x = g.element(c);
    auto coords = b.expand(x);
    EXPECT_TRUE(zero(rebuild(b, coords, c) - x));
    std::vector<Scalar> dense = b.expand_dense(x);
    const auto& ts = b.tuples(c);
    ASSERT_EQ(dense.size(), ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
      auto it = coords.find(ts[k]);
      EXPECT_EQ(dense[k], it == coords.end() ? Scalar() : it->second);
    }
    if (s % 4 == 0) {
      EXPECT_EQ(b.expand_by_solve(x), dense);
      EXPECT_EQ(b.expand_by_pairing(x), coords);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Types, PbwProperties, ::testing::Values("A1", "A2", "B2", "G2", "A3"));
