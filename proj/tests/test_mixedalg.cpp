#include <gtest/gtest.h>

#include "qcanon/errors.hpp"
#include "qcanon/mixedalg.hpp"
#include "support.hpp"

using namespace qtest;

namespace {

MixedElement term(int rank, const Word& f, const Weight& k, const Word& e, const Scalar& c) {
  MixedElement x(rank);
  x.add(MixedTerm{f, k, e}, c);
  return x;
}

// A random monomial with at most two E/F letters and a small K part.
MixedElement sample(Gen& g, const RootDatum& rd) {
  int r = rd.rank();
  Word f, e;
  int letters = g.uniform(0, 2);
  for (int k = 0; k < letters; ++k) (g.uniform(0, 1) ? f : e).push_back(g.uniform(0, r - 1));
  Weight k(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) k[j] = g.uniform(-1, 1);
  MixedElement x = term(r, f, k, e, Scalar(g.nonzero_laurent()));
  if (g.uniform(0, 1)) x += term(r, {}, Weight(static_cast<std::size_t>(r)), {}, Scalar(g.laurent()));
  return x;
}

}  // namespace

TEST(Mixed, CommutationRelations) {
  RootDatum a1 = RootDatum::parse("A1");
  MixedElement f = MixedElement::f(1, 0), e = MixedElement::e(1, 0);
  // E F = F E + (K_a - K_-a) / (q - q^-1)
  Scalar inv = Scalar(LaurentPoly(1), P("q - q^-1"));
  MixedElement expect = term(1, word({1}), W({0}), word({1}), Scalar(1)) + term(1, {}, W({1}), {}, inv) -
                        term(1, {}, W({-1}), {}, inv);
  EXPECT_EQ(multiply(a1, e, f).terms(), expect.terms());
  // K_a F = q^-2 F K_a
  EXPECT_EQ(multiply(a1, MixedElement::k(W({1})), f).terms(), term(1, word({1}), W({1}), {}, S("q^-2")).terms());
  // E K_a = q^-2 K_a E
  EXPECT_EQ(multiply(a1, e, MixedElement::k(W({1}))).terms(), term(1, {}, W({1}), word({1}), S("q^-2")).terms());
  // E_i and F_j commute for i != j
  RootDatum a2 = RootDatum::parse("A2");
  EXPECT_EQ(multiply(a2, MixedElement::e(2, 0), MixedElement::f(2, 1)).terms(),
            term(2, word({2}), W({0, 0}), word({1}), Scalar(1)).terms());
  // the short root of B2 uses q_i = q
  RootDatum b2 = RootDatum::parse("B2");
  MixedElement c = multiply(b2, MixedElement::e(2, 1), MixedElement::f(2, 1)) -
                   multiply(b2, MixedElement::f(2, 1), MixedElement::e(2, 1));
  Scalar inv2 = Scalar(LaurentPoly(1), P("q^2 - q^-2"));
  EXPECT_EQ(c.terms(), (term(2, {}, W({0, 1}), {}, inv2) - term(2, {}, W({0, -1}), {}, inv2)).terms());
}

TEST(Mixed, Associativity) {
  Gen g(41);
  for (const auto& t : {"A2", "B2"}) {
    RootDatum rd = RootDatum::parse(t);
    for (int s = 0; s < kSamples; ++s) {
      MixedElement x = sample(g, rd), y = sample(g, rd), z = sample(g, rd);
      EXPECT_EQ(multiply(rd, multiply(rd, x, y), z).terms(), multiply(rd, x, multiply(rd, y, z)).terms()) << t;
    }
  }
}

TEST(Braid, GeneratorImages) {
  RootDatum a1 = RootDatum::parse("A1"), a2 = RootDatum::parse("A2");
  MixedElement f1 = MixedElement::f(1, 0);
  EXPECT_EQ(braid(a1, f1, 0, BraidVariant::t_double_prime, 1).terms(),
            term(1, {}, W({-1}), word({1}), Scalar(-1)).terms());
  EXPECT_EQ(braid(a2, MixedElement::f(2, 1), 0, BraidVariant::t_double_prime, 1).terms(),
            (term(2, word({2, 1}), W({0, 0}), {}, Scalar(1)) - term(2, word({1, 2}), W({0, 0}), {}, S("q"))).terms());
  EXPECT_EQ(braid(a2, MixedElement::k(W({0, 1})), 0, BraidVariant::t_double_prime, 1).terms(),
            MixedElement::k(W({1, 1})).terms());
}

TEST(Braid, RootVectorOfASimpleRoot) {
  // T''_1 T''_2 (F_1) = F_2 in type A2
  RootDatum a2 = RootDatum::parse("A2");
  ZeroTest zero = full_zero_test(a2);
  MixedElement x = braid(a2, MixedElement::f(2, 0), 1, BraidVariant::t_double_prime, 1);
  x = braid(a2, x, 0, BraidVariant::t_double_prime, 1);
  NegElement y = project_to_neg(a2, x, zero);
  EXPECT_TRUE(zero(y - NegElement::generator(2, 1)));
}

TEST(Braid, ProjectionRejectsForeignParts) {
  RootDatum a2 = RootDatum::parse("A2");
  ZeroTest zero = full_zero_test(a2);
  EXPECT_THROW(project_to_neg(a2, MixedElement::e(2, 0), zero), IntegrityError);
  EXPECT_THROW(project_to_neg(a2, MixedElement::k(W({1, 0})), zero), IntegrityError);
  // E1 F1 - F1 E1 - (K - K^-1)/(q - q^-1) is zero in U_q even though its terms are not
  MixedElement f1 = MixedElement::f(2, 0), e1 = MixedElement::e(2, 0);
  MixedElement x = multiply(a2, e1, f1) - multiply(a2, f1, e1);
  EXPECT_FALSE(mixed_is_zero(a2, x, zero));
  Scalar inv = Scalar(LaurentPoly(1), P("q - q^-1"));
  x -= term(2, {}, W({1, 0}), {}, inv) - term(2, {}, W({-1, 0}), {}, inv);
  EXPECT_TRUE(mixed_is_zero(a2, x, zero));
  EXPECT_TRUE(project_to_neg(a2, x + MixedElement::from_neg(elem(2, {{{2}, "q"}})), zero).terms() ==
              elem(2, {{{2}, "q"}}).terms());
}

TEST(Braid, SerreRelationsMapToZero) {
  for (const auto& t : {"A2", "B2"}) {
    RootDatum rd = RootDatum::parse(t);
    ZeroTest zero = full_zero_test(rd);
    for (int i = 0; i < rd.rank(); ++i) {
      int j = 1 - i;
      int m = 1 - rd.cartan(i, j);
      Weight c(2);
      c[i] = m;
      c[j] = 1;
      NegElement serre(c);
      for (int r = 0; r <= m; ++r) {
        Word w(static_cast<std::size_t>(r), i);
        w.push_back(j);
        w.insert(w.end(), static_cast<std::size_t>(m - r), i);
        Scalar k(quantum_binom(m, r, rd.d(i)));
        serre.add(w, r % 2 ? -k : k);
      }
      ASSERT_TRUE(zero(serre)) << t;
      for (int a = 0; a < rd.rank(); ++a)
        for (auto v : {BraidVariant::t_prime, BraidVariant::t_double_prime})
          EXPECT_TRUE(mixed_is_zero(rd, braid(rd, MixedElement::from_neg(serre), a, v, 1), zero)) << t;
    }
  }
}

// ---------------------------------------------------------------- properties

class BraidProperties : public ::testing::TestWithParam<std::string> {};

TEST_P(BraidProperties, InversePairs) {
  // T''_{i,e} and T'_{i,-e} are mutually inverse.
  RootDatum rd = RootDatum::parse(GetParam());
  ZeroTest zero = full_zero_test(rd);
  Gen g(42);
  for (int s = 0; s < kSamples; ++s) {
    MixedElement x = sample(g, rd);
    int i = g.uniform(0, rd.rank() - 1);
    int e = g.uniform(0, 1) ? 1 : -1;
    MixedElement y = braid(rd, braid(rd, x, i, BraidVariant::t_double_prime, e), i, BraidVariant::t_prime, -e);
    EXPECT_TRUE(mixed_is_zero(rd, y - x, zero));
    y = braid(rd, braid(rd, x, i, BraidVariant::t_prime, e), i, BraidVariant::t_double_prime, -e);
    EXPECT_TRUE(mixed_is_zero(rd, y - x, zero));
  }
}

TEST_P(BraidProperties, Multiplicative) {
  RootDatum rd = RootDatum::parse(GetParam());
  ZeroTest zero = full_zero_test(rd);
  Gen g(43);
  for (int s = 0; s < kSamples; ++s) {
    MixedElement x = sample(g, rd), y = sample(g, rd);
    int i = g.uniform(0, rd.rank() - 1);
    auto v = g.uniform(0, 1) ? BraidVariant::t_prime : BraidVariant::t_double_prime;
    MixedElement lhs = braid(rd, multiply(rd, x, y), i, v, 1);
    MixedElement rhs = multiply(rd, braid(rd, x, i, v, 1), braid(rd, y, i, v, 1));
    EXPECT_TRUE(mixed_is_zero(rd, lhs - rhs, zero));
  }
}

INSTANTIATE_TEST_SUITE_P(Types, BraidProperties, ::testing::Values("A1", "A2", "B2", "G2"));
