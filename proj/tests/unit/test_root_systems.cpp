#include <gtest/gtest.h>

#include "bethe_dvf/root_systems.hpp"

using namespace bethe_dvf;

TEST(AlgebraSpec, ParsesCompactStrings) {
  AlgebraSpec b = AlgebraSpec::parse("B(2|1)");
  EXPECT_TRUE(b.is_b());
  EXPECT_EQ(b.r, 2);
  EXPECT_EQ(b.s, 1);
  EXPECT_EQ(b.rank(), 3);
  EXPECT_EQ(b.str(), "B(2|1)");
  AlgebraSpec d = AlgebraSpec::parse("D(3|1)");
  EXPECT_TRUE(d.is_d());
  EXPECT_TRUE(AlgebraSpec::parse("B(0|2)").is_b0s());
}

TEST(AlgebraSpec, RejectsMalformedInput) {
  for (const char* bad : {"B(-1|0)", "B(1|0)", "D(1|1)", "C(1|1)", "B(1,1)", "B(1|1", ""})
    EXPECT_THROW(AlgebraSpec::parse(bad), ParseError) << bad;
}

TEST(Labels, EnumerationOrder) {
  auto b = labels(AlgebraSpec::parse("B(2|1)"));
  ASSERT_EQ(b.size(), 7u);
  EXPECT_EQ(b[0].str(), "1");
  EXPECT_TRUE(b[3].is_zero());
  EXPECT_EQ(b[6].str(), IndexLabel::barred(1).str());
  EXPECT_EQ(labels(AlgebraSpec::parse("D(2|1)")).size(), 6u);
}

TEST(Labels, ParseRoundTrip) {
  for (const auto& x : labels(AlgebraSpec::parse("B(2|2)"))) EXPECT_EQ(IndexLabel::parse(x.str()), x);
}

TEST(Order, ChainAndDException) {
  AlgebraSpec b = AlgebraSpec::parse("B(1|1)");
  auto U = IndexLabel::unbarred;
  auto B = IndexLabel::barred;
  EXPECT_TRUE(precedes(b, U(1), U(2)));
  EXPECT_TRUE(precedes(b, U(2), IndexLabel::zero()));
  EXPECT_TRUE(precedes(b, IndexLabel::zero(), B(2)));
  EXPECT_TRUE(precedes(b, B(2), B(1)));
  AlgebraSpec d = AlgebraSpec::parse("D(2|1)");
  EXPECT_EQ(order_relation(d, U(3), B(3)), Order::incomparable);
  EXPECT_EQ(order_relation(d, U(2), B(3)), Order::less);
}

TEST(Grading, OddIndicesAreTheFirstS) {
  AlgebraSpec b = AlgebraSpec::parse("B(1|2)");
  EXPECT_EQ(grading(b, IndexLabel::unbarred(1)), 1);
  EXPECT_EQ(grading(b, IndexLabel::barred(2)), 1);
  EXPECT_EQ(grading(b, IndexLabel::unbarred(3)), 0);
  EXPECT_EQ(grading(b, IndexLabel::zero()), 0);
}

TEST(Roots, BilinearFormIsSymmetric) {
  for (const char* sp : {"B(1|1)", "B(2|1)", "B(0|2)", "D(2|1)", "D(3|2)"}) {
    AlgebraSpec spec = AlgebraSpec::parse(sp);
    for (int a = 1; a <= spec.rank(); ++a)
      for (int b = 1; b <= spec.rank(); ++b) EXPECT_EQ(bilinear_form(spec, a, b), bilinear_form(spec, b, a));
  }
}

TEST(Roots, KnownValues) {
  AlgebraSpec b11 = AlgebraSpec::parse("B(1|1)");
  EXPECT_EQ(bilinear_form(b11, 1, 1), Rational(0));  // alpha_1 = delta_1 - eps_1 is isotropic
  EXPECT_EQ(bilinear_form(b11, 1, 2), Rational(-1));
  EXPECT_EQ(bilinear_form(b11, 2, 2), Rational(1));
  EXPECT_EQ(root_degree(b11, 1), 1);
  EXPECT_EQ(root_degree(b11, 2), 0);
  AlgebraSpec b02 = AlgebraSpec::parse("B(0|2)");
  EXPECT_EQ(bilinear_form(b02, 1, 1), Rational(-2));
  EXPECT_EQ(bilinear_form(b02, 2, 2), Rational(-1));
}

TEST(Dimension, TableOfB02) {
  const std::vector<std::tuple<int, int, long>> table = {{0, 0, 1}, {1, 0, 5},  {2, 0, 14}, {3, 0, 30},
                                                         {0, 2, 10}, {0, 4, 35}, {0, 6, 84}, {2, 2, 81}};
  for (auto [b1, b2, want] : table) EXPECT_EQ(dimension_b0s(2, {Rational(b1), Rational(b2)}), want);
}

TEST(Dimension, FundamentalIs2sPlus1) {
  for (int s = 1; s <= 5; ++s) {
    KacDynkinLabel b(s, Rational(0));
    b[0] = s == 1 ? 2 : 1;  // the last entry must be even
    EXPECT_EQ(dimension_b0s(s, b), 2 * s + 1) << "s=" << s;
  }
}

TEST(Dimension, RejectsNonIntegralOrOddLast) {
  EXPECT_THROW(dimension_b0s(2, {Rational(0), Rational(1)}), NotFiniteDimensional);
  EXPECT_THROW(dimension_b0s(2, {Rational(1, 2), Rational(0)}), NotFiniteDimensional);
  EXPECT_THROW(dimension_b0s(2, {Rational(-1), Rational(0)}), NotFiniteDimensional);
}

TEST(KacDynkin, B0sDiagrams) {
  AlgebraSpec b02 = AlgebraSpec::parse("B(0|2)");
  EXPECT_EQ(label_str(kac_dynkin_from_diagram(b02, {1})), label_str({Rational(1), Rational(0)}));
  EXPECT_EQ(label_str(kac_dynkin_from_diagram(b02, {1, 1})), label_str({Rational(2), Rational(0)}));
  EXPECT_EQ(label_str(kac_dynkin_from_diagram(b02, {2})), label_str({Rational(0), Rational(2)}));
}

TEST(KacDynkin, DRejectsGeneralShapes) {
  EXPECT_THROW(kac_dynkin_from_diagram(AlgebraSpec::parse("D(2|1)"), {2, 1}), UnsupportedShape);
}
