#include <gtest/gtest.h>

#include <filesystem>

#include "bethe_dvf/dvf.hpp"
#include "bethe_dvf/identity.hpp"
#include "bethe_dvf/json_io.hpp"

using namespace bethe_dvf;

namespace {

BoxContext ctx(const char* spec, bool vacuum = true) { return BoxContext{AlgebraSpec::parse(spec), vacuum}; }

}  // namespace

TEST(Golden, B21ExpansionsMatchTermwise) {
  const std::vector<std::pair<std::string, std::size_t>> files = {
      {"b21_T1.json", 7}, {"b21_T2.json", 24}, {"b21_Trow2.json", 25}};
  for (const auto& [name, n] : files) {
    json j = read_json_file(std::string(BETHE_DVF_GOLDEN_DIR) + "/" + name);
    SymSum want = sum_from_json(j);
    SymSum got = build_dvf(BoxContext{AlgebraSpec::parse(j.at("spec").get<std::string>()), j.at("vacuum").get<bool>()},
                           parse_shape(j.at("shape").get<std::string>()));
    EXPECT_EQ(got.size(), n) << name;
    EXPECT_EQ(got, want) << name;
  }
}

TEST(Box, B21FirstBoxWithVacuum) {
  // [1]_u = Q1(u+1)/Q1(u-1) without vacuum
  SymTerm b = box(ctx("B(2|1)", false), IndexLabel::unbarred(1), 0);
  EXPECT_EQ(b.q_exponent(1, -1), -1);
  EXPECT_EQ(b.q_exponent(1, 1), 1);
  EXPECT_TRUE(b.phi.empty());
  SymTerm v = box(ctx("B(2|1)"), IndexLabel::unbarred(1), 0);
  EXPECT_FALSE(v.phi.empty());
}

TEST(Dvf, Conventions) {
  auto c = ctx("B(1|1)");
  EXPECT_EQ(column_dvf(c, 0), SymSum::one());
  EXPECT_TRUE(column_dvf(c, -1).is_zero());
  EXPECT_EQ(row_dvf(c, 0), SymSum::one());
  EXPECT_TRUE(row_dvf(c, -2).is_zero());
}

TEST(Dvf, TermCounts) {
  EXPECT_EQ(build_dvf(ctx("B(0|2)", false), parse_shape("2")).size(), 10u);
  EXPECT_EQ(column_dvf(ctx("B(2|1)"), 1).size(), 7u);
  EXPECT_EQ(column_dvf(ctx("D(2|1)"), 1).size(), 6u);
}

TEST(Dvf, ConstantTopTermAppears) {
  for (const char* sp : {"B(1|1)", "B(2|1)", "B(0|2)"}) {
    auto c = ctx(sp);
    for (const char* sh : {"1", "2", "2,1", "1^2"}) {
      SkewDiagram shape = parse_shape(sh);
      SymSum x = build_dvf(c, shape);
      SymTerm top = top_term(c, shape);
      bool found = false;
      for (const auto& t : x.terms) found |= compare_monomial(t, top) == 0;
      EXPECT_TRUE(found) << sp << " " << sh;
    }
  }
}

TEST(Dvf, DRejectsGeneralShapes) {
  EXPECT_THROW(build_dvf(ctx("D(2|1)"), parse_shape("2,1")), UnsupportedShape);
}

TEST(Normalize, OnlyForB0s) {
  EXPECT_THROW(normalize_b0s(AlgebraSpec::parse("B(1|1)"), SymSum::one(), parse_shape("1")), WrongAlgebra);
}

TEST(Normalize, F1IsOneAndT0IsTwoPhis) {
  EXPECT_EQ(f_factor(2, 1, 0), SymTerm::constant(1));
  SymSum t0 = normalized_rectangle(ctx("B(0|2)"), 0, 1);
  ASSERT_EQ(t0.size(), 1u);
  // phi(u+1) phi(u-2s-2) with s = 2
  EXPECT_EQ(t0.terms[0], canonical(mul_terms(SymTerm::phif(1), SymTerm::phif(-6))));
}

TEST(Crossing, IsAnInvolution) {
  for (const char* sp : {"B(2|1)", "B(0|2)", "D(2|1)"}) {
    auto c = ctx(sp);
    SymSum x = row_dvf(c, 2);
    EXPECT_EQ(crossing_transform(c.spec, crossing_transform(c.spec, x)), x) << sp;
  }
}

TEST(Crossing, FixesT1AsRationalFunction) {
  for (const char* sp : {"B(2|1)", "B(0|2)", "D(2|1)"}) {
    auto c = ctx(sp);
    SymSum x = column_dvf(c, 1);
    EXPECT_TRUE(equal_as_rational_functions(crossing_transform(c.spec, x), x, 10).passed) << sp;
  }
}

TEST(Crossing, OddParityFlipsSign) {
  auto c = ctx("B(1|1)", false);
  SymSum x = SymSum(SymTerm::qf(1, 0));
  DegreeParity odd;
  odd.q[1] = 1;
  EXPECT_EQ(crossing_transform(c.spec, x, odd), scale(crossing_transform(c.spec, x), -1));
}

TEST(Series, CoefficientsAreShiftedDvfs) {
  for (const char* sp : {"B(1|1)", "B(0|2)", "D(2|1)"}) {
    auto c = ctx(sp);
    for (int n = 0; n <= 3; ++n) {
      SymSum g = generating_series_coeff(c, SeriesKind::column, n, 3);
      EXPECT_TRUE(equal_as_rational_functions(g, shift_u(column_dvf(c, n), n - 1), 6).passed) << sp << " " << n;
      SymSum h = generating_series_coeff(c, SeriesKind::row, n, 3);
      EXPECT_TRUE(equal_as_rational_functions(h, shift_u(row_dvf(c, n), n - 1), 6).passed) << sp << " " << n;
    }
  }
}

TEST(Series, TruncationTooSmall) {
  EXPECT_THROW(generating_series_coeff(ctx("B(1|1)"), SeriesKind::row, 4, 3), TruncationTooSmall);
}

TEST(Isolated, OnlyForD) {
  EXPECT_THROW(isolated_column_part(ctx("B(1|1)"), 1), WrongAlgebra);
  EXPECT_TRUE(isolated_column_part(ctx("D(2|1)"), 1).is_zero());
}

TEST(Latex, RendersFractions) {
  std::string s = to_latex(column_dvf(ctx("B(2|1)"), 1));
  EXPECT_NE(s.find("\\frac"), std::string::npos);
  EXPECT_NE(s.find("Q_{1}"), std::string::npos);
}
