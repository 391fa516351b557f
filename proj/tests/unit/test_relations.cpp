#include <gtest/gtest.h>

#include "bethe_dvf/relations.hpp"
#include "bethe_dvf/verify.hpp"

using namespace bethe_dvf;

namespace {

BoxContext ctx(const char* spec) { return BoxContext{AlgebraSpec::parse(spec), true}; }

CheckOptions quick(int trials = 6) {
  CheckOptions o;
  o.trials = trials;
  return o;
}

}  // namespace

TEST(DetMatrix, ColumnEntriesFor21) {
  DetMatrix M = det_matrix(AlgebraSpec::parse("B(1|1)"), parse_shape("2,1"), DetVariant::column);
  ASSERT_EQ(M.size(), 2u);
  EXPECT_EQ(M[0][0].index, 2);
  EXPECT_EQ(M[0][0].shift, Rational(-1));
  EXPECT_EQ(M[0][1].index, 3);
  EXPECT_EQ(M[0][1].shift, Rational(0));
  EXPECT_EQ(M[1][0].index, 0);
  EXPECT_EQ(M[1][1].index, 1);
  EXPECT_EQ(M[1][1].shift, Rational(2));
}

TEST(DetMatrix, VariantGuards) {
  EXPECT_THROW(det_matrix(AlgebraSpec::parse("B(1|1)"), parse_shape("2"), DetVariant::d_row), WrongAlgebra);
  EXPECT_THROW(det_matrix(AlgebraSpec::parse("D(2|1)"), parse_shape("2,1"), DetVariant::d_row), UnsupportedShape);
  EXPECT_THROW(det_matrix(AlgebraSpec::parse("D(2|1)"), parse_shape("2"), DetVariant::column), UnsupportedShape);
}

TEST(Det, ExactAndSymbolicOnConstants) {
  EXPECT_EQ(det_exact({{2, 1}, {4, 3}}), 2);
  EXPECT_EQ(det_exact({{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(det_exact({{1, 2}, {2, 4}}), 0);
  std::vector<std::vector<SymSum>> S = {{SymSum(SymTerm::qf(1, 0)), SymSum::one()},
                                        {SymSum::one(), SymSum(SymTerm::qf(1, 2))}};
  SymSum want = SymSum(mul_terms(SymTerm::qf(1, 0), SymTerm::qf(1, 2))) - SymSum::one();
  EXPECT_EQ(det_symbolic(S), want);
}

TEST(JacobiTrudi, ColumnAndRowAgreeWithTableaux) {
  for (const char* sp : {"B(1|1)", "B(2|1)"}) {
    auto c = ctx(sp);
    for (const char* sh : {"1", "2,1", "3", "1^3", "2,2", "3,1/1", "3,2/1", "2,2,1/1"}) {
      EXPECT_TRUE(check_determinant(c, parse_shape(sh), DetVariant::column, quick()).passed) << sp << " " << sh;
      EXPECT_TRUE(check_determinant(c, parse_shape(sh), DetVariant::row, quick()).passed) << sp << " " << sh;
    }
  }
}

TEST(JacobiTrudi, SymbolicEscalation) {
  auto c = ctx("B(1|1)");
  EXPECT_TRUE(check_determinant(c, parse_shape("2,1"), DetVariant::column, quick(), true).passed);
  EXPECT_TRUE(check_determinant(c, parse_shape("2,2"), DetVariant::row, quick(), true).passed);
}

TEST(JacobiTrudi, WrongShiftIsDetected) {
  auto c = ctx("B(1|1)");
  SkewDiagram shape = parse_shape("2,1");
  DetMatrix M = det_matrix(c.spec, shape, DetVariant::column);
  M[0][0].shift += 2;
  DvfTable table(c, SeriesKind::column);
  table.prefetch(M);
  SymSum direct = build_dvf(c, shape);
  auto r = randomized_identity(
      "mutated", 2, [&](const ExactAssignment& p) -> mpq_class { return det_value(M, table, p) - evaluate(direct, p); },
      quick());
  EXPECT_FALSE(r.passed);
}

TEST(DFamily, M2RelationAndRowDeterminant) {
  for (const char* sp : {"D(2|1)", "D(3|1)"}) {
    auto c = ctx(sp);
    EXPECT_TRUE(check_d_m2(c, quick()).passed) << sp;
    EXPECT_TRUE(check_determinant(c, parse_shape("3"), DetVariant::d_row, quick()).passed) << sp;
  }
  EXPECT_THROW(check_d_m2(ctx("B(1|1)")), WrongAlgebra);
}

TEST(Hirota, SmallLabels) {
  auto b11 = ctx("B(1|1)");
  for (int a = 1; a <= 2; ++a)
    for (int m = 1; m <= 2; ++m) EXPECT_TRUE(check_hirota(b11, a, m, quick()).passed) << a << "," << m;
  EXPECT_TRUE(check_hirota(ctx("B(0|2)"), 2, 2, quick()).passed);
}

TEST(Vanishing, EmptyRectangleAndNonEmptyNeighbour) {
  auto c = ctx("B(1|1)");
  EXPECT_TRUE(check_vanishing(c, 3, 4).passed);
  EXPECT_FALSE(check_vanishing(c, 3, 3).passed);
  EXPECT_FALSE(check_vanishing(c, 2, 4).passed);
}

TEST(Duality, AllLabelsB01AndB02) {
  for (int s = 1; s <= 2; ++s) {
    BoxContext c{AlgebraSpec(Family::B, 0, s), true};
    for (int a = 1; a <= 2; ++a)
      for (int m = 0; m <= 2 * s + 1; ++m) EXPECT_TRUE(check_duality(c, a, m, quick(4)).passed) << s << a << m;
  }
  EXPECT_THROW(check_duality(ctx("B(1|1)"), 1, 1), WrongAlgebra);
}

TEST(Duality, BoxIdentitiesAreExact) {
  for (int s = 1; s <= 3; ++s)
    for (const auto& r : check_duality_identities(AlgebraSpec(Family::B, 0, s))) {
      EXPECT_TRUE(r.passed) << s << " " << r.name;
      EXPECT_EQ(r.mode, "exact-symbolic");
    }
}

// The full row product is 1 with the 2-bar box at u+2s-2 and not with the
// printed u-2s-2.
TEST(Duality, PrintedConstShiftIsNotConstant) { EXPECT_TRUE(printed_const_shift_control(2).passed); }

TEST(TSystem, B01AndB02ToDepth3) {
  for (int s = 1; s <= 2; ++s)
    for (const auto& r : check_t_system(s, 3, quick(4))) EXPECT_TRUE(r.passed) << s << " " << r.name;
}

TEST(TSystem, OddSpinLabelRejected) {
  TSystem ts(AlgebraSpec(Family::B, 0, 2), 4);
  ExactAssignment p;
  EXPECT_THROW(ts.value(3, 2, p), OddSpinLabel);
}

TEST(TermCount, WorkedDecompositions) {
  auto labels_of = [](int s, int a, int m) {
    std::vector<std::string> out;
    for (const auto& b : term_count_labels(s, a, m)) out.push_back(label_str(b));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto L = [](int x, int y) { return label_str({Rational(x), Rational(y)}); };
  EXPECT_EQ(labels_of(2, 1, 2), (std::vector<std::string>{L(0, 0), L(2, 0)}));
  std::vector<std::string> n6 = {L(0, 2), L(0, 6), L(2, 2)};
  std::sort(n6.begin(), n6.end());
  EXPECT_EQ(labels_of(2, 2, 3), n6);
  auto r = check_term_count_conjecture(2, 2, 3);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.details[0]["tableaux"], 175);
  EXPECT_TRUE(check_term_count_conjecture(2, 1, 2).passed);
}

TEST(TermCount, FundamentalIs2sPlus1) {
  for (int s = 2; s <= 4; ++s) {
    auto r = check_term_count_conjecture(s, 1, 1);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.details[0]["tableaux"], 2 * s + 1);
  }
}

TEST(TermCount, QuarantineOutsideB02) {
  EXPECT_TRUE(check_term_count_conjecture(2, 1, 4).hard_fail);
  EXPECT_FALSE(check_term_count_conjecture(3, 1, 2).hard_fail);
}

TEST(Shapes, SmallShapeSet) {
  auto shapes = small_shapes(3);
  // 1, 2, 1^2, 3, 2,1, 1^3 and the skew shapes inside them
  std::size_t straight = 0;
  for (const auto& s : shapes) straight += s.is_straight();
  EXPECT_EQ(straight, 6u);
  for (const auto& s : shapes) EXPECT_GT(s.cell_count(), 0);
}
