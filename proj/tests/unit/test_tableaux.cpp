#include <gtest/gtest.h>

#include <functional>

#include "bethe_dvf/tableaux.hpp"

using namespace bethe_dvf;

namespace {

/// Every filling of the shape, checked with is_admissible only.
std::uint64_t brute_force_count(const AlgebraSpec& spec, const SkewDiagram& shape) {
  auto ls = labels(spec);
  Tableau t;
  t.shape = shape;
  t.cells = shape.cells();
  t.entries.assign(t.cells.size(), ls[0]);
  std::uint64_t n = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == t.cells.size()) {
      n += is_admissible(spec, t);
      return;
    }
    for (const auto& x : ls) {
      t.entries[k] = x;
      rec(k + 1);
    }
  };
  rec(0);
  return n;
}

}  // namespace

TEST(Partition, ConstructionAndAccess) {
  Partition p{3, 1};
  EXPECT_EQ(p.length(), 2);
  EXPECT_EQ(p.size(), 4);
  EXPECT_EQ(p[1], 3);
  EXPECT_EQ(p[5], 0);
  EXPECT_EQ(Partition::rectangle(3, 2).parts(), (std::vector<int>{3, 3}));
  EXPECT_THROW(Partition({1, 2}), ParseError);
}

TEST(Partition, ConjugateIsAnInvolution) {
  EXPECT_EQ(conjugate(Partition{3, 1}).parts(), (std::vector<int>{2, 1, 1}));
  std::function<void(int, int, std::vector<int>&)> rec = [&](int left, int cap, std::vector<int>& cur) {
    Partition p(cur);
    EXPECT_EQ(conjugate(conjugate(p)).parts(), p.parts());
    EXPECT_EQ(conjugate(p).size(), p.size());
    for (int x = std::min(left, cap); x >= 1; --x) {
      cur.push_back(x);
      rec(left - x, x, cur);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  rec(8, 8, cur);
}

TEST(Shape, Grammar) {
  EXPECT_EQ(parse_shape("3^2").mu.parts(), (std::vector<int>{3, 3}));
  EXPECT_EQ(parse_shape("1^3").mu.parts(), (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(parse_shape("3,2,1").mu.parts(), (std::vector<int>{3, 2, 1}));
  SkewDiagram sk = parse_shape("3,1/1");
  EXPECT_EQ(sk.mu.parts(), (std::vector<int>{3, 1}));
  EXPECT_EQ(sk.lambda.parts(), (std::vector<int>{1}));
  EXPECT_EQ(sk.cell_count(), 3);
  EXPECT_EQ(sk.str(), "3,1/1");
  EXPECT_EQ(parse_shape("").cell_count(), 0);
  for (const char* bad : {"2,3", "3,1/4", "a", "3^", "^2", "1//1"}) EXPECT_THROW(parse_shape(bad), ParseError) << bad;
}

TEST(Shape, CellsAreRowMajor) {
  auto cells = parse_shape("3,2/1").cells();
  ASSERT_EQ(cells.size(), 4u);
  EXPECT_EQ(cells[0].i, 1);
  EXPECT_EQ(cells[0].j, 2);
  EXPECT_EQ(cells[3].i, 2);
  EXPECT_EQ(cells[3].j, 2);
}

TEST(Count, Table1OfB02) {
  AlgebraSpec b02 = AlgebraSpec::parse("B(0|2)");
  const std::uint64_t col[] = {5, 15, 35, 70}, rect[] = {10, 50, 175, 490};
  for (int m = 1; m <= 4; ++m) {
    EXPECT_EQ(count_tableaux(b02, Partition::rectangle(1, m)), col[m - 1]);
    EXPECT_EQ(count_tableaux(b02, Partition::rectangle(2, m)), rect[m - 1]);
  }
}

TEST(Count, PrintedTermCounts) {
  EXPECT_EQ(count_tableaux(AlgebraSpec::parse("B(2|1)"), parse_shape("1")), 7u);
  EXPECT_EQ(count_tableaux(AlgebraSpec::parse("D(3|1)"), parse_shape("1^2")), 31u);
  EXPECT_EQ(count_tableaux(AlgebraSpec::parse("D(2|2)"), parse_shape("1^2")), 33u);
}

TEST(Count, RowOfB02WithoutVacuumHasTenTerms) {
  EXPECT_EQ(count_tableaux(AlgebraSpec::parse("B(0|2)"), parse_shape("2")), 10u);
}

TEST(Count, VanishingRectangle) {
  EXPECT_EQ(count_tableaux(AlgebraSpec::parse("B(1|1)"), Partition::rectangle(4, 3)), 0u);
  EXPECT_GT(count_tableaux(AlgebraSpec::parse("B(1|1)"), Partition::rectangle(3, 3)), 0u);
}

// Pruned enumeration against exhaustive filling plus is_admissible.
TEST(Enumerate, MatchesBruteForce) {
  const std::vector<std::pair<const char*, const char*>> cases = {
      {"B(1|1)", "2,1"}, {"B(1|1)", "3"},   {"B(1|1)", "1^3"}, {"B(1|1)", "2,2/1"}, {"B(0|2)", "2,1"},
      {"B(2|1)", "2,1"}, {"B(0|1)", "2,2"}, {"D(2|1)", "1^3"}, {"D(2|1)", "3"},     {"D(3|1)", "1^2"}};
  for (const auto& [sp, sh] : cases) {
    AlgebraSpec spec = AlgebraSpec::parse(sp);
    SkewDiagram shape = parse_shape(sh);
    auto all = enumerate_tableaux(spec, shape);
    EXPECT_EQ(all.size(), count_tableaux(spec, shape)) << sp << " " << sh;
    EXPECT_EQ(all.size(), brute_force_count(spec, shape)) << sp << " " << sh;
    for (const auto& t : all) EXPECT_TRUE(is_admissible(spec, t));
  }
}

TEST(Enumerate, DRejectsGeneralShapes) {
  AlgebraSpec d = AlgebraSpec::parse("D(2|1)");
  EXPECT_THROW(count_tableaux(d, parse_shape("2,1")), UnsupportedShape);
  EXPECT_THROW(enumerate_tableaux(d, parse_shape("2,2/1")), UnsupportedShape);
}

TEST(Admissible, RejectsOutOfShapeOrWrongLabel) {
  AlgebraSpec spec = AlgebraSpec::parse("B(1|1)");
  auto all = enumerate_tableaux(spec, parse_shape("2"));
  ASSERT_FALSE(all.empty());
  Tableau t = all.front();
  t.cells[1].j = 5;
  EXPECT_FALSE(is_admissible(spec, t));
  Tableau u = all.front();
  u.entries[0] = IndexLabel::unbarred(9);
  EXPECT_FALSE(is_admissible(spec, u));
}

// J_- labels and 0 may repeat down a column; J_- and 0 are strict along a row.
TEST(Admissible, ZeroRepeatsInColumnsOnly) {
  AlgebraSpec spec = AlgebraSpec::parse("B(0|1)");
  Tableau t;
  t.shape = parse_shape("1^2");
  t.cells = t.shape.cells();
  t.entries = {IndexLabel::unbarred(1), IndexLabel::unbarred(1)};
  EXPECT_TRUE(is_admissible(spec, t));
  t.entries = {IndexLabel::zero(), IndexLabel::zero()};
  EXPECT_TRUE(is_admissible(spec, t));
  Tableau r;
  r.shape = parse_shape("2");
  r.cells = r.shape.cells();
  r.entries = {IndexLabel::zero(), IndexLabel::zero()};
  EXPECT_FALSE(is_admissible(AlgebraSpec::parse("B(0|2)"), r));
}
