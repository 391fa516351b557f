#include <gtest/gtest.h>

#include "bethe_dvf/dvf.hpp"
#include "bethe_dvf/identity.hpp"
#include "bethe_dvf/json_io.hpp"

using namespace bethe_dvf;

TEST(Json, SymSumRoundTrip) {
  for (const char* sp : {"B(2|1)", "D(2|1)", "B(0|2)"}) {
    SymSum x = column_dvf(BoxContext{AlgebraSpec::parse(sp), true}, 2);
    json j = to_json(x);
    EXPECT_EQ(j.at("schema"), 1);
    EXPECT_EQ(sum_from_json(json::parse(j.dump())), x) << sp;
  }
}

TEST(Json, TableauRoundTrip) {
  AlgebraSpec spec = AlgebraSpec::parse("B(1|1)");
  for (const auto& t : enumerate_tableaux(spec, parse_shape("3,1/1"))) {
    Tableau u = tableau_from_json(to_json(t));
    EXPECT_EQ(to_json(u).dump(), to_json(t).dump());
    EXPECT_TRUE(is_admissible(spec, u));
  }
}

TEST(Json, ComplexRoundTrip) {
  std::complex<double> z(0.25, -1.5);
  EXPECT_EQ(complex_from_json(complex_json(z)), z);
}

TEST(Json, ReportCarriesSchemaAndSeed) {
  IdentityReport r;
  r.name = "x";
  r.seed = 42;
  json j = to_json(r);
  EXPECT_EQ(j.at("schema"), 1);
  EXPECT_EQ(j.at("seed"), 42);
}

TEST(Json, RejectsMalformedInput) {
  EXPECT_THROW(term_from_json(json{{"coeff", 3}}), ParseError);
  EXPECT_THROW(sum_from_json(json{{"schema", 2}, {"terms", json::array()}}), ParseError);
  EXPECT_THROW(tableau_from_json(json{{"cells", 1}}), ParseError);
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), ParseError);
}
