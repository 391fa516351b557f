#pragma once

#include <complex>
#include <fstream>
#include <string>

#include <json.hpp>

#include "symbolic.hpp"
#include "tableaux.hpp"

namespace bethe_dvf {

using nlohmann::json;

inline json to_json(const SymTerm& t) {
  json q = json::array(), phi = json::array();
  for (const auto& f : t.q) q.push_back({f.color, f.shift.str(), f.exponent});
  for (const auto& f : t.phi) phi.push_back({f.shift.str(), f.exponent});
  return {{"coeff", t.coeff.str()}, {"Q", q}, {"phi", phi}};
}

inline json to_json(const SymSum& x) {
  json terms = json::array();
  for (const auto& t : x.terms) terms.push_back(to_json(t));
  return {{"schema", 1}, {"terms", terms}};
}

inline SymTerm term_from_json(const json& j) {
  try {
    SymTerm t;
    t.coeff = Rational::parse(j.at("coeff").get<std::string>());
    for (const auto& f : j.value("Q", json::array()))
      t.q.push_back({f.at(0).get<int>(), Rational::parse(f.at(1).get<std::string>()), f.at(2).get<int>()});
    for (const auto& f : j.value("phi", json::array()))
      t.phi.push_back({Rational::parse(f.at(0).get<std::string>()), f.at(1).get<int>()});
    return canonical(t);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad term json: ") + e.what());
  }
}

inline SymSum sum_from_json(const json& j) {
  if (j.contains("schema") && j.at("schema") != 1) throw ParseError("unsupported schema version");
  std::vector<SymTerm> ts;
  for (const auto& t : j.at("terms")) ts.push_back(term_from_json(t));
  return canonical_sum(std::move(ts));
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline json to_json(const Tableau& t) {
  json cells = json::array();
  for (std::size_t k = 0; k < t.cells.size(); ++k)
    cells.push_back({t.cells[k].i, t.cells[k].j, t.entries[k].str()});
  return {{"shape", {{"lambda", t.shape.lambda.parts()}, {"mu", t.shape.mu.parts()}}}, {"cells", cells}};
}

inline Tableau tableau_from_json(const json& j) {
  try {
    Tableau t;
    t.shape = SkewDiagram(Partition(j.at("shape").at("lambda").get<std::vector<int>>()),
                          Partition(j.at("shape").at("mu").get<std::vector<int>>()));
    for (const auto& c : j.at("cells")) {
      t.cells.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
      t.entries.push_back(IndexLabel::parse(c.at(2).get<std::string>()));
    }
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad tableau json: ") + e.what());
  }
}

inline json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }
inline std::complex<double> complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace bethe_dvf
