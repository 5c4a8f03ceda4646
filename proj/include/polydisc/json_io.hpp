#pragma once

#include "polydisc/flat.hpp"
#include "polydisc/partition.hpp"
#include "polydisc/poly.hpp"
#include "polydisc/roots.hpp"

#include <json.hpp>

#include <string>

namespace polydisc {

using json = nlohmann::json;

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

/// Accepts [re, im] pairs or bare numbers.
inline Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw std::invalid_argument("expected a number or an [re, im] pair");
}

/// {"degree": d, "coeffs": [a_1, ..., a_d]} in descending-power order,
/// leading coefficient 1 implicit. Coefficients are [re, im] pairs; bare
/// numbers are accepted on input.
inline json to_json(const MonicPoly& p) {
  json coeffs = json::array();
  for (int k = 1; k <= p.degree(); ++k) coeffs.push_back(to_json(p.coeff(k)));
  return json{{"degree", p.degree()}, {"coeffs", coeffs}};
}

inline MonicPoly poly_from_json(const json& j, Field field = Field::cplx) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("coeffs"))
    throw std::invalid_argument("polynomial JSON must carry degree and coeffs");
  const int d = j.at("degree").get<int>();
  const json& coeffs = j.at("coeffs");
  if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != d)
    throw std::invalid_argument("polynomial JSON: coeffs length must equal degree");
  VecC a(d);
  for (int i = 0; i < d; ++i) a(i) = complex_from_json(coeffs[i]);
  return MonicPoly(std::move(a), field);
}

/// Monic dense polynomial (divisors) in the same schema, degree may be 0.
inline json to_json(const CPoly& p) {
  json coeffs = json::array();
  for (int k = p.degree() - 1; k >= 0; --k) coeffs.push_back(to_json(p.coeff_of_power(k)));
  return json{{"degree", p.degree()}, {"coeffs", coeffs}};
}

/// Non-increasing integer array.
inline json to_json(const Partition& mu) { return json(mu.parts()); }

inline Partition partition_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("partition JSON must be an array");
  std::vector<int> parts;
  for (const auto& e : j) parts.push_back(e.get<int>());
  return Partition(std::move(parts));
}

/// {"ambient_dim": d, "constraints": [{"normal": [...], "offset": [re,im]}]}
inline json to_json(const AffineFlat& f) {
  json constraints = json::array();
  for (int i = 0; i < f.codim(); ++i) {
    json normal = json::array();
    for (int c = 0; c < f.ambient_dim(); ++c) normal.push_back(to_json(Complex(f.normals()(i, c))));
    constraints.push_back(json{{"normal", normal}, {"offset", to_json(f.offsets()(i))}});
  }
  return json{{"ambient_dim", f.ambient_dim()}, {"constraints", constraints}};
}

inline AffineFlat flat_from_json(const json& j) {
  if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("constraints"))
    throw std::invalid_argument("flat JSON must carry ambient_dim and constraints");
  const int d = j.at("ambient_dim").get<int>();
  const json& cons = j.at("constraints");
  MatC normals(cons.size(), d);
  VecC offsets(cons.size());
  for (size_t i = 0; i < cons.size(); ++i) {
    const json& normal = cons[i].at("normal");
    if (static_cast<int>(normal.size()) != d)
      throw std::invalid_argument("flat JSON: normal length must equal ambient_dim");
    for (int c = 0; c < d; ++c) normals(i, c) = complex_from_json(normal[c]);
    offsets(i) = complex_from_json(cons[i].at("offset"));
  }
  return AffineFlat(d, std::move(normals), std::move(offsets));
}

inline json to_json(const RootConfig& rc) {
  json entries = json::array();
  for (const auto& e : rc.entries())
    entries.push_back(json{{"root", to_json(e.root)}, {"multiplicity", e.multiplicity}});
  return entries;
}

}  // namespace polydisc
