#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ces/constructions.hpp"
#include "ces/verify.hpp"

namespace ces::cli {

using json = nlohmann::json;

// Exact scalars are strings ("p/q", residues as decimal integers, Gaussian
// rationals as {"re","im"}). Floats are {"re","im"} strings with 17
// significant digits.
json scalar_json(const Rational& x);
json scalar_json(const GaussianRational& x);
json scalar_json(const Fp& x);
json scalar_json(const Complex& x);

std::string format_double(double x);

/// dims, N, field, index_order (and approx for float data).
json header_json(const Dims& dims, const Field& field);

template <class T>
json vector_json(const StateVector<T>& v) {
  json coeffs = json::array();
  for (const auto& c : v.coeffs()) coeffs.push_back(scalar_json(c));
  return json{{"coeffs", std::move(coeffs)}};
}

template <class T>
json product_json(const ProductVector<T>& v) {
  json out = vector_json(v.expand());
  json factors = json::array();
  for (const auto& f : v.factors()) {
    json row = json::array();
    for (const auto& c : f) row.push_back(scalar_json(c));
    factors.push_back(std::move(row));
  }
  out["factors"] = std::move(factors);
  return out;
}

template <class T>
json vectors_json(const std::vector<StateVector<T>>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(vector_json(v));
  return out;
}

json report_json(const VerificationReport& r);
json upb_report_json(const UpbReport& r);
json upb_spec_json(const UpbSpec& s);

/// Reads the "vectors" of a document written with header_json. Throws
/// std::invalid_argument on schema violations.
template <class T>
std::vector<StateVector<T>> parse_vectors(const json& doc);

Dims parse_dims(const json& doc);
Field parse_field(const json& doc);

/// d1 × d2 matrix blocks separated by blank lines; k must be 2.
template <class T>
std::string to_csv(const std::vector<StateVector<T>>& vs);

}  // namespace ces::cli
