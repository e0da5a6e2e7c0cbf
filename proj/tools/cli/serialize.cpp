#include "serialize.hpp"

#include <cstdio>
#include <sstream>

namespace ces::cli {

json scalar_json(const Rational& x) { return x.get_str(); }

json scalar_json(const GaussianRational& x) {
  return json{{"re", x.re.get_str()}, {"im", x.im.get_str()}};
}

json scalar_json(const Fp& x) { return std::to_string(x.value()); }

json scalar_json(const Complex& x) {
  return json{{"re", format_double(x.real())}, {"im", format_double(x.imag())}};
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json header_json(const Dims& dims, const Field& field) {
  json out{{"dims", dims.local()},
           {"N", dims.N()},
           {"field", field.name()},
           {"index_order", "lex"}};
  if (field.kind == FieldKind::complex_approx) out["approx"] = true;
  return out;
}

json report_json(const VerificationReport& r) {
  json out{{"method", to_string(r.method)},
           {"verdict", to_string(r.verdict)},
           {"certified_dims", r.certified_dims}};
  if (r.method == Method::finite_field) {
    out["parameters"] = json{{"prime", r.prime}};
    out["metrics"] = json{{"enumerated", r.enumerated}};
    if (r.verdict == Verdict::witness_found) {
      json ws = json::array();
      for (const auto& w : r.ff_witnesses) ws.push_back(product_json(w));
      out["witness"] = ws.front();
      out["witnesses"] = std::move(ws);
    }
  } else {
    const AlsOptions als = r.als.value_or(AlsOptions{});
    out["parameters"] = json{{"restarts", als.restarts},
                             {"max_sweeps", als.max_sweeps},
                             {"tol", als.tol},
                             {"seed", als.seed},
                             {"witness_gap", r.witness_gap}};
    out["metrics"] = json{{"best_overlap", format_double(r.best_overlap)}, {"sweeps", r.sweeps}};
    if (r.als_witness) {
      json w = product_json(*r.als_witness);
      w["approx"] = true;
      out["witness"] = std::move(w);
    }
  }
  if (r.skipped) out["skipped"] = *r.skipped;
  return out;
}

json upb_report_json(const UpbReport& r) {
  json checks = json::array();
  for (const auto& c : r.complement_checks) checks.push_back(report_json(c));
  return json{{"count", r.count},
              {"rank", r.rank},
              {"independent", r.independent},
              {"meets_minimum", r.meets_minimum},
              {"complement_dim", r.complement_dim},
              {"complement_within_S", r.complement_within_s},
              {"complement_checks", std::move(checks)},
              {"status", to_string(r.status)}};
}

json upb_spec_json(const UpbSpec& s) {
  json points = json::array();
  for (const auto& p : s.points) points.push_back(to_string(p));
  json dropped = json::array();
  for (const auto& d : s.dropped) dropped.push_back(d.i);
  return json{{"size", s.size}, {"levels", s.levels}, {"points", std::move(points)},
              {"dropped", std::move(dropped)}};
}

Dims parse_dims(const json& doc) {
  if (!doc.contains("dims") || !doc["dims"].is_array()) {
    throw std::invalid_argument("document has no dims array");
  }
  if (doc.value("index_order", "") != "lex") {
    throw std::invalid_argument("document index_order must be \"lex\"");
  }
  return Dims(doc["dims"].get<std::vector<int>>());
}

Field parse_field(const json& doc) {
  if (!doc.contains("field") || !doc["field"].is_string()) {
    throw std::invalid_argument("document has no field tag");
  }
  return Field::parse(doc["field"].get<std::string>());
}

namespace {

template <class T>
T parse_scalar(const json& j, const Field& field);

template <>
Rational parse_scalar<Rational>(const json& j, const Field&) {
  return parse_rational(j.get<std::string>());
}

template <>
GaussianRational parse_scalar<GaussianRational>(const json& j, const Field&) {
  return {parse_rational(j.at("re").get<std::string>()), parse_rational(j.at("im").get<std::string>())};
}

template <>
Fp parse_scalar<Fp>(const json& j, const Field& field) {
  return Fp(Integer(j.get<std::string>()), field.prime);
}

template <>
Complex parse_scalar<Complex>(const json& j, const Field&) {
  return {std::stod(j.at("re").get<std::string>()), std::stod(j.at("im").get<std::string>())};
}

std::string csv_cell(const Rational& x) { return x.get_str(); }
std::string csv_cell(const Fp& x) { return std::to_string(x.value()); }
std::string csv_cell(const Complex& x) {
  return format_double(x.real()) + (x.imag() < 0 ? "" : "+") + format_double(x.imag()) + "i";
}
std::string csv_cell(const GaussianRational& x) {
  if (sgn(x.im) == 0) return x.re.get_str();
  return x.re.get_str() + (sgn(x.im) < 0 ? "" : "+") + x.im.get_str() + "i";
}

}  // namespace

template <class T>
std::vector<StateVector<T>> parse_vectors(const json& doc) {
  const Dims dims = parse_dims(doc);
  const Field field = parse_field(doc);
  if (!ScalarTraits<T>::accepts(field)) {
    throw std::invalid_argument("document field " + field.name() + " does not match requested type");
  }
  std::vector<StateVector<T>> out;
  try {
    for (const auto& v : doc.at("vectors")) {
      std::vector<T> coeffs;
      for (const auto& c : v.at("coeffs")) coeffs.push_back(parse_scalar<T>(c, field));
      out.emplace_back(dims, field, std::move(coeffs));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed vectors: ") + e.what());
  }
  return out;
}

template <class T>
std::string to_csv(const std::vector<StateVector<T>>& vs) {
  std::ostringstream out;
  for (std::size_t v = 0; v < vs.size(); ++v) {
    const Dims& dims = vs[v].dims();
    if (dims.k() != 2) throw std::invalid_argument("csv output needs exactly two factors");
    if (v) out << '\n';
    for (int i = 0; i < dims[0]; ++i) {
      for (int j = 0; j < dims[1]; ++j) {
        if (j) out << ',';
        out << csv_cell(vs[v][static_cast<std::size_t>(i * dims[1] + j)]);
      }
      out << '\n';
    }
  }
  return out.str();
}

template std::vector<StateVector<Rational>> parse_vectors<Rational>(const json&);
template std::vector<StateVector<GaussianRational>> parse_vectors<GaussianRational>(const json&);
template std::vector<StateVector<Fp>> parse_vectors<Fp>(const json&);
template std::vector<StateVector<Complex>> parse_vectors<Complex>(const json&);
template std::string to_csv<Rational>(const std::vector<StateVector<Rational>>&);
template std::string to_csv<GaussianRational>(const std::vector<StateVector<GaussianRational>>&);
template std::string to_csv<Fp>(const std::vector<StateVector<Fp>>&);
template std::string to_csv<Complex>(const std::vector<StateVector<Complex>>&);

}  // namespace ces::cli
