#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "vopskit/bipoly.hpp"
#include "vopskit/matrix.hpp"
#include "vopskit/scalar.hpp"
#include "vopskit/weights.hpp"

namespace vopskit {

using Json = nlohmann::json;

struct ConfigError : Error {
  using Error::Error;
};

// ---- rational & scalar round-trips ----------------------------------------

std::string rational_to_string(const Rational& q);      // "p/q" in lowest terms
Rational rational_from_string(const std::string& s);

inline Json to_json(const PiRational& x) {
  if (x.pi_exp() == 0) return rational_to_string(x.value());
  return Json{{"value", rational_to_string(x.value())}, {"pi_exp", x.pi_exp()}};
}

inline Json to_json(const BigFloat& x) { return x.str(float_precision()); }

inline void from_json_scalar(const Json& j, PiRational& out) {
  if (j.is_string()) {
    out = PiRational(rational_from_string(j.get<std::string>()));
    return;
  }
  if (!j.is_object() || !j.contains("value"))
    throw ConfigError("exact scalar must be \"p/q\" or {value, pi_exp}");
  out = PiRational(rational_from_string(j.at("value").get<std::string>()),
                   j.value("pi_exp", 0));
}

inline void from_json_scalar(const Json& j, BigFloat& out) {
  if (!j.is_string()) throw ConfigError("float scalar must be a decimal string");
  out = BigFloat(j.get<std::string>());
}

// ---- polynomials & matrices ------------------------------------------------

template <class T>
Json to_json(const BiPoly<T>& p) {
  Json terms = Json::array();
  // highest degree first, x1-major inside a degree: the tables' layout
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    terms.push_back(Json{{"i", it->first.i}, {"j", it->first.j}, {"c", to_json(it->second)}});
  return Json{{"terms", std::move(terms)}};
}

template <class T>
BiPoly<T> bipoly_from_json(const Json& j) {
  BiPoly<T> p;
  for (const auto& t : j.at("terms")) {
    T c;
    from_json_scalar(t.at("c"), c);
    p.add_term({t.at("i").get<long>(), t.at("j").get<long>()}, c);
  }
  return p;
}

template <class T>
Json to_json(const PolyVec<T>& v) {
  Json entries = Json::array();
  for (std::size_t k = 0; k < v.size(); ++k) entries.push_back(to_json(v[k]));
  return Json{{"degree", v.degree()}, {"entries", std::move(entries)}};
}

template <class T>
PolyVec<T> polyvec_from_json(const Json& j) {
  const int degree = j.at("degree").get<int>();
  std::vector<BiPoly<T>> entries;
  for (const auto& e : j.at("entries")) entries.push_back(bipoly_from_json<T>(e));
  return PolyVec<T>(degree, std::move(entries));
}

template <class T>
Json to_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

template <class T>
Matrix<T> matrix_from_json(const Json& j) {
  Matrix<T> m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  const auto& data = j.at("data");
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) from_json_scalar(data.at(r).at(c), m(r, c));
  return m;
}

// ---- human-readable polynomial text ----------------------------------------

std::string scalar_to_display(const PiRational& x);
std::string scalar_to_display(const BigFloat& x);

template <class T>
std::string polynomial_to_string(const BiPoly<T>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    std::string cs = scalar_to_display(c);
    bool neg = !cs.empty() && cs.front() == '-';
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (neg) cs.erase(cs.begin());
    std::string mono;
    if (m.i > 0) mono += "x1" + (m.i > 1 ? "^" + std::to_string(m.i) : "");
    if (m.j > 0) mono += std::string(m.i > 0 ? " " : "") + "x2" +
                         (m.j > 1 ? "^" + std::to_string(m.j) : "");
    if (mono.empty())
      out += cs;
    else if (cs == "1")
      out += mono;
    else
      out += cs + " " + mono;
  }
  return out;
}

// ---- run configuration ------------------------------------------------------

struct RunConfig {
  WeightSpec weight;
  std::string weight_name;  // spec type tag, for reports
  std::string backend = "exact";
  unsigned precision = 50;
  int n_max = 3;
  std::vector<std::string> outputs;
  std::string format = "text";
  bool normalize = false;
};

/// Parse and validate a config document. Throws ConfigError.
RunConfig parse_run_config(const Json& doc);

}  // namespace vopskit
