#include "vopskit/serde.hpp"

#include <algorithm>
#include <set>

namespace vopskit {

std::string rational_to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw ConfigError("empty rational literal");
  for (char ch : s)
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+'))
      throw ConfigError("bad rational literal: " + s);
  try {
    Rational q(s);
    return q;
  } catch (const std::exception&) {
    throw ConfigError("bad rational literal: " + s);
  }
}

std::string scalar_to_display(const PiRational& x) {
  std::string s = rational_to_string(x.value());
  if (x.pi_exp() == 1)
    s += " pi";
  else if (x.pi_exp() != 0)
    s += " pi^" + std::to_string(x.pi_exp());
  return s;
}

std::string scalar_to_display(const BigFloat& x) { return x.str(float_precision()); }

namespace {

Rational field_rational(const Json& w, const char* key) {
  const auto& v = w.at(key);
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return rational_from_string(v.get<std::string>());
  throw ConfigError(std::string("weight parameter '") + key +
                    "' must be an integer or a rational string");
}

long field_exponent(const Json& w, const char* key) {
  const auto& v = w.at(key);
  if (!v.is_number_integer() || v.get<long>() < 0)
    throw ConfigError(std::string("exponent '") + key + "' must be an integer >= 0");
  return v.get<long>();
}

WeightSpec parse_weight(const Json& w, std::string& name_out) {
  const std::string type = w.at("type").get<std::string>();
  name_out = type;
  if (type == "product-chebyshev") {
    ProductChebyshevSpec s{field_rational(w, "a"), field_rational(w, "b"),
                           field_rational(w, "c"), field_rational(w, "d")};
    if (!(0 < s.a && s.a < s.b && 0 < s.c && s.c < s.d))
      throw ConfigError("product-chebyshev requires 0 < a < b and 0 < c < d");
    return s;
  }
  if (type == "triangle-koornwinder") {
    TriangleKoornwinderSpec s;
    s.alpha = field_exponent(w, "alpha");
    s.beta = field_exponent(w, "beta");
    s.gamma = field_exponent(w, "gamma");
    s.a = field_rational(w, "a");
    s.b = field_rational(w, "b");
    s.c = field_rational(w, "c");
    s.d = field_rational(w, "d");
    s.tau = w.contains("tau") ? field_rational(w, "tau") : Rational(1);
    if (!(0 < s.a && s.a < s.b && 0 < s.c && s.c < s.d))
      throw ConfigError("triangle-koornwinder requires 0 < a < b and 0 < c < d");
    return s;
  }
  if (type == "shifted-simplex") {
    ShiftedSimplexSpec s;
    s.alpha = field_exponent(w, "alpha");
    s.beta = field_exponent(w, "beta");
    s.gamma = field_exponent(w, "gamma");
    s.a = field_rational(w, "a");
    s.b = field_rational(w, "b");
    if (!(0 < s.a && s.a < s.b)) throw ConfigError("shifted-simplex requires 0 < a < b");
    return s;
  }
  if (type == "generic") {
    // polynomial weight: terms [{i,j,c}], domain x1 in [a,b],
    // x2 in [l0 + l1 x1, u0 + u1 x1]
    struct Term {
      long i, j;
      Rational c;
    };
    std::vector<Term> terms;
    for (const auto& t : w.at("terms"))
      terms.push_back({t.at("i").get<long>(), t.at("j").get<long>(), field_rational(t, "c")});
    if (terms.empty()) throw ConfigError("generic weight needs at least one term");
    GenericQuadratureSpec g;
    g.a = field_rational(w, "a");
    g.b = field_rational(w, "b");
    const auto& lo = w.at("lower");
    const auto& hi = w.at("upper");
    auto linear = [](const Json& arr) {
      if (!arr.is_array() || arr.size() != 2)
        throw ConfigError("boundary must be [c0, c1] for c0 + c1*x1");
      Rational c0 = arr.at(0).is_string() ? rational_from_string(arr.at(0).get<std::string>())
                                          : Rational(arr.at(0).get<long>());
      Rational c1 = arr.at(1).is_string() ? rational_from_string(arr.at(1).get<std::string>())
                                          : Rational(arr.at(1).get<long>());
      return std::make_pair(c0, c1);
    };
    const auto [l0, l1] = linear(lo);
    const auto [u0, u1] = linear(hi);
    if (!(0 < g.a && g.a < g.b)) throw ConfigError("generic weight requires 0 < a < b");
    g.weight = [terms](const BigFloat& x1, const BigFloat& x2) {
      BigFloat acc(0);
      for (const auto& t : terms) acc += BigFloat(t.c) * pow(x1, t.i) * pow(x2, t.j);
      return acc;
    };
    g.lower = [l0, l1](const BigFloat& x1) { return BigFloat(l0) + BigFloat(l1) * x1; };
    g.upper = [u0, u1](const BigFloat& x1) { return BigFloat(u0) + BigFloat(u1) * x1; };
    return g;
  }
  throw ConfigError("unknown weight type: " + type);
}

}  // namespace

RunConfig parse_run_config(const Json& doc) {
  static const std::set<std::string> known_outputs{"vops",       "lambda",  "upsilon",
                                                   "relations",  "recurrence", "moments",
                                                   "verify"};
  RunConfig cfg;
  try {
    cfg.weight = parse_weight(doc.at("weight"), cfg.weight_name);
    cfg.backend = doc.value("backend", std::string("exact"));
    if (cfg.backend != "exact" && cfg.backend != "float")
      throw ConfigError("backend must be \"exact\" or \"float\"");
    if (doc.contains("precision")) cfg.precision = doc.at("precision").get<unsigned>();
    if (cfg.precision < 30) throw ConfigError("precision must be at least 30 digits");
    cfg.n_max = doc.value("n_max", 3);
    if (cfg.n_max < 0 || cfg.n_max > 12)
      throw ConfigError("n_max must lie in [0, 12] (moment-window guard)");
    if (doc.contains("outputs"))
      for (const auto& o : doc.at("outputs")) {
        const auto s = o.get<std::string>();
        if (!known_outputs.count(s)) throw ConfigError("unknown output kind: " + s);
        cfg.outputs.push_back(s);
      }
    cfg.format = doc.value("format", std::string("text"));
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
      throw ConfigError("format must be json, csv, or text");
    cfg.normalize = doc.value("normalize", false);
    if (cfg.backend == "exact") {
      const bool exact_capable = std::holds_alternative<ProductChebyshevSpec>(cfg.weight) ||
                                 std::holds_alternative<ShiftedSimplexSpec>(cfg.weight);
      if (!exact_capable)
        throw ConfigError("exact backend supports only product-chebyshev and "
                          "shifted-simplex weights");
      if (std::holds_alternative<ShiftedSimplexSpec>(cfg.weight) && cfg.n_max > 0)
        throw ConfigError("shifted-simplex with the exact backend serves only nonnegative "
                          "moment indices; use backend \"float\" for n_max > 0");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return cfg;
}

}  // namespace vopskit
