#pragma once

#include "jwt/tower.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace jwt {

using json = nlohmann::ordered_json;

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s = {"tl",    "quasi-basis",     "fourier",   "rotation", "reflection",
                                             "convolution", "shift", "canonical-shift", "two-shift", "hy",
                                             "ds",    "hb",              "young",     "entropy"};
  return s;
}

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelSpec {
  std::string name;
  std::string kind = "tensor";  // tensor | explicit
  int k = 1;
  int d = 2;
  std::vector<Mat> a_generators;
  std::vector<Mat> b_generators;
  int max_level = 6;

  InclusionSpec inclusion() const {
    if (kind == "tensor") return InclusionSpec::tensor(k, d);
    InclusionSpec s;
    s.kind = InclusionSpec::Kind::explicit_matrices;
    s.a_generators = a_generators;
    s.b_generators = b_generators;
    return s;
  }
};

struct RunConfig {
  std::vector<ModelSpec> models;
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  int samples = 100;
  int inequality_samples = 1000;
  long dim_cap = kDefaultDimCap;
  std::vector<std::string> suites = all_suites();
};

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("complex entries are numbers or [re, im] pairs");
}

inline json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("matrix must be a non-empty array of rows");
  const long n = long(j.size());
  Mat m(n, n);
  for (long i = 0; i < n; ++i) {
    if (!j[i].is_array() || long(j[i].size()) != n) throw ConfigError("matrix must be square");
    for (long c = 0; c < n; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  return m;
}

namespace detail {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

inline ModelSpec model_from_json(const json& j, int default_level) {
  if (!j.is_object()) throw ConfigError("model must be an object");
  ModelSpec m;
  m.kind = get_or<std::string>(j, "kind", "tensor");
  if (m.kind == "explicit_matrices") m.kind = "explicit";
  if (m.kind != "tensor" && m.kind != "explicit") throw ConfigError("model kind must be 'tensor' or 'explicit'");
  m.max_level = get_or<int>(j, "max_level", default_level);
  if (m.kind == "tensor") {
    m.k = get_or<int>(j, "k", 1);
    m.d = get_or<int>(j, "d", 2);
    if (m.k < 1) throw ConfigError("k must be >= 1");
    if (m.d < 1) throw ConfigError("d must be >= 1");
  } else {
    for (auto [key, dst] : {std::pair{"a_generators", &m.a_generators}, std::pair{"b_generators", &m.b_generators}}) {
      if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty())
        throw ConfigError(std::string("explicit model needs a non-empty '") + key + "' list");
      for (auto& g : j.at(key)) dst->push_back(matrix_from_json(g));
    }
  }
  std::string fallback = m.kind == "tensor" ? "M" + std::to_string(m.k) + "<M" + std::to_string(m.k * m.d) : "explicit";
  m.name = get_or<std::string>(j, "name", fallback);
  if (m.max_level < 1) throw ConfigError("max_level must be >= 1");
  return m;
}

}  // namespace detail

// Model fields may sit at the top level, under "model", or as a "models" list.
inline RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  const int level = detail::get_or<int>(j, "max_level", 6);
  if (j.contains("models")) {
    if (!j.at("models").is_array() || j.at("models").empty()) throw ConfigError("'models' must be a non-empty list");
    for (auto& m : j.at("models")) c.models.push_back(detail::model_from_json(m, level));
  } else if (j.contains("model")) {
    c.models.push_back(detail::model_from_json(j.at("model"), level));
  } else {
    c.models.push_back(detail::model_from_json(j, level));
  }
  c.tol = detail::get_or<double>(j, "tol", c.tol);
  c.seed = detail::get_or<std::uint64_t>(j, "seed", c.seed);
  c.samples = detail::get_or<int>(j, "samples", c.samples);
  c.inequality_samples = detail::get_or<int>(j, "inequality_samples", c.inequality_samples);
  c.dim_cap = detail::get_or<long>(j, "dim_cap", c.dim_cap);
  if (j.contains("suites")) c.suites = detail::get_or<std::vector<std::string>>(j, "suites", {});
  if (!(c.tol > 0.0)) throw ConfigError("tol must be > 0");
  if (c.samples < 1 || c.inequality_samples < 1) throw ConfigError("sample counts must be >= 1");
  if (c.dim_cap < 1) throw ConfigError("dim_cap must be >= 1");
  if (c.suites.empty()) throw ConfigError("suites must be non-empty");
  std::set<std::string> known(all_suites().begin(), all_suites().end()), seen;
  for (auto& s : c.suites) {
    if (!known.count(s)) throw ConfigError("unknown suite '" + s + "'");
    if (!seen.insert(s).second) throw ConfigError("suite '" + s + "' listed twice");
  }
  return c;
}

inline json model_to_json(const ModelSpec& m) {
  json j;
  j["name"] = m.name;
  j["kind"] = m.kind;
  if (m.kind == "tensor") {
    j["k"] = m.k;
    j["d"] = m.d;
  } else {
    json a = json::array(), b = json::array();
    for (auto& g : m.a_generators) a.push_back(matrix_to_json(g));
    for (auto& g : m.b_generators) b.push_back(matrix_to_json(g));
    j["a_generators"] = a;
    j["b_generators"] = b;
  }
  j["max_level"] = m.max_level;
  return j;
}

inline json config_to_json(const RunConfig& c) {
  json j;
  json models = json::array();
  for (auto& m : c.models) models.push_back(model_to_json(m));
  j["models"] = models;
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["inequality_samples"] = c.inequality_samples;
  j["dim_cap"] = c.dim_cap;
  j["suites"] = c.suites;
  return j;
}

inline RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line number
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    throw ConfigError("parse error at line " + std::to_string(line) + ": " + e.what());
  }
  return config_from_json(j);
}

inline RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace jwt
