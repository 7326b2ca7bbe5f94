#pragma once

#include "jwt/suites.hpp"

#include <iomanip>

namespace jwt {

inline constexpr const char* kToolVersion = "0.1.0";

enum class RunStatus { pass = 0, fail = 1, usage = 2, resource_cap = 3 };

struct RunOutcome {
  json report;
  RunStatus status = RunStatus::pass;
};

inline json blocks_json(const MultiMatrixAlgebra& q) {
  json out = json::array();
  for (auto& b : q.blocks()) out.push_back(json{{"dim", b.dim}, {"weight", b.weight}});
  return out;
}

inline json int_matrix_json(const Eigen::MatrixXi& g) {
  json out = json::array();
  for (long i = 0; i < g.rows(); ++i) {
    json row = json::array();
    for (long j = 0; j < g.cols(); ++j) row.push_back(g(i, j));
    out.push_back(row);
  }
  return out;
}

inline json tower_summary(const Tower& t) {
  json j;
  j["index"] = t.scalars().index;
  j["tau"] = t.tau();
  j["delta"] = t.scalars().delta;
  j["max_level"] = t.max_level();
  j["outside_hypotheses"] = t.outside_hypotheses();
  // Multi-block B or A: the Markov expectation may differ from the minimal one.
  j["multi_block_base"] = t.algebra(-1).num_blocks() > 1 || t.algebra(0).num_blocks() > 1;
  json levels = json::array();
  for (int n = -1; n <= t.max_level(); ++n) {
    json l;
    l["n"] = n;
    l["ambient"] = t.ambient(n);
    l["blocks"] = blocks_json(t.algebra(n));
    levels.push_back(l);
  }
  j["levels"] = levels;
  TowerView v(t, 0);
  json plus = json::array(), minus = json::array(), incl = json::array();
  for (int n = 0; n <= t.max_level(); ++n) {
    plus.push_back(json{{"n", n}, {"blocks", blocks_json(v.plus_box(n))}});
    minus.push_back(json{{"n", n}, {"blocks", blocks_json(v.minus_box(n))}});
  }
  for (int n = 0; n + 1 <= t.max_level(); ++n) {
    InclusionMatrix g = commutant_inclusion(v, n, n + 1);
    incl.push_back(json{{"from", n}, {"to", n + 1}, {"matrix", int_matrix_json(g.g)}, {"connected", g.connected}});
  }
  j["b_commutants"] = plus;
  j["a_commutants"] = minus;
  j["a_commutant_inclusions"] = incl;
  return j;
}

inline json record_json(const Record& r) {
  json j;
  j["name"] = r.name;
  j["anchor"] = r.anchor;
  j["kind"] = to_string(r.kind);
  j["value"] = r.value;
  j["threshold"] = r.threshold;
  j["samples"] = r.samples;
  j["pass"] = r.pass;
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

// Builds the tower to the requested level; a cap hit keeps the levels already built.
inline std::unique_ptr<Tower> build_tower(const ModelSpec& m, long cap, std::string* cap_message) {
  auto t = std::make_unique<Tower>(m.inclusion(), cap);
  try {
    t->extend_to(m.max_level);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::dimension_cap) throw;
    if (cap_message) *cap_message = e.what();
  }
  return t;
}

inline RunOutcome run(const RunConfig& cfg) {
  RunOutcome out;
  json models = json::array();
  bool all_pass = true, capped = false;
  for (const ModelSpec& m : cfg.models) {
    json mj;
    mj["name"] = m.name;
    mj["model"] = model_to_json(m);
    std::string cap_message;
    std::unique_ptr<Tower> t;
    try {
      t = build_tower(m, cfg.dim_cap, &cap_message);
    } catch (const Error& e) {
      mj["error"] = e.what();
      mj["pass"] = false;
      all_pass = false;
      capped = capped || e.kind() == ErrorKind::dimension_cap;
      models.push_back(mj);
      continue;
    }
    if (!cap_message.empty()) {
      mj["build_cap"] = cap_message;
      capped = true;
    }
    mj["tower"] = tower_summary(*t);
    SuiteContext ctx(*t, cfg, m.name);
    json suites = json::array();
    bool model_pass = cap_message.empty();
    EntropySummary es;
    bool have_entropy = false;
    for (const std::string& s : cfg.suites) {
      SuiteResult r = run_suite(s, ctx, s == "entropy" ? &es : nullptr);
      have_entropy = have_entropy || s == "entropy";
      json sj;
      sj["suite"] = s;
      sj["pass"] = r.pass();
      json recs = json::array();
      for (auto& rec : r.records) {
        recs.push_back(record_json(rec));
        capped = capped || rec.resource_cap;
      }
      sj["records"] = recs;
      model_pass = model_pass && r.pass();
      suites.push_back(sj);
    }
    mj["suites"] = suites;
    if (have_entropy) {
      json e;
      e["finite_depth"] = es.finite_depth;
      e["depth"] = es.depth;
      e["growth"] = es.growth;
      e["slope"] = es.slope;
      e["log_index"] = es.log_index;
      e["shift_entropy"] = es.shift_entropy;
      e["implied_relative_entropy"] = es.implied_relative;
      e["slope_agreement"] = std::abs(es.slope - es.shift_entropy);
      mj["entropy"] = e;
    }
    mj["pass"] = model_pass;
    all_pass = all_pass && model_pass;
    models.push_back(mj);
  }
  out.report["tool"] = "jwt";
  out.report["version"] = kToolVersion;
  out.report["config"] = config_to_json(cfg);
  out.report["models"] = models;
  out.report["pass"] = all_pass;
  out.status = all_pass ? RunStatus::pass : (capped ? RunStatus::resource_cap : RunStatus::fail);
  out.report["status"] = all_pass ? "pass" : (capped ? "resource_cap" : "fail");
  return out;
}

inline std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

inline std::string render(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
  for (auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os << std::left << std::setw(int(w[i])) << cells[i];
      os << (i + 1 < cells.size() ? "  " : "\n");
    }
  };
  line(header);
  std::vector<std::string> rule;
  for (auto x : w) rule.push_back(std::string(x, '-'));
  line(rule);
  for (auto& r : rows) line(r);
  return os.str();
}

}  // namespace detail

// Selectors: "margins" (records sorted by signed slack), "entropy", "dims".
inline std::string emit_table(const json& report, const std::string& selector) {
  if (selector == "margins") {
    struct Row {
      double slack;
      std::vector<std::string> cells;
    };
    std::vector<Row> rows;
    for (auto& m : report.at("models"))
      if (m.contains("suites"))
        for (auto& s : m.at("suites"))
          for (auto& r : s.at("records")) {
            const std::string kind = r.at("kind");
            const double v = r.at("value").is_number() ? r.at("value").get<double>() : 0.0;
            const double th = r.at("threshold").get<double>();
            double slack = 0.0;
            if (kind == "identity") slack = th - v;
            else if (kind == "inequality") slack = v + th;
            else if (kind == "separation") slack = v - th;
            else if (kind == "error") slack = -kInf;
            else continue;
            rows.push_back({slack, {m.at("name").get<std::string>(), s.at("suite").get<std::string>(), r.at("name").get<std::string>(),
                                    kind, detail::fmt(v), detail::fmt(slack), r.at("pass").get<bool>() ? "pass" : "FAIL"}});
          }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.slack < b.slack; });
    std::vector<std::vector<std::string>> cells;
    for (auto& r : rows) cells.push_back(r.cells);
    return detail::render({"model", "suite", "check", "kind", "value", "slack", "status"}, cells);
  }
  if (selector == "entropy") {
    std::vector<std::vector<std::string>> cells;
    for (auto& m : report.at("models")) {
      if (!m.contains("entropy")) continue;
      auto& e = m.at("entropy");
      auto& g = e.at("growth");
      for (std::size_t n = 0; n < g.size(); ++n)
        cells.push_back({m.at("name").get<std::string>(), std::to_string(n), detail::fmt(g[n].get<double>()),
                         n + 1 == g.size() ? detail::fmt(e.at("slope").get<double>()) : ""});
    }
    return detail::render({"model", "n", "H_tr(A' cap A_2n)", "slope"}, cells);
  }
  if (selector == "dims") {
    std::vector<std::vector<std::string>> cells;
    for (auto& m : report.at("models")) {
      if (!m.contains("tower")) continue;
      auto& t = m.at("tower");
      auto blocks = [](const json& bl) {
        std::string s;
        for (auto& b : bl) s += (s.empty() ? "" : "+") + std::to_string(b.at("dim").get<int>());
        return s;
      };
      for (std::size_t i = 0; i < t.at("a_commutants").size(); ++i)
        cells.push_back({m.at("name").get<std::string>(), std::to_string(i), blocks(t.at("b_commutants")[i].at("blocks")),
                         blocks(t.at("a_commutants")[i].at("blocks"))});
    }
    return detail::render({"model", "n", "B' cap A_n", "A' cap A_n"}, cells);
  }
  throw ConfigError("unknown table selector '" + selector + "'");
}

}  // namespace jwt
