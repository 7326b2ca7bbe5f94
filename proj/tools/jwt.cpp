#include "jwt/jwt.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

namespace {

struct Overrides {
  std::string config;
  int max_level = -1;
  std::int64_t seed = -1;
  std::vector<std::string> suites;
  double tol = -1.0;
  int samples = -1;
  std::string out;
};

jwt::RunConfig load(const Overrides& o) {
  jwt::RunConfig c = jwt::parse_config(o.config);
  if (o.max_level >= 0) {
    if (o.max_level < 1) throw jwt::ConfigError("--max-level must be >= 1");
    for (auto& m : c.models) m.max_level = o.max_level;
  }
  if (o.seed >= 0) c.seed = std::uint64_t(o.seed);
  if (o.tol >= 0.0) {
    if (!(o.tol > 0.0)) throw jwt::ConfigError("--tol must be > 0");
    c.tol = o.tol;
  }
  if (o.samples >= 0) {
    if (o.samples < 1) throw jwt::ConfigError("--samples must be >= 1");
    c.samples = o.samples;
  }
  if (!o.suites.empty()) {
    jwt::json j = jwt::config_to_json(c);
    j["suites"] = o.suites;
    c = jwt::config_from_json(j);
  }
  return c;
}

void write(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw jwt::ConfigError("cannot write '" + path + "'");
  f << text;
}

int exit_code(jwt::RunStatus s) { return static_cast<int>(s); }

int cmd_build(const Overrides& o) {
  jwt::RunConfig c = load(o);
  jwt::json doc;
  doc["tool"] = "jwt";
  doc["version"] = jwt::kToolVersion;
  doc["config"] = jwt::config_to_json(c);
  jwt::json models = jwt::json::array();
  bool capped = false;
  for (auto& m : c.models) {
    std::string cap;
    auto t = jwt::build_tower(m, c.dim_cap, &cap);
    jwt::json mj;
    mj["name"] = m.name;
    mj["tower"] = jwt::tower_summary(*t);
    if (!cap.empty()) {
      mj["build_cap"] = cap;
      capped = true;
    }
    models.push_back(mj);
    std::cerr << m.name << ": index " << t->scalars().index << ", built to level " << t->max_level() << "\n";
  }
  doc["models"] = models;
  write(jwt::dump_report(doc), o.out);
  return capped ? exit_code(jwt::RunStatus::resource_cap) : 0;
}

int cmd_verify(const Overrides& o) {
  jwt::RunConfig c = load(o);
  auto t0 = std::chrono::steady_clock::now();
  jwt::RunOutcome r = jwt::run(c);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write(jwt::dump_report(r.report), o.out);
  std::cerr << "status: " << r.report["status"].get<std::string>() << " (" << secs << " s)\n";
  return exit_code(r.status);
}

int cmd_entropy(Overrides o) {
  o.suites = {"entropy"};
  jwt::RunConfig c = load(o);
  jwt::RunOutcome r = jwt::run(c);
  if (!o.out.empty()) write(jwt::dump_report(r.report), o.out);
  std::cout << jwt::emit_table(r.report, "entropy");
  return exit_code(r.status);
}

int cmd_report(const std::string& path, const std::string& selector) {
  std::ifstream in(path);
  if (!in) throw jwt::ConfigError("cannot open report '" + path + "'");
  jwt::json j;
  try {
    j = jwt::json::parse(in);
  } catch (const jwt::json::exception& e) {
    throw jwt::ConfigError(std::string("malformed report: ") + e.what());
  }
  if (!j.contains("models")) throw jwt::ConfigError("not a report document");
  std::cout << jwt::emit_table(j, selector);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier, rotation and shift calculus on Jones towers of finite-dimensional inclusions"};
  app.require_subcommand(1);
  Overrides o;
  auto common = [&](CLI::App* sub, bool full) {
    sub->add_option("--config", o.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--max-level", o.max_level, "override max_level of every model");
    sub->add_option("--out", o.out, "output file (default: stdout)");
    if (!full) return;
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--tol", o.tol, "tolerance");
    sub->add_option("--samples", o.samples, "samples per identity check");
    sub->add_option("--suite", o.suites, "suites to run (repeatable)")->delimiter(',');
  };
  auto* build = app.add_subcommand("build", "build the towers and write their summary");
  common(build, false);
  auto* verify = app.add_subcommand("verify", "run verification suites and write a report");
  common(verify, true);
  auto* entropy = app.add_subcommand("entropy", "run the entropy suite and print the growth table");
  common(entropy, true);
  auto* report = app.add_subcommand("report", "render a table from a saved report");
  std::string report_path, selector = "margins";
  report->add_option("report", report_path, "report JSON")->required();
  report->add_option("selector", selector, "margins | entropy | dims");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code(jwt::RunStatus::usage);
  }

  try {
    if (*build) return cmd_build(o);
    if (*verify) return cmd_verify(o);
    if (*entropy) return cmd_entropy(o);
    if (*report) return cmd_report(report_path, selector);
  } catch (const jwt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_code(jwt::RunStatus::usage);
  } catch (const jwt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind() == jwt::ErrorKind::dimension_cap || e.kind() == jwt::ErrorKind::level_missing)
      return exit_code(jwt::RunStatus::resource_cap);
    return exit_code(jwt::RunStatus::usage);
  }
  return exit_code(jwt::RunStatus::usage);
}
