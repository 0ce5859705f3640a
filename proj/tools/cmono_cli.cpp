// Command line front end: eval, verify and demo.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cmono/bimodule_fock.hpp"
#include "cmono/moments.hpp"
#include "cmono/scenario.hpp"
#include "cmono/suites.hpp"

namespace {

using cmono::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// Exceptions thrown while reading inputs become usage errors.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

cmono::Scenario read_scenario(const std::string& path) {
  try {
    return path.empty() ? cmono::bundled_scenario("default.json") : cmono::load_scenario(path);
  } catch (const std::exception& ex) {
    throw InputError(ex.what());
  }
}

cmono::Word read_word(const std::string& arg) {
  try {
    // inline JSON or a file path
    const json j = (!arg.empty() && arg.front() == '{') ? json::parse(arg) : cmono::load_json_file(arg);
    return cmono::word_from_json(j);
  } catch (const std::exception& ex) {
    throw InputError(ex.what());
  }
}

void emit(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!path.empty()) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text;
  }
}

int run_eval(const std::string& rule, const std::string& scenario_path, const std::string& word_arg,
             const std::string& json_path) {
  const cmono::Scenario s = read_scenario(scenario_path);
  const cmono::Word w = read_word(word_arg);
  json out;
  out["report_version"] = cmono::kReportVersion;
  out["rule"] = rule;
  if (rule == "monotone") {
    out["value"] = cmono::matrix_to_json(cmono::eval_monotone(s.family, w));
  } else if (rule == "cmonotone") {
    out["value"] = cmono::complex_to_json(cmono::eval_cmonotone(s.family, w));
  } else {
    if (!s.maps) throw InputError("scenario has no \"thetas\"");
    out["value"] = cmono::matrix_to_json(cmono::eval_map_product(s.family, *s.maps, w));
  }
  emit(out, json_path);
  return kPass;
}

int run_verify(const std::string& suite, const cmono::SuiteOptions& opt, const std::string& json_path) {
  cmono::ScenarioSet set;
  try {
    set = cmono::load_scenarios(opt);
  } catch (const std::exception& ex) {
    throw InputError(ex.what());
  }
  cmono::VerificationReport r = cmono::run_suite(suite, set, opt);
  json j = r.to_json();
  j["tolerances"] = {{"equality", opt.tol}, {"eigenvalue", opt.eig_tol}};
  emit(j, json_path);
  return r.passed() ? kPass : kFail;
}

int run_demo(const std::string& scenario_path, const std::string& json_path) {
  const cmono::Scenario s = scenario_path.empty() ? read_scenario(cmono::bundled_scenario_path("remark45.json"))
                                                  : read_scenario(scenario_path);
  if (!s.remark45) throw InputError("scenario has no \"remark45\" letters");
  const cmono::Remark45Result res = cmono::counterexample_remark45(s.family, *s.remark45);
  json out;
  out["report_version"] = cmono::kReportVersion;
  out["demo"] = "remark45";
  out["lhs_norm"] = res.lhs_norm;
  out["rhs_norm"] = res.rhs_norm;
  out["component_norm"] = res.component_norm;
  out["predicted_norm"] = res.predicted_norm;
  out["f2_inner"] = cmono::matrix_to_json(res.f2_inner);
  out["f3_inner"] = cmono::matrix_to_json(res.f3_inner);
  const bool ok = res.lhs_norm <= 1e-10 && res.rhs_norm > 1e-10;
  out["pass"] = ok;
  emit(out, json_path);
  return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone and c-monotone products: evaluation and verification"};
  app.require_subcommand(1);

  std::string scenario, json_path, rule = "monotone", word, suite = "all", demo_name;
  cmono::SuiteOptions opt;

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a word under a product rule");
  eval->add_option("--rule", rule, "monotone | cmonotone | map-product")
      ->check(CLI::IsMember({"monotone", "cmonotone", "map-product"}));
  eval->add_option("--scenario", scenario, "Scenario JSON (default: bundled)");
  eval->add_option("--word", word, "Word JSON file or inline JSON object")->required();
  eval->add_option("--json", json_path, "Also write the result to this path");

  CLI::App* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(cmono::suite_names()));
  verify->add_option("--scenario", opt.scenario, "Scenario replacing the bundled one of the same kind");
  verify->add_option("--seed", opt.seed, "Master seed");
  verify->add_option("--tol", opt.tol, "Equality tolerance");
  verify->add_option("--eig-tol", opt.eig_tol, "Eigenvalue tolerance");
  verify->add_option("--rounds", opt.rounds, "Gram rounds")->check(CLI::PositiveNumber);
  verify->add_option("--json", json_path, "Also write the report to this path");

  CLI::App* demo = app.add_subcommand("demo", "Reproduce a worked example");
  demo->add_option("name", demo_name, "Demo name")->required()->check(CLI::IsMember({"remark45"}));
  demo->add_option("--scenario", scenario, "Scenario JSON with \"remark45\" letters");
  demo->add_option("--json", json_path, "Also write the result to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*eval) return run_eval(rule, scenario, word, json_path);
    if (*verify) return run_verify(suite, opt, json_path);
    return run_demo(scenario, json_path);
  } catch (const InputError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kUsage;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kFail;
  }
}
