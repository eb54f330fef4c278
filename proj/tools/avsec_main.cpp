// avsec command-line interface: compute section functionals, run named
// checks and suites, and emit reproducible machine-readable reports.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "avsec/checks.hpp"
#include "avsec/constants.hpp"
#include "avsec/suite.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
  f << text;
}

avsec::Body parse_body(const std::string& body_json, int n) {
  if (body_json.empty()) return avsec::Body::ball(n, 1.0);
  return avsec::instantiate_body(nlohmann::json::parse(body_json), n);
}

nlohmann::json scan_to_json(const avsec::GrassmannScan& scan) {
  nlohmann::json subs = nlohmann::json::array();
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& e : scan.subspaces) subs.push_back(avsec::matrix_to_json(e.basis()));
  for (const auto& v : scan.values) vals.push_back(avsec::estimate_to_json(v));
  return {{"k", scan.codim},
          {"subspaces", subs},
          {"values", vals},
          {"argmax_index", scan.argmax_index},
          {"argmax_basis", avsec::matrix_to_json(scan.argmax_basis)},
          {"max", avsec::estimate_to_json(scan.max_value)},
          {"mean", avsec::estimate_to_json(scan.mean_value)}};
}

struct CommonOpts {
  std::string body_json;
  int n = 4;
  int k = 1;
  int r = 1;
  int j = 1;
  long samples = 20000;
  int subspaces = 96;
  int refine = 40;
  std::uint64_t seed = 1;
  std::uint64_t streams = 0;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_body = true) {
  if (with_body) cmd->add_option("--body", o.body_json, "body descriptor as JSON");
  cmd->add_option("--n", o.n, "ambient dimension (used when --body omits \"dim\")");
  cmd->add_option("--k", o.k, "codimension");
  cmd->add_option("--r", o.r, "section codimension r");
  cmd->add_option("--j", o.j, "dual mixed volume index");
  cmd->add_option("--samples", o.samples, "Monte-Carlo sample count");
  cmd->add_option("--subspaces", o.subspaces, "Haar subspaces per scan");
  cmd->add_option("--refine", o.refine, "argmax refinement iterations");
  cmd->add_option("--seed", o.seed, "random seed (reports record it)");
  cmd->add_option("--streams", o.streams, "base stream id");
  cmd->add_option("--out", o.out, "write output to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"avsec: average-section functionals, dual quermassintegrals and "
               "inequality checks for convex bodies"};
  app.require_subcommand(1);

  CommonOpts o;

  auto* compute = app.add_subcommand("compute", "evaluate a functional on a body");
  std::string what;
  std::string body2_json;
  compute->add_option("what", what, "one of: as, as_r, dmv, rk, phik, gamma, scan")->required();
  add_common(compute, o);
  compute->add_option("--body2", body2_json, "partner body for dmv (default: unit ball)");

  auto* iso = app.add_subcommand("isotropic", "whitening map, isotropic constant, certificate");
  add_common(iso, o);

  auto* check = app.add_subcommand("check", "run one named check (or all applicable)");
  std::string check_id;
  bool csv_flag = false, json_flag = false;
  check->add_option("id", check_id, "registered check id or 'all'")->required();
  add_common(check, o);
  check->add_flag("--csv", csv_flag,
                  "CSV output with fixed columns: check,body,n,k,r,seed,lhs,lhs_stderr,"
                  "rhs,rhs_stderr,slack,verdict,constant (floats: 17 significant digits)");
  check->add_flag("--json", json_flag, "JSON-lines output (default)");

  auto* suite = app.add_subcommand("suite", "run the full registry over a body suite");
  std::string config_path, csv_path;
  int jobs = 0;
  bool print_default = false;
  std::optional<std::uint64_t> suite_seed;
  suite->add_option("--config", config_path, "suite config JSON (default: built-in suite)");
  suite->add_option("--jobs", jobs, "worker threads (0 = hardware)");
  suite->add_option("--out", o.out, "write JSON-lines to this file");
  suite->add_option("--csv", csv_path, "also write a CSV summary to this file");
  std::uint64_t seed_opt = 0;
  auto* seed_flag = suite->add_option("--seed", seed_opt, "override the config seed");
  suite->add_flag("--print-default-config", print_default, "dump the default config and exit");

  auto* table = app.add_subcommand(
      "table", "emit a CSV table of a functional (columns: body,n,k,gamma,stderr,seed; "
               "floats: 17 significant digits)");
  std::string table_what, bodies_list = "ball,cube,cross", n_range = "3:6", k_range = "1:2";
  table->add_option("what", table_what, "only 'gamma' is available")->required();
  table->add_option("--bodies", bodies_list, "comma-separated body names");
  table->add_option("--n-range", n_range, "inclusive range a:b");
  table->add_option("--k-range", k_range, "inclusive range a:b");
  add_common(table, o, false);

  auto* lb = app.add_subcommand("list-bodies", "print the known body templates");
  lb->add_option("--out", o.out, "write output to this file");

  auto* cst = app.add_subcommand("constants", "evaluate a named constant");
  std::string cname;
  cst->add_option("--name", cname, "one of: b, c, phi, rho, h")->required();
  cst->add_option("--n", o.n, "dimension")->required();
  cst->add_option("--k", o.k, "codimension");
  cst->add_option("--r", o.r, "section codimension (phi only)");
  cst->add_option("--out", o.out, "write output to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    const avsec::RngStream rng(o.seed, o.streams);

    if (compute->parsed()) {
      const avsec::Body body = parse_body(o.body_json, o.n);
      nlohmann::json out;
      if (what == "as") {
        out = estimate_to_json(avsec::avg_section(body, o.samples, rng));
      } else if (what == "as_r") {
        out = estimate_to_json(avsec::avg_section_r(body, o.r, o.samples, rng));
      } else if (what == "dmv") {
        const avsec::Body d =
            body2_json.empty() ? avsec::Body::ball(body.dim(), 1.0)
                               : avsec::Body::from_json(nlohmann::json::parse(body2_json));
        out = estimate_to_json(avsec::dual_mixed_volume_j(body, d, o.j, o.samples, rng));
      } else if (what == "rk") {
        out = estimate_to_json(
            avsec::dual_quermass_R(body, o.k, o.subspaces, o.samples, rng));
      } else if (what == "phik") {
        out = estimate_to_json(
            avsec::dual_affine_quermass_Phi(body, o.k, o.subspaces, o.samples, rng));
      } else if (what == "gamma") {
        out = estimate_to_json(
            avsec::gamma_witness(body, o.k, o.subspaces, o.samples, o.refine, rng));
      } else if (what == "scan") {
        out = scan_to_json(
            avsec::grassmann_max_avg_section(body, o.k, o.subspaces, o.samples, o.refine, rng));
      } else {
        std::cerr << "error: unknown functional '" << what << "'\n";
        return exit_usage;
      }
      emit(out.dump() + "\n", o.out);
      return exit_ok;
    }

    if (iso->parsed()) {
      const avsec::Body body = parse_body(o.body_json, o.n);
      const avsec::IsotropicPosition pos =
          avsec::isotropic_position(body, std::max(o.samples, 16L), rng);
      nlohmann::json out{{"T", avsec::matrix_to_json(pos.transform)},
                         {"recentering", avsec::vector_to_json(pos.recentering)},
                         {"L", estimate_to_json(pos.constant)},
                         {"certificate", pos.certificate},
                         {"image", pos.image.to_json()}};
      emit(out.dump() + "\n", o.out);
      return exit_ok;
    }

    if (check->parsed()) {
      const avsec::Body body = parse_body(o.body_json, o.n);
      avsec::CheckParams params;
      params.k = o.k;
      params.r = o.r;
      avsec::CheckBudgets budgets;
      budgets.samples = o.samples;
      budgets.section_samples = std::max<long>(500, o.samples / 10);
      budgets.subspaces = o.subspaces;
      budgets.refine = o.refine;
      std::vector<avsec::CheckReport> reports;
      bool exact_failed = false;
      if (check_id == "all") {
        std::uint64_t idx = 0;
        for (const auto& info : avsec::check_registry()) {
          if (!avsec::body_in_class(body, info.required)) continue;
          try {
            reports.push_back(avsec::run_check(info.id, body, params, budgets,
                                               rng.substream(idx++)));
          } catch (const std::invalid_argument&) {
            continue;  // parameters out of range for this body
          }
          if (reports.back().verdict == avsec::Verdict::Fail &&
              info.kind == avsec::CheckKind::Exact)
            exact_failed = true;
        }
      } else {
        reports.push_back(avsec::run_check(check_id, body, params, budgets, rng));
        exact_failed = reports.back().verdict == avsec::Verdict::Fail &&
                       avsec::check_info(check_id).kind == avsec::CheckKind::Exact;
      }
      std::string text;
      if (csv_flag && !json_flag) {
        text = avsec::CheckReport::csv_header() + "\n";
        for (const auto& r : reports) text += r.csv_row() + "\n";
      } else {
        for (const auto& r : reports) text += r.to_json().dump() + "\n";
      }
      emit(text, o.out);
      return exact_failed ? exit_check_failure : exit_ok;
    }

    if (suite->parsed()) {
      avsec::SuiteConfig cfg;
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw std::invalid_argument("cannot open config: " + config_path);
        cfg = avsec::SuiteConfig::from_json(nlohmann::json::parse(f));
      } else {
        cfg = avsec::SuiteConfig::default_config();
      }
      if (print_default) {
        emit(avsec::SuiteConfig::default_config().to_json().dump(2) + "\n", o.out);
        return exit_ok;
      }
      if (seed_flag->count() > 0) cfg.seed = seed_opt;
      if (jobs > 0) cfg.jobs = jobs;
      const avsec::SuiteResult result = avsec::run_suite(cfg);
      emit(result.json_lines(), o.out);
      if (!csv_path.empty()) {
        std::ofstream c(csv_path, std::ios::binary);
        if (!c) throw std::invalid_argument("cannot open csv file: " + csv_path);
        c << result.csv();
      }
      std::cerr << "suite: " << result.passes << " pass, " << result.failures << " fail, "
                << result.indeterminates << " indeterminate\n";
      return result.exact_failures > 0 ? exit_check_failure : exit_ok;
    }

    if (table->parsed()) {
      if (table_what != "gamma") {
        std::cerr << "error: unknown table '" << table_what << "'\n";
        return exit_usage;
      }
      auto parse_range = [](const std::string& s) {
        const auto pos = s.find(':');
        if (pos == std::string::npos)
          throw std::invalid_argument("range must look like a:b, got " + s);
        return std::pair<int, int>{std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 1))};
      };
      const auto [n_lo, n_hi] = parse_range(n_range);
      const auto [k_lo, k_hi] = parse_range(k_range);
      std::string text = "body,n,k,gamma,stderr,seed\n";
      std::uint64_t idx = 0;
      std::string name;
      std::stringstream names(bodies_list);
      while (std::getline(names, name, ',')) {
        const nlohmann::json tmpl = avsec::named_body_template(name);
        for (int n = n_lo; n <= n_hi; ++n) {
          const avsec::Body body = avsec::instantiate_body(tmpl, n);
          for (int k = k_lo; k <= std::min(k_hi, n - 2); ++k) {
            const avsec::Estimate g = avsec::gamma_witness(body, k, o.subspaces, o.samples,
                                                           o.refine, rng.substream(idx++));
            text += name + ',' + std::to_string(n) + ',' + std::to_string(k) + ',' +
                    fmt17(g.value) + ',' + fmt17(g.std_error) + ',' + std::to_string(o.seed) +
                    "\n";
          }
        }
      }
      emit(text, o.out);
      return exit_ok;
    }

    if (lb->parsed()) {
      std::string text;
      for (const auto& name : avsec::known_body_names()) {
        nlohmann::json t = avsec::named_body_template(name);
        text += name + ": " + t.dump() + "\n";
      }
      text += "full types: ball, ellipsoid, cube, cross_polytope, regular_simplex, lp_ball, "
              "h_polytope, linear_image, section, radial_sum\n";
      emit(text, o.out);
      return exit_ok;
    }

    if (cst->parsed()) {
      double value = 0.0;
      if (cname == "b") value = avsec::constants::b(o.n, o.k);
      else if (cname == "c") value = avsec::constants::c(o.n, o.k);
      else if (cname == "phi") value = avsec::constants::phi(o.n, o.k, o.r);
      else if (cname == "rho") value = avsec::constants::varrho(o.n, o.k);
      else if (cname == "h") value = avsec::constants::h(double(o.n) / o.k);
      else {
        std::cerr << "error: unknown constant '" << cname << "'\n";
        return exit_usage;
      }
      emit(fmt17(value) + "\n", o.out);
      return exit_ok;
    }
  } catch (const avsec::budget_error& e) {
    std::cerr << "budget-error: " << e.what() << "\n";
    return exit_budget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
