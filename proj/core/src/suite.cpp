#include "avsec/suite.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace avsec {

namespace {

// diag(1, 2, ..., n) rescaled to determinant one, so the ellipsoid keeps the
// ball's volume while staying anisotropic
nlohmann::json default_ellipsoid(int n) {
  double log_det = 0.0;
  for (int i = 1; i <= n; ++i) log_det += std::log(double(i));
  const double scale = std::exp(-log_det / n);
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = (i + 1) * scale;
  return Body::ellipsoid(m).to_json();
}

}  // namespace

Body instantiate_body(const nlohmann::json& tmpl, int n) {
  nlohmann::json j = tmpl;
  if (!j.contains("dim")) j["dim"] = n;
  const int dim = j.at("dim").get<int>();
  if (j.at("type") == "ellipsoid" && !j.contains("M"))
    return Body::from_json(default_ellipsoid(dim));
  return Body::from_json(j);
}

nlohmann::json named_body_template(const std::string& name) {
  if (name == "ball") return {{"type", "ball"}, {"radius", 1.0}};
  if (name == "ellipsoid") return {{"type", "ellipsoid"}};  // diag(1..n), det-normalized
  if (name == "cube") return {{"type", "cube"}, {"half_side", 0.5}};
  if (name == "cross") return {{"type", "cross_polytope"}, {"scale", 1.0}};
  if (name == "simplex") return {{"type", "regular_simplex"}};
  if (name == "lp1.5") return {{"type", "lp_ball"}, {"p", 1.5}, {"scale", 1.0}};
  if (name == "lp3") return {{"type", "lp_ball"}, {"p", 3.0}, {"scale", 1.0}};
  throw std::invalid_argument("unknown body name: " + name +
                              " (known: ball ellipsoid cube cross simplex lp1.5 lp3)");
}

std::vector<std::string> known_body_names() {
  return {"ball", "ellipsoid", "cube", "cross", "simplex", "lp1.5", "lp3"};
}

SuiteConfig SuiteConfig::default_config() {
  SuiteConfig cfg;
  for (const auto& name : known_body_names()) cfg.bodies.push_back(named_body_template(name));
  return cfg;
}

SuiteConfig SuiteConfig::from_json(const nlohmann::json& j) {
  SuiteConfig cfg;
  if (j.contains("bodies")) {
    cfg.bodies.clear();
    for (const auto& b : j.at("bodies"))
      cfg.bodies.push_back(b.is_string() ? named_body_template(b.get<std::string>()) : b);
  } else {
    cfg = default_config();
  }
  if (j.contains("dims")) cfg.dims = j.at("dims").get<std::vector<int>>();
  if (j.contains("ks")) cfg.ks = j.at("ks").get<std::vector<int>>();
  if (j.contains("rs")) cfg.rs = j.at("rs").get<std::vector<int>>();
  if (j.contains("budgets")) cfg.budgets = CheckBudgets::from_json(j.at("budgets"));
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("include_rotations")) cfg.include_rotations = j.at("include_rotations").get<bool>();
  if (j.contains("checks")) cfg.checks = j.at("checks").get<std::vector<std::string>>();
  if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
  for (int n : cfg.dims)
    if (n < 3) throw std::invalid_argument("suite config: dims must be >= 3");
  for (int k : cfg.ks)
    if (k < 1) throw std::invalid_argument("suite config: ks must be >= 1");
  return cfg;
}

nlohmann::json SuiteConfig::to_json() const {
  return {{"bodies", bodies},
          {"dims", dims},
          {"ks", ks},
          {"rs", rs},
          {"budgets", budgets.to_json()},
          {"seed", seed},
          {"include_rotations", include_rotations},
          {"checks", checks},
          {"jobs", jobs}};
}

namespace {

struct Job {
  Body body;
  CheckInfo info;
  CheckParams params;
  std::uint64_t stream;
};

bool check_enabled(const SuiteConfig& cfg, const std::string& id) {
  if (cfg.checks.empty()) return true;
  for (const auto& c : cfg.checks)
    if (c == id) return true;
  return false;
}

// per-check applicability beyond the class gate
bool applicable(const CheckInfo& info, const Body& body, int k, int r) {
  const int n = body.dim();
  if (!body_in_class(body, info.required)) return false;
  if (info.id == "ball-equality-1.3") {
    auto q = body.quadratic_form();
    if (!q) return false;
    const double lam = q->trace() / n;
    return (*q - lam * Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12 * lam && n >= 3;
  }
  if (info.id == "thm-1.5-bp") return k >= 1 && k < n - 2 && r >= 1 && r < n - k;
  if (info.id == "thm-1.2-bp" || info.id == "thm-1.4-c1" || info.id == "holder-bgl11" ||
      info.id == "grinberg-bound" || info.id == "rk-invariance" || info.id == "dp-lower-c4" ||
      info.id == "m-restriction-c")
    return k >= 1 && k <= n - 1;
  if (info.needs_k) return k >= 1 && k <= n - 2;
  return true;
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& cfg) {
  // instantiate bodies per dimension, plus one rotated linear image of each
  std::vector<Body> instances;
  for (int n : cfg.dims) {
    std::vector<Body> base;
    for (const auto& tmpl : cfg.bodies) base.push_back(instantiate_body(tmpl, n));
    for (std::size_t i = 0; i < base.size(); ++i) {
      instances.push_back(base[i]);
      if (cfg.include_rotations) {
        RngStream rot_rng =
            RngStream(cfg.seed, 0x726f74).substream(n * 1000 + static_cast<std::uint64_t>(i));
        instances.push_back(linear_image(random_rotation(n, rot_rng), base[i]));
      }
    }
  }

  // enumerate jobs in fixed registry-major order
  std::vector<Job> jobs;
  std::uint64_t stream_counter = 0;
  for (const auto& info : check_registry()) {
    if (!check_enabled(cfg, info.id)) continue;
    for (const auto& body : instances) {
      std::vector<int> k_list = info.needs_k ? cfg.ks : std::vector<int>{1};
      std::vector<int> r_list = info.needs_r ? cfg.rs : std::vector<int>{1};
      for (int k : k_list) {
        for (int r : r_list) {
          if (!applicable(info, body, k, r)) continue;
          CheckParams p;
          p.k = k;
          p.r = r;
          jobs.push_back(Job{body, info, p, stream_counter++});
        }
      }
    }
  }

  // fixed stream per job; results land in their slot, so the report order is
  // independent of scheduling
  const RngStream master(cfg.seed, 0);
  std::vector<CheckReport> reports(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      const Job& job = jobs[i];
      try {
        reports[i] = run_check(job.info.id, job.body, job.params, cfg.budgets,
                               master.substream(job.stream));
      } catch (const std::exception& ex) {
        CheckReport rep;
        rep.check_id = job.info.id;
        rep.body = job.body.to_json();
        rep.params = {{"n", job.body.dim()}, {"k", job.params.k}, {"r", job.params.r},
                      {"seed", cfg.seed}};
        rep.verdict = Verdict::Fail;
        rep.note = std::string("error: ") + ex.what();
        reports[i] = std::move(rep);
      }
    }
  };
  int num_threads = cfg.jobs > 0 ? cfg.jobs : static_cast<int>(std::thread::hardware_concurrency());
  if (num_threads < 1) num_threads = 1;
  if (num_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < num_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SuiteResult result;
  result.reports = std::move(reports);
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    switch (result.reports[i].verdict) {
      case Verdict::Pass: ++result.passes; break;
      case Verdict::Fail:
        ++result.failures;
        if (jobs[i].info.kind == CheckKind::Exact) ++result.exact_failures;
        break;
      case Verdict::Indeterminate: ++result.indeterminates; break;
    }
  }
  return result;
}

std::string SuiteResult::json_lines() const {
  std::string out;
  for (const auto& r : reports) {
    out += r.to_json().dump();
    out += '\n';
  }
  return out;
}

std::string SuiteResult::csv() const {
  std::string out = CheckReport::csv_header();
  out += '\n';
  for (const auto& r : reports) {
    out += r.csv_row();
    out += '\n';
  }
  return out;
}

}  // namespace avsec
