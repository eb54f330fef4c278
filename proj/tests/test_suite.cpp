#include <doctest.h>

#include <sstream>

#include "avsec/suite.hpp"

using namespace avsec;

namespace {

SuiteConfig tiny_config() {
  SuiteConfig cfg;
  cfg.bodies = {named_body_template("ball"), named_body_template("cube")};
  cfg.dims = {3};
  cfg.ks = {1};
  cfg.rs = {1};
  cfg.budgets.samples = 4000;
  cfg.budgets.section_samples = 500;
  cfg.budgets.subspaces = 16;
  cfg.budgets.refine = 5;
  cfg.budgets.points = 4000;
  cfg.budgets.pairs = 3;
  cfg.seed = 11;
  cfg.include_rotations = false;
  return cfg;
}

}  // namespace

TEST_CASE("config round trips through json") {
  const SuiteConfig cfg = SuiteConfig::default_config();
  const SuiteConfig back = SuiteConfig::from_json(cfg.to_json());
  CHECK(back.to_json() == cfg.to_json());
  CHECK(back.bodies.size() == 7);
  CHECK_THROWS_AS(SuiteConfig::from_json({{"dims", {2}}}), std::invalid_argument);
}

TEST_CASE("named templates instantiate at any dimension") {
  for (const auto& name : known_body_names()) {
    const Body b = instantiate_body(named_body_template(name), 4);
    CHECK(b.dim() == 4);
  }
  CHECK_THROWS_AS(named_body_template("torus"), std::invalid_argument);
  const Body ell = instantiate_body(named_body_template("ellipsoid"), 5);
  CHECK(ell.exact_volume().value() ==
        doctest::Approx(Body::ball(5, 1.0).exact_volume().value()).epsilon(1e-9));
}

TEST_CASE("suite runs and reports deterministically at any job count") {
  const SuiteConfig cfg = tiny_config();
  SuiteConfig c1 = cfg, c2 = cfg, c4 = cfg;
  c1.jobs = 1;
  c2.jobs = 2;
  c4.jobs = 4;
  const SuiteResult r1 = run_suite(c1);
  const SuiteResult r2 = run_suite(c2);
  const SuiteResult r4 = run_suite(c4);
  REQUIRE(!r1.reports.empty());
  CHECK(r1.json_lines() == r2.json_lines());
  CHECK(r1.json_lines() == r4.json_lines());
  CHECK(r1.csv() == r2.csv());
}

TEST_CASE("tiny suite has no exact failures") {
  const SuiteResult r = run_suite(tiny_config());
  for (const auto& rep : r.reports) {
    INFO(rep.check_id, " on ", rep.body.dump(), " note=", rep.note);
    CHECK(rep.verdict != Verdict::Fail);
  }
  CHECK(r.exact_failures == 0);
  CHECK(r.passes + r.failures + r.indeterminates == static_cast<int>(r.reports.size()));
}

TEST_CASE("json lines parse back into reports losslessly") {
  const SuiteResult r = run_suite(tiny_config());
  std::istringstream in(r.json_lines());
  std::string line;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    const CheckReport rep = CheckReport::from_json(nlohmann::json::parse(line));
    CHECK(rep.to_json() == r.reports[count].to_json());
    ++count;
  }
  CHECK(count == r.reports.size());
}

TEST_CASE("empty body list yields an empty report") {
  SuiteConfig cfg = tiny_config();
  cfg.bodies.clear();
  const SuiteResult r = run_suite(cfg);
  CHECK(r.reports.empty());
  CHECK(r.exact_failures == 0);
}

TEST_CASE("check filter restricts the registry") {
  SuiteConfig cfg = tiny_config();
  cfg.checks = {"m-jensen", "meyer"};
  const SuiteResult r = run_suite(cfg);
  for (const auto& rep : r.reports)
    CHECK((rep.check_id == "m-jensen" || rep.check_id == "meyer"));
  CHECK(!r.reports.empty());
}
