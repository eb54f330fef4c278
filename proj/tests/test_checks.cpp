#include <doctest.h>

#include <cmath>

#include "avsec/checks.hpp"
#include "avsec/constants.hpp"

using namespace avsec;

namespace {

CheckBudgets light_budgets() {
  CheckBudgets b;
  b.samples = 20000;
  b.section_samples = 1500;
  b.subspaces = 48;
  b.refine = 20;
  b.points = 20000;
  b.pairs = 6;
  return b;
}

Matrix diag(std::initializer_list<double> ds) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(ds.size()),
                          static_cast<Eigen::Index>(ds.size()));
  Eigen::Index i = 0;
  for (double d : ds) m(i, i) = d, ++i;
  return m;
}

}  // namespace

TEST_CASE("registry is populated and queryable") {
  CHECK(check_registry().size() >= 30);
  CHECK(check_info("meyer").kind == CheckKind::Exact);
  CHECK(check_info("rk-invariance").kind == CheckKind::Invariance);
  CHECK(check_info("gamma-witness").kind == CheckKind::Empirical);
  CHECK_THROWS_AS(check_info("nope"), std::invalid_argument);
}

TEST_CASE("ball equality is exact") {
  for (int n : {3, 5, 8}) {
    const CheckReport rep = check_exact("ball-equality-1.3", Body::ball(n, 1.0), {},
                                        light_budgets(), RngStream(1, n));
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(std::abs(rep.slack) <= 1e-12 * std::max(1.0, rep.rhs.value));
    CHECK(rep.lhs.exact);
    CHECK(rep.rhs.exact);
  }
  CHECK_THROWS_AS(check_exact("ball-equality-1.3", Body::cube(3, 0.5), {}, light_budgets(),
                              RngStream(1, 0)),
                  std::invalid_argument);
}

TEST_CASE("meyer on the cube gives the printed margin") {
  const int n = 4;
  const CheckReport rep =
      check_exact("meyer", Body::cube(n, 0.5), {}, light_budgets(), RngStream(2, 0));
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.lhs.value == doctest::Approx(3.0 / 32.0).epsilon(1e-12));  // 4!/4^4
  CHECK(rep.rhs.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("holder chain never fails on star bodies") {
  CheckParams p;
  p.k = 2;
  const CheckReport rep = check_exact("holder-bgl11", Body::cross_polytope(4, 1.0), p,
                                      light_budgets(), RngStream(3, 0));
  CHECK(rep.verdict != Verdict::Fail);
  CHECK(rep.slack >= -3.0 * combined_stderr(rep.lhs, rep.rhs));
}

TEST_CASE("exact registry passes at the ball equality cases") {
  // every inequality with a ball equality case must come back pass with se=0
  const Body ball = Body::ball(4, 1.0);
  CheckParams p;
  p.k = 1;
  for (const char* id : {"thm-1.3-bp", "thm-1.2-bp", "grinberg-bound", "m-jensen",
                         "lemma-5.3-explicit", "dual-minkowski"}) {
    const CheckReport rep = check_exact(id, ball, p, light_budgets(), RngStream(4, 1));
    INFO(id);
    CHECK(rep.verdict == Verdict::Pass);
  }
}

TEST_CASE("ellipsoidal-class inequalities hold on eccentric ellipsoids") {
  const Body ell = Body::ellipsoid(diag({1.0, 2.0, 3.0, 4.0}));
  CheckParams p;
  p.k = 1;
  for (const char* id : {"thm-1.3-bp", "thm-1.2-bp"}) {
    const CheckReport rep = check_exact(id, ell, p, light_budgets(), RngStream(5, 7));
    INFO(id);
    CHECK(rep.verdict != Verdict::Fail);
  }
  CheckParams pr;
  pr.k = 1;
  pr.r = 2;
  const Body ell5 = Body::ellipsoid(diag({1.0, 1.5, 2.0, 2.5, 3.0}));
  const CheckReport rep15 = check_exact("thm-1.5-bp", ell5, pr, light_budgets(), RngStream(5, 8));
  CHECK(rep15.verdict != Verdict::Fail);
  // the class gate rejects polytopes
  CHECK_THROWS_AS(check_exact("thm-1.3-bp", Body::cube(4, 0.5), p, light_budgets(),
                              RngStream(5, 9)),
                  std::invalid_argument);
}

TEST_CASE("density variants of the weighted inequality") {
  const Body ell = Body::ellipsoid(diag({1.0, 2.0, 3.0}));
  for (const Density& f : {Density::one(), Density::norm_power(2.0), Density::gaussian(1.0)}) {
    CheckParams p;
    p.k = 1;
    p.density = f;
    const CheckReport rep = check_exact("thm-1.2-bp", ell, p, light_budgets(), RngStream(6, 0));
    INFO(f.name());
    CHECK(rep.verdict != Verdict::Fail);
  }
}

TEST_CASE("dmx identity couples the two estimators") {
  CheckParams p;
  p.k = 1;
  const CheckReport rep = check_exact("dmx-identity", Body::cube(4, 0.5), p, light_budgets(),
                                      RngStream(7, 0));
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.params.contains("hyperplane_gap"));
}

TEST_CASE("grinberg bound on polytopes") {
  CheckParams p;
  p.k = 1;
  // the cube at n=5 sits clearly inside the bound
  const CheckReport cube = check_exact("grinberg-bound", Body::cube(5, 0.5), p,
                                       light_budgets(), RngStream(8, 1));
  CHECK(cube.verdict == Verdict::Pass);
  // at low dimension the bound is near-tight (equality for every symmetric
  // body once the sections are chords), so the noise band is legitimate
  p.k = 2;
  const CheckReport tight = check_exact("grinberg-bound", Body::cube(3, 0.5), p,
                                        light_budgets(), RngStream(8, 0));
  CHECK(tight.verdict != Verdict::Fail);
  const double se = combined_stderr(tight.lhs, tight.rhs);
  if (tight.verdict == Verdict::Indeterminate) CHECK(std::abs(tight.slack) < 3.0 * se);
}

TEST_CASE("rk invariance within five percent") {
  CheckParams p;
  p.k = 1;
  CheckBudgets b = light_budgets();
  b.subspaces = 512;
  const CheckReport rep = run_check("rk-invariance", Body::cube(4, 0.5), p, b, RngStream(9, 0));
  CHECK(rep.verdict == Verdict::Pass);
  const double rel = std::abs(rep.rhs.value - rep.lhs.value) / rep.lhs.value;
  CHECK(rel <= 0.05);
}

TEST_CASE("ik equivariance is exact for ellipsoids under diagonal maps") {
  const Body ell = Body::ellipsoid(diag({1.0, 2.0, 3.0}));
  const Matrix t = diag({2.0, 1.0, 0.5});
  const CheckReport rep =
      check_invariance("ik-equivariance", ell, t, {}, light_budgets(), RngStream(10, 0));
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(combined_stderr(rep.lhs, rep.rhs) == 0.0);
  CHECK(std::abs(rep.rhs.value - rep.lhs.value) <=
        1e-10 * std::max(1.0, std::abs(rep.lhs.value)));
}

TEST_CASE("ik equivariance within noise on polytopes") {
  Matrix t(3, 3);
  t << 1.2, 0.1, 0.0, 0.0, 0.9, 0.0, 0.1, 0.0, 1.1;
  CheckBudgets b = light_budgets();
  b.section_samples = 20000;
  const CheckReport rep =
      check_invariance("ik-equivariance", Body::cube(3, 0.5), t, {}, b, RngStream(11, 0));
  CHECK(rep.verdict == Verdict::Pass);
}

TEST_CASE("lk invariance on the exact path is machine precision") {
  RngStream rot_rng(12, 0);
  const Matrix rot = random_rotation(4, rot_rng);
  const CheckReport rep = check_invariance("lk-invariance", Body::cube(4, 0.5), rot, {},
                                           light_budgets(), RngStream(12, 1));
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(std::abs(rep.rhs.value - rep.lhs.value) <= 1e-12);
}

TEST_CASE("gamma witness of the ball matches the sharp constant") {
  for (int n : {3, 4}) {
    CheckParams p;
    p.k = 1;
    const CheckReport rep =
        estimate_constant("gamma-witness", Body::ball(n, 1.0), p, light_budgets(),
                          RngStream(13, n));
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.empirical_constant.value() ==
          doctest::Approx(constants::b(n, 1)).epsilon(0.02));
  }
}

TEST_CASE("coordinate-mode local inequality on the cube needs no constant") {
  for (int n : {3, 4, 6}) {
    CheckParams p;
    p.k = 1;
    p.mode = "coordinate";
    const CheckReport rep = estimate_constant("lemma-4.1-c0", Body::cube(n, 0.5), p,
                                              light_budgets(), RngStream(14, n));
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.empirical_constant.value() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("uniform cover constants on the cube") {
  CheckParams p;
  p.k = 2;
  const CheckReport t2s1 = estimate_constant("uniform-cover-c0", Body::cube(5, 0.5), p,
                                             light_budgets(), RngStream(15, 0));
  CHECK(t2s1.verdict == Verdict::Pass);
  CHECK(t2s1.empirical_constant.value() == doctest::Approx(0.5).epsilon(1e-9));

  p.mode = "loomis_whitney";
  const CheckReport lw = estimate_constant("uniform-cover-c0", Body::cube(5, 0.5), p,
                                           light_budgets(), RngStream(15, 1));
  CHECK(lw.verdict == Verdict::Pass);
  CHECK(lw.empirical_constant.value() ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));  // (s/t) ratio at equality
}

TEST_CASE("isotropic ratio windows on the cube") {
  const CheckReport rep = estimate_constant("prop-4.3-ratios", Body::cube(4, 0.5), {},
                                            light_budgets(), RngStream(16, 0));
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.params.at("as_times_L").get<double>() > 0.05);
  CHECK(rep.params.at("as_times_L").get<double>() < 20.0);
  CHECK(rep.params.at("as_section_times_L2").get<double>() > 0.05);
  CHECK(rep.params.at("as_section_times_L2").get<double>() < 20.0);
}

TEST_CASE("remaining empirical constants are finite and windowed") {
  CheckParams p;
  p.k = 1;
  const Body cube = Body::cube(4, 0.5);
  for (const char* id : {"thm-1.6-c2", "thm-4.2-c2", "dp-lower-c4", "thm-5.4-c", "thm-1.8",
                         "thm-1.9-c6", "remark-5.7-iso", "thm-4.6"}) {
    const CheckReport rep = estimate_constant(id, cube, p, light_budgets(), RngStream(17, 0));
    INFO(id);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(std::isfinite(rep.empirical_constant.value()));
  }
  const CheckReport m_res = estimate_constant("m-restriction-c", Body::cross_polytope(4, 1.0), p,
                                              light_budgets(), RngStream(17, 1));
  CHECK(m_res.verdict == Verdict::Pass);
  const CheckReport c14 = estimate_constant("thm-1.4-c1", Body::cross_polytope(4, 1.0), p,
                                            light_budgets(), RngStream(17, 2));
  CHECK(c14.verdict == Verdict::Pass);
}

TEST_CASE("class gating rejects out-of-class bodies") {
  CheckParams p;
  p.k = 1;
  // simplex is centered but not symmetric
  CHECK_THROWS_AS(estimate_constant("m-restriction-c", Body::regular_simplex(4), p,
                                    light_budgets(), RngStream(18, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      check_exact("thm-1.2-bp", Body::regular_simplex(4), p, light_budgets(), RngStream(18, 1)),
      std::invalid_argument);
  // meyer accepts the simplex (centered convex)
  const CheckReport rep =
      check_exact("meyer", Body::regular_simplex(4), p, light_budgets(), RngStream(18, 2));
  CHECK(rep.verdict != Verdict::Fail);
}

TEST_CASE("radon transform conventions") {
  const int n = 5, k = 2;
  RngStream rng(19, 0);
  const Subspace e = grassmann_subspace(n, n - k, rng);
  const int m = n - k;

  const Estimate unit = radon_transform([](const Vector&) { return 1.0; }, e, 1000,
                                        RngStream(19, 1));
  CHECK(unit.value == doctest::Approx(m * constants::omega(m)).epsilon(1e-12));
  CHECK(unit.std_error <= 1e-10);

  // rho^{n-k-1} integrates to as(K cap E) up to the mass convention
  const Body cube = Body::cube(n, 0.5);
  const Estimate lhs = radon_transform(
      [&](const Vector& theta) {
        return std::pow(cube.radial(Direction::normalized(theta)), n - k - 1);
      },
      e, 100000, RngStream(19, 2));
  const Estimate as_e = avg_section_in_subspace(cube, e, 100000, RngStream(19, 3));
  const double mass = m * constants::omega(m);
  // as(K cap E) = omega_{m-1} * mean(rho^{m-1}); lhs = mass * mean(rho^{m-1})
  const Estimate expected = as_e.scaled(mass / constants::omega(m - 1));
  CHECK(std::abs(lhs.value - expected.value) <= 3.0 * combined_stderr(lhs, expected));

  // squared coordinate averages to 1/m for u inside E
  const Vector u = e.basis().col(0);
  const Estimate sq = radon_transform(
      [&](const Vector& theta) {
        const double c = theta.dot(u);
        return c * c;
      },
      e, 200000, RngStream(19, 4));
  CHECK(std::abs(sq.value - mass / m) <= 3.0 * sq.std_error);
}

TEST_CASE("gamma witness is stable under a doubled subspace budget") {
  const Body cube = Body::cube(3, 0.5);
  const Estimate g1 = gamma_witness(cube, 1, 64, 3000, 40, RngStream(21, 0));
  const Estimate g2 = gamma_witness(cube, 1, 128, 3000, 40, RngStream(21, 1));
  CHECK(std::abs(g1.value - g2.value) <= 2.0 * combined_stderr(g1, g2));
}

TEST_CASE("witness ordering is concordant with the quermassintegral table") {
  // gamma <= c / alpha with alpha the per-body R_k^{1/(kn)}: the product
  // gamma * alpha stays order-one across the small suite
  for (int n : {3, 4}) {
    for (const Body& body : {Body::cube(n, 0.5), Body::cross_polytope(n, 1.0)}) {
      const Estimate g = gamma_witness(body, 1, 48, 1500, 20, RngStream(22, n));
      const Estimate rk = dual_quermass_R(body, 1, 256, 1500, RngStream(23, n));
      const double alpha = std::pow(rk.value, 1.0 / n);
      INFO(body.type_name(), " n=", n, " gamma*alpha=", g.value * alpha);
      CHECK(g.value * alpha > 0.1);
      CHECK(g.value * alpha < 3.0);
    }
  }
}

TEST_CASE("report serialization round trips") {
  CheckParams p;
  p.k = 1;
  const CheckReport rep =
      check_exact("m-jensen", Body::cube(3, 0.5), p, light_budgets(), RngStream(20, 0));
  const CheckReport back = CheckReport::from_json(rep.to_json());
  CHECK(back.check_id == rep.check_id);
  CHECK(back.slack == rep.slack);
  CHECK(back.verdict == rep.verdict);
  CHECK(back.lhs.value == rep.lhs.value);
  CHECK(back.rhs.std_error == rep.rhs.std_error);
  CHECK(back.to_json() == rep.to_json());
  CHECK(CheckReport::csv_header().rfind("check,", 0) == 0);
  CHECK(rep.csv_row().rfind("m-jensen,", 0) == 0);
}
