#include <doctest.h>

#include <cmath>
#include <numbers>

#include "avsec/body.hpp"
#include "avsec/sampling.hpp"

using namespace avsec;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Direction dir(std::initializer_list<double> xs) { return Direction::normalized(vec(xs)); }

std::vector<Body> canonical_suite(int n) {
  std::vector<Body> bodies = {
      Body::ball(n, 1.0),          Body::cube(n, 0.5),
      Body::cross_polytope(n, 1.0), Body::regular_simplex(n),
      Body::lp_ball(n, 1.5, 1.0),  Body::lp_ball(n, 3.0, 1.0),
  };
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = i + 1.0;
  bodies.push_back(Body::ellipsoid(m));
  RngStream rng(999, n);
  bodies.push_back(linear_image(random_rotation(n, rng), Body::cube(n, 0.5)));
  return bodies;
}

}  // namespace

TEST_CASE("contains on the canonical examples") {
  CHECK(Body::cube(3, 0.5).contains(vec({0.4, 0.0, 0.0})));
  CHECK_FALSE(Body::ball(3, 1.0).contains(vec({1.0000001, 0.0, 0.0})));
  const Body scaled = linear_image(2.0 * Matrix::Identity(3, 3), Body::ball(3, 1.0));
  CHECK(scaled.contains(vec({1.5, 0.0, 0.0})));
  CHECK_THROWS_AS(Body::ball(3, 1.0).contains(vec({1.0, 0.0})), std::invalid_argument);
}

TEST_CASE("radial closed forms") {
  CHECK(Body::cube(3, 0.5).radial(dir({1, 0, 0})) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(Body::cube(4, 0.5).radial(dir({1, 1, 1, 1})) == doctest::Approx(1.0).epsilon(1e-14));
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 4.0;
  CHECK(Body::ellipsoid(m).radial(dir({0, 1})) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(Body::cross_polytope(3, 1.0).radial(dir({1, 1, 1})) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(Body::lp_ball(3, 3.0, 2.0).radial(dir({1, 0, 0})) == doctest::Approx(2.0));
}

TEST_CASE("support closed forms") {
  CHECK(Body::ball(5, 1.7).support(dir({1, 2, 0, 1, -1})) == doctest::Approx(1.7));
  CHECK(Body::cube(3, 0.5).support(dir({1, 1, 1})) ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(Body::cross_polytope(2, 1.0).support(dir({1, 1})) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("circumradius and inradius closed forms") {
  CHECK(Body::cube(4, 0.5).circumradius() == doctest::Approx(1.0));
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0 / 9.0;
  CHECK(Body::ellipsoid(m).circumradius() == doctest::Approx(3.0));
  CHECK(Body::ball(2, 2.0).circumradius() == doctest::Approx(2.0));
  CHECK(Body::cube(7, 0.5).inradius() == doctest::Approx(0.5));
  CHECK(Body::cross_polytope(3, 1.0).inradius() ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(Body::ball(3, 2.0).inradius() == doctest::Approx(2.0));
  CHECK(Body::regular_simplex(4).circumradius() == doctest::Approx(1.0));
  CHECK(Body::regular_simplex(4).inradius() == doctest::Approx(0.25));
}

TEST_CASE("linear image oracle identities") {
  const int n = 3;
  RngStream rng(7, 0);
  const Body cube = Body::cube(n, 0.5);

  const Body ident = linear_image(Matrix::Identity(n, n), cube);
  for (int i = 0; i < 200; ++i) {
    const Direction t = sphere_point(n, rng);
    CHECK(ident.radial(t) == doctest::Approx(cube.radial(t)).epsilon(1e-13));
  }

  const Body twice = linear_image(2.0 * Matrix::Identity(n, n), Body::ball(n, 1.0));
  for (int i = 0; i < 50; ++i)
    CHECK(twice.radial(sphere_point(n, rng)) == doctest::Approx(2.0).epsilon(1e-13));

  const Matrix rot = random_rotation(n, rng);
  const Body rotated = linear_image(rot, cube);
  for (int i = 0; i < 200; ++i) {
    const Direction t = sphere_point(n, rng);
    const Vector x = rotated.radial(t) * t.vec();
    CHECK(cube.contains(rot.inverse() * x * (1.0 - 1e-9)));
  }
  CHECK(rotated.exact_volume().value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(linear_image(Matrix::Zero(n, n), cube), std::invalid_argument);
}

TEST_CASE("boundary sandwich for every variant") {
  for (int n : {2, 3, 5}) {
    for (const Body& body : canonical_suite(n)) {
      RngStream rng(11, n);
      for (int i = 0; i < 1000; ++i) {
        const Direction t = sphere_point(n, rng);
        const double rho = body.radial(t);
        REQUIRE(rho > 0.0);
        REQUIRE(body.contains((1.0 - 1e-9) * rho * t.vec()));
        REQUIRE_FALSE(body.contains((1.0 + 1e-6) * rho * t.vec()));
      }
    }
  }
}

TEST_CASE("support dominates radial on convex bodies") {
  for (int n : {2, 4}) {
    for (const Body& body : canonical_suite(n)) {
      if (!body.has_support()) continue;
      RngStream rng(13, n);
      for (int i = 0; i < 500; ++i) {
        const Direction t = sphere_point(n, rng);
        CHECK(body.support(t) >= body.radial(t) * (1.0 - 1e-12));
      }
    }
  }
}

TEST_CASE("sections of the ball are balls") {
  const int n = 5;
  RngStream rng(17, 0);
  const Body ball = Body::ball(n, 1.0);
  for (int i = 0; i < 100; ++i) {
    const int m = 2 + static_cast<int>(rng.next_u64() % std::uint64_t(n - 2));
    const Subspace e = grassmann_subspace(n, m, rng);
    const Body sec = section_body(ball, e);
    REQUIRE(sec.dim() == m);
    for (int j = 0; j < 10; ++j)
      CHECK(sec.radial(sphere_point(m, rng)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("coordinate section of the cube is a cube") {
  const Body cube = Body::cube(3, 0.5);
  const Body sec = section_body(cube, Subspace::span_of_axes(3, {0, 1}));
  CHECK(sec.type() == BodyType::Cube);
  CHECK(sec.dim() == 2);
  CHECK(sec.exact_volume().value() == doctest::Approx(1.0));
}

TEST_CASE("ellipsoid sections restrict the quadratic form") {
  const int n = 4;
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = i + 1.0;
  const Body ell = Body::ellipsoid(m);
  RngStream rng(19, 0);
  const Subspace e = grassmann_subspace(n, 2, rng);
  const Body sec = section_body(ell, e);
  CHECK(sec.type() == BodyType::Ellipsoid);
  const Matrix restricted = e.basis().transpose() * m * e.basis();
  for (int i = 0; i < 100; ++i) {
    const Direction phi = sphere_point(2, rng);
    const double expected = 1.0 / std::sqrt(phi.vec().dot(restricted * phi.vec()));
    CHECK(sec.radial(phi) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("general cube sections become exact H-polytopes") {
  const int n = 4;
  RngStream rng(23, 0);
  const Body cube = Body::cube(n, 0.5);
  const Subspace e = grassmann_subspace(n, 2, rng);
  const Body sec = section_body(cube, e);
  CHECK(sec.type() == BodyType::HPolytope);
  for (int i = 0; i < 200; ++i) {
    const Direction phi = sphere_point(2, rng);
    const double rho = sec.radial(phi);
    const Vector lifted = e.basis() * (rho * phi.vec());
    CHECK(cube.contains(lifted * (1.0 - 1e-9)));
    CHECK_FALSE(cube.contains(lifted * (1.0 + 1e-6)));
  }
}

TEST_CASE("radial sums compose pointwise") {
  const int n = 3;
  RngStream rng(29, 0);
  const Body b12 = radial_sum(Body::ball(n, 1.0), Body::ball(n, 2.0));
  for (int i = 0; i < 20; ++i)
    CHECK(b12.radial(sphere_point(n, rng)) == doctest::Approx(3.0).epsilon(1e-13));

  const Body cube = Body::cube(n, 0.5);
  const Body cc = radial_sum(cube, cube);
  const Body eps = radial_sum(cube, Body::ball(n, 0.25));
  for (int i = 0; i < 1000; ++i) {
    const Direction t = sphere_point(n, rng);
    CHECK(cc.radial(t) == doctest::Approx(2.0 * cube.radial(t)).epsilon(1e-13));
    CHECK(eps.radial(t) == doctest::Approx(cube.radial(t) + 0.25).epsilon(1e-13));
  }

  // commutativity and associativity at the oracle level
  const Body cross = Body::cross_polytope(n, 1.0);
  const Body ab = radial_sum(cube, cross), ba = radial_sum(cross, cube);
  const Body a_bc = radial_sum(cube, radial_sum(cross, b12));
  const Body ab_c = radial_sum(radial_sum(cube, cross), b12);
  for (int i = 0; i < 1000; ++i) {
    const Direction t = sphere_point(n, rng);
    CHECK(ab.radial(t) == doctest::Approx(ba.radial(t)).epsilon(1e-14));
    CHECK(a_bc.radial(t) == doctest::Approx(ab_c.radial(t)).epsilon(1e-14));
  }
}

TEST_CASE("radial distance examples") {
  const int n = 2;
  const Body cube = Body::cube(n, 0.5);
  const Body ball_half = Body::ball(n, 0.5);
  CHECK(radial_distance(cube, cube, 1000, RngStream(1, 0)) == doctest::Approx(0.0));
  CHECK(radial_distance(Body::ball(n, 1.0), Body::ball(n, 2.0), 1000, RngStream(1, 1)) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // oracle: maximize |0.5 / max(|cos|,|sin|) - 0.5| over the circle by scan
  double expected = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double phi = i * (std::numbers::pi / 2) / 200000.0;
    const double rho = 0.5 / std::max(std::abs(std::cos(phi)), std::abs(std::sin(phi)));
    expected = std::max(expected, std::abs(rho - 0.5));
  }
  CHECK(expected == doctest::Approx((std::sqrt(2.0) - 1.0) / 2.0).epsilon(1e-9));
  const double got = radial_distance(cube, ball_half, 2000, RngStream(1, 2));
  CHECK(got == doctest::Approx(expected).epsilon(1e-6));
  CHECK(got <= expected * (1.0 + 1e-9));  // sampled sup is a lower bound
}

TEST_CASE("bisection fallback agrees with closed forms") {
  const int n = 4;
  RngStream rng(31, 0);
  for (const Body& body : canonical_suite(n)) {
    for (int i = 0; i < 25; ++i) {
      const Direction t = sphere_point(n, rng);
      const double via_bisect = radial_by_bisection(
          [&](const Vector& x) { return body.contains(x); }, t, 1.0);
      CHECK(via_bisect == doctest::Approx(body.radial(t)).epsilon(1e-11));
    }
  }
}

TEST_CASE("h-polytope radial and symmetry detection") {
  // the unit square as an H-polytope
  Matrix a(4, 2);
  a << 1, 0, -1, 0, 0, 1, 0, -1;
  Vector b = Vector::Constant(4, 0.5);
  const Body square = Body::h_polytope(a, b);
  const Body cube = Body::cube(2, 0.5);
  RngStream rng(37, 0);
  for (int i = 0; i < 300; ++i) {
    const Direction t = sphere_point(2, rng);
    CHECK(square.radial(t) == doctest::Approx(cube.radial(t)).epsilon(1e-13));
  }
  CHECK(square.is_origin_symmetric());
  CHECK(square.inradius() == doctest::Approx(0.5));
  CHECK_FALSE(square.has_support());
  CHECK_THROWS_AS(square.support(dir({1, 0})), std::domain_error);

  // a slab is unbounded along e2
  Matrix slab(2, 2);
  slab << 1, 0, -1, 0;
  const Body unbounded = Body::h_polytope(slab, Vector::Constant(2, 1.0));
  CHECK_THROWS_AS(unbounded.radial(dir({0, 1})), std::domain_error);

  // offsets must keep the origin interior
  CHECK_THROWS_AS(Body::h_polytope(a, vec({0.5, -0.5, 0.5, 0.5})), std::invalid_argument);
}

TEST_CASE("regular simplex embedding") {
  for (int n : {2, 3, 5, 7}) {
    const Body simplex = Body::regular_simplex(n);
    const auto vs = simplex.vertices().value();
    REQUIRE(static_cast<int>(vs.size()) == n + 1);
    Vector sum = Vector::Zero(n);
    for (const auto& v : vs) {
      CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
      sum += v;
    }
    CHECK(sum.norm() < 1e-12);
    // pairwise inner products of a regular simplex with unit circumradius
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        CHECK(vs[i].dot(vs[j]) == doctest::Approx(-1.0 / n).epsilon(1e-10));
    CHECK(simplex.contains(Vector::Zero(n)));
    CHECK(simplex.is_centered());
    CHECK_FALSE(simplex.is_origin_symmetric());
  }
}

TEST_CASE("translation is exact for facet bodies") {
  const Body cube = Body::cube(3, 0.5);
  const Vector t = vec({0.1, -0.05, 0.2});
  const Body moved = cube.translated(t);
  RngStream rng(41, 0);
  for (int i = 0; i < 300; ++i) {
    Vector x(3);
    for (int j = 0; j < 3; ++j) x[j] = rng.uniform() * 1.4 - 0.7;
    CHECK(moved.contains(x) == cube.contains(x - t));
  }
  CHECK_THROWS_AS(Body::ball(3, 1.0).translated(t), std::domain_error);
}

TEST_CASE("json round trip preserves the oracles") {
  const int n = 3;
  RngStream rng(43, 0);
  std::vector<Body> bodies = canonical_suite(n);
  bodies.push_back(section_body(bodies[0], grassmann_subspace(n, 2, rng)));
  bodies.push_back(radial_sum(bodies[1], bodies[2]));
  for (const Body& body : bodies) {
    const Body back = Body::from_json(body.to_json());
    REQUIRE(back.dim() == body.dim());
    REQUIRE(back.type() == body.type());
    RngStream draws(47, 0);
    for (int i = 0; i < 50; ++i) {
      const Direction t = sphere_point(body.dim(), draws);
      CHECK(back.radial(t) == doctest::Approx(body.radial(t)).epsilon(1e-13));
    }
  }
}

TEST_CASE("numeric radius search brackets the square") {
  // H-polytope square: no vertex list, so the circumradius is searched
  Matrix a(4, 2);
  a << 1, 0, -1, 0, 0, 1, 0, -1;
  const Body square = Body::h_polytope(a, Vector::Constant(4, 0.5));
  CHECK(square.radii_numeric());
  const double r = square.circumradius();
  const double exact = std::sqrt(2.0) / 2.0;
  CHECK(r <= exact * (1.0 + 1e-12));  // sampled max is a lower bound
  CHECK(r == doctest::Approx(exact).epsilon(1e-6));
  CHECK(square.circumradius_upper() >= exact);
  // the same search runs twice identically (pure function of the body)
  CHECK(square.circumradius() == r);
}

TEST_CASE("linear image support matches the vertex oracle") {
  const int n = 3;
  RngStream rng(53, 0);
  Matrix t(n, n);
  t << 1.2, 0.3, 0.0, -0.1, 0.9, 0.2, 0.0, 0.1, 1.4;
  const Body image = linear_image(t, Body::cube(n, 0.5));
  const auto verts = image.vertices().value();
  for (int i = 0; i < 200; ++i) {
    const Direction d = sphere_point(n, rng);
    double by_vertices = -1e300;
    for (const auto& v : verts) by_vertices = std::max(by_vertices, v.dot(d.vec()));
    CHECK(image.support(d) == doctest::Approx(by_vertices).epsilon(1e-12));
  }
}

TEST_CASE("sections of ellipsoid images stay exact ellipsoids") {
  const int n = 4;
  RngStream rng(59, 0);
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = i + 1.0;
  Matrix t(n, n);
  t.setIdentity();
  t(0, 1) = 0.5;
  t(2, 3) = -0.3;
  const Body image = linear_image(t, Body::ellipsoid(m));
  REQUIRE(image.is_ellipsoidal());
  const Subspace e = grassmann_subspace(n, 2, rng);
  const Body sec = section_body(image, e);
  CHECK(sec.type() == BodyType::Ellipsoid);
  CHECK(sec.exact_volume().has_value());
  for (int i = 0; i < 100; ++i) {
    const Direction phi = sphere_point(2, rng);
    const Vector lifted = sec.radial(phi) * (e.basis() * phi.vec());
    CHECK(image.contains(lifted * (1.0 - 1e-9)));
    CHECK_FALSE(image.contains(lifted * (1.0 + 1e-6)));
  }
}

TEST_CASE("invalid bodies are rejected") {
  CHECK_THROWS_AS(Body::ball(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Body::cube(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Body::lp_ball(3, 0.5, 1.0), std::invalid_argument);
  Matrix asym(2, 2);
  asym << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(Body::ellipsoid(asym), std::invalid_argument);
  Matrix indef(2, 2);
  indef << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(Body::ellipsoid(indef), std::invalid_argument);
}
