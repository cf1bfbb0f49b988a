#include <doctest.h>

#include <cmath>
#include <random>

#include "polyheis/heisenberg.hpp"
#include "test_util.hpp"

using namespace polyheis;
using namespace polyheis_test;

namespace {

HeisPoint random_point(std::mt19937_64& rng, double range = 2.0) {
  std::uniform_real_distribution<double> unif(-range, range);
  return {unif(rng), unif(rng), unif(rng)};
}

bool close(const HeisPoint& p, const HeisPoint& q, double tol = 1e-12) {
  return std::abs(p.x - q.x) <= tol && std::abs(p.y - q.y) <= tol &&
         std::abs(p.z - q.z) <= tol;
}

}  // namespace

TEST_CASE("group law and inverses") {
  const HeisPoint a(1, 0, 0), b(0, 1, 0);
  const HeisPoint ab = multiply(a, b);
  CHECK(close(ab, {1, 1, 0.5}));
  const HeisPoint ba = multiply(b, a);
  CHECK(close(ba, {1, 1, -0.5}));

  std::mt19937_64 rng(42);
  for (int t = 0; t < 100; ++t) {
    const HeisPoint p = random_point(rng), q = random_point(rng), r = random_point(rng);
    CHECK(close(multiply(p, p.inverse()), {0, 0, 0}, 1e-12));
    CHECK(close(multiply(multiply(p, q), r), multiply(p, multiply(q, r)), 1e-12));
  }
}

TEST_CASE("dilations are automorphisms and homogeneous") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lam_dist(0.1, 3.0);
  for (int t = 0; t < 100; ++t) {
    const HeisPoint p = random_point(rng), q = random_point(rng);
    const double lam = lam_dist(rng);
    CHECK(close(dilate(lam, multiply(p, q)), multiply(dilate(lam, p), dilate(lam, q)), 1e-12));
    CHECK(close(dilate(1.0 / lam, dilate(lam, p)), p, 1e-10));
  }
  CHECK_THROWS_AS(dilate(0.0, HeisPoint(1, 0, 0)), Error);
  CHECK_THROWS_AS(dilate(-1.0, HeisPoint(1, 0, 0)), Error);
}

TEST_CASE("balayage area and lift") {
  // Unit square loop swept anticlockwise: area 1.
  PlanarPolyline loop;
  loop.points = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}};
  CHECK(balayage_area(loop) == doctest::Approx(1.0).epsilon(1e-12));

  const auto lifted = lift(loop, 0.25);
  REQUIRE(lifted.size() == loop.points.size());
  CHECK(lifted.front().z == doctest::Approx(0.25));
  CHECK(lifted.back().z == doctest::Approx(1.25));
  for (std::size_t k = 0; k < lifted.size(); ++k) {
    CHECK(lifted[k].x == doctest::Approx(loop.points[k].x));
    CHECK(lifted[k].y == doctest::Approx(loop.points[k].y));
  }

  // The lift of a straight segment from the origin gains no height.
  PlanarPolyline seg;
  seg.points = {{0, 0}, {0.7, 0.3}};
  CHECK(balayage_area(seg) == doctest::Approx(0.0));

  // Lift increments are products in the group: successive points satisfy
  // p_{k+1} = p_k * (0-based planar step with zero z).
  PlanarPolyline path;
  path.points = {{0, 0}, {1, 0.2}, {0.4, 1.3}, {-0.5, 0.9}};
  const auto lp = lift(path, 0.0);
  for (std::size_t k = 0; k + 1 < lp.size(); ++k) {
    const PlanarVector step = path.points[k + 1] - path.points[k];
    CHECK(close(lp[k + 1], multiply(lp[k], HeisPoint(step.x, step.y, 0.0)), 1e-12));
  }
}

TEST_CASE("theta is an involutive automorphism onto the reflected geometry") {
  const PolygonNormData g = hexagon();
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const HeisPoint p = random_point(rng), q = random_point(rng);
    CHECK(close(theta(theta(p, g), g), p, 1e-12));
    CHECK(close(theta(multiply(p, q), g), multiply(theta(p, g), theta(q, g)), 1e-12));
  }
  // The planar part fixes the axis v_{2N} and reverses orientation.
  const PlanarVector axis = g.vertex(g.n() - 1);
  const PlanarVector fixed = theta_planar(axis, g);
  CHECK(fixed.x == doctest::Approx(axis.x));
  CHECK(fixed.y == doctest::Approx(axis.y));
  const PlanarVector a{0.3, 0.8}, b{-0.4, 0.1};
  CHECK(symplectic(theta_planar(a, g), theta_planar(b, g)) ==
        doctest::Approx(-symplectic(a, b)).epsilon(1e-12));
}
