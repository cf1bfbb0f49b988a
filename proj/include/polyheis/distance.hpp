#ifndef POLYHEIS_DISTANCE_HPP
#define POLYHEIS_DISTANCE_HPP

#include <string>

#include "polyheis/heisenberg.hpp"
#include "polyheis/polygon.hpp"
#include "polyheis/sphere.hpp"

namespace polyheis {

struct GeodesicPath {
  PlanarPolyline planar;
  std::vector<HeisPoint> lifted;
  double length = 0.0;
  std::string kind;  // "beeline", "trace", or "mixed-degenerate"
};

// d(e, p): the unique lambda >= 0 with delta_{1/lambda} p on the unit sphere,
// by bracketing + bisection on unit_ball_contains.
double d_e(const PolygonNormData& g, const HeisPoint& p);

// d(p, q) = d_e(p^{-1} q) by left invariance.
double distance(const PolygonNormData& g, const HeisPoint& p, const HeisPoint& q);

// A geodesic from e to p: a trace path (isoperimetrix arc) or a beeline
// staircase, with its horizontal lift. Throws OriginPoint for p = e.
GeodesicPath geodesic(const PolygonNormData& g, const HeisPoint& p);

// Pansu derivative of d_e at a smooth point (after normalizing p to the
// sphere). Throws NotSmoothPoint at seams and OriginPoint at e.
Covector pansu_derivative(const PolygonNormData& g, const HeisPoint& p);

// Difference quotient (d_e(p delta_eps v) - d_e(p)) / eps.
double fd_directional(const PolygonNormData& g, const HeisPoint& p, const HeisPoint& v,
                      double eps);

// Brute-force Dido oracle: minimize gauge length over planar polylines with
// `segments` edges from 0 to pi(p) sweeping balayage area z(p), via
// penalty-augmented coordinate descent with deterministic random restarts.
double oracle_distance(const PolygonNormData& g, const HeisPoint& p, int segments = 10,
                       int restarts = 32, unsigned long long seed = 42);

}  // namespace polyheis

#endif  // POLYHEIS_DISTANCE_HPP
