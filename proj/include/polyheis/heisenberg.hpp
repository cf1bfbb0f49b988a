#ifndef POLYHEIS_HEISENBERG_HPP
#define POLYHEIS_HEISENBERG_HPP

#include <vector>

#include "polyheis/polygon.hpp"

namespace polyheis {

// A point of the Heisenberg group in coordinates where the product is
// (x,y,z)(x',y',z') = (x+x', y+y', z+z' + (xy'-x'y)/2).
struct HeisPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  HeisPoint() = default;
  HeisPoint(double xx, double yy, double zz) : x(xx), y(yy), z(zz) {}
  HeisPoint(const PlanarVector& v, double zz) : x(v.x), y(v.y), z(zz) {}

  HeisPoint inverse() const { return {-x, -y, -z}; }
};

struct PlanarPolyline {
  std::vector<PlanarVector> points;
};

HeisPoint multiply(const HeisPoint& p, const HeisPoint& q);

// Anisotropic dilation (lambda*x, lambda*y, lambda^2*z); throws
// NonPositiveLambda for lambda <= 0.
HeisPoint dilate(double lambda, const HeisPoint& p);

inline PlanarVector project(const HeisPoint& p) { return {p.x, p.y}; }

// Signed area swept by the polyline against the origin: with traced vectors
// u_a = p_{a+1} - p_a plus the initial offset p_0, this is the balayage area
// (1/2) sum_{a<b} omega(u_a, u_b) over the traced vectors of the path from
// the origin's viewpoint, i.e. (1/2) sum_k omega(p_k, p_{k+1}).
double balayage_area(const PlanarPolyline& path);

// Unique horizontal lift: heights are z0 plus the running balayage area.
std::vector<HeisPoint> lift(const PlanarPolyline& path, double z0);

// Involutive automorphism Theta: reflect the plane across the axis v_{2N}
// (i.e. fix v_{2N}, negate J v_{2N}) and negate the vertical coordinate.
HeisPoint theta(const HeisPoint& p, const PolygonNormData& g);
PlanarVector theta_planar(const PlanarVector& v, const PolygonNormData& g);

}  // namespace polyheis

#endif  // POLYHEIS_HEISENBERG_HPP
