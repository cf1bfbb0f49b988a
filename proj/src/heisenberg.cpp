#include "polyheis/heisenberg.hpp"

#include <cmath>

namespace polyheis {

HeisPoint multiply(const HeisPoint& p, const HeisPoint& q) {
  return {p.x + q.x, p.y + q.y, p.z + q.z + 0.5 * (p.x * q.y - q.x * p.y)};
}

HeisPoint dilate(double lambda, const HeisPoint& p) {
  if (!(lambda > 0.0)) {
    throw Error("NonPositiveLambda", "dilation requires lambda > 0");
  }
  return {lambda * p.x, lambda * p.y, lambda * lambda * p.z};
}

double balayage_area(const PlanarPolyline& path) {
  if (path.points.size() < 2) {
    throw Error("DegeneratePath", "balayage_area needs at least 2 points");
  }
  double area2 = 0.0;
  for (std::size_t k = 0; k + 1 < path.points.size(); ++k) {
    area2 += symplectic(path.points[k], path.points[k + 1]);
  }
  return 0.5 * area2;
}

std::vector<HeisPoint> lift(const PlanarPolyline& path, double z0) {
  if (path.points.empty()) {
    throw Error("DegeneratePath", "lift needs at least 1 point");
  }
  std::vector<HeisPoint> out;
  out.reserve(path.points.size());
  double z = z0;
  out.emplace_back(path.points[0], z);
  for (std::size_t k = 0; k + 1 < path.points.size(); ++k) {
    z += 0.5 * symplectic(path.points[k], path.points[k + 1]);
    out.emplace_back(path.points[k + 1], z);
  }
  return out;
}

PlanarVector theta_planar(const PlanarVector& v, const PolygonNormData& g) {
  // Reflection across the line spanned by the axis vertex v_{2N} (index -1).
  const PlanarVector axis = g.vertex(-1);
  const double n2 = axis.x * axis.x + axis.y * axis.y;
  const double dot = (v.x * axis.x + v.y * axis.y) / n2;
  const PlanarVector par = dot * axis;
  return 2.0 * par - v;
}

HeisPoint theta(const HeisPoint& p, const PolygonNormData& g) {
  const PlanarVector rv = theta_planar(project(p), g);
  return {rv.x, rv.y, -p.z};
}

}  // namespace polyheis
