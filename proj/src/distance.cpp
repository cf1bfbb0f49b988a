#include "polyheis/distance.hpp"

#include <algorithm>
#include <cmath>

namespace polyheis {

double d_e(const PolygonNormData& g, const HeisPoint& p) {
  const PlanarVector w = project(p);
  const double gw = gauge_norm(g, w);
  const double zterm = std::sqrt(std::abs(p.z) / g.unit_iso_area);
  if (gw <= 0.0 && std::abs(p.z) <= 0.0) return 0.0;

  // Rigorous lower bracket: the planar gauge (projection is 1-Lipschitz).
  // No z-based lower bound is safe: ceiling heights exceed the pole height
  // (an open path with a free return chord encloses more than the closed
  // isoperimetric loop), so the bracket grows from the gauge alone.
  double lo = gw;
  double hi = gw + 2.0 * zterm + 1.0;
  auto member = [&](double lambda) {
    return unit_ball_contains(g, dilate(1.0 / lambda, p));
  };
  for (int k = 0; k < 200 && !member(hi); ++k) hi *= 2.0;
  if (lo <= 0.0) lo = 1e-300;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (member(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

double distance(const PolygonNormData& g, const HeisPoint& p, const HeisPoint& q) {
  return d_e(g, multiply(p.inverse(), q));
}

GeodesicPath geodesic(const PolygonNormData& g, const HeisPoint& p) {
  const double lambda = d_e(g, p);
  if (lambda <= kTol) throw Error("OriginPoint", "no geodesic from e to e");
  const PlanarVector w = project(p);
  const double gw = gauge_norm(g, w);

  GeodesicPath out;
  if (gw >= lambda * (1.0 - 1e-9)) {
    // Beeline: the planar part already forces the full length. Use a staircase
    // with directions v_i, v_{i+1} whose corner realizes the prescribed area.
    const PanelCoords wc = locate_panel(g, (1.0 / lambda) * w);
    const int i = (wc.side == PanelSide::Wall) ? wc.i : 0;
    const PlanarVector& vi = g.vertex(i);
    const PlanarVector& vj = g.vertex(i + 1);
    const double det = symplectic(vi, vj);
    const double a = symplectic(w, vj) / det;  // w = a v_i + b v_{i+1}
    const double b = symplectic(vi, w) / det;
    const double zmax = std::max(0.0, a * b * det / 2.0);
    out.kind = "beeline";
    if (std::abs(p.z) <= kTol || zmax <= kTol) {
      out.planar.points = {{0.0, 0.0}, w};
    } else {
      // Three segments v_i, v_{i+1}, v_i; the split c in [0,1] sweeps
      // the balayage range [-zmax, zmax] linearly.
      const double c = std::clamp((p.z / zmax + 1.0) / 2.0, 0.0, 1.0);
      const PlanarVector p1 = (c * a) * vi;
      const PlanarVector p2 = p1 + b * vj;
      out.planar.points = {{0.0, 0.0}, p1, p2, w};
      if (std::abs(std::abs(p.z) - zmax) <= 1e-9) out.kind = "mixed-degenerate";
    }
  } else {
    // Trace path: rescale the panel trace of the normalized point.
    out.kind = "trace";
    const bool below = p.z < 0.0;
    const HeisPoint q = below ? p.inverse() : p;
    const PanelCoords c = locate_panel(g, project(dilate(1.0 / lambda, q)));
    double mu = 0.0;
    {
      // Rebuild the trace vectors (as in panel_endpoint) scaled to length lambda.
      std::vector<PlanarVector> pts{{0.0, 0.0}};
      const int n = g.n();
      int steps = (c.j - c.i - 1 + 2 * n) % n;
      if (c.j == c.i) steps = n - 1;
      std::vector<PlanarVector> vecs;
      vecs.push_back(c.r * g.sigma(c.i));
      mu += c.r * g.sigma_norm(c.i);
      for (int t = 1; t <= steps; ++t) {
        vecs.push_back(g.sigma(c.i + t));
        mu += g.sigma_norm(c.i + t);
      }
      vecs.push_back(c.s * g.sigma(c.j));
      mu += c.s * g.sigma_norm(c.j);
      const double scale = lambda / mu;
      for (const PlanarVector& v : vecs) {
        if (v.norm2() <= 1e-15) continue;
        pts.push_back(pts.back() + scale * v);
      }
      if (below) {
        // Reverse and left-translate: geodesic to p is the reversed geodesic
        // to p^{-1}, shifted to start at the origin.
        std::vector<PlanarVector> rev;
        for (auto it = pts.rbegin(); it != pts.rend(); ++it) rev.push_back(w + *it);
        pts = rev;
      }
      out.planar.points = pts;
    }
  }

  out.length = 0.0;
  for (std::size_t k = 0; k + 1 < out.planar.points.size(); ++k) {
    out.length += gauge_norm(g, out.planar.points[k + 1] - out.planar.points[k]);
  }
  out.lifted = lift(out.planar, 0.0);
  return out;
}

Covector pansu_derivative(const PolygonNormData& g, const HeisPoint& p) {
  const double lambda = d_e(g, p);
  if (lambda <= kTol) throw Error("OriginPoint", "Pansu derivative undefined at e");
  const HeisPoint q = dilate(1.0 / lambda, p);
  const SpherePointClass cls = classify_sphere_point(g, q);
  switch (cls.tag) {
    case SphereTag::WallInterior:
      return g.alpha(cls.i);
    case SphereTag::CeilingInterior: {
      const PanelCoords c = locate_panel(g, project(q));
      return (1.0 - c.s) * g.alpha(c.j - 1) + c.s * g.alpha(c.j);
    }
    case SphereTag::BasementInterior: {
      const PanelCoords c = locate_panel(g, project(q));
      return (1.0 - c.r) * g.alpha(c.i) + c.r * g.alpha(c.i - 1);
    }
    case SphereTag::StarTip:
      // All adjacent blow-up pieces coincide there: alpha_{i-1} on the
      // ceiling side, alpha_i on the basement side.
      return q.z > 0.0 ? g.alpha(cls.i - 1) : g.alpha(cls.i);
    default:
      throw Error("NotSmoothPoint", "Pansu derivative does not exist at " + to_string(cls));
  }
}

double fd_directional(const PolygonNormData& g, const HeisPoint& p, const HeisPoint& v,
                      double eps) {
  if (!(eps > 0.0)) throw Error("NonPositiveEps", "eps must be positive");
  return (d_e(g, multiply(p, dilate(eps, v))) - d_e(g, p)) / eps;
}

}  // namespace polyheis
