#include "polyheis/polygon.hpp"

#include <algorithm>
#include <cmath>

namespace polyheis {

double PolygonNormData::kappa(int i) const {
  // alpha_i - alpha_{i-1} vanishes on v_i, so it is a multiple of omega(v_i, .).
  const Covector diff = alpha(i) - alpha(i - 1);
  const PlanarVector& w = vertex(i + 1);
  const double denom = symplectic(vertex(i), w);
  return diff(w) / denom;
}

PolygonNormData build_geometry(const std::vector<PlanarVector>& raw_vertices) {
  const int m = static_cast<int>(raw_vertices.size());
  if (m < 4 || m % 2 != 0) {
    throw Error("NotCentrallySymmetric",
                "need an even number 2N >= 4 of vertices, got " + std::to_string(m));
  }
  const int half = m / 2;

  PolygonNormData g;
  g.vertices = raw_vertices;

  for (int k = 0; k < half; ++k) {
    const PlanarVector d = g.vertices[k] + g.vertices[k + half];
    if (std::abs(d.x) > kTol || std::abs(d.y) > kTol) {
      throw Error("NotCentrallySymmetric",
                  "v_{k+N} != -v_k at k = " + std::to_string(k + 1));
    }
  }

  g.edges.resize(m);
  for (int k = 0; k < m; ++k) {
    g.edges[k] = g.vertices[(k + 1) % m] - g.vertices[k];
    if (g.edges[k].norm2() <= kTol) {
      throw Error("DegenerateEdge", "zero-length edge at k = " + std::to_string(k + 1));
    }
  }

  // Strict convexity and orientation: all turns must have the same sign,
  // and the polygon must wind anticlockwise around the origin.
  double orientation = 0.0;
  for (int k = 0; k < m; ++k) {
    const double cross = symplectic(g.edges[k], g.edges[(k + 1) % m]);
    if (k == 0) orientation = cross;
    if (std::abs(cross) <= kTol) {
      throw Error("NotConvex", "collinear consecutive edges at k = " + std::to_string(k + 1));
    }
    if (cross * orientation < 0.0) {
      throw Error("NotConvex", "non-convex turn at k = " + std::to_string(k + 1));
    }
  }
  if (orientation < 0.0) {
    throw Error("WrongOrientation", "vertices are listed clockwise; not auto-reversed");
  }

  g.alphas.resize(m);
  g.iso_vertices.resize(m);
  for (int k = 0; k < m; ++k) {
    // alpha_k = omega(e_k, .) / omega(e_k, v_k), with omega(e_k, v_k) < 0.
    const double denom = symplectic(g.edges[k], g.vertices[k]);
    if (denom >= -kTol) {
      throw Error("NotConvex", "origin not strictly inside Q near edge " + std::to_string(k + 1));
    }
    const Covector omega_e = symplectic_covector(g.edges[k]);
    g.alphas[k] = (1.0 / denom) * omega_e;
    g.iso_vertices[k] = (1.0 / denom) * g.edges[k];  // alpha_k^omega = e_k / omega(e_k, v_k)
  }

  g.sigmas.resize(m);
  g.sigma_norms.resize(m);
  for (int k = 0; k < m; ++k) {
    g.sigmas[k] = g.iso_vertices[k] - g.iso_vertices[(k + m - 1) % m];
    // ||sigma_k|| = alpha_k(sigma_k) and sigma_k = ||sigma_k|| v_k.
    g.sigma_norms[k] = g.alphas[k](g.sigmas[k]);
  }

  // Shoelace area and gauge perimeter of the isoperimetrix I.
  double area2 = 0.0;
  for (int k = 0; k < m; ++k) {
    area2 += symplectic(g.iso_vertices[k], g.iso_vertices[(k + 1) % m]);
  }
  g.iso_area = 0.5 * area2;
  g.iso_perimeter = 0.0;
  for (int k = 0; k < m; ++k) g.iso_perimeter += g.sigma_norms[k];
  g.unit_iso_area = g.iso_area / (g.iso_perimeter * g.iso_perimeter);

  // Invariant audit: sigma_k is the positive multiple ||sigma_k|| of v_k, and
  // alpha_k takes value 1 on both endpoints of edge k.
  for (int k = 0; k < m; ++k) {
    if (g.sigma_norms[k] <= kTol) {
      throw Error("NotConvex", "non-positive sigma norm at k = " + std::to_string(k + 1));
    }
    const PlanarVector resid = g.sigmas[k] - g.sigma_norms[k] * g.vertices[k];
    if (resid.norm2() > 1e-8) {
      throw Error("NotConvex", "sigma_k is not a multiple of v_k at k = " + std::to_string(k + 1));
    }
    if (std::abs(g.alphas[k](g.vertices[k]) - 1.0) > 1e-8 ||
        std::abs(g.alphas[k](g.vertices[(k + 1) % m]) - 1.0) > 1e-8) {
      throw Error("NotConvex", "alpha_k normalization failed at k = " + std::to_string(k + 1));
    }
  }
  return g;
}

double gauge_norm(const PolygonNormData& g, const PlanarVector& v) {
  double best = 0.0;
  for (const Covector& a : g.alphas) best = std::max(best, a(v));
  return best;
}

double dual_gauge(const PolygonNormData& g, const Covector& beta) {
  double best = 0.0;
  for (const PlanarVector& v : g.vertices) best = std::max(best, beta(v));
  return best;
}

}  // namespace polyheis
