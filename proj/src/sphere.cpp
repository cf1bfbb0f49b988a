#include "polyheis/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace polyheis {

namespace {

// Traced vectors of the trace path for coords c: r sigma_i, the intermediate
// sigma_k (i < k < j cyclically; all k != i when j == i), then s sigma_j.
// Returns the unnormalized vectors and fills mu.
std::vector<PlanarVector> trace_vectors(const PolygonNormData& g, const PanelCoords& c,
                                        double* mu_out) {
  const int n = g.n();
  const int i = g.mod(c.i);
  const int j = g.mod(c.j);
  std::vector<PlanarVector> vecs;
  double mu = 0.0;
  vecs.push_back(c.r * g.sigma(i));
  mu += c.r * g.sigma_norm(i);
  int steps = (j - i - 1 + 2 * n) % n;
  if (j == i) steps = n - 1;  // degenerate star panel loops through all other edges
  for (int t = 1; t <= steps; ++t) {
    vecs.push_back(g.sigma(i + t));
    mu += g.sigma_norm(i + t);
  }
  vecs.push_back(c.s * g.sigma(j));
  mu += c.s * g.sigma_norm(j);
  *mu_out = mu;
  return vecs;
}

}  // namespace

std::string to_string(const SpherePointClass& c) {
  auto idx = [&](const char* name) { return std::string(name) + "(" + std::to_string(c.i + 1) + ")"; };
  auto idxp = [&](const char* name) {
    return std::string(name) + "(" + std::to_string(c.i + 1) + ", " + std::to_string(c.param) + ")";
  };
  switch (c.tag) {
    case SphereTag::CeilingInterior: return "CeilingInterior";
    case SphereTag::BasementInterior: return "BasementInterior";
    case SphereTag::WallInterior: return idx("WallInterior");
    case SphereTag::NorthPole: return "NorthPole";
    case SphereTag::SouthPole: return "SouthPole";
    case SphereTag::Vertex: return idx("Vertex");
    case SphereTag::NorthStarSeam: return idxp("NorthStarSeam");
    case SphereTag::SouthStarSeam: return idxp("SouthStarSeam");
    case SphereTag::StarTip: return idx("StarTip");
    case SphereTag::WallCeilingSeam: return idxp("WallCeilingSeam");
    case SphereTag::WallBasementSeam: return idxp("WallBasementSeam");
  }
  return "?";
}

PlanarVector panel_endpoint(const PolygonNormData& g, const PanelCoords& c) {
  double mu = 0.0;
  const std::vector<PlanarVector> vecs = trace_vectors(g, c, &mu);
  if (mu <= kTol) throw Error("DegenerateMu", "trace path has vanishing gauge length");
  PlanarVector sum{0.0, 0.0};
  for (const PlanarVector& u : vecs) sum = sum + u;
  return (1.0 / mu) * sum;
}

double panel_height(const PolygonNormData& g, const PanelCoords& c) {
  double mu = 0.0;
  const std::vector<PlanarVector> vecs = trace_vectors(g, c, &mu);
  if (mu <= kTol) throw Error("DegenerateMu", "trace path has vanishing gauge length");
  double area2 = 0.0;
  for (std::size_t a = 0; a < vecs.size(); ++a) {
    for (std::size_t b = a + 1; b < vecs.size(); ++b) {
      area2 += symplectic(vecs[a], vecs[b]);
    }
  }
  return std::max(0.0, 0.5 * area2 / (mu * mu));
}

double wall_bound(const PolygonNormData& g, int i, const PlanarVector& v) {
  const PlanarVector& vi = g.vertex(i);
  const PlanarVector& vj = g.vertex(i + 1);
  const double c1 = symplectic(vi, v);
  const double c2 = symplectic(v, vj);
  if (c1 < -1e-7 || c2 < -1e-7) {
    throw Error("OutsideCone", "point not in the wall cone C_i^+");
  }
  return std::max(0.0, c1 * c2 / (2.0 * symplectic(vi, vj)));
}

double star_reach(const PolygonNormData& g, int i) {
  return g.sigma_norm(i) / (g.iso_perimeter - g.sigma_norm(i));
}

namespace {

// Star segment coordinate r for the point -c v_i (c = 0 at the pole axis).
double star_r_from_c(const PolygonNormData& g, int i, double c) {
  const double sn = g.sigma_norm(i);
  const double r = 1.0 - c * g.iso_perimeter / ((1.0 + c) * sn);
  return std::clamp(r, 0.0, 1.0);
}

// Wall coordinates for a boundary point w: edge index (smallest supporting
// alpha index), plus canonical (r, s) with max(r, s) = 1.
struct WallCoords {
  int i;
  double r, s;
  double a, b;  // convex weights: w = a v_i + b v_{i+1}
};

WallCoords wall_coords(const PolygonNormData& g, const PlanarVector& w) {
  const int n = g.n();
  double best = -1e300;
  for (int k = 0; k < n; ++k) best = std::max(best, g.alpha(k)(w));
  int i = 0;
  for (int k = 0; k < n; ++k) {
    if (g.alpha(k)(w) >= best - 1e-12) { i = k; break; }
  }
  const PlanarVector& vi = g.vertex(i);
  const PlanarVector& vj = g.vertex(i + 1);
  const double det = symplectic(vi, vj);
  double a = symplectic(w, vj) / det;
  double b = symplectic(vi, w) / det;
  a = std::max(a, 0.0);
  b = std::max(b, 0.0);
  const double rt = a / g.sigma_norm(i);
  const double st = b / g.sigma_norm(i + 1);
  const double c = std::max(rt, st);
  WallCoords wc;
  wc.i = i;
  wc.r = (c > 0.0) ? rt / c : 1.0;
  wc.s = (c > 0.0) ? st / c : 0.0;
  wc.a = a;
  wc.b = b;
  return wc;
}

}  // namespace

PanelCoords locate_panel(const PolygonNormData& g, const PlanarVector& w) {
  const int n = g.n();
  const double gw = gauge_norm(g, w);
  if (gw > 1.0 + 1e-7) throw Error("OutsideDisk", "gauge norm exceeds 1");

  // Origin: full-loop panel (i+1, i); canonical representative (0, 2N-1).
  if (std::abs(w.x) <= kTol && std::abs(w.y) <= kTol) {
    return {0, n - 1, 1.0, 1.0, PanelSide::Ceiling};
  }

  // Star segments { -c v_i }.
  for (int i = 0; i < n; ++i) {
    const PlanarVector& vi = g.vertex(i);
    const double len = vi.norm2();
    if (std::abs(symplectic(vi, w)) / len > kTol) continue;
    if (w.x * vi.x + w.y * vi.y >= 0.0) continue;
    const double c = w.norm2() / len;
    if (c <= star_reach(g, i) + kTol) {
      return {i, i, star_r_from_c(g, i, c), 0.0, PanelSide::Star};
    }
  }

  // Boundary of Q: wall panels.
  if (gw >= 1.0 - kTol) {
    const WallCoords wc = wall_coords(g, w);
    return {wc.i, g.mod(wc.i + 1), wc.r, wc.s, PanelSide::Wall};
  }

  // Interior: scan panels in lexicographic (i, (j-i) mod 2N) order and solve
  // the cleared 2x2 system r(sigma_i - ||sigma_i|| w) + s(sigma_j - ||sigma_j|| w)
  // = L_ij w - sigma_ij.
  for (int i = 0; i < n; ++i) {
    for (int d = 2; d < n; ++d) {
      const int j = (i + d) % n;
      PlanarVector sij{0.0, 0.0};
      double L = 0.0;
      for (int t = 1; t < d; ++t) {
        sij = sij + g.sigma(i + t);
        L += g.sigma_norm(i + t);
      }
      const PlanarVector A1 = g.sigma(i) - g.sigma_norm(i) * w;
      const PlanarVector A2 = g.sigma(j) - g.sigma_norm(j) * w;
      const PlanarVector rhs = L * w - sij;
      const double det = symplectic(A1, A2);
      if (std::abs(det) < 1e-14) continue;
      const double r = symplectic(rhs, A2) / det;
      const double s = symplectic(A1, rhs) / det;
      if (r < -1e-9 || r > 1.0 + 1e-9 || s < -1e-9 || s > 1.0 + 1e-9) continue;
      PanelCoords c{i, j, std::clamp(r, 0.0, 1.0), std::clamp(s, 0.0, 1.0),
                    PanelSide::Ceiling};
      const PlanarVector back = panel_endpoint(g, c);
      if ((back - w).norm2() <= 1e-7) return c;
    }
  }
  throw Error("NoPanelFound", "no panel contains the point; geometry bug");
}

double ceiling_height(const PolygonNormData& g, const PlanarVector& w) {
  return panel_height(g, locate_panel(g, w));
}

bool unit_ball_contains(const PolygonNormData& g, const HeisPoint& p) {
  const PlanarVector w = project(p);
  const double gw = gauge_norm(g, w);
  if (gw > 1.0 + 1e-12) return false;
  if (gw >= 1.0 - 1e-12) {
    // Boundary: wall membership via the height bound on the supporting edge.
    const WallCoords wc = wall_coords(g, w);
    const double f = wall_bound(g, wc.i, w);
    return std::abs(p.z) <= f + 1e-14;
  }
  // Keep the z slack at roundoff scale: the bisection in d_e inherits it with
  // a factor dlambda/dz ~ lambda/(2 z), so 1e-12 here already costs 1e-11 in
  // the reported distance at the pole.
  return std::abs(p.z) <= ceiling_height(g, w) + 1e-14;
}

SpherePointClass classify_sphere_point(const PolygonNormData& g, const HeisPoint& p,
                                       double seam_tol) {
  const PlanarVector w = project(p);
  const double gw = gauge_norm(g, w);
  const double on_tol = 1e-6;
  if (gw > 1.0 + on_tol) throw Error("NotOnSphere", "gauge norm exceeds 1");

  // Poles.
  if (w.norm2() <= seam_tol) {
    if (std::abs(std::abs(p.z) - g.unit_iso_area) > on_tol) {
      throw Error("NotOnSphere", "axis point is not at pole height");
    }
    return {p.z > 0.0 ? SphereTag::NorthPole : SphereTag::SouthPole, 0, 0.0};
  }

  // Wall region.
  if (gw >= 1.0 - seam_tol) {
    for (int k = 0; k < g.n(); ++k) {
      if ((w - g.vertex(k)).norm2() <= seam_tol) return {SphereTag::Vertex, k, 0.0};
    }
    const WallCoords wc = wall_coords(g, w);
    const double f = wall_bound(g, wc.i, w);
    if (std::abs(p.z) > f + on_tol) throw Error("NotOnSphere", "above the wall bound");
    if (p.z >= f - seam_tol) return {SphereTag::WallCeilingSeam, wc.i, wc.s};
    if (p.z <= -f + seam_tol) return {SphereTag::WallBasementSeam, wc.i, wc.r};
    return {SphereTag::WallInterior, wc.i, 0.0};
  }

  // Interior: on-sphere requires |z| = Phi(w).
  const double phi = ceiling_height(g, w);
  if (std::abs(std::abs(p.z) - phi) > on_tol) {
    throw Error("NotOnSphere", "|z| does not match the ceiling height");
  }

  // Star segments.
  for (int i = 0; i < g.n(); ++i) {
    const PlanarVector& vi = g.vertex(i);
    const double len = vi.norm2();
    if (std::abs(symplectic(vi, w)) / len > seam_tol) continue;
    if (w.x * vi.x + w.y * vi.y >= 0.0) continue;
    const double c = w.norm2() / len;
    const double reach = star_reach(g, i);
    if (c > reach + seam_tol) continue;
    if (std::abs(c - reach) <= seam_tol) return {SphereTag::StarTip, i, 0.0};
    const double r = star_r_from_c(g, i, c);
    return {p.z > 0.0 ? SphereTag::NorthStarSeam : SphereTag::SouthStarSeam, i, r};
  }

  return {p.z > 0.0 ? SphereTag::CeilingInterior : SphereTag::BasementInterior, 0, 0.0};
}

}  // namespace polyheis
