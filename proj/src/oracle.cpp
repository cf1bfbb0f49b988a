#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "polyheis/distance.hpp"

namespace polyheis {

namespace {

double polyline_length(const PolygonNormData& g, const std::vector<PlanarVector>& pts) {
  double L = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) L += gauge_norm(g, pts[k + 1] - pts[k]);
  return L;
}

double polyline_area(const std::vector<PlanarVector>& pts) {
  double a2 = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) a2 += symplectic(pts[k], pts[k + 1]);
  return 0.5 * a2;
}

// Move one interior vertex along the (linear) area gradient so that the
// balayage area matches the target exactly. dA/dp_k = (d.y, -d.x)/2 with
// d = p_{k+1} - p_{k-1}.
void project_area(std::vector<PlanarVector>& pts, double target) {
  // Minimum-norm correction spread over all interior vertices (iterated twice
  // since the area is quadratic in the positions).
  for (int pass = 0; pass < 3; ++pass) {
    const double defect = target - polyline_area(pts);
    if (std::abs(defect) <= 1e-15) return;
    double g2 = 0.0;
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
      const PlanarVector d = pts[k + 1] - pts[k - 1];
      g2 += 0.25 * (d.x * d.x + d.y * d.y);
    }
    if (g2 <= 1e-30) return;
    const double t = defect / g2;
    std::vector<PlanarVector> grads(pts.size());
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
      const PlanarVector d = pts[k + 1] - pts[k - 1];
      grads[k] = {0.5 * d.y, -0.5 * d.x};
    }
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) pts[k] = pts[k] + t * grads[k];
  }
}

// Log-sum-exp smoothing of the polyhedral gauge: (1/beta) log sum_j
// exp(beta alpha_j(d)). Converges to gauge_norm from above as beta grows and
// is C^infinity, so plain gradient descent works; `grad` receives the softmax
// mixture of the support covectors.
double soft_gauge(const PolygonNormData& g, const PlanarVector& d, double beta, Covector* grad) {
  double mx = -1e300;
  for (const Covector& a : g.alphas) mx = std::max(mx, a(d));
  double s = 0.0;
  Covector mix{0.0, 0.0};
  for (const Covector& a : g.alphas) {
    const double w = std::exp(beta * (a(d) - mx));
    s += w;
    mix = mix + w * a;
  }
  if (grad != nullptr) *grad = (1.0 / s) * mix;
  return mx + std::log(s) / beta;
}

// Smoothed augmented-Lagrangian objective and its gradient over the interior
// vertices. Returns the value; grad[k] is valid for 0 < k < pts.size()-1.
double smooth_al(const PolygonNormData& g, const std::vector<PlanarVector>& pts, double beta,
                 double lam, double rho, double zt, std::vector<PlanarVector>* grad) {
  const std::size_t m = pts.size() - 1;
  if (grad != nullptr) grad->assign(pts.size(), PlanarVector{0.0, 0.0});
  double len = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    Covector c;
    len += soft_gauge(g, pts[k + 1] - pts[k], beta, grad != nullptr ? &c : nullptr);
    if (grad != nullptr) {
      const PlanarVector gv{c.a, c.b};
      (*grad)[k] = (*grad)[k] - gv;
      (*grad)[k + 1] = (*grad)[k + 1] + gv;
    }
  }
  const double defect = polyline_area(pts) - zt;
  if (grad != nullptr) {
    const double w = lam + rho * defect;
    for (std::size_t k = 1; k < m; ++k) {
      const PlanarVector d = pts[k + 1] - pts[k - 1];
      (*grad)[k] = (*grad)[k] + w * PlanarVector{0.5 * d.y, -0.5 * d.x};
    }
    (*grad)[0] = {0.0, 0.0};
    (*grad)[m] = {0.0, 0.0};
  }
  return len + lam * defect + 0.5 * rho * defect * defect;
}

}  // namespace

double oracle_distance(const PolygonNormData& g, const HeisPoint& p, int segments,
                       int restarts, unsigned long long seed) {
  if (segments < 4) throw Error("TooFewSegments", "oracle needs at least 4 segments");
  const PlanarVector target = project(p);
  const double zt = p.z;
  double best_len = 1e300;
  for (int rest = 0; rest < restarts; ++rest) {
    // Vary the vertex budget across restarts: different segment counts land
    // in different descent valleys, and the minimum keeps the best.
    const int m = std::max(4, segments + 2 * (rest % 4 - 1));
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 1000003ull * rest + 17ull);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    std::vector<PlanarVector> pts(m + 1);
    // Initialize with the circular arc from 0 to the target that sweeps the
    // prescribed area (the isoperimetric shape up to the polygon/circle
    // difference), plus a per-restart random jitter.
    const PlanarVector chord = target;
    const double clen = chord.norm2();
    for (int k = 0; k <= m; ++k) {
      const double t = static_cast<double>(k) / m;
      PlanarVector x;
      if (clen > 1e-6 && std::abs(zt) > 1e-9) {
        // Segment area R^2 (theta - sin theta) / 2 with R = c / (2 sin(theta/2));
        // solve the opening angle by bisection (monotone on (0, 2 pi)).
        const double want = std::abs(zt);
        double tlo = 1e-6, thi = 2.0 * M_PI - 1e-6;
        for (int it = 0; it < 60; ++it) {
          const double th = 0.5 * (tlo + thi);
          const double R = clen / (2.0 * std::sin(0.5 * th));
          if (0.5 * R * R * (th - std::sin(th)) < want) tlo = th; else thi = th;
        }
        const double th = 0.5 * (tlo + thi);
        const double R = clen / (2.0 * std::sin(0.5 * th));
        // Arc from angle -theta/2 to +theta/2 in the chord frame, bulging to
        // the side that gives the sign of the swept area.
        // Positive balayage loops run counterclockwise, so the arc bulges to
        // the right of the chord for positive target area.
        const double side = zt >= 0 ? -1.0 : 1.0;
        const double sag = R * std::cos(0.5 * th);
        const double ang = (-0.5 + t) * th;
        const PlanarVector along{chord.x / clen, chord.y / clen};
        const PlanarVector perp{-side * along.y, side * along.x};
        x = (0.5 * clen + R * std::sin(ang)) * along + (R * std::cos(ang) - sag) * perp;
      } else if (clen > 1e-6) {
        x = t * chord;
      } else {
        // Closed-loop (Dido) case: seed with a circle through the origin.
        const double rad = std::sqrt(std::abs(zt) / M_PI) * (zt >= 0 ? 1.0 : -1.0);
        const double ang = 2.0 * M_PI * t;
        x = PlanarVector{rad * std::sin(ang), rad * (1.0 - std::cos(ang))};
      }
      if (k != 0 && k != m) {
        const double jitter = 0.05 * (1.0 + 0.2 * rest);
        x = x + PlanarVector{jitter * unif(rng), jitter * unif(rng)};
      }
      pts[k] = x;
    }
    pts[0] = {0.0, 0.0};
    pts[m] = target;

    // Augmented-Lagrangian continuation: each stage sharpens the log-sum-exp
    // smoothing of the gauge and stiffens the area penalty, warm-starting
    // gradient descent (adaptive step, monotone line search) from the
    // previous stage's minimizer.
    double lam = 0.0;
    static const double betas[] = {30.0, 100.0, 300.0, 1e3, 3e3, 1e4, 3e4, 1e5};
    static const double rhos[] = {10.0, 30.0, 100.0, 300.0, 1e3, 3e3, 1e4, 3e4};
    std::vector<PlanarVector> grad, trial;
    for (int stage = 0; stage < 8; ++stage) {
      const double beta = betas[stage];
      const double rho = rhos[stage];
      double f = smooth_al(g, pts, beta, lam, rho, zt, &grad);
      double step = 0.05;
      for (int iter = 0; iter < 400; ++iter) {
        double g2 = 0.0;
        for (const PlanarVector& gv : grad) g2 += gv.x * gv.x + gv.y * gv.y;
        if (g2 < 1e-20) break;
        bool accepted = false;
        while (step > 1e-12) {
          trial = pts;
          for (int k = 1; k < m; ++k) trial[k] = pts[k] - step * grad[k];
          const double fc = smooth_al(g, trial, beta, lam, rho, zt, nullptr);
          if (fc < f - 1e-15) {
            pts.swap(trial);
            f = smooth_al(g, pts, beta, lam, rho, zt, &grad);
            step *= 1.3;
            accepted = true;
            break;
          }
          step *= 0.5;
        }
        if (!accepted) break;
      }
      lam += rho * (polyline_area(pts) - zt);
    }
    project_area(pts, zt);
    // Feasible polish: the quadratic penalty locks single-vertex moves near
    // the optimum (any move pays rho * dA^2), so descend the true length on
    // the exact-area manifold: trial move + area reprojection per candidate.
    {
      // Direction set: compass moves plus the polygon vertex directions (the
      // flat directions of the gauge, where optimal segments live).
      std::vector<PlanarVector> dirs = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                        {1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
      for (const PlanarVector& v : g.vertices) {
        const double n = std::hypot(v.x, v.y);
        dirs.push_back({v.x / n, v.y / n});
      }
      double cur = polyline_length(g, pts);
      double step = 0.02;
      std::vector<PlanarVector> cand;
      for (int sweep = 0; sweep < 400 && step > 1e-7; ++sweep) {
        bool improved = false;
        // Translate contiguous blocks of interior vertices: single-vertex
        // pattern moves lock at kinks of the polyhedral norm, block slides
        // do not. Candidates are screened to first order with the converged
        // multiplier (d length = lam * d area on the constraint manifold);
        // survivors are verified exactly after area reprojection.
        for (int k1 = 1; k1 < m; ++k1) {
          for (int k2 = k1; k2 < m; ++k2) {
            for (const PlanarVector& d : dirs) {
              const PlanarVector delta = step * d;
              const double dlen =
                  gauge_norm(g, pts[k1] + delta - pts[k1 - 1]) -
                  gauge_norm(g, pts[k1] - pts[k1 - 1]) +
                  gauge_norm(g, pts[k2 + 1] - pts[k2] - delta) -
                  gauge_norm(g, pts[k2 + 1] - pts[k2]);
              const double darea =
                  0.5 * (symplectic(pts[k1 - 1], delta) + symplectic(delta, pts[k2 + 1]) +
                         symplectic(pts[k1] - pts[k2], delta));
              // Loose screen: admit anything that could win at second order
              // or through multiplier error.
              if (dlen + lam * darea >= 4.0 * step * step + 0.02 * std::abs(darea) + 1e-12) {
                continue;
              }
              cand = pts;
              for (int k = k1; k <= k2; ++k) cand[k] = cand[k] + delta;
              project_area(cand, zt);
              const double cl = polyline_length(g, cand);
              if (cl < cur - 1e-13) {
                pts.swap(cand);
                cur = cl;
                improved = true;
              }
            }
          }
        }
        if (!improved) step *= 0.5;
      }
      best_len = std::min(best_len, cur);
    }
  }
  return best_len;
}

}  // namespace polyheis
