#include "polyheis/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace polyheis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool covector_close(const Covector& b1, const Covector& b2, double tol) {
  return std::abs(b1.a - b2.a) <= tol && std::abs(b1.b - b2.b) <= tol;
}

bool same_horofunction(const PolygonNormData& g, const Horofunction& h1,
                       const Horofunction& h2, double tol) {
  if (h1.kind != h2.kind) return false;
  switch (h1.kind) {
    case Horofunction::Kind::Linear:
      return covector_close(h1.beta, h2.beta, tol);
    case Horofunction::Kind::NormType:
      return std::abs(h1.w.x - h2.w.x) <= tol && std::abs(h1.w.y - h2.w.y) <= tol;
    case Horofunction::Kind::TwoPiece:
      return h1.family == h2.family && g.mod(h1.i) == g.mod(h2.i) &&
             std::abs(h1.s - h2.s) <= tol && std::abs(h1.a - h2.a) <= tol;
  }
  return false;
}

// Homogeneous quasi-distance used by the Kuratowski estimators.
double quasi_distance(const HeisPoint& p, const HeisPoint& q) {
  const HeisPoint d = multiply(p.inverse(), q);
  return std::max(std::hypot(d.x, d.y), std::sqrt(std::abs(d.z)));
}

HeisPoint planar_point(const PlanarVector& v) { return HeisPoint(v.x, v.y, 0.0); }

}  // namespace

HeisPoint SequenceSpec::point(std::size_t n) const {
  const double eps = eps_schedule.at(n);
  HeisPoint out = base;
  if (std::abs(w2.x) + std::abs(w2.y) + std::abs(w2.z) > 0.0) {
    out = multiply(out, dilate(std::pow(eps, 0.75), w2));
  }
  if (std::abs(w1.x) + std::abs(w1.y) + std::abs(w1.z) > 0.0) {
    out = multiply(out, dilate(eps, w1));
  }
  return out;
}

HeisPoint SequenceSpec::rescaled(std::size_t n) const {
  return dilate(1.0 / eps_schedule.at(n), point(n).inverse());
}

std::vector<double> default_eps_schedule() {
  std::vector<double> eps;
  for (int n = 4; n <= 16; ++n) eps.push_back(std::ldexp(1.0, -n));
  return eps;
}

std::vector<HeisPoint> GridWindow::points() const {
  std::vector<HeisPoint> out;
  const int m = static_cast<int>(std::floor(R / spacing + 1e-9));
  for (double z : z_slices) {
    for (int ix = -m; ix <= m; ++ix) {
      for (int iy = -m; iy <= m; ++iy) {
        out.emplace_back(ix * spacing, iy * spacing, z);
      }
    }
  }
  return out;
}

EmpiricalResult empirical_horofunction(const PolygonNormData& g, const SequenceSpec& seq,
                                       const GridWindow& grid,
                                       const std::optional<Horofunction>& predicted) {
  EmpiricalResult res;
  res.grid = grid.points();
  res.final_values.assign(res.grid.size(), 0.0);
  for (std::size_t n = 0; n < seq.eps_schedule.size(); ++n) {
    const HeisPoint q = seq.rescaled(n);
    const double at_origin = d_e(g, q.inverse());
    double sup = 0.0;
    for (std::size_t k = 0; k < res.grid.size(); ++k) {
      const double f = distance(g, q, res.grid[k]) - at_origin;
      res.final_values[k] = f;
      if (predicted) sup = std::max(sup, std::abs(f - eval(*predicted, res.grid[k], g)));
    }
    res.sup_dev.push_back(sup);
  }
  return res;
}

SequenceSpec build_blowup_sequence(const PolygonNormData& g, const HeisPoint& p,
                                   const Horofunction& target) {
  SequenceSpec seq;
  seq.base = p;
  seq.eps_schedule = default_eps_schedule();

  const BlowUpFamily fam = blow_up_family_at(g, p);
  if (fam.singleton) {
    if (!same_horofunction(g, target, fam.unique_member, 1e-9)) {
      throw Error("UnreachableTarget", "smooth point: only the Pansu limit is reachable");
    }
    return seq;  // any escape works; keep the plain dilation sequence
  }

  const bool at_pole = fam.side == ThresholdSide::Pole;

  if (target.kind == Horofunction::Kind::NormType) {
    if (!at_pole) {
      throw Error("UnreachableTarget", "NormType limits only occur at the poles");
    }
    // p_n = p (w1 eps, ...): rescaling pins the planar part at -w1 = w.
    seq.w1 = planar_point(-1.0 * target.w);
    return seq;
  }

  if (target.kind == Horofunction::Kind::TwoPiece) {
    const double C = crease_threshold(g, target);
    const int ic = at_pole ? g.mod(target.i) : fam.i;
    const Horofunction check = family_member(g, fam, C, at_pole ? ic : -1);
    if (!same_horofunction(g, target, check, 1e-7)) {
      throw Error("UnreachableTarget", "member does not belong to this blow-up family");
    }
    const PlanarVector vi = g.vertex(ic);
    // w1 places the crease {omega(v_ic, .) = C}: omega(v_ic, w1) = -C.
    seq.w1 = planar_point((-C / vi.norm2() / vi.norm2()) * rot90(vi));
    if (at_pole) seq.w2 = planar_point(-1.0 * vi);  // leave along the sector edge
    return seq;
  }

  // Linear target: a degenerate family member (C = +-inf), or at the pole the
  // sector limit alpha_ic reached by escaping through the open sector.
  if (at_pole) {
    for (int i = 0; i < g.n(); ++i) {
      if (covector_close(target.beta, g.alpha(i), 1e-9)) {
        seq.w2 = planar_point(-0.5 * (g.vertex(i) + g.vertex(i + 1)));
        return seq;
      }
    }
    throw Error("UnreachableTarget", "linear pole limits are the alpha_i only");
  }
  const Horofunction lo = family_member(g, fam, -kInf);
  const Horofunction hi = family_member(g, fam, kInf);
  const PlanarVector vi = g.vertex(fam.i);
  if (same_horofunction(g, target, lo, 1e-9)) {
    seq.w2 = planar_point(rot90(vi));  // drift into {omega(v_i, .) > 0}
    return seq;
  }
  if (same_horofunction(g, target, hi, 1e-9)) {
    seq.w2 = planar_point(-1.0 * rot90(vi));
    return seq;
  }
  throw Error("UnreachableTarget", "linear member does not bound this family");
}

std::vector<VerticalDeviationRow> vertical_sequence_deviation(
    const PolygonNormData& g, const PlanarVector& w, const std::vector<double>& s_values,
    const std::vector<HeisPoint>& probes) {
  std::vector<VerticalDeviationRow> rows;
  const double gw = gauge_norm(g, w);
  for (double s : s_values) {
    const HeisPoint pn(w.x, w.y, s);
    const double at_origin = d_e(g, pn.inverse());
    double worst = 0.0;
    for (const HeisPoint& x : probes) {
      const double f = distance(g, pn, x) - at_origin;
      const double limit = gw - gauge_norm(g, w - project(x));
      worst = std::max(worst, std::abs(f - limit));
    }
    rows.push_back({s, worst});
  }
  return rows;
}

namespace {

std::vector<HeisPoint> kuratowski_estimate(const std::vector<SetPredicate>& sets,
                                           const GridWindow& grid, std::size_t tail_begin,
                                           double eta, bool want_li) {
  const std::vector<HeisPoint> pts = grid.points();
  // Sampled members of each tail set within the window.
  std::vector<std::vector<HeisPoint>> members;
  for (std::size_t n = tail_begin; n < sets.size(); ++n) {
    std::vector<HeisPoint> mem;
    for (const HeisPoint& q : pts) {
      if (sets[n](q)) mem.push_back(q);
    }
    members.push_back(std::move(mem));
  }
  std::vector<HeisPoint> out;
  for (const HeisPoint& q : pts) {
    bool all_close = true;
    bool any_close = false;
    for (const auto& mem : members) {
      double dist = kInf;
      for (const HeisPoint& y : mem) {
        dist = std::min(dist, quasi_distance(q, y));
        if (dist <= eta) break;
      }
      if (dist <= eta) any_close = true;
      else all_close = false;
    }
    if (members.empty()) all_close = false;
    if (want_li ? all_close : any_close) out.push_back(q);
  }
  return out;
}

}  // namespace

std::vector<HeisPoint> kuratowski_li(const std::vector<SetPredicate>& sets,
                                     const GridWindow& grid, std::size_t tail_begin,
                                     double eta) {
  return kuratowski_estimate(sets, grid, tail_begin, eta, true);
}

std::vector<HeisPoint> kuratowski_ls(const std::vector<SetPredicate>& sets,
                                     const GridWindow& grid, std::size_t tail_begin,
                                     double eta) {
  return kuratowski_estimate(sets, grid, tail_begin, eta, false);
}

BlowUpSetResult blow_up_set(const SetPredicate& omega, const SequenceSpec& seq,
                            const GridWindow& grid, std::size_t tail_begin, double eta) {
  std::vector<SetPredicate> sets;
  for (std::size_t n = 0; n < seq.eps_schedule.size(); ++n) {
    const HeisPoint pn = seq.point(n);
    const double eps = seq.eps_schedule[n];
    sets.push_back([&omega, pn, eps](const HeisPoint& q) {
      return omega(multiply(pn, dilate(eps, q)));
    });
  }
  BlowUpSetResult res;
  res.li = kuratowski_li(sets, grid, tail_begin, eta);
  res.ls = kuratowski_ls(sets, grid, tail_begin, eta);
  return res;
}

HeisPoint sample_smooth_sphere_point(const PolygonNormData& g, std::mt19937_64& rng,
                                     double margin) {
  double box = 0.0;
  for (const PlanarVector& v : g.vertices) box = std::max({box, std::abs(v.x), std::abs(v.y)});
  std::uniform_real_distribution<double> unif(-box, box);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const PlanarVector u{unif(rng), unif(rng)};
    if (gauge_norm(g, u) >= 1.0 - 1e-6) continue;
    const bool ceiling = coin(rng) < 0.5;
    HeisPoint p(u.x, u.y, 0.0);
    if (ceiling) {
      p.z = ceiling_height(g, u);
    } else {
      p.x = -u.x;
      p.y = -u.y;
      p.z = -ceiling_height(g, u);
    }
    try {
      if (classify_sphere_point(g, p, margin).smooth()) return p;
    } catch (const Error&) {
      continue;
    }
  }
  throw Error("SamplingFailed", "could not sample a smooth sphere point");
}

PansuAuditResult pansu_audit(const PolygonNormData& g, int sample_count,
                             const std::vector<double>& eps_ladder,
                             unsigned long long seed) {
  PansuAuditResult res;
  res.eps_ladder = eps_ladder;
  res.max_err.assign(eps_ladder.size(), 0.0);
  std::mt19937_64 rng(seed);

  std::ostringstream csv;
  csv.precision(12);
  csv << "sample,x,y,z,dir,eps,fd,analytic,err\n";

  double probe_eps = 0.0;
  for (double e : eps_ladder) probe_eps = std::max(probe_eps, 2.0 * e);

  for (int sidx = 0; sidx < sample_count; ++sidx) {
    // Seam samples are excluded: the whole difference-quotient stencil must
    // stay inside one smooth panel, so resample until probe steps of twice
    // the largest eps land in the same panel as the base point.
    HeisPoint p;
    Covector beta;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 1000) throw Error("SamplingFailed", "no stencil-stable smooth sample");
      p = sample_smooth_sphere_point(g, rng, 0.02);
      beta = pansu_derivative(g, p);
      const auto panel_id = [&](const HeisPoint& pt) {
        const HeisPoint q = dilate(1.0 / d_e(g, pt), pt);
        const SpherePointClass cls = classify_sphere_point(g, q);
        if (!cls.smooth()) throw Error("Seam", "stencil point on a seam");
        if (cls.tag == SphereTag::WallInterior) return std::pair<int, int>{-1 - cls.i, 0};
        const PanelCoords c = locate_panel(g, project(q));
        return std::pair<int, int>{c.i, c.j};
      };
      bool stable = true;
      std::pair<int, int> base_id;
      try {
        base_id = panel_id(p);
      } catch (const Error&) {
        stable = false;
      }
      for (int d = 0; d < 8 && stable; ++d) {
        const double ang = d * M_PI / 4.0;
        const HeisPoint probe =
            multiply(p, dilate(probe_eps, HeisPoint(std::cos(ang), std::sin(ang), 0.0)));
        try {
          if (panel_id(probe) != base_id) stable = false;
        } catch (const Error&) {
          stable = false;
        }
      }
      if (stable) break;
    }
    for (int d = 0; d < 8; ++d) {
      const double ang = d * M_PI / 4.0;
      const HeisPoint dir(std::cos(ang), std::sin(ang), 0.0);
      const double analytic = beta(project(dir));
      for (std::size_t e = 0; e < eps_ladder.size(); ++e) {
        const double fd = fd_directional(g, p, dir, eps_ladder[e]);
        const double err = std::abs(fd - analytic);
        res.max_err[e] = std::max(res.max_err[e], err);
        csv << sidx << ',' << p.x << ',' << p.y << ',' << p.z << ',' << d << ','
            << eps_ladder[e] << ',' << fd << ',' << analytic << ',' << err << '\n';
      }
    }
  }
  res.ladder_decreasing = true;
  for (std::size_t e = 0; e + 1 < res.max_err.size(); ++e) {
    if (res.max_err[e + 1] > res.max_err[e] * 1.05 + 1e-12) res.ladder_decreasing = false;
  }
  res.csv = csv.str();
  return res;
}

}  // namespace polyheis
