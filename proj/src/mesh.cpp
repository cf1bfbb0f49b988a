#include "polyheis/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polyheis {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  if (std::abs(x) < 1e-300) x = 0.0;  // normalize -0
  os << x;
  return os.str();
}

std::array<double, 3> covector_color(const PolygonNormData& g, const Covector& beta) {
  double scale = 0.0;
  for (int k = 0; k < g.n(); ++k) {
    scale = std::max({scale, std::abs(g.alpha(k).a), std::abs(g.alpha(k).b)});
  }
  if (scale <= 0.0) scale = 1.0;
  return {0.5 + 0.45 * beta.a / scale, 0.5 + 0.45 * beta.b / scale, 0.55};
}

}  // namespace

SphereMesh sphere_mesh(const PolygonNormData& g, int samples) {
  if (samples < 2) throw Error("BadSampleCount", "samples must be >= 2");
  SphereMesh mesh;
  const int n = g.n();
  const int m = samples;

  auto add_grid = [&](const std::string& name, const Covector& key,
                      auto&& point_at /* (a,b) in [0,1]^2 -> HeisPoint */) {
    SphereMesh::Group grp;
    grp.name = name;
    grp.material = "m_" + name;
    grp.color = covector_color(g, key);
    grp.face_begin = mesh.faces.size();
    const int base = static_cast<int>(mesh.vertices.size());
    for (int ia = 0; ia < m; ++ia) {
      for (int ib = 0; ib < m; ++ib) {
        const double a = static_cast<double>(ia) / (m - 1);
        const double b = static_cast<double>(ib) / (m - 1);
        mesh.vertices.push_back(point_at(a, b));
      }
    }
    for (int ia = 0; ia + 1 < m; ++ia) {
      for (int ib = 0; ib + 1 < m; ++ib) {
        const int q00 = base + ia * m + ib;
        const int q01 = q00 + 1;
        const int q10 = q00 + m;
        const int q11 = q10 + 1;
        mesh.faces.push_back({q00, q10, q11});
        mesh.faces.push_back({q00, q11, q01});
      }
    }
    grp.face_count = mesh.faces.size() - grp.face_begin;
    mesh.groups.push_back(grp);
  };

  // Ceiling and basement panels (i, j), j != i, i+1 (star segments are
  // one-dimensional and already covered by panel closures).
  for (int i = 0; i < n; ++i) {
    for (int steps = 1; steps <= n - 2; ++steps) {
      const int j = g.mod(i + 1 + steps);
      PanelCoords mid{i, j, 0.5, 0.5, PanelSide::Ceiling};
      const Covector key = (1.0 - mid.s) * g.alpha(j - 1) + mid.s * g.alpha(j);
      const std::string tag = std::to_string(i) + "_" + std::to_string(j);
      add_grid("panel_" + tag + "_ceiling", key, [&](double a, double b) {
        PanelCoords c{i, j, a, b, PanelSide::Ceiling};
        const PlanarVector u = panel_endpoint(g, c);
        return HeisPoint(u.x, u.y, panel_height(g, c));
      });
      const Covector bkey = (1.0 - mid.r) * g.alpha(i) + mid.r * g.alpha(i - 1);
      add_grid("panel_" + tag + "_basement", bkey, [&](double a, double b) {
        PanelCoords c{i, j, a, b, PanelSide::Ceiling};
        const PlanarVector u = panel_endpoint(g, c);
        return HeisPoint(-u.x, -u.y, -panel_height(g, c));
      });
    }
  }

  // Walls: one strip per edge, z sweeping [-F^, F^] over the edge segment.
  for (int i = 0; i < n; ++i) {
    const PlanarVector vi = g.vertex(i);
    const PlanarVector vj = g.vertex(i + 1);
    const std::string name =
        "panel_" + std::to_string(i) + "_" + std::to_string(g.mod(i + 1)) + "_wall";
    add_grid(name, g.alpha(i), [&](double a, double b) {
      const PlanarVector u = (1.0 - a) * vi + a * vj;
      double bound = 0.0;
      if (a > 1e-9 && a < 1.0 - 1e-9) bound = wall_bound(g, i, u);
      return HeisPoint(u.x, u.y, (2.0 * b - 1.0) * bound);
    });
  }

  mesh.z_min = 0.0;
  mesh.z_max = 0.0;
  for (const HeisPoint& p : mesh.vertices) {
    mesh.z_min = std::min(mesh.z_min, p.z);
    mesh.z_max = std::max(mesh.z_max, p.z);
  }
  return mesh;
}

std::string to_obj(const SphereMesh& mesh, const std::string& mtl_filename) {
  std::ostringstream os;
  os << "mtllib " << mtl_filename << "\n";
  for (const HeisPoint& p : mesh.vertices) {
    os << "v " << fmt(p.x) << ' ' << fmt(p.y) << ' ' << fmt(p.z) << "\n";
  }
  for (const SphereMesh::Group& grp : mesh.groups) {
    os << "g " << grp.name << "\n";
    os << "usemtl " << grp.material << "\n";
    for (std::size_t f = grp.face_begin; f < grp.face_begin + grp.face_count; ++f) {
      const auto& tri = mesh.faces[f];
      os << "f " << tri[0] + 1 << ' ' << tri[1] + 1 << ' ' << tri[2] + 1 << "\n";
    }
  }
  return os.str();
}

std::string to_mtl(const SphereMesh& mesh) {
  std::ostringstream os;
  for (const SphereMesh::Group& grp : mesh.groups) {
    os << "newmtl " << grp.material << "\n";
    os << "Kd " << fmt(grp.color[0]) << ' ' << fmt(grp.color[1]) << ' '
       << fmt(grp.color[2]) << "\n";
  }
  return os.str();
}

}  // namespace polyheis
