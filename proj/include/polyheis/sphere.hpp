#ifndef POLYHEIS_SPHERE_HPP
#define POLYHEIS_SPHERE_HPP

#include <string>

#include "polyheis/heisenberg.hpp"
#include "polyheis/polygon.hpp"

namespace polyheis {

enum class PanelSide { Ceiling, Basement, Wall, Star };

// Identifies a panel of the unit sphere and trace-path parameters.
//  - ceiling/basement: j not in {i, i+1}; u(r,s) per the trace-path formula.
//  - wall: j = i+1; u is the convex combination of v_i and v_{i+1} with
//    weights r||sigma_i|| : s||sigma_{i+1}||, canonicalized to max(r,s) = 1.
//  - star: j = i, s = 0; u(r) runs from the star tip at r = 0 to the origin
//    (pole axis) at r = 1.
struct PanelCoords {
  int i = 0;
  int j = 0;
  double r = 0.0;
  double s = 0.0;
  PanelSide side = PanelSide::Ceiling;
};

enum class SphereTag {
  CeilingInterior,
  BasementInterior,
  WallInterior,
  NorthPole,
  SouthPole,
  Vertex,            // i
  NorthStarSeam,     // i, param = star coordinate r (0 = tip, 1 = pole)
  SouthStarSeam,     // i, param = star coordinate r
  StarTip,           // i
  WallCeilingSeam,   // i = wall index, param = wall s-coordinate
  WallBasementSeam,  // i = wall index, param = wall r-coordinate
};

struct SpherePointClass {
  SphereTag tag = SphereTag::CeilingInterior;
  int i = 0;          // index where applicable
  double param = 0.0; // seam parameter where applicable

  bool smooth() const {
    return tag == SphereTag::CeilingInterior || tag == SphereTag::BasementInterior ||
           tag == SphereTag::WallInterior || tag == SphereTag::StarTip;
  }
};

std::string to_string(const SpherePointClass& c);

// Endpoint u(r,s) = (r sigma_i + sigma_ij + s sigma_j) / mu of the trace path.
PlanarVector panel_endpoint(const PolygonNormData& g, const PanelCoords& c);

// Balayage height phi(r,s) of the rescaled trace path; for wall coords this
// equals the wall height bound at the endpoint.
double panel_height(const PolygonNormData& g, const PanelCoords& c);

// Maximal |t| over v reachable by beelines: F^_i(v) = omega(v_i,v) omega(v,v_{i+1})
// / (2 omega(v_i,v_{i+1})) for v in the cone C_i^+.
double wall_bound(const PolygonNormData& g, int i, const PlanarVector& v);

// Inverse point location in the closed disk Q. Deterministic tie-break on
// shared panel boundaries: star, then wall, then lexicographically smallest
// (i, (j-i) mod 2N).
PanelCoords locate_panel(const PolygonNormData& g, const PlanarVector& w);

// Ceiling height Phi(w) = panel_height(locate_panel(w)); basement depth is the
// same by the inverse symmetry (v,t) -> (-v,-t).
double ceiling_height(const PolygonNormData& g, const PlanarVector& w);

// Distance from -v_i to the far end of the star segment, divided by |v_i|:
// the star segment of index i is { -c v_i : c in [0, star_reach(i)] }.
double star_reach(const PolygonNormData& g, int i);

bool unit_ball_contains(const PolygonNormData& g, const HeisPoint& p);

// Taxonomy of a point on the unit sphere (|d_e(p) - 1| <= 1e-6 required).
// seam_tol widens/narrows the seam bracket (default kSeamTol).
SpherePointClass classify_sphere_point(const PolygonNormData& g, const HeisPoint& p,
                                       double seam_tol = kSeamTol);

}  // namespace polyheis

#endif  // POLYHEIS_SPHERE_HPP
