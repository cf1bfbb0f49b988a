#ifndef POLYHEIS_HOROFUNCTION_HPP
#define POLYHEIS_HOROFUNCTION_HPP

#include <string>
#include <vector>

#include "polyheis/distance.hpp"
#include "polyheis/heisenberg.hpp"
#include "polyheis/polygon.hpp"
#include "polyheis/sphere.hpp"

namespace polyheis {

// Two-piece family labels of the boundary atlas:
//   psi_vee(i,s,a)   = (alpha_{i-1} - a+) v ((1-s)alpha_{i-1} + s alpha_i + a-)
//   psi_wedge(i,s,a) = (alpha_{i-1} - a-) ^ ((1-s)alpha_{i-1} + s alpha_i + a+)
//   xi_vee(i,s,a)    = (alpha_i - a+)     v ((1-s)alpha_{i-1} + s alpha_i + a-)
//   xi_wedge(i,s,a)  = (alpha_i - a-)     ^ ((1-s)alpha_{i-1} + s alpha_i + a+)
// with a+ = max(a,0), a- = min(a,0), v = max, ^ = min.
enum class TwoPieceFamily { PsiVee, PsiWedge, XiVee, XiWedge };

std::string to_string(TwoPieceFamily f);

// Canonical horofunction representative. TwoPiece members are kept only in
// the genuinely two-piece range (finite a; s in (0,1] for psi, (0,1) for xi);
// all degeneracies normalize to Linear.
struct Horofunction {
  enum class Kind { Linear, NormType, TwoPiece };
  Kind kind = Kind::Linear;
  // Linear
  Covector beta;
  // NormType: f(v,t) = ||w|| - ||w - v||
  PlanarVector w;
  // TwoPiece
  TwoPieceFamily family = TwoPieceFamily::PsiVee;
  int i = 0;
  double s = 0.0;
  double a = 0.0;

  static Horofunction linear(const Covector& b);
  static Horofunction norm_type(const PlanarVector& ww);
  // Builds and canonicalizes a two-piece member (may return Linear).
  static Horofunction two_piece(const PolygonNormData& g, TwoPieceFamily f, int i, double s,
                                double a);
};

double eval(const Horofunction& h, const HeisPoint& x, const PolygonNormData& g);

// The (C, c1, c2) presentation of the non-smooth blow-up cases; crease line
// {omega(v_i, .) = C}, constants fixed by continuity and f(0) = 0.
enum class ThresholdSide { Vertex, Pole, NorthStar, SouthStar, WallCeiling, WallBasement };

// Member of a two-piece blow-up family with crease threshold C (+-inf allowed;
// those degenerate to Linear). The interpolation parameter s is ignored for
// Vertex/Pole. For SouthStar/WallBasement, s weighs alpha_{i-1} inside the
// interpolant (1-s) alpha_i + s alpha_{i-1}.
Horofunction two_piece_from_threshold(const PolygonNormData& g, int i, double s, double C,
                                      ThresholdSide side);

// Crease threshold C of a canonical TwoPiece member.
double crease_threshold(const PolygonNormData& g, const Horofunction& h);

// The planar-boundary covector (1-s) alpha_{i-1} + s alpha_i.
Covector planar_horofunction(const PolygonNormData& g, int i, double s);

// Group action g.f = f(g^{-1} .) - f(g^{-1}); returns the canonical
// representative, verified pointwise on a probe grid.
Horofunction act(const HeisPoint& g_el, const Horofunction& h, const PolygonNormData& g);

bool is_busemann(const Horofunction& h, const PolygonNormData& g);

bool bounded_difference(const Horofunction& h1, const Horofunction& h2,
                        const PolygonNormData& g);

// Canonical orbit label under the group action (reduced-boundary class).
std::string orbit_class(const Horofunction& h, const PolygonNormData& g);

// The family of blow-up limits available at a sphere point.
struct BlowUpFamily {
  SpherePointClass cls;
  std::string parameter_space;
  bool singleton = false;
  Horofunction unique_member;  // valid when singleton

  // For non-smooth classes: the two-piece family data. Poles additionally
  // carry the NormType members over w and all 2N two-piece/linear families.
  ThresholdSide side = ThresholdSide::Vertex;
  int i = 0;
  double s = 0.0;
};

BlowUpFamily blow_up_family_at(const PolygonNormData& g, const HeisPoint& p);

// Instantiate the two-piece member with threshold C of a non-smooth family.
// For poles, `i` overrides the family index (any of the 2N families).
Horofunction family_member(const PolygonNormData& g, const BlowUpFamily& fam, double C,
                           int pole_i = -1);

}  // namespace polyheis

#endif  // POLYHEIS_HOROFUNCTION_HPP
