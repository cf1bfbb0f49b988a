#include "polyheis/horofunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace polyheis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_psi(TwoPieceFamily f) {
  return f == TwoPieceFamily::PsiVee || f == TwoPieceFamily::PsiWedge;
}
bool is_vee(TwoPieceFamily f) {
  return f == TwoPieceFamily::PsiVee || f == TwoPieceFamily::XiVee;
}

Covector anchor_piece(const PolygonNormData& g, TwoPieceFamily f, int i) {
  return is_psi(f) ? g.alpha(i - 1) : g.alpha(i);
}

Covector interp_piece(const PolygonNormData& g, int i, double s) {
  return (1.0 - s) * g.alpha(i - 1) + s * g.alpha(i);
}

std::string fmt12(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

std::string to_string(TwoPieceFamily f) {
  switch (f) {
    case TwoPieceFamily::PsiVee: return "psi_vee";
    case TwoPieceFamily::PsiWedge: return "psi_wedge";
    case TwoPieceFamily::XiVee: return "xi_vee";
    case TwoPieceFamily::XiWedge: return "xi_wedge";
  }
  return "?";
}

Horofunction Horofunction::linear(const Covector& b) {
  Horofunction h;
  h.kind = Kind::Linear;
  h.beta = b;
  return h;
}

Horofunction Horofunction::norm_type(const PlanarVector& ww) {
  Horofunction h;
  h.kind = Kind::NormType;
  h.w = ww;
  return h;
}

Horofunction Horofunction::two_piece(const PolygonNormData& g, TwoPieceFamily f, int i,
                                     double s, double a) {
  i = g.mod(i);
  s = std::clamp(s, 0.0, 1.0);

  // Infinite a: a single linear piece survives.
  if (std::isinf(a)) {
    const bool plus = a > 0.0;
    const Covector L = interp_piece(g, i, s);
    const Covector A = anchor_piece(g, f, i);
    if (is_vee(f)) return linear(plus ? L : A);
    return linear(plus ? A : L);
  }
  // Degenerate interpolation: both pieces coincide.
  if (is_psi(f) && s <= kTol) return linear(g.alpha(i - 1));
  if (!is_psi(f) && s >= 1.0 - kTol) return linear(g.alpha(i));
  // Meridian identification: xi at s = 0 equals psi at s = 1 with a negated.
  if (!is_psi(f) && s <= kTol) {
    f = (f == TwoPieceFamily::XiVee) ? TwoPieceFamily::PsiVee : TwoPieceFamily::PsiWedge;
    s = 1.0;
    a = -a;
  }
  Horofunction h;
  h.kind = Kind::TwoPiece;
  h.family = f;
  h.i = i;
  h.s = s;
  h.a = a;
  return h;
}

double eval(const Horofunction& h, const HeisPoint& x, const PolygonNormData& g) {
  const PlanarVector v = project(x);
  switch (h.kind) {
    case Horofunction::Kind::Linear:
      return h.beta(v);
    case Horofunction::Kind::NormType:
      return gauge_norm(g, h.w) - gauge_norm(g, h.w - v);
    case Horofunction::Kind::TwoPiece: {
      const double ap = std::max(h.a, 0.0);
      const double am = std::min(h.a, 0.0);
      const double anchor = anchor_piece(g, h.family, h.i)(v);
      const double interp = interp_piece(g, h.i, h.s)(v);
      if (is_vee(h.family)) return std::max(anchor - ap, interp + am);
      return std::min(anchor - am, interp + ap);
    }
  }
  return 0.0;
}

Covector planar_horofunction(const PolygonNormData& g, int i, double s) {
  if (s < -kTol || s > 1.0 + kTol) throw Error("InvalidS", "s must lie in [0,1]");
  return interp_piece(g, g.mod(i), std::clamp(s, 0.0, 1.0));
}

Horofunction two_piece_from_threshold(const PolygonNormData& g, int i, double s, double C,
                                      ThresholdSide side) {
  i = g.mod(i);
  const double kappa = g.kappa(i);
  auto scaled = [&](double coeff) {
    // a = coeff * C with the +-inf sentinels handled explicitly.
    if (std::isinf(C)) return (C > 0.0) == (coeff > 0.0) ? kInf : -kInf;
    return coeff * C;
  };
  switch (side) {
    case ThresholdSide::Vertex:
      return Horofunction::two_piece(g, TwoPieceFamily::PsiVee, i, 1.0, scaled(-kappa));
    case ThresholdSide::Pole:
      return Horofunction::two_piece(g, TwoPieceFamily::PsiWedge, i, 1.0, scaled(-kappa));
    case ThresholdSide::NorthStar:
      if (s <= 0.0 || s > 1.0) throw Error("InvalidS", "star interpolation must be in (0,1]");
      return Horofunction::two_piece(g, TwoPieceFamily::PsiWedge, i, s, scaled(-s * kappa));
    case ThresholdSide::WallCeiling:
      if (s <= 0.0 || s > 1.0) throw Error("InvalidS", "wall interpolation must be in (0,1]");
      return Horofunction::two_piece(g, TwoPieceFamily::PsiVee, i, s, scaled(-s * kappa));
    case ThresholdSide::SouthStar:
      if (s <= 0.0 || s > 1.0) throw Error("InvalidS", "star interpolation must be in (0,1]");
      return Horofunction::two_piece(g, TwoPieceFamily::XiWedge, i, 1.0 - s, scaled(s * kappa));
    case ThresholdSide::WallBasement:
      if (s <= 0.0 || s > 1.0) throw Error("InvalidS", "wall interpolation must be in (0,1]");
      return Horofunction::two_piece(g, TwoPieceFamily::XiVee, i, 1.0 - s, scaled(s * kappa));
  }
  throw Error("InvalidS", "unknown threshold side");
}

double crease_threshold(const PolygonNormData& g, const Horofunction& h) {
  if (h.kind != Horofunction::Kind::TwoPiece) {
    throw Error("NotTwoPiece", "crease threshold requires a TwoPiece member");
  }
  const double kappa = g.kappa(h.i);
  if (is_psi(h.family)) return -h.a / (h.s * kappa);
  return h.a / ((1.0 - h.s) * kappa);
}

Horofunction act(const HeisPoint& g_el, const Horofunction& h, const PolygonNormData& g) {
  const PlanarVector u = project(g_el);
  switch (h.kind) {
    case Horofunction::Kind::Linear:
      return h;
    case Horofunction::Kind::NormType:
      return Horofunction::norm_type(h.w + u);
    case Horofunction::Kind::TwoPiece: {
      const double kappa = g.kappa(h.i);
      const double shift = is_psi(h.family)
                               ? -h.s * kappa * symplectic(g.vertex(h.i), u)
                               : (1.0 - h.s) * kappa * symplectic(g.vertex(h.i), u);
      const HeisPoint ginv = g_el.inverse();
      const double base = eval(h, ginv, g);
      auto residual = [&](const Horofunction& cand) {
        double worst = 0.0;
        for (int ix = -3; ix <= 3; ++ix) {
          for (int iy = -3; iy <= 3; ++iy) {
            const HeisPoint x(static_cast<double>(ix), static_cast<double>(iy), 0.0);
            const double want = eval(h, multiply(ginv, x), g) - base;
            worst = std::max(worst, std::abs(eval(cand, x, g) - want));
          }
        }
        return worst;
      };
      Horofunction cand = Horofunction::two_piece(g, h.family, h.i, h.s, h.a + shift);
      if (residual(cand) <= 1e-9) return cand;
      cand = Horofunction::two_piece(g, h.family, h.i, h.s, h.a - shift);
      if (residual(cand) <= 1e-9) return cand;
      throw Error("ActionFitFailed", "could not re-canonicalize the acted horofunction");
    }
  }
  return h;
}

bool is_busemann(const Horofunction& h, const PolygonNormData& g) {
  if (h.kind == Horofunction::Kind::Linear) {
    for (int i = 0; i < g.n(); ++i) {
      const Covector d = h.beta - g.alpha(i);
      if (std::abs(d.a) <= kTol && std::abs(d.b) <= kTol) return true;
    }
    return false;
  }
  if (h.kind == Horofunction::Kind::TwoPiece) {
    // Vertex families (psi_vee at s = 1) arise from wall/vertex blow-ups.
    return h.family == TwoPieceFamily::PsiVee && h.s >= 1.0 - kTol;
  }
  return false;
}

bool bounded_difference(const Horofunction& h1, const Horofunction& h2,
                        const PolygonNormData& g) {
  if (h1.kind != h2.kind) return false;
  switch (h1.kind) {
    case Horofunction::Kind::NormType:
      return true;  // |f2 - f1| <= 2 ||w2 - w1||
    case Horofunction::Kind::Linear: {
      const Covector d = h1.beta - h2.beta;
      return std::abs(d.a) <= kTol && std::abs(d.b) <= kTol;
    }
    case Horofunction::Kind::TwoPiece:
      return h1.family == h2.family && g.mod(h1.i) == g.mod(h2.i) &&
             std::abs(h1.s - h2.s) <= kTol;
  }
  return false;
}

std::string orbit_class(const Horofunction& h, const PolygonNormData& g) {
  switch (h.kind) {
    case Horofunction::Kind::NormType:
      return "norm";
    case Horofunction::Kind::Linear:
      return "linear:" + fmt12(h.beta.a) + "," + fmt12(h.beta.b);
    case Horofunction::Kind::TwoPiece:
      return "twopiece:" + to_string(h.family) + ":" + std::to_string(g.mod(h.i)) + ":" +
             fmt12(std::round(h.s * 1e9) / 1e9);
  }
  return "?";
}

BlowUpFamily blow_up_family_at(const PolygonNormData& g, const HeisPoint& p) {
  const SpherePointClass cls = classify_sphere_point(g, p);
  BlowUpFamily fam;
  fam.cls = cls;
  switch (cls.tag) {
    case SphereTag::CeilingInterior:
    case SphereTag::BasementInterior:
    case SphereTag::WallInterior:
      fam.singleton = true;
      fam.unique_member = Horofunction::linear(pansu_derivative(g, p));
      fam.parameter_space = "singleton: Pansu derivative";
      return fam;
    case SphereTag::StarTip:
      fam.singleton = true;
      fam.unique_member =
          Horofunction::linear(p.z > 0.0 ? g.alpha(cls.i - 1) : g.alpha(cls.i));
      fam.parameter_space = "singleton: star tip Pansu derivative";
      return fam;
    case SphereTag::NorthPole:
    case SphereTag::SouthPole:
      fam.side = ThresholdSide::Pole;
      fam.i = -1;  // all 2N families available; pick via family_member's pole_i
      fam.s = 1.0;
      fam.parameter_space =
          "NormType over w in R^2; two-piece pole families over (i, C); linear alpha_i";
      return fam;
    case SphereTag::Vertex:
      fam.side = ThresholdSide::Vertex;
      fam.i = cls.i;
      fam.s = 1.0;
      fam.parameter_space = "two-piece vertex family over C in [-inf, inf]";
      return fam;
    case SphereTag::NorthStarSeam:
      fam.side = ThresholdSide::NorthStar;
      fam.i = cls.i;
      fam.s = cls.param;
      fam.parameter_space = "two-piece north-star family over C, interpolation s = r";
      return fam;
    case SphereTag::SouthStarSeam:
      fam.side = ThresholdSide::SouthStar;
      fam.i = cls.i;
      fam.s = cls.param;
      fam.parameter_space = "two-piece south-star family over C, interpolation s = r";
      return fam;
    case SphereTag::WallCeilingSeam:
      fam.side = ThresholdSide::WallCeiling;
      fam.i = g.mod(cls.i + 1);
      fam.s = cls.param;
      fam.parameter_space = "two-piece wall-ceiling family over C";
      return fam;
    case SphereTag::WallBasementSeam:
      fam.side = ThresholdSide::WallBasement;
      fam.i = cls.i;
      fam.s = cls.param;
      fam.parameter_space = "two-piece wall-basement family over C";
      return fam;
  }
  throw Error("NotOnSphere", "unclassifiable point");
}

Horofunction family_member(const PolygonNormData& g, const BlowUpFamily& fam, double C,
                           int pole_i) {
  if (fam.singleton) {
    throw Error("UnreachableTarget", "smooth classes have a unique blow-up");
  }
  const int i = (fam.side == ThresholdSide::Pole && pole_i >= 0) ? pole_i
                : (fam.i >= 0 ? fam.i : 0);
  return two_piece_from_threshold(g, i, fam.s, C, fam.side);
}

}  // namespace polyheis
