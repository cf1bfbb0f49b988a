#ifndef POLYHEIS_POLYGON_HPP
#define POLYHEIS_POLYGON_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyheis {

// Absolute tolerance for geometric predicates on O(1) coordinates.
constexpr double kTol = 1e-9;
// A point within this distance of a seam locus is classified as a seam point.
constexpr double kSeamTol = 1e-7;

// All errors raised by the library carry a machine-readable kind string
// (e.g. "NotCentrallySymmetric") plus a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

struct PlanarVector {
  double x = 0.0;
  double y = 0.0;

  PlanarVector() = default;
  PlanarVector(double xx, double yy) : x(xx), y(yy) {}

  PlanarVector operator+(const PlanarVector& o) const { return {x + o.x, y + o.y}; }
  PlanarVector operator-(const PlanarVector& o) const { return {x - o.x, y - o.y}; }
  PlanarVector operator-() const { return {-x, -y}; }
  PlanarVector operator*(double t) const { return {t * x, t * y}; }
  double norm2() const { return std::hypot(x, y); }
};

inline PlanarVector operator*(double t, const PlanarVector& v) { return v * t; }

// The linear functional (x, y) -> a*x + b*y.
struct Covector {
  double a = 0.0;
  double b = 0.0;

  Covector() = default;
  Covector(double aa, double bb) : a(aa), b(bb) {}

  double operator()(const PlanarVector& v) const { return a * v.x + b * v.y; }
  Covector operator+(const Covector& o) const { return {a + o.a, b + o.b}; }
  Covector operator-(const Covector& o) const { return {a - o.a, b - o.b}; }
  Covector operator*(double t) const { return {t * a, t * b}; }
};

inline Covector operator*(double t, const Covector& c) { return c * t; }

// Standard symplectic form omega(a, b) = a.x*b.y - a.y*b.x.
inline double symplectic(const PlanarVector& a, const PlanarVector& b) {
  return a.x * b.y - a.y * b.x;
}

// The unique vector d with omega(d, w) = c(w) for all w.
inline PlanarVector symplectic_dual(const Covector& c) { return {c.b, -c.a}; }

// The covector omega(v, .) induced by a vector.
inline Covector symplectic_covector(const PlanarVector& v) { return {-v.y, v.x}; }

// 90-degree anticlockwise rotation J.
inline PlanarVector rot90(const PlanarVector& v) { return {-v.y, v.x}; }

// Derived data of a centrally symmetric convex polygon norm with unit disk Q.
// All index parameters below are taken modulo 2N; internal storage is 0-based.
struct PolygonNormData {
  std::vector<PlanarVector> vertices;      // v_k, anticlockwise
  std::vector<PlanarVector> edges;         // e_k = v_{k+1} - v_k
  std::vector<Covector> alphas;            // alpha_k, supporting functional of edge k
  std::vector<PlanarVector> iso_vertices;  // alpha_k^omega = e_k / omega(e_k, v_k)
  std::vector<PlanarVector> sigmas;        // sigma_k = alpha_k^omega - alpha_{k-1}^omega
  std::vector<double> sigma_norms;         // ||sigma_k|| (gauge norm), sigma_k = ||sigma_k|| v_k
  double iso_area = 0.0;                   // A(I)
  double iso_perimeter = 0.0;              // l(I), measured in the gauge norm
  double unit_iso_area = 0.0;              // A(I_1) = A(I) / l(I)^2

  int n() const { return static_cast<int>(vertices.size()); }  // 2N

  int mod(int k) const {
    int m = n();
    k %= m;
    return k < 0 ? k + m : k;
  }

  const PlanarVector& vertex(int k) const { return vertices[mod(k)]; }
  const PlanarVector& edge(int k) const { return edges[mod(k)]; }
  const Covector& alpha(int k) const { return alphas[mod(k)]; }
  const PlanarVector& iso_vertex(int k) const { return iso_vertices[mod(k)]; }
  const PlanarVector& sigma(int k) const { return sigmas[mod(k)]; }
  double sigma_norm(int k) const { return sigma_norms[mod(k)]; }

  // kappa_i > 0 with alpha_i - alpha_{i-1} = kappa_i * omega(v_i, .).
  double kappa(int i) const;
};

// Validates the polygon (2N vertices, N >= 2, centrally symmetric, strictly
// convex, anticlockwise) and derives all covector/isoperimetrix data.
// Throws Error with kind NotCentrallySymmetric, NotConvex, WrongOrientation,
// or DegenerateEdge.
PolygonNormData build_geometry(const std::vector<PlanarVector>& raw_vertices);

// Minkowski gauge of Q: max_k alpha_k(v).
double gauge_norm(const PolygonNormData& g, const PlanarVector& v);

// Gauge of the dual ball Q* (vertices alpha_k): max_k beta(v_k).
double dual_gauge(const PolygonNormData& g, const Covector& beta);

}  // namespace polyheis

#endif  // POLYHEIS_POLYGON_HPP
