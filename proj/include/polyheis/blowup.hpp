#ifndef POLYHEIS_BLOWUP_HPP
#define POLYHEIS_BLOWUP_HPP

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polyheis/horofunction.hpp"

namespace polyheis {

// Escape sequence p_n := p (delta_{eps^{3/4}} w2)(delta_eps w1) together with
// the rescaled points q_n = delta_{1/eps_n}(p_n^{-1}) driving horofunction
// limits f_n(x) = d(q_n, x) - d(q_n, e).
struct SequenceSpec {
  HeisPoint base;                    // p, on the unit sphere
  HeisPoint w1{0.0, 0.0, 0.0};
  HeisPoint w2{0.0, 0.0, 0.0};
  std::vector<double> eps_schedule;  // strictly decreasing to 0

  HeisPoint point(std::size_t n) const;     // p_n
  HeisPoint rescaled(std::size_t n) const;  // q_n
};

// Default geometric schedule eps_n = 2^-n, n = 4..16.
std::vector<double> default_eps_schedule();

struct GridWindow {
  double R = 3.0;
  double spacing = 0.1;
  std::vector<double> z_slices = {-1.0, 0.0, 1.0};

  std::vector<HeisPoint> points() const;
};

struct EmpiricalResult {
  std::vector<double> sup_dev;  // per schedule index, vs the prediction (if any)
  std::vector<HeisPoint> grid;
  std::vector<double> final_values;  // f_N on the grid
};

// Evaluates f_n over the grid for each n; when a predicted horofunction is
// supplied, records the sup-deviation per n.
EmpiricalResult empirical_horofunction(const PolygonNormData& g, const SequenceSpec& seq,
                                       const GridWindow& grid,
                                       const std::optional<Horofunction>& predicted);

// Builds a sequence at the non-smooth sphere point p whose empirical
// horofunction converges to the target catalogue member. Throws
// UnreachableTarget when the member does not belong to p's blow-up family.
SequenceSpec build_blowup_sequence(const PolygonNormData& g, const HeisPoint& p,
                                   const Horofunction& target);

struct VerticalDeviationRow {
  double s = 0.0;
  double max_dev = 0.0;
};

// Theorem-level check: for p_n = (w, s) the quantity
// d(p_n, x) - d(p_n, e) - (||w|| - ||w - pi(x)||) tends to 0.
std::vector<VerticalDeviationRow> vertical_sequence_deviation(
    const PolygonNormData& g, const PlanarVector& w, const std::vector<double>& s_values,
    const std::vector<HeisPoint>& probes);

using SetPredicate = std::function<bool(const HeisPoint&)>;

// Grid estimators of the Kuratowski limit inferior / superior over the tail
// [tail_begin, sets.size()): a grid point q belongs to the Li estimate when
// max_n dist(q, C_n within the window) <= eta, to the Ls estimate with min.
// Distances use the homogeneous quasi-distance max(|planar|, sqrt|z|).
std::vector<HeisPoint> kuratowski_li(const std::vector<SetPredicate>& sets,
                                     const GridWindow& grid, std::size_t tail_begin,
                                     double eta);
std::vector<HeisPoint> kuratowski_ls(const std::vector<SetPredicate>& sets,
                                     const GridWindow& grid, std::size_t tail_begin,
                                     double eta);

struct BlowUpSetResult {
  std::vector<HeisPoint> li;
  std::vector<HeisPoint> ls;
};

// Blow-up of the set Omega along the sequence: C_n = delta_{1/eps_n}(p_n^{-1} Omega).
BlowUpSetResult blow_up_set(const SetPredicate& omega, const SequenceSpec& seq,
                            const GridWindow& grid, std::size_t tail_begin, double eta);

struct PansuAuditResult {
  std::vector<double> eps_ladder;
  std::vector<double> max_err;       // per eps, over samples and directions
  bool ladder_decreasing = false;
  std::string csv;                   // one row per (sample, direction, eps)
};

// FD-vs-analytic Pansu derivative audit over random smooth sphere samples
// kept clear of the seams (margin 0.02).
PansuAuditResult pansu_audit(const PolygonNormData& g, int sample_count,
                             const std::vector<double>& eps_ladder,
                             unsigned long long seed);

// Samples a uniformly random point of the unit sphere whose classification is
// smooth with the given seam margin. Used by the audit and the test suites.
HeisPoint sample_smooth_sphere_point(const PolygonNormData& g, std::mt19937_64& rng,
                                     double margin);

}  // namespace polyheis

#endif  // POLYHEIS_BLOWUP_HPP
