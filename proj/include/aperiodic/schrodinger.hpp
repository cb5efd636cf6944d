#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace aperiodic {

/// Word length F_k of the level-k Fibonacci approximant:
/// F_0 = F_1 = 1, F_k = F_{k-1} + F_{k-2}.
std::int64_t fibonacci_number(int k);

/// Ordered transfer-matrix product T(n_end-1) * ... * T(n_begin) with
/// T(n) = [[E - lambda*v_n, -1], [1, 0]]; determinant 1.
Eigen::Matrix2d transfer_matrix(double E, double lambda, std::int64_t n_begin,
                                std::int64_t n_end);

struct TraceTriple {
  double x, y, z;
  /// Fricke invariant x^2 + y^2 + z^2 - 2xyz - 1; equals lambda^2/4 along
  /// every Fibonacci trace-map orbit.
  double invariant() const { return x * x + y * y + z * z - 2 * x * y * z - 1; }
};

struct TraceOrbit {
  std::vector<TraceTriple> steps;
  bool escaped = false;  // orbit truncated after exceeding the overflow guard
};

/// Orbit of (x,y,z) -> (y, z, 2yz - x) from (1, E/2, (E-lambda)/2).
TraceOrbit trace_map_orbit(double E, double lambda, int steps);

/// Half-trace x_k(E) of the level-k approximant transfer matrix.
double half_trace(double E, double lambda, int level);

struct Interval {
  double lo, hi;
  double length() const { return hi - lo; }
};

/// Finite union of disjoint closed intervals, sorted ascending.
struct Spectrum {
  std::vector<Interval> intervals;
  double lambda = 0.0;
  int level = 0;

  double total_length() const;
  int gap_count() const;
  double max_gap() const;
  bool contains(double e, double eps = 0.0) const;
  /// Largest distance from a point of this union to the given sorted set.
  double hausdorff_to_points(const std::vector<double>& pts) const;
};

/// Level-k periodic-approximant spectrum: E is retained iff |x_k(E)| <= 1,
/// retained runs are merged into intervals and the endpoints refined by
/// bisection to 1e-8. The energy grid is the uniform pitch grid over
/// [-2-lambda-0.5, 2+lambda+0.5], locally subdivided where |x_k| is small
/// so that bands narrower than the pitch are not missed.
Spectrum spectrum_estimate(double lambda, int level, double pitch);

enum class Boundary { periodic, free };

/// All eigenvalues (sorted) of the F_k x F_k tridiagonal matrix with
/// diagonal lambda*v_n (n = 1..F_k), off-diagonal 1, plus corner entries
/// for periodic boundary. Independent oracle for spectrum_estimate.
std::vector<double> direct_spectrum_oracle(double lambda, int level,
                                           Boundary boundary,
                                           std::int64_t size_cap = 4000);

/// Minkowski sum of two interval unions, merged into disjoint intervals.
/// This is the spectrum of the Cartesian-product operator at the same
/// approximant level.
Spectrum spectrum_sumset(const Spectrum& a, const Spectrum& b);

struct SweepRow {
  double lambda;
  Spectrum one_d;
  Spectrum two_d;  // sumset of one_d with itself
};

/// Per-lambda 1D and 2D-sumset spectra, suitable for rasterization with
/// energy horizontal and lambda vertical.
std::vector<SweepRow> coupling_sweep(const std::vector<double>& lambdas,
                                     int level, double pitch);

}  // namespace aperiodic
