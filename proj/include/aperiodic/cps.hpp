#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "aperiodic/pointset.hpp"

namespace aperiodic {

inline constexpr double kGoldenRatio = 1.6180339887498948482;

/// Axis-aligned box in R^d.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Eigen::VectorXd& x, double eps = 0.0) const {
    for (int i = 0; i < dim(); ++i)
      if (x[i] < lo[i] - eps || x[i] > hi[i] + eps) return false;
    return true;
  }
  static Box interval(double a, double b) {
    Box r;
    r.lo = Eigen::VectorXd::Constant(1, a);
    r.hi = Eigen::VectorXd::Constant(1, b);
    return r;
  }
  static Box square(double a, double b) {
    Box r;
    r.lo = Eigen::VectorXd::Constant(2, a);
    r.hi = Eigen::VectorXd::Constant(2, b);
    return r;
  }
};

/// Half-open interval window [lo, hi) in a 1D internal space.
struct IntervalWindow {
  double lo;
  double hi;
};

/// Convex polygon window in a 2D internal space, vertices in strict CCW
/// order. Boundary convention: with `closed_boundary` false (the default),
/// only the two edges adjacent to the lexicographically smallest vertex are
/// included; with it true the whole boundary is included. Either choice
/// differs on a set of Haar measure zero.
struct PolygonWindow {
  std::vector<Eigen::Vector2d> vertices;
  bool closed_boundary = false;
};

/// Compact window W in internal space with membership test, bounding box,
/// volume and closed-form Fourier transform.
class Window {
 public:
  Window(IntervalWindow w);   // NOLINT(google-explicit-constructor)
  Window(PolygonWindow w);    // NOLINT(google-explicit-constructor)

  int dim() const;
  bool empty() const;
  bool contains(const Eigen::VectorXd& y) const;
  Box bounding_box() const;
  double volume() const;

  /// F_W(kappa) = integral over W of exp(-2*pi*i kappa.y) dy.
  /// Interval: exact sinc form. Polygon: divergence-theorem edge sum with a
  /// series expansion below |kappa| < 1e-6 (the kappa -> 0 singularity is
  /// removable).
  std::complex<double> fourier(const Eigen::VectorXd& kappa) const;

  const IntervalWindow* as_interval() const {
    return std::get_if<IntervalWindow>(&shape_);
  }
  const PolygonWindow* as_polygon() const {
    return std::get_if<PolygonWindow>(&shape_);
  }

 private:
  std::variant<IntervalWindow, PolygonWindow> shape_;
};

/// Cut-and-project scheme: a nonsingular (d+m)x(d+m) basis whose columns
/// generate the lattice; the first d rows of the basis give the physical
/// projection pi, the last m rows the internal projection pi_int.
struct CutProjectScheme {
  int phys_dim;
  int internal_dim;
  Eigen::MatrixXd basis;
  Eigen::MatrixXd basis_inv;
  bool builtin = false;
  /// True when injectivity of pi on the lattice was verified exhaustively
  /// over integer vectors with entries in [-20, 20]. User-supplied schemes
  /// are never verified; the CLI surfaces this flag.
  bool injectivity_verified = false;

  int total_dim() const { return phys_dim + internal_dim; }
  double lattice_density() const { return 1.0 / std::abs(basis.determinant()); }
};

struct StarImage {
  Eigen::VectorXd physical;
  Eigen::VectorXd internal;
};

CutProjectScheme build_cps(const Eigen::MatrixXd& basis, int d, int m);

/// Physical and internal projections of the lattice point with integer
/// coordinates n. Linear in n.
StarImage star_map(const CutProjectScheme& scheme,
                   const Eigen::VectorXi& n);

struct GenerateOptions {
  std::int64_t candidate_cap = 100'000'000;
  /// Affine offsets applied to the lattice (needed for translated model
  /// sets such as the Penrose classes). Empty means zero.
  Eigen::VectorXd phys_offset;
  Eigen::VectorXd internal_offset;
};

/// All points pi(l) + phys_offset with l in the lattice, physical part in
/// `region` and internal part (plus internal_offset) in `window`.
/// Enumeration is exhaustive: the product region x window-box is pulled
/// back through basis^-1 to an integer box. Output is sorted
/// lexicographically and carries integer provenance.
PointSet generate_model_set(const CutProjectScheme& scheme,
                            const Window& window, const Box& region,
                            const GenerateOptions& opts = {});

/// Serial reference for the OpenMP enumeration above; must agree exactly.
PointSet generate_model_set_serial(const CutProjectScheme& scheme,
                                   const Window& window, const Box& region,
                                   const GenerateOptions& opts = {});

/// The canonical d=1, m=1 Fibonacci scheme: lattice
/// {(a + b*phi, a + b*(1-phi))}, star map = algebraic conjugation.
const CutProjectScheme& fibonacci_cps();
/// Canonical window [-1, phi-1) producing the Fibonacci chain with tiles
/// phi and 1.
Window fibonacci_window();

/// Dual-lattice point with its projections.
struct DualPoint {
  Eigen::VectorXd k;
  Eigen::VectorXd k_internal;
  Eigen::VectorXi coeffs;
};

/// Enumerates dual-lattice points (basis^-T Z^n) with |k| <= k_cutoff and
/// |k_internal| <= internal_cutoff; exhaustive within the cutoffs.
std::vector<DualPoint> projected_dual_points(const CutProjectScheme& scheme,
                                             double k_cutoff,
                                             double internal_cutoff,
                                             std::int64_t cap = 100'000'000);

/// Packing radius (half the min pairwise distance) and covering radius
/// (max distance from a region grid point to the patch, pitch <= r/2).
DeloneRadii delone_check(const PointSet& patch, const Box& region);

}  // namespace aperiodic
