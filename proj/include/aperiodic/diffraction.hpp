#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "aperiodic/cps.hpp"
#include "aperiodic/pointset.hpp"

namespace aperiodic {

/// Difference vectors of a finite patch with volume-normalized weights.
struct AutocorrelationEstimate {
  int dim;
  double volume;
  std::vector<Eigen::VectorXd> vectors;  // sorted lexicographically
  std::vector<double> weights;           // multiplicity / volume

  /// Sum of weight(z) * exp(-2*pi*i k.z); real for symmetric estimates.
  std::complex<double> fourier(const Eigen::VectorXd& k) const;
};

/// All difference vectors x - y with norm <= max_range, binned exactly
/// (coincidence tolerance 1e-9), weights = multiplicity / volume.
AutocorrelationEstimate autocorrelation(const PointSet& patch,
                                        double max_range, double volume);

/// Regular k-grid: node(i) = origin + pitch * i per axis, i in [0, n).
struct GridSpec {
  int dim;
  Eigen::VectorXd origin;
  double pitch;
  std::vector<int> extents;

  std::size_t node_count() const {
    std::size_t n = 1;
    for (int e : extents) n *= static_cast<std::size_t>(e);
    return n;
  }
  Eigen::VectorXd node(std::size_t flat) const;

  /// Symmetric grid covering [-half, half]^dim at the given pitch.
  static GridSpec centered(int dim, double half, double pitch);
};

struct IntensityGrid {
  GridSpec spec;
  std::vector<double> values;  // row-major over extents, >= 0
};

/// Normalized structure factor I(k) = |sum exp(-2*pi*i k.x)|^2 / N^2, so
/// I(0) = 1 exactly. OpenMP-parallel over grid nodes; every node is summed
/// in input point order, so results are bit-identical for any thread count.
IntensityGrid diffraction_image(const PointSet& patch, const GridSpec& grid);

/// Serial reference implementation, kept for testing and benchmarking.
IntensityGrid diffraction_image_serial(const PointSet& patch,
                                       const GridSpec& grid);

/// I(k) at a single (arbitrary, off-grid) wave vector.
double intensity_at(const PointSet& patch, const Eigen::VectorXd& k);

struct Peak {
  Eigen::VectorXd k;
  double intensity;
  /// Dual-lattice integer coordinates for exact peaks; empty for numeric.
  Eigen::VectorXi provenance;
};
using PeakList = std::vector<Peak>;

/// Grid nodes strictly greater than all neighbors and above
/// floor_rel * max(I), with per-axis parabolic sub-pixel refinement.
/// Sorted by intensity, descending.
PeakList grid_local_maxima(const IntensityGrid& grid, double floor_rel = 1e-4);

/// Numeric peak extraction that resolves Bragg peaks much narrower than the
/// grid pitch: every grid cell is scanned at pitch/subdiv on the exact
/// point-sum I(k), candidates are polished by parabolic ascent and deduped
/// within one pitch. 1D only. Sorted by intensity, descending.
PeakList refined_local_maxima_1d(const PointSet& patch, const GridSpec& grid,
                                 int subdiv = 32, std::size_t max_peaks = 200);

/// Exact Bragg peaks of a model set: for each dual point k within the
/// cutoff, amplitude A(k) = dens(L) * F_W(-k_internal), intensity |A(k)|^2
/// (so the k = 0 intensity equals the squared point density of the model
/// set). Peaks below intensity_floor * I(0) are dropped. Sorted descending,
/// closed under k -> -k.
PeakList bragg_peaks_model_set(const CutProjectScheme& scheme,
                               const Window& window, double k_cutoff,
                               double intensity_floor);

struct SymmetryOptions {
  int top_k = 50;
  /// Pitch of the grid the peaks came from; position discrepancies up to
  /// one pitch are extraction noise and are forgiven. Use 0 for exact lists.
  double pitch = 0.0;
  /// Restrict scoring to peaks inside the centered disk of this radius so
  /// every rotated peak stays inside the sampled domain. 0 = no restriction.
  double domain_radius = 0.0;
};

/// Rotational symmetry score in [0,1] for a 2D peak configuration: each of
/// the top-K peaks is rotated by 2*pi/fold, paired with the nearest peak of
/// the full list, and position/intensity discrepancies are averaged with
/// intensity weights.
double symmetry_score(const PeakList& peaks, int fold,
                      const SymmetryOptions& opts = {});

/// A 1D weighted Dirac comb together with the patch-size label used for
/// scaling fits.
struct WeightedComb {
  double size;                 // patch size N (e.g. number of sites)
  std::vector<double> x;       // point positions
  std::vector<double> w;       // weights (empty = all ones)
};

struct ScalingFit {
  double beta;      // slope of log |S_N(k)|^2 against log N
  bool null_at_k;   // all |S_N| below 1e-12: degenerate fit
};

/// Least-squares scaling exponent of |S_N(k)|^2 over a geometrically spaced
/// family of patches. beta ~ 2 signals a Bragg peak, ~1 absolutely
/// continuous scaling, strictly between the two a singular continuous
/// signature.
ScalingFit peak_scaling_exponent(const std::vector<WeightedComb>& family,
                                 double k);

}  // namespace aperiodic
