#include "aperiodic/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace aperiodic {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::complex<double> AutocorrelationEstimate::fourier(
    const Eigen::VectorXd& k) const {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const double phase = -kTwoPi * k.dot(vectors[i]);
    acc += weights[i] * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc;
}

AutocorrelationEstimate autocorrelation(const PointSet& patch,
                                        double max_range, double volume) {
  if (patch.empty()) throw std::invalid_argument("autocorrelation: empty patch");
  if (!(volume > 0) || !(max_range > 0))
    throw std::invalid_argument("autocorrelation: volume and range must be > 0");
  const int d = patch.dim();
  const std::size_t n = patch.size();
  std::vector<Eigen::VectorXd> diffs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto pa = patch.point(a);
      auto pb = patch.point(b);
      Eigen::VectorXd z(d);
      double s = 0;
      for (int c = 0; c < d; ++c) {
        z[c] = pa[c] - pb[c];
        s += z[c] * z[c];
      }
      if (s <= max_range * max_range) diffs.push_back(std::move(z));
    }
  std::sort(diffs.begin(), diffs.end(),
            [d](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
              for (int c = 0; c < d; ++c)
                if (a[c] != b[c]) return a[c] < b[c];
              return false;
            });
  AutocorrelationEstimate est;
  est.dim = d;
  est.volume = volume;
  // Exact binning: coincidence tolerance 1e-9 per coordinate.
  std::size_t i = 0;
  while (i < diffs.size()) {
    std::size_t j = i + 1;
    while (j < diffs.size() &&
           (diffs[j] - diffs[i]).lpNorm<Eigen::Infinity>() <= 1e-9)
      ++j;
    est.vectors.push_back(diffs[i]);
    est.weights.push_back(static_cast<double>(j - i) / volume);
    i = j;
  }
  return est;
}

Eigen::VectorXd GridSpec::node(std::size_t flat) const {
  Eigen::VectorXd k(dim);
  for (int c = dim - 1; c >= 0; --c) {
    const auto e = static_cast<std::size_t>(extents[static_cast<std::size_t>(c)]);
    k[c] = origin[c] + pitch * static_cast<double>(flat % e);
    flat /= e;
  }
  return k;
}

GridSpec GridSpec::centered(int dim, double half, double pitch) {
  GridSpec g;
  g.dim = dim;
  g.pitch = pitch;
  const int n = 2 * static_cast<int>(std::round(half / pitch)) + 1;
  g.origin = Eigen::VectorXd::Constant(dim, -pitch * ((n - 1) / 2));
  g.extents.assign(static_cast<std::size_t>(dim), n);
  return g;
}

double intensity_at(const PointSet& patch, const Eigen::VectorXd& k) {
  const int d = patch.dim();
  const std::size_t n = patch.size();
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto p = patch.point(i);
    double phase = 0.0;
    for (int c = 0; c < d; ++c) phase += k[c] * p[c];
    phase *= -kTwoPi;
    re += std::cos(phase);
    im += std::sin(phase);
  }
  const double nn = static_cast<double>(n);
  return (re * re + im * im) / (nn * nn);
}

namespace {

IntensityGrid diffraction_impl(const PointSet& patch, const GridSpec& grid,
                               bool parallel) {
  if (patch.empty())
    throw std::invalid_argument("diffraction_image: empty patch");
  IntensityGrid out;
  out.spec = grid;
  const std::size_t total = grid.node_count();
  out.values.assign(total, 0.0);
  const auto n = static_cast<std::int64_t>(total);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (std::int64_t flat = 0; flat < n; ++flat) {
    out.values[static_cast<std::size_t>(flat)] =
        intensity_at(patch, grid.node(static_cast<std::size_t>(flat)));
  }
  return out;
}

}  // namespace

IntensityGrid diffraction_image(const PointSet& patch, const GridSpec& grid) {
  return diffraction_impl(patch, grid, true);
}

IntensityGrid diffraction_image_serial(const PointSet& patch,
                                       const GridSpec& grid) {
  return diffraction_impl(patch, grid, false);
}

namespace {

// Parabolic sub-pixel offset in [-1/2, 1/2] from three samples.
double parabolic_offset(double lo, double mid, double hi) {
  const double denom = lo - 2 * mid + hi;
  if (denom >= 0) return 0.0;  // not a strict maximum of the fit
  return std::clamp(0.5 * (lo - hi) / denom, -0.5, 0.5);
}

void sort_peaks(PeakList& peaks) {
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    if (a.intensity != b.intensity) return a.intensity > b.intensity;
    for (int c = 0; c < a.k.size(); ++c)
      if (a.k[c] != b.k[c]) return a.k[c] < b.k[c];
    return false;
  });
}

}  // namespace

PeakList grid_local_maxima(const IntensityGrid& grid, double floor_rel) {
  const auto& spec = grid.spec;
  PeakList peaks;
  const double vmax =
      *std::max_element(grid.values.begin(), grid.values.end());
  const double floor = floor_rel * vmax;
  if (spec.dim == 1) {
    const int n = spec.extents[0];
    for (int i = 1; i + 1 < n; ++i) {
      const double v = grid.values[static_cast<std::size_t>(i)];
      if (v <= floor) continue;
      const double lo = grid.values[static_cast<std::size_t>(i - 1)];
      const double hi = grid.values[static_cast<std::size_t>(i + 1)];
      if (v > lo && v > hi) {
        const double off = parabolic_offset(lo, v, hi);
        Peak p;
        p.k = Eigen::VectorXd::Constant(1, spec.origin[0] +
                                               spec.pitch * (i + off));
        p.intensity = v - 0.25 * (lo - hi) * off;
        peaks.push_back(std::move(p));
      }
    }
  } else if (spec.dim == 2) {
    const int nx = spec.extents[0], ny = spec.extents[1];
    auto at = [&](int i, int j) {
      return grid.values[static_cast<std::size_t>(i) * ny +
                         static_cast<std::size_t>(j)];
    };
    for (int i = 1; i + 1 < nx; ++i)
      for (int j = 1; j + 1 < ny; ++j) {
        const double v = at(i, j);
        if (v <= floor) continue;
        bool strict = true;
        for (int di = -1; di <= 1 && strict; ++di)
          for (int dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            if (at(i + di, j + dj) >= v) {
              strict = false;
              break;
            }
          }
        if (!strict) continue;
        const double ox = parabolic_offset(at(i - 1, j), v, at(i + 1, j));
        const double oy = parabolic_offset(at(i, j - 1), v, at(i, j + 1));
        Peak p;
        p.k = Eigen::VectorXd(2);
        p.k[0] = spec.origin[0] + spec.pitch * (i + ox);
        p.k[1] = spec.origin[1] + spec.pitch * (j + oy);
        p.intensity = v - 0.25 * (at(i - 1, j) - at(i + 1, j)) * ox -
                      0.25 * (at(i, j - 1) - at(i, j + 1)) * oy;
        peaks.push_back(std::move(p));
      }
  } else {
    throw std::invalid_argument("grid_local_maxima: dim must be 1 or 2");
  }
  sort_peaks(peaks);
  return peaks;
}

PeakList refined_local_maxima_1d(const PointSet& patch, const GridSpec& grid,
                                 int subdiv, std::size_t max_peaks) {
  if (grid.dim != 1)
    throw std::invalid_argument("refined_local_maxima_1d: 1D grids only");
  const std::size_t cells = static_cast<std::size_t>(grid.extents[0]) - 1;
  const double fine_pitch = grid.pitch / subdiv;
  const std::size_t fine_n = cells * static_cast<std::size_t>(subdiv) + 1;
  std::vector<double> fine(fine_n);
  const auto fn = static_cast<std::int64_t>(fine_n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < fn; ++i) {
    Eigen::VectorXd k =
        Eigen::VectorXd::Constant(1, grid.origin[0] + fine_pitch * i);
    fine[static_cast<std::size_t>(i)] = intensity_at(patch, k);
  }

  struct Cand {
    double k, v;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 1; i + 1 < fine_n; ++i)
    if (fine[i] > fine[i - 1] && fine[i] > fine[i + 1])
      cands.push_back({grid.origin[0] + fine_pitch * static_cast<double>(i),
                       fine[i]});
  std::sort(cands.begin(), cands.end(),
            [](const Cand& a, const Cand& b) { return a.v > b.v; });
  if (cands.size() > 4 * max_peaks) cands.resize(4 * max_peaks);

  // Golden-section polish on the exact point sum within one fine cell.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  auto eval = [&](double k) {
    return intensity_at(patch, Eigen::VectorXd::Constant(1, k));
  };
  const auto nc = static_cast<std::int64_t>(cands.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t ci = 0; ci < nc; ++ci) {
    auto& cand = cands[static_cast<std::size_t>(ci)];
    double a = cand.k - fine_pitch, b = cand.k + fine_pitch;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = eval(x1), f2 = eval(x2);
    for (int it = 0; it < 40; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = eval(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = eval(x1);
      }
    }
    cand.k = 0.5 * (a + b);
    cand.v = eval(cand.k);
  }
  std::sort(cands.begin(), cands.end(),
            [](const Cand& a, const Cand& b) { return a.v > b.v; });

  // Greedy dedupe: keep the strongest representative within one pitch.
  PeakList peaks;
  for (const auto& c : cands) {
    bool close = false;
    for (const auto& p : peaks)
      if (std::abs(p.k[0] - c.k) < grid.pitch) {
        close = true;
        break;
      }
    if (close) continue;
    Peak p;
    p.k = Eigen::VectorXd::Constant(1, c.k);
    p.intensity = c.v;
    peaks.push_back(std::move(p));
    if (peaks.size() >= max_peaks) break;
  }
  return peaks;
}

PeakList bragg_peaks_model_set(const CutProjectScheme& scheme,
                               const Window& window, double k_cutoff,
                               double intensity_floor) {
  if (!(intensity_floor > 0.0))
    throw std::invalid_argument(
        "bragg_peaks_model_set: intensity_floor must be positive");
  const double dens = scheme.lattice_density();
  const double vol = window.volume();
  const double i0 = dens * dens * vol * vol;
  // |F_W(kappa)| <= C / (pi * |kappa|) with C = 1 for an interval and
  // C = perimeter/2 for a polygon, so peaks above the floor can only come
  // from internal projections below this cutoff.
  double c_w = 1.0;
  if (const auto* poly = window.as_polygon()) {
    double perim = 0.0;
    const auto& v = poly->vertices;
    for (std::size_t i = 0; i < v.size(); ++i)
      perim += (v[(i + 1) % v.size()] - v[i]).norm();
    c_w = perim / 2.0;
  }
  const double internal_cutoff =
      1.5 * c_w / (std::numbers::pi * vol * std::sqrt(intensity_floor));
  const auto duals =
      projected_dual_points(scheme, k_cutoff, internal_cutoff, 100'000'000);
  PeakList peaks;
  for (const auto& dp : duals) {
    const std::complex<double> amp = dens * window.fourier(-dp.k_internal);
    const double intensity = std::norm(amp);
    if (intensity < intensity_floor * i0) continue;
    Peak p;
    p.k = dp.k;
    p.intensity = intensity;
    p.provenance = dp.coeffs;
    peaks.push_back(std::move(p));
  }
  sort_peaks(peaks);
  return peaks;
}

double symmetry_score(const PeakList& peaks, int fold,
                      const SymmetryOptions& opts) {
  if (fold < 2) throw std::invalid_argument("symmetry_score: fold >= 2");
  if (peaks.empty()) return 0.0;
  if (peaks.front().k.size() != 2)
    throw std::invalid_argument("symmetry_score: d = 2 required");

  PeakList scored;
  for (const auto& p : peaks)
    if (opts.domain_radius <= 0.0 || p.k.norm() <= opts.domain_radius)
      scored.push_back(p);
  sort_peaks(scored);
  const std::size_t k_eff =
      std::min<std::size_t>(static_cast<std::size_t>(opts.top_k), scored.size());
  if (k_eff == 0) return 0.0;
  scored.resize(k_eff);

  // Typical configuration scale: median nearest-neighbor spacing.
  std::vector<double> nn;
  for (std::size_t i = 0; i < k_eff; ++i) {
    double best = 1e300;
    for (std::size_t j = 0; j < k_eff; ++j)
      if (j != i) best = std::min(best, (scored[i].k - scored[j].k).norm());
    nn.push_back(best);
  }
  std::nth_element(nn.begin(), nn.begin() + nn.size() / 2, nn.end());
  const double spacing = std::max(nn[nn.size() / 2], 1e-12);

  const double angle = kTwoPi / fold;
  Eigen::Matrix2d rot;
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);

  double weight_sum = 0.0, mismatch_sum = 0.0;
  for (const auto& p : scored) {
    const Eigen::Vector2d target = rot * Eigen::Vector2d(p.k[0], p.k[1]);
    double best_d = 1e300;
    double best_i = 0.0;
    for (const auto& q : peaks) {
      const double d = (Eigen::Vector2d(q.k[0], q.k[1]) - target).norm();
      if (d < best_d) {
        best_d = d;
        best_i = q.intensity;
      }
    }
    // Position error beyond one grid pitch is penalized against half the
    // peak spacing; intensity error is forgiving below 50% (finite-patch
    // sampling noise on narrow peaks).
    const double e_pos =
        std::clamp((best_d - opts.pitch) / (0.5 * spacing), 0.0, 1.0);
    const double rel_i =
        std::abs(best_i - p.intensity) / std::max(best_i, p.intensity);
    const double e_int = std::clamp((rel_i - 0.5) / 0.5, 0.0, 1.0);
    mismatch_sum += p.intensity * std::max(e_pos, e_int);
    weight_sum += p.intensity;
  }
  return 1.0 - mismatch_sum / weight_sum;
}

ScalingFit peak_scaling_exponent(const std::vector<WeightedComb>& family,
                                 double k) {
  if (family.size() < 4)
    throw std::invalid_argument(
        "peak_scaling_exponent: need >= 4 patch sizes");
  std::vector<double> lx, ly;
  bool any = false;
  for (const auto& comb : family) {
    double re = 0, im = 0;
    for (std::size_t i = 0; i < comb.x.size(); ++i) {
      const double w = comb.w.empty() ? 1.0 : comb.w[i];
      const double phase = -kTwoPi * k * comb.x[i];
      re += w * std::cos(phase);
      im += w * std::sin(phase);
    }
    const double s2 = re * re + im * im;
    // Null detection is relative to the patch size: an exactly cancelling
    // sum accumulates O(N) units of rounding noise.
    const double noise = 1e-9 * comb.size;
    if (s2 >= noise * noise) any = true;
    lx.push_back(std::log(comb.size));
    ly.push_back(std::log(std::max(s2, 1e-300)));
  }
  if (!any) return {0.0, true};
  const auto n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return {(n * sxy - sx * sy) / (n * sxx - sx * sx), false};
}

}  // namespace aperiodic
