#include "aperiodic/schrodinger.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "aperiodic/pointset.hpp"
#include "aperiodic/substitution.hpp"

namespace aperiodic {

std::int64_t fibonacci_number(int k) {
  if (k < 0) throw std::invalid_argument("fibonacci_number: k >= 0");
  std::int64_t a = 1, b = 1;  // F_0, F_1
  for (int i = 1; i < k; ++i) {
    const std::int64_t c = a + b;
    a = b;
    b = c;
  }
  return k == 0 ? a : b;
}

Eigen::Matrix2d transfer_matrix(double E, double lambda, std::int64_t n_begin,
                                std::int64_t n_end) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
  for (std::int64_t n = n_begin; n < n_end; ++n) {
    Eigen::Matrix2d t;
    t << E - lambda * fibonacci_potential(n), -1.0, 1.0, 0.0;
    m = t * m;
  }
  return m;
}

TraceOrbit trace_map_orbit(double E, double lambda, int steps) {
  if (steps < 1) throw std::invalid_argument("trace_map_orbit: steps >= 1");
  TraceOrbit orbit;
  TraceTriple t{1.0, E / 2.0, (E - lambda) / 2.0};
  orbit.steps.push_back(t);
  for (int s = 1; s < steps; ++s) {
    const double next = 2.0 * t.y * t.z - t.x;
    if (!std::isfinite(next) || std::abs(next) > 1e150) {
      orbit.escaped = true;
      break;
    }
    t = {t.y, t.z, next};
    orbit.steps.push_back(t);
  }
  return orbit;
}

double half_trace(double E, double lambda, int level) {
  if (level < 0) throw std::invalid_argument("half_trace: level >= 0");
  // x_{-1} = 1, x_0 = E/2, x_1 = (E - lambda)/2; x_{k+1} = 2 x_k x_{k-1} - x_{k-2}.
  double x = 1.0, y = E / 2.0, z = (E - lambda) / 2.0;
  if (level == 0) return y;
  for (int k = 1; k < level; ++k) {
    const double next = 2.0 * y * z - x;
    x = y;
    y = z;
    z = next;
    if (!std::isfinite(z)) return z;
  }
  return z;
}

double Spectrum::total_length() const {
  double s = 0;
  for (const auto& iv : intervals) s += iv.length();
  return s;
}

int Spectrum::gap_count() const {
  return intervals.empty() ? 0 : static_cast<int>(intervals.size()) - 1;
}

double Spectrum::max_gap() const {
  double g = 0;
  for (std::size_t i = 1; i < intervals.size(); ++i)
    g = std::max(g, intervals[i].lo - intervals[i - 1].hi);
  return g;
}

bool Spectrum::contains(double e, double eps) const {
  for (const auto& iv : intervals)
    if (e >= iv.lo - eps && e <= iv.hi + eps) return true;
  return false;
}

double Spectrum::hausdorff_to_points(const std::vector<double>& pts) const {
  // sup over the interval union of the distance to the point set; the
  // supremum is attained at an endpoint or at a midpoint between
  // consecutive points, so checking endpoints and the points' Voronoi
  // boundaries clipped to the union suffices.
  auto dist = [&](double e) {
    auto it = std::lower_bound(pts.begin(), pts.end(), e);
    double d = 1e300;
    if (it != pts.end()) d = std::min(d, *it - e);
    if (it != pts.begin()) d = std::min(d, e - *(it - 1));
    return d;
  };
  double h = 0;
  for (const auto& iv : intervals) {
    h = std::max(h, dist(iv.lo));
    h = std::max(h, dist(iv.hi));
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double mid = 0.5 * (pts[i - 1] + pts[i]);
    if (contains(mid)) h = std::max(h, dist(mid));
  }
  // Other direction: distance from each point to the interval union.
  for (double p : pts) {
    double d = 1e300;
    for (const auto& iv : intervals) {
      if (p >= iv.lo && p <= iv.hi) {
        d = 0;
        break;
      }
      d = std::min(d, std::min(std::abs(p - iv.lo), std::abs(p - iv.hi)));
    }
    h = std::max(h, d);
  }
  return h;
}

namespace {

// Word of the level-k approximant: w_0 = "0", w_1 = "1", w_k = w_{k-1} w_{k-2}.
// Equals the length-F_k prefix of the Fibonacci substitution fixed point
// (k >= 1), i.e. v_1 .. v_{F_k}.
std::vector<int> approximant_word(int level) {
  const std::int64_t f = fibonacci_number(level);
  std::vector<int> w(static_cast<std::size_t>(f));
  if (level == 0) {
    w[0] = 0;
    return w;
  }
  for (std::int64_t n = 1; n <= f; ++n)
    w[static_cast<std::size_t>(n - 1)] = fibonacci_potential(n);
  return w;
}

}  // namespace

std::vector<double> direct_spectrum_oracle(double lambda, int level,
                                           Boundary boundary,
                                           std::int64_t size_cap) {
  const std::int64_t f = fibonacci_number(level);
  if (f > size_cap)
    throw cap_exceeded("direct_spectrum_oracle: matrix size exceeds cap");
  const auto word = approximant_word(level);
  const auto n = static_cast<int>(f);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = lambda * word[static_cast<std::size_t>(i)];
    if (i + 1 < n) h(i, i + 1) = h(i + 1, i) = 1.0;
  }
  if (boundary == Boundary::periodic && n > 2) h(0, n - 1) = h(n - 1, 0) = 1.0;
  if (boundary == Boundary::periodic && n == 2) h(0, 1) = h(1, 0) = 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  std::vector<double> evs(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + n);
  std::sort(evs.begin(), evs.end());
  return evs;
}

Spectrum spectrum_estimate(double lambda, int level, double pitch) {
  if (level < 3) throw std::invalid_argument("spectrum_estimate: level >= 3");
  if (!(pitch > 0)) throw std::invalid_argument("spectrum_estimate: pitch > 0");
  const double lo = -2.0 - lambda - 0.5;
  const double hi = 2.0 + lambda + 0.5;

  auto ht = [&](double e) { return half_trace(e, lambda, level); };
  // Band condition |x_k| <= 1 with an absolute tolerance absorbing the
  // rounding noise of the trace recursion; without it, bands that touch
  // (|x_k| = 1 at the common point, as for lambda = 0) split into spurious
  // micro-gaps. Genuine gaps at the levels used here are wider by orders
  // of magnitude.
  constexpr double kBandTol = 1e-10;
  auto in_band = [&](double e) { return std::abs(ht(e)) <= 1.0 + kBandTol; };

  // Sample grid: uniform pitch, subdivided where |x_k| is small enough that
  // a band narrower than the pitch could hide, plus the periodic and
  // antiperiodic eigenvalues of the approximant block (x_k = +-1 there, so
  // every band contains at least one sample).
  std::vector<double> es;
  const auto n0 = static_cast<std::int64_t>(std::ceil((hi - lo) / pitch));
  for (std::int64_t i = 0; i <= n0; ++i)
    es.push_back(std::min(lo + pitch * static_cast<double>(i), hi));
  for (int pass = 0; pass < 2; ++pass) {
    std::sort(es.begin(), es.end());
    std::vector<double> extra;
    for (std::size_t i = 1; i < es.size(); ++i) {
      const double a = es[i - 1], b = es[i];
      if (b - a < pitch / 200.0) continue;
      if (std::min(std::abs(ht(a)), std::abs(ht(b))) < 10.0) {
        for (int j = 1; j < 10; ++j) extra.push_back(a + (b - a) * j / 10.0);
      }
    }
    if (extra.empty()) break;
    es.insert(es.end(), extra.begin(), extra.end());
  }
  if (fibonacci_number(level) <= 4000) {
    for (double e : direct_spectrum_oracle(lambda, level, Boundary::periodic))
      es.push_back(e);
    // Antiperiodic block (corner coupling -1): x_k = -1 at its eigenvalues.
    const auto word = approximant_word(level);
    const auto n = static_cast<int>(word.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      h(i, i) = lambda * word[static_cast<std::size_t>(i)];
      if (i + 1 < n) h(i, i + 1) = h(i + 1, i) = 1.0;
    }
    if (n > 2) h(0, n - 1) = h(n - 1, 0) = -1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    for (int i = 0; i < n; ++i) es.push_back(solver.eigenvalues()[i]);
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  es.erase(std::remove_if(es.begin(), es.end(),
                          [&](double e) { return e < lo || e > hi; }),
           es.end());

  std::vector<char> retained(es.size());
  for (std::size_t i = 0; i < es.size(); ++i)
    retained[i] = in_band(es[i]) ? 1 : 0;

  // Bisection on |x_k| - 1 to 1e-8.
  auto refine = [&](double inside, double outside) {
    for (int it = 0; it < 60 && std::abs(outside - inside) > 1e-8; ++it) {
      const double mid = 0.5 * (inside + outside);
      if (in_band(mid))
        inside = mid;
      else
        outside = mid;
    }
    return 0.5 * (inside + outside);
  };

  Spectrum spec;
  spec.lambda = lambda;
  spec.level = level;
  std::size_t i = 0;
  while (i < es.size()) {
    if (!retained[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < es.size() && retained[j + 1]) ++j;
    const double left =
        i > 0 ? refine(es[i], es[i - 1]) : es[i];
    const double right =
        j + 1 < es.size() ? refine(es[j], es[j + 1]) : es[j];
    spec.intervals.push_back({left, right});
    i = j + 1;
  }
  if (spec.intervals.empty())
    throw std::runtime_error(
        "spectrum_estimate: empty spectrum (energy grid bug)");
  return spec;
}

Spectrum spectrum_sumset(const Spectrum& a, const Spectrum& b) {
  if (a.intervals.empty() || b.intervals.empty())
    throw std::invalid_argument("spectrum_sumset: operands must be non-empty");
  std::vector<Interval> sums;
  for (const auto& ia : a.intervals)
    for (const auto& ib : b.intervals)
      sums.push_back({ia.lo + ib.lo, ia.hi + ib.hi});
  std::sort(sums.begin(), sums.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  Spectrum out;
  out.lambda = a.lambda;
  out.level = a.level;
  for (const auto& iv : sums) {
    if (!out.intervals.empty() && iv.lo <= out.intervals.back().hi) {
      out.intervals.back().hi = std::max(out.intervals.back().hi, iv.hi);
    } else {
      out.intervals.push_back(iv);
    }
  }
  return out;
}

std::vector<SweepRow> coupling_sweep(const std::vector<double>& lambdas,
                                     int level, double pitch) {
  std::vector<SweepRow> rows;
  rows.reserve(lambdas.size());
  for (double l : lambdas) {
    if (l < 0)
      throw std::invalid_argument("coupling_sweep: lambda must be >= 0");
    SweepRow row;
    row.lambda = l;
    row.one_d = spectrum_estimate(l, level, pitch);
    row.two_d = spectrum_sumset(row.one_d, row.one_d);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace aperiodic
