#include "aperiodic/cps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aperiodic {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cplx = std::complex<double>;

// E(u) = integral_0^1 exp(-2*pi*i*u*t) dt, analytic at u = 0.
cplx phase_integral(double u) {
  if (std::abs(u) < 1e-8) {
    const cplx a(0.0, -kTwoPi * u);
    return 1.0 + a / 2.0 + a * a / 6.0;
  }
  const cplx num = 1.0 - std::exp(cplx(0.0, -kTwoPi * u));
  return num / cplx(0.0, kTwoPi * u);
}
}  // namespace

Window::Window(IntervalWindow w) : shape_(w) {
  if (!(w.lo <= w.hi)) throw std::invalid_argument("Window: requires lo <= hi");
}

Window::Window(PolygonWindow w) : shape_(std::move(w)) {
  const auto& poly = std::get<PolygonWindow>(shape_);
  const std::size_t n = poly.vertices.size();
  if (n < 3) throw std::invalid_argument("Window: polygon needs >= 3 vertices");
  // Strictly convex, counterclockwise.
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly.vertices[i];
    const auto& b = poly.vertices[(i + 1) % n];
    const auto& c = poly.vertices[(i + 2) % n];
    const double cr = (b.x() - a.x()) * (c.y() - a.y()) -
                      (b.y() - a.y()) * (c.x() - a.x());
    if (cr <= 0.0)
      throw std::invalid_argument(
          "Window: polygon must be strictly convex and counterclockwise");
  }
}

int Window::dim() const { return as_interval() ? 1 : 2; }

bool Window::empty() const {
  if (const auto* iv = as_interval()) return iv->hi <= iv->lo;
  return false;
}

bool Window::contains(const Eigen::VectorXd& y) const {
  if (const auto* iv = as_interval()) {
    return y[0] >= iv->lo && y[0] < iv->hi;
  }
  const auto& poly = *as_polygon();
  const std::size_t n = poly.vertices.size();
  double scale = 0.0;
  for (const auto& v : poly.vertices) scale = std::max(scale, v.lpNorm<Eigen::Infinity>());
  const double tol = 1e-12 * std::max(scale, 1.0);

  // Lexicographically smallest vertex; its two adjacent edges are closed.
  std::size_t smallest = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const auto& a = poly.vertices[i];
    const auto& b = poly.vertices[smallest];
    if (a.x() < b.x() || (a.x() == b.x() && a.y() < b.y())) smallest = i;
  }
  bool on_open_edge = false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly.vertices[i];
    const auto& b = poly.vertices[(i + 1) % n];
    const double cr =
        (b.x() - a.x()) * (y[1] - a.y()) - (b.y() - a.y()) * (y[0] - a.x());
    if (cr < -tol) return false;
    if (cr <= tol) {
      const bool closed = poly.closed_boundary || i == smallest ||
                          (i + 1) % n == smallest;
      if (!closed) on_open_edge = true;
    }
  }
  return !on_open_edge;
}

Box Window::bounding_box() const {
  Box b;
  if (const auto* iv = as_interval()) {
    b.lo = Eigen::VectorXd::Constant(1, iv->lo);
    b.hi = Eigen::VectorXd::Constant(1, iv->hi);
    return b;
  }
  const auto& poly = *as_polygon();
  b.lo = Eigen::VectorXd::Constant(2, std::numeric_limits<double>::infinity());
  b.hi = Eigen::VectorXd::Constant(2, -std::numeric_limits<double>::infinity());
  for (const auto& v : poly.vertices)
    for (int c = 0; c < 2; ++c) {
      b.lo[c] = std::min(b.lo[c], v[c]);
      b.hi[c] = std::max(b.hi[c], v[c]);
    }
  return b;
}

double Window::volume() const {
  if (const auto* iv = as_interval()) return iv->hi - iv->lo;
  const auto& v = as_polygon()->vertices;
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

std::complex<double> Window::fourier(const Eigen::VectorXd& kappa) const {
  if (const auto* iv = as_interval()) {
    const double len = iv->hi - iv->lo;
    return len * std::exp(cplx(0.0, -kTwoPi * kappa[0] * iv->lo)) *
           phase_integral(kappa[0] * len);
  }
  const auto& v = as_polygon()->vertices;
  const std::size_t n = v.size();
  const double k2 = kappa.squaredNorm();
  if (std::sqrt(k2) < 1e-6) {
    // Series around kappa = 0 from the polygon moments (shoelace forms);
    // truncation error is O(|kappa|^3 * diam^3 * area), negligible here.
    double area = 0, mx = 0, my = 0, mxx = 0, myy = 0, mxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = v[i];
      const auto& q = v[(i + 1) % n];
      const double cr = p.x() * q.y() - q.x() * p.y();
      area += cr / 2.0;
      mx += (p.x() + q.x()) * cr / 6.0;
      my += (p.y() + q.y()) * cr / 6.0;
      mxx += (p.x() * p.x() + p.x() * q.x() + q.x() * q.x()) * cr / 12.0;
      myy += (p.y() * p.y() + p.y() * q.y() + q.y() * q.y()) * cr / 12.0;
      mxy += (2 * p.x() * p.y() + p.x() * q.y() + q.x() * p.y() +
              2 * q.x() * q.y()) *
             cr / 24.0;
    }
    const double kx = kappa[0], ky = kappa[1];
    const double quad = kx * kx * mxx + 2 * kx * ky * mxy + ky * ky * myy;
    return cplx(area - 2 * std::numbers::pi * std::numbers::pi * quad,
                -kTwoPi * (kx * mx + ky * my));
  }
  // Divergence theorem: div(exp(-2*pi*i k.y) * k) = -2*pi*i |k|^2 f.
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d p = v[i];
    const Eigen::Vector2d q = v[(i + 1) % n];
    const Eigen::Vector2d e = q - p;
    const double len = e.norm();
    const Eigen::Vector2d outward(e.y() / len, -e.x() / len);
    const double kn = kappa[0] * outward.x() + kappa[1] * outward.y();
    const double kp = kappa[0] * p.x() + kappa[1] * p.y();
    const double ke = kappa[0] * e.x() + kappa[1] * e.y();
    acc += kn * len * std::exp(cplx(0.0, -kTwoPi * kp)) * phase_integral(ke);
  }
  return acc / cplx(0.0, -kTwoPi * k2);
}

CutProjectScheme build_cps(const Eigen::MatrixXd& basis, int d, int m) {
  if (d < 1 || m < 1) throw std::invalid_argument("build_cps: d, m must be >= 1");
  const int n = d + m;
  if (basis.rows() != n || basis.cols() != n)
    throw std::invalid_argument("build_cps: basis must be (d+m) x (d+m)");
  const double det = basis.determinant();
  double norm_pow = 1.0;
  for (int i = 0; i < n; ++i) norm_pow *= basis.norm();
  if (std::abs(det) <= 1e-12 * norm_pow)
    throw std::invalid_argument(
        "build_cps: basis is singular (columns do not span R^(d+m))");
  CutProjectScheme s;
  s.phys_dim = d;
  s.internal_dim = m;
  s.basis = basis;
  s.basis_inv = basis.inverse();
  return s;
}

StarImage star_map(const CutProjectScheme& scheme, const Eigen::VectorXi& n) {
  if (n.size() != scheme.total_dim())
    throw std::invalid_argument("star_map: coordinate vector has wrong size");
  const Eigen::VectorXd image = scheme.basis * n.cast<double>();
  return {image.head(scheme.phys_dim), image.tail(scheme.internal_dim)};
}

namespace {

// Integer bounding box of the preimage of `target` under y = B*v + offset.
struct IntBox {
  std::vector<std::int64_t> lo, hi;
  std::int64_t count() const {
    std::int64_t c = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (hi[i] < lo[i]) return 0;
      c *= hi[i] - lo[i] + 1;
    }
    return c;
  }
};

IntBox pullback_box(const Eigen::MatrixXd& basis_inv, const Box& target,
                    const Eigen::VectorXd& offset) {
  const int n = target.dim();
  Eigen::VectorXd mn = Eigen::VectorXd::Constant(n, 1e300);
  Eigen::VectorXd mx = Eigen::VectorXd::Constant(n, -1e300);
  for (unsigned corner = 0; corner < (1u << n); ++corner) {
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i)
      c[i] = (corner >> i & 1u) ? target.hi[i] : target.lo[i];
    const Eigen::VectorXd u = basis_inv * (c - offset);
    mn = mn.cwiseMin(u);
    mx = mx.cwiseMax(u);
  }
  IntBox box;
  box.lo.resize(n);
  box.hi.resize(n);
  for (int i = 0; i < n; ++i) {
    box.lo[i] = static_cast<std::int64_t>(std::ceil(mn[i] - 1e-9));
    box.hi[i] = static_cast<std::int64_t>(std::floor(mx[i] + 1e-9));
  }
  return box;
}

PointSet generate_impl(const CutProjectScheme& scheme, const Window& window,
                       const Box& region, const GenerateOptions& opts,
                       bool parallel) {
  const int d = scheme.phys_dim, m = scheme.internal_dim, n = d + m;
  if (region.dim() != d)
    throw std::invalid_argument("generate_model_set: region dimension mismatch");
  if (window.dim() != m)
    throw std::invalid_argument("generate_model_set: window dimension mismatch");
  PointSet out(d);
  if (window.empty()) return out;

  Eigen::VectorXd offset = Eigen::VectorXd::Zero(n);
  if (opts.phys_offset.size()) offset.head(d) = opts.phys_offset;
  if (opts.internal_offset.size()) offset.tail(m) = opts.internal_offset;

  const Box wbox = window.bounding_box();
  Box target;
  target.lo.resize(n);
  target.hi.resize(n);
  target.lo.head(d) = region.lo;
  target.hi.head(d) = region.hi;
  target.lo.tail(m) = wbox.lo;
  target.hi.tail(m) = wbox.hi;

  const IntBox box = pullback_box(scheme.basis_inv, target, offset);
  const std::int64_t count = box.count();
  if (count > opts.candidate_cap)
    throw cap_exceeded("generate_model_set: candidate count " +
                       std::to_string(count) + " exceeds cap " +
                       std::to_string(opts.candidate_cap));
  if (count == 0) return out;

  const std::int64_t slab_count = box.hi[0] - box.lo[0] + 1;
  std::vector<PointSet> slabs(static_cast<std::size_t>(slab_count), PointSet(d));

  // Every slab is an independent pure enumeration; writes go to per-slab
  // buckets that are concatenated in slab order, so the result does not
  // depend on the thread count.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (std::int64_t s = 0; s < slab_count; ++s) {
    PointSet& bucket = slabs[static_cast<std::size_t>(s)];
    Eigen::VectorXi v(n);
    v[0] = static_cast<int>(box.lo[0] + s);
    std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i) idx[i] = box.lo[i];
    while (true) {
      for (int i = 1; i < n; ++i) v[i] = static_cast<int>(idx[i]);
      const Eigen::VectorXd image = scheme.basis * v.cast<double>() + offset;
      const Eigen::VectorXd phys = image.head(d);
      const Eigen::VectorXd internal = image.tail(m);
      if (region.contains(phys) && window.contains(internal)) {
        std::vector<std::int64_t> prov(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) prov[static_cast<std::size_t>(i)] = v[i];
        bucket.add({phys.data(), static_cast<std::size_t>(d)}, prov);
      }
      int axis = n - 1;
      for (; axis >= 1; --axis) {
        if (++idx[static_cast<std::size_t>(axis)] <= box.hi[axis]) break;
        idx[static_cast<std::size_t>(axis)] = box.lo[axis];
      }
      if (axis == 0) break;
      if (n == 1) break;
    }
  }
  for (const auto& bucket : slabs)
    for (std::size_t i = 0; i < bucket.size(); ++i)
      out.add(bucket.point(i), bucket.provenance(i));
  out.sort_lex();
  return out;
}

}  // namespace

PointSet generate_model_set(const CutProjectScheme& scheme,
                            const Window& window, const Box& region,
                            const GenerateOptions& opts) {
  return generate_impl(scheme, window, region, opts, true);
}

PointSet generate_model_set_serial(const CutProjectScheme& scheme,
                                   const Window& window, const Box& region,
                                   const GenerateOptions& opts) {
  return generate_impl(scheme, window, region, opts, false);
}

const CutProjectScheme& fibonacci_cps() {
  static const CutProjectScheme scheme = [] {
    Eigen::MatrixXd basis(2, 2);
    basis << 1.0, kGoldenRatio, 1.0, 1.0 - kGoldenRatio;
    CutProjectScheme s = build_cps(basis, 1, 1);
    s.builtin = true;
    // Exhaustive injectivity check of pi on coordinates in [-20, 20]^2:
    // all projected values a + b*phi must be pairwise distinct.
    std::vector<double> values;
    values.reserve(41 * 41);
    for (int a = -20; a <= 20; ++a)
      for (int b = -20; b <= 20; ++b) values.push_back(a + b * kGoldenRatio);
    std::sort(values.begin(), values.end());
    for (std::size_t i = 1; i < values.size(); ++i)
      if (values[i] - values[i - 1] <= 1e-9)
        throw std::logic_error("fibonacci_cps: projection not injective");
    s.injectivity_verified = true;
    return s;
  }();
  return scheme;
}

Window fibonacci_window() {
  return Window(IntervalWindow{-1.0, kGoldenRatio - 1.0});
}

std::vector<DualPoint> projected_dual_points(const CutProjectScheme& scheme,
                                             double k_cutoff,
                                             double internal_cutoff,
                                             std::int64_t cap) {
  if (!(k_cutoff > 0) || !(internal_cutoff > 0))
    throw std::invalid_argument("projected_dual_points: cutoffs must be positive");
  const int d = scheme.phys_dim, m = scheme.internal_dim, n = d + m;
  const Eigen::MatrixXd dual = scheme.basis_inv.transpose();
  Box target;
  target.lo = Eigen::VectorXd(n);
  target.hi = Eigen::VectorXd(n);
  target.lo.head(d).setConstant(-k_cutoff);
  target.hi.head(d).setConstant(k_cutoff);
  target.lo.tail(m).setConstant(-internal_cutoff);
  target.hi.tail(m).setConstant(internal_cutoff);
  const IntBox box = pullback_box(scheme.basis.transpose(), target,
                                  Eigen::VectorXd::Zero(n));
  const std::int64_t count = box.count();
  if (count > cap)
    throw cap_exceeded("projected_dual_points: candidate count exceeds cap");

  std::vector<DualPoint> out;
  std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = box.lo[i];
  if (count == 0) return out;
  while (true) {
    Eigen::VectorXi q(n);
    for (int i = 0; i < n; ++i) q[i] = static_cast<int>(idx[static_cast<std::size_t>(i)]);
    const Eigen::VectorXd image = dual * q.cast<double>();
    const Eigen::VectorXd k = image.head(d);
    const Eigen::VectorXd ki = image.tail(m);
    if (k.norm() <= k_cutoff && ki.norm() <= internal_cutoff)
      out.push_back({k, ki, q});
    int axis = n - 1;
    for (; axis >= 0; --axis) {
      if (++idx[static_cast<std::size_t>(axis)] <= box.hi[axis]) break;
      idx[static_cast<std::size_t>(axis)] = box.lo[axis];
    }
    if (axis < 0) break;
  }
  return out;
}

DeloneRadii delone_check(const PointSet& patch, const Box& region) {
  if (patch.empty())
    throw std::invalid_argument("delone_check: empty patch");
  if (patch.size() < 2)
    throw std::invalid_argument("delone_check: need >= 2 points");
  patch.validate_uniform_discrete();
  const double r = patch.min_pairwise_distance() / 2.0;
  const int d = patch.dim();
  const double pitch = r / 2.0;

  // Covering radius: max over a pitch <= r/2 grid of region points of the
  // distance to the nearest patch point.
  std::vector<std::int64_t> counts(static_cast<std::size_t>(d));
  std::size_t total = 1;
  for (int c = 0; c < d; ++c) {
    counts[static_cast<std::size_t>(c)] =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                      std::ceil((region.hi[c] - region.lo[c]) / pitch)) + 1);
    total *= static_cast<std::size_t>(counts[static_cast<std::size_t>(c)]);
  }
  if (total > 50'000'000u)
    throw cap_exceeded("delone_check: covering grid too large");

  double covering = 0.0;
  std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
  Eigen::VectorXd g(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (int c = 0; c < d; ++c)
      g[c] = std::min(region.lo[c] + pitch * idx[static_cast<std::size_t>(c)],
                      region.hi[c]);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < patch.size(); ++i) {
      auto p = patch.point(i);
      double s = 0;
      for (int c = 0; c < d; ++c) s += (g[c] - p[c]) * (g[c] - p[c]);
      best = std::min(best, s);
    }
    covering = std::max(covering, std::sqrt(best));
    for (int c = d - 1; c >= 0; --c) {
      if (++idx[static_cast<std::size_t>(c)] < counts[static_cast<std::size_t>(c)]) break;
      idx[static_cast<std::size_t>(c)] = 0;
    }
  }
  return {r, covering};
}

}  // namespace aperiodic
