#include "aperiodic/penrose.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace aperiodic {

namespace {

// Physical projection rows sqrt(2/5)*(cos(2*pi*j/5), sin(2*pi*j/5)) and
// internal rows with doubled angles. Together with the invariant direction
// (1,..,1)/sqrt(5) these rows form an orthogonal matrix.
Eigen::Matrix<double, 4, 5> projection_rows() {
  Eigen::Matrix<double, 4, 5> rows;
  const double scale = std::sqrt(2.0 / 5.0);
  for (int j = 0; j < 5; ++j) {
    const double a = 2.0 * std::numbers::pi * j / 5.0;
    rows(0, j) = scale * std::cos(a);
    rows(1, j) = scale * std::sin(a);
    rows(2, j) = scale * std::cos(2.0 * a);
    rows(3, j) = scale * std::sin(2.0 * a);
  }
  return rows;
}

std::vector<Eigen::Vector2d> convex_hull(std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                  const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) -
           (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Eigen::Vector2d> hull;
  for (const auto& p : pts) {  // lower
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull.back(), p) <= 1e-12)
      hull.pop_back();
    hull.push_back(p);
  }
  const std::size_t lower = hull.size() + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper
    while (hull.size() >= lower &&
           cross(hull[hull.size() - 2], hull.back(), *it) <= 1e-12)
      hull.pop_back();
    hull.push_back(*it);
  }
  hull.pop_back();
  return hull;
}

}  // namespace

PolygonWindow penrose_window(int k) {
  if (k < 1 || k > 4) throw std::invalid_argument("penrose_window: k in 1..4");
  const auto rows = projection_rows();
  // Cross-section of the unit 5-cube at height sum = k, projected to the
  // internal plane; the window is its convex hull (a regular pentagon).
  std::vector<Eigen::Vector2d> images;
  for (unsigned mask = 0; mask < 32; ++mask) {
    if (std::popcount(mask) != k) continue;
    Eigen::Matrix<double, 5, 1> corner;
    for (int j = 0; j < 5; ++j) corner[j] = (mask >> j & 1u) ? 1.0 : 0.0;
    const auto img = rows * corner;
    images.emplace_back(img[2], img[3]);
  }
  PolygonWindow w;
  w.vertices = convex_hull(std::move(images));
  return w;
}

PointSet penrose_vertices(double radius, double radius_cap) {
  if (radius < 0) throw std::invalid_argument("penrose_vertices: radius < 0");
  if (radius > radius_cap)
    throw cap_exceeded("penrose_vertices: radius exceeds cap");
  const auto rows = projection_rows();
  const double edge_scale = std::sqrt(5.0 / 2.0);  // unit edge length
  const double unscaled_radius = radius / edge_scale;

  PointSet out(2);
  if (radius == 0.0) return out;

  // Each class sum(n) = k is the affine sublattice k*e4 + span_Z{e_j - e4},
  // a rank-4 lattice handled by the generic model-set enumerator.
  Eigen::MatrixXd basis(4, 4);
  for (int j = 0; j < 4; ++j) {
    Eigen::Matrix<double, 5, 1> f = Eigen::Matrix<double, 5, 1>::Zero();
    f[j] = 1.0;
    f[4] = -1.0;
    basis.col(j) = rows * f;
  }
  const CutProjectScheme scheme = build_cps(basis, 2, 2);

  Eigen::Matrix<double, 5, 1> e4 = Eigen::Matrix<double, 5, 1>::Zero();
  e4[4] = 1.0;
  const Eigen::Vector4d e4_image = rows * e4;

  // Generic internal shift. The unshifted windows are singular: their
  // boundaries pass through projected lattice points, and any boundary
  // convention then either overcounts vertices (coincidences at distance
  // 2 - phi) or punches holes into the tiling. A fixed generic shift keeps
  // every projected point strictly off the window boundary, which yields a
  // proper rhombic tiling: nearest-neighbor distances are exactly the edge
  // (1) and the short thin-rhomb diagonal (2 sin(pi/10)).
  const Eigen::Vector2d generic_shift(0.01 * std::sqrt(2.0),
                                      0.01 * std::sqrt(3.0));

  Box region = Box::square(-unscaled_radius, unscaled_radius);
  for (int k = 1; k <= 4; ++k) {
    GenerateOptions opts;
    opts.phys_offset = k * e4_image.head<2>();
    opts.internal_offset =
        Eigen::Vector2d(k * e4_image.tail<2>() + generic_shift);
    const Window window(penrose_window(k));
    const PointSet cls = generate_model_set(scheme, window, region, opts);
    for (std::size_t i = 0; i < cls.size(); ++i) {
      auto p = cls.point(i);
      if (p[0] * p[0] + p[1] * p[1] > unscaled_radius * unscaled_radius)
        continue;
      const double scaled[2] = {p[0] * edge_scale, p[1] * edge_scale};
      auto prov4 = cls.provenance(i);
      // Recover the Z^5 coordinates n = k*e4 + sum m_j (e_j - e4).
      std::int64_t n5[5] = {prov4[0], prov4[1], prov4[2], prov4[3],
                            k - prov4[0] - prov4[1] - prov4[2] - prov4[3]};
      out.add({scaled, 2}, {n5, 5});
    }
  }
  out.sort_lex();
  return out;
}

}  // namespace aperiodic
