#include "aperiodic/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace aperiodic {

void PointSet::sort_lex() {
  const std::size_t n = size();
  if (n < 2) return;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (int c = 0; c < dim_; ++c) {
      const double xa = coords_[a * dim_ + c], xb = coords_[b * dim_ + c];
      if (xa != xb) return xa < xb;
    }
    return false;
  });
  std::vector<double> nc(coords_.size());
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < dim_; ++c) nc[i * dim_ + c] = coords_[order[i] * dim_ + c];
  coords_ = std::move(nc);
  if (!provenance_.empty()) {
    const std::size_t w = provenance_.size() / n;
    std::vector<std::int64_t> np(provenance_.size());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < w; ++c)
        np[i * w + c] = provenance_[order[i] * w + c];
    provenance_ = std::move(np);
  }
}

namespace {

double min_distance_1d(const std::vector<double>& xs) {
  std::vector<double> s = xs;
  std::sort(s.begin(), s.end());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < s.size(); ++i) best = std::min(best, s[i] - s[i - 1]);
  return best;
}

double min_distance_2d(const PointSet& ps) {
  // Cell grid keyed by integer cell coordinates; cell size adapts downward
  // until at least one occupied cell has a near neighbor.
  const std::size_t n = ps.size();
  double lo0 = 1e300, hi0 = -1e300, lo1 = 1e300, hi1 = -1e300;
  for (std::size_t i = 0; i < n; ++i) {
    auto p = ps.point(i);
    lo0 = std::min(lo0, p[0]); hi0 = std::max(hi0, p[0]);
    lo1 = std::min(lo1, p[1]); hi1 = std::max(hi1, p[1]);
  }
  const double extent = std::max({hi0 - lo0, hi1 - lo1, 1e-300});
  // Expected spacing for a roughly uniform set.
  double cell = std::max(extent / std::sqrt(static_cast<double>(n)), 1e-12);
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>> grid;
  for (std::size_t i = 0; i < n; ++i) {
    auto p = ps.point(i);
    grid[{static_cast<std::int64_t>(std::floor((p[0] - lo0) / cell)),
          static_cast<std::int64_t>(std::floor((p[1] - lo1) / cell))}]
        .push_back(i);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [key, idx] : grid) {
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        auto it = grid.find({key.first + dx, key.second + dy});
        if (it == grid.end()) continue;
        for (std::size_t a : idx)
          for (std::size_t b : it->second) {
            if (b <= a) continue;
            auto pa = ps.point(a), pb = ps.point(b);
            const double d = std::hypot(pa[0] - pb[0], pa[1] - pb[1]);
            if (d < best) best = d;
          }
      }
  }
  if (std::isfinite(best) && best <= cell) return best;
  // No neighbor within one cell ring: fall back to all pairs (small sets).
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      auto pa = ps.point(a), pb = ps.point(b);
      best = std::min(best, std::hypot(pa[0] - pb[0], pa[1] - pb[1]));
    }
  return best;
}

}  // namespace

double PointSet::min_pairwise_distance() const {
  if (size() < 2)
    throw std::invalid_argument("min_pairwise_distance: need >= 2 points");
  if (dim_ == 1) return min_distance_1d(coords_);
  if (dim_ == 2) return min_distance_2d(*this);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = a + 1; b < size(); ++b) {
      double s = 0;
      for (int c = 0; c < dim_; ++c) {
        const double d = coords_[a * dim_ + c] - coords_[b * dim_ + c];
        s += d * d;
      }
      best = std::min(best, std::sqrt(s));
    }
  return best;
}

void PointSet::validate_uniform_discrete(double tol) const {
  if (size() < 2) return;
  if (min_pairwise_distance() <= tol)
    throw std::invalid_argument(
        "PointSet: points closer than the uniform-discreteness tolerance");
}

}  // namespace aperiodic
