#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace aperiodic {

/// Thrown when an enumeration or matrix-size cap would be exceeded.
/// The CLI maps this to its own exit code, so keep it distinct from
/// generic runtime errors.
class cap_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite uniformly discrete point set in R^d (d = 1 or 2), the carrier
/// of a Dirac comb. Points generated from a cut-and-project scheme carry
/// their integer lattice coordinates as provenance.
class PointSet {
 public:
  explicit PointSet(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("PointSet: dim must be >= 1");
  }

  int dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& coords() const { return coords_; }

  bool has_provenance() const { return !provenance_.empty(); }
  std::span<const std::int64_t> provenance(std::size_t i) const {
    const std::size_t w = provenance_.size() / size();
    return {provenance_.data() + i * w, w};
  }
  std::size_t provenance_width() const {
    return empty() ? 0 : provenance_.size() / size();
  }

  void add(std::span<const double> p) {
    coords_.insert(coords_.end(), p.begin(), p.end());
  }
  void add(std::span<const double> p, std::span<const std::int64_t> prov) {
    add(p);
    provenance_.insert(provenance_.end(), prov.begin(), prov.end());
  }
  void add1(double x) { coords_.push_back(x); }

  /// Sorts points lexicographically (provenance rows follow their points).
  /// Canonical order makes parallel generation thread-count independent.
  void sort_lex();

  /// Minimum pairwise distance; uses a cell grid, O(n) for Delone-like sets.
  /// Throws on sets with fewer than two points.
  double min_pairwise_distance() const;

  /// Enforces the uniform-discreteness invariant (no pair closer than tol).
  void validate_uniform_discrete(double tol = 1e-9) const;

 private:
  int dim_;
  std::vector<double> coords_;
  std::vector<std::int64_t> provenance_;
};

/// Packing radius r and covering radius R of a patch relative to a region.
struct DeloneRadii {
  double packing;
  double covering;
};

}  // namespace aperiodic
