#include <doctest.h>

#include <cmath>

#include "aperiodic/cps.hpp"
#include "aperiodic/diffraction.hpp"
#include "aperiodic/penrose.hpp"

using namespace aperiodic;

namespace {

PointSet integer_patch(int n) {
  PointSet ps(1);
  for (int i = 0; i < n; ++i) ps.add1(i);
  return ps;
}

Eigen::VectorXd k1(double x) {
  Eigen::VectorXd k(1);
  k[0] = x;
  return k;
}

Eigen::VectorXd k2(double x, double y) {
  Eigen::VectorXd k(2);
  k << x, y;
  return k;
}

}  // namespace

TEST_CASE("autocorrelation of an integer segment has triangular weights") {
  const auto ps = integer_patch(10);
  const auto ac = autocorrelation(ps, 9.5, 10.0);
  REQUIRE(ac.vectors.size() == 19);  // j = -9..9
  for (std::size_t i = 0; i < ac.vectors.size(); ++i) {
    const double j = ac.vectors[i][0];
    CHECK(j == std::round(j));
    CHECK(ac.weights[i] ==
          doctest::Approx((10.0 - std::abs(j)) / 10.0).epsilon(1e-14));
  }
  // Range restriction: only |j| <= 3 kept.
  const auto ac3 = autocorrelation(ps, 3.0, 10.0);
  CHECK(ac3.vectors.size() == 7);
}

TEST_CASE("autocorrelation fourier transform is real and matches |S|^2/vol") {
  const auto ps = integer_patch(10);
  const auto ac = autocorrelation(ps, 20.0, 10.0);
  for (double kv : {0.0, 0.13, 0.5, 1.7}) {
    const auto f = ac.fourier(k1(kv));
    CHECK(std::abs(f.imag()) < 1e-10);
    // Full difference set: fourier = |sum exp(-2 pi i k x)|^2 / volume.
    std::complex<double> s = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double ph = -2 * M_PI * kv * ps.point(i)[0];
      s += std::complex<double>(std::cos(ph), std::sin(ph));
    }
    CHECK(f.real() == doctest::Approx(std::norm(s) / 10.0).epsilon(1e-10));
  }
}

TEST_CASE("diffraction of a single point is flat") {
  PointSet ps(1);
  ps.add1(3.7);
  const auto img = diffraction_image(ps, GridSpec::centered(1, 2.0, 0.25));
  for (double v : img.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("diffraction of an integer segment: exact values at special k") {
  const auto ps = integer_patch(10);
  CHECK(intensity_at(ps, k1(0.0)) == 1.0);
  CHECK(intensity_at(ps, k1(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(intensity_at(ps, k1(-3.0)) == doctest::Approx(1.0).epsilon(1e-12));
  // Alternating sum of an even count cancels exactly.
  CHECK(intensity_at(ps, k1(0.5)) == doctest::Approx(0.0).epsilon(1e-12));
  // Closed form |sin(pi k N)/ (N sin(pi k))|^2 at a generic k.
  const double kv = 0.137;
  const double expect = std::pow(
      std::sin(M_PI * kv * 10) / (10 * std::sin(M_PI * kv)), 2);
  CHECK(intensity_at(ps, k1(kv)) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("diffraction grid: positivity, inversion symmetry, I(0) = 1") {
  const auto ps = generate_model_set(fibonacci_cps(), fibonacci_window(),
                                     Box::interval(0, 100));
  const auto grid = GridSpec::centered(1, 2.0, 0.125);
  const auto img = diffraction_image(ps, grid);
  const std::size_t n = img.values.size();
  REQUIRE(n == 33);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(img.values[i] >= 0.0);
    CHECK(img.values[i] ==
          doctest::Approx(img.values[n - 1 - i]).epsilon(1e-12));
  }
  CHECK(img.values[n / 2] == 1.0);  // center node is k = 0
}

TEST_CASE("parallel and serial diffraction agree bit for bit") {
  const auto ps = penrose_vertices(5.0);
  const auto grid = GridSpec::centered(2, 1.5, 0.25);
  const auto a = diffraction_image(ps, grid);
  const auto b = diffraction_image_serial(ps, grid);
  CHECK(a.values == b.values);
}

TEST_CASE("intensity is invariant under patch translation") {
  const auto ps = generate_model_set(fibonacci_cps(), fibonacci_window(),
                                     Box::interval(0, 50));
  PointSet shifted(1);
  for (std::size_t i = 0; i < ps.size(); ++i)
    shifted.add1(ps.point(i)[0] + 17.3);
  for (double kv : {0.3, 1.0, 2.236}) {
    CHECK(intensity_at(ps, k1(kv)) ==
          doctest::Approx(intensity_at(shifted, k1(kv))).epsilon(1e-10));
  }
}

TEST_CASE("grid local maxima find the Bragg comb of the integer lattice") {
  const auto ps = integer_patch(21);
  const auto img = diffraction_image(ps, GridSpec::centered(1, 2.2, 0.01));
  const auto peaks = grid_local_maxima(img, 1e-3);
  REQUIRE(peaks.size() >= 5);
  // The five strongest peaks sit at integers -2..2 with intensity 1.
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(peaks[i].k[0] - std::round(peaks[i].k[0])) < 1e-3);
    CHECK(peaks[i].intensity == doctest::Approx(1.0).epsilon(1e-6));
  }
  // Sorted descending.
  for (std::size_t i = 1; i < peaks.size(); ++i)
    CHECK(peaks[i - 1].intensity >= peaks[i].intensity);
}

TEST_CASE("bragg peaks of the fibonacci model set") {
  const auto peaks =
      bragg_peaks_model_set(fibonacci_cps(), fibonacci_window(), 3.0, 1e-4);
  REQUIRE(!peaks.empty());
  // Strongest peak is k = 0 with intensity = squared point density.
  const double dens = kGoldenRatio / std::sqrt(5.0);
  CHECK(peaks[0].k[0] == doctest::Approx(0.0));
  CHECK(peaks[0].intensity == doctest::Approx(dens * dens).epsilon(1e-12));
  // Closed under k -> -k with equal intensities; sorted descending.
  for (const auto& p : peaks) {
    bool found = false;
    for (const auto& q : peaks)
      if (std::abs(q.k[0] + p.k[0]) < 1e-12 &&
          std::abs(q.intensity - p.intensity) < 1e-12)
        found = true;
    CHECK(found);
  }
  for (std::size_t i = 1; i < peaks.size(); ++i)
    CHECK(peaks[i - 1].intensity >= peaks[i].intensity);
  CHECK_THROWS_AS(bragg_peaks_model_set(fibonacci_cps(), fibonacci_window(),
                                        3.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("numeric peaks of a fibonacci patch match the exact Bragg comb") {
  const auto patch = generate_model_set(fibonacci_cps(), fibonacci_window(),
                                        Box::interval(0, 2000));
  const auto grid = GridSpec::centered(1, 3.0, 1.0 / 64);
  const auto numeric = refined_local_maxima_1d(patch, grid, 32, 60);
  auto exact = bragg_peaks_model_set(fibonacci_cps(), fibonacci_window(),
                                     3.0, 1e-4);
  REQUIRE(numeric.size() >= 10);
  REQUIRE(exact.size() >= 10);
  const double i0_num = numeric[0].intensity;
  const double i0_ex = exact[0].intensity;
  for (std::size_t i = 0; i < 10; ++i) {
    double best_d = 1e300;
    double best_int = 0;
    for (const auto& n : numeric) {
      const double d = std::abs(n.k[0] - exact[i].k[0]);
      if (d < best_d) {
        best_d = d;
        best_int = n.intensity;
      }
    }
    CHECK(best_d <= grid.pitch);
    CHECK(std::abs(best_int / i0_num - exact[i].intensity / i0_ex) <
          0.10 * exact[i].intensity / i0_ex);
  }
}

TEST_CASE("symmetry score separates fourfold from fivefold on a square comb") {
  PeakList peaks;
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j) {
      Peak p;
      p.k = k2(i, j);
      p.intensity = 1.0;
      peaks.push_back(p);
    }
  SymmetryOptions opts;
  opts.top_k = 20;
  opts.domain_radius = 2.5;
  CHECK(symmetry_score(peaks, 4, opts) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(symmetry_score(peaks, 2, opts) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(symmetry_score(peaks, 5, opts) < 0.5);
  CHECK(symmetry_score(peaks, 10, opts) < 0.5);
}

TEST_CASE("peak scaling exponent: Bragg scaling of the integer lattice") {
  std::vector<WeightedComb> family;
  for (int p = 4; p <= 10; ++p) {
    WeightedComb c;
    c.size = std::pow(2.0, p);
    for (int i = 0; i < (1 << p); ++i) c.x.push_back(i);
    family.push_back(std::move(c));
  }
  const auto fit0 = peak_scaling_exponent(family, 0.0);
  CHECK(!fit0.null_at_k);
  CHECK(fit0.beta == doctest::Approx(2.0).epsilon(1e-9));
  const auto fit1 = peak_scaling_exponent(family, 1.0);
  CHECK(fit1.beta == doctest::Approx(2.0).epsilon(1e-9));
  // At k = 1/2 an even-length integer comb sums to exactly zero.
  const auto fit_half = peak_scaling_exponent(family, 0.5);
  CHECK(fit_half.null_at_k);
}
