#include <doctest.h>

#include <cmath>

#include "aperiodic/pointset.hpp"
#include "aperiodic/schrodinger.hpp"

using namespace aperiodic;

TEST_CASE("fibonacci numbers") {
  CHECK(fibonacci_number(0) == 1);
  CHECK(fibonacci_number(1) == 1);
  CHECK(fibonacci_number(2) == 2);
  CHECK(fibonacci_number(5) == 8);
  CHECK(fibonacci_number(12) == 233);
}

TEST_CASE("transfer matrix: empty product, single site, determinant") {
  CHECK(transfer_matrix(0.7, 1.0, 5, 5).isIdentity(0.0));

  // Site n = 1 of the golden sequence has v_1 = 1.
  const double E = 0.3, lambda = 0.8;
  const Eigen::Matrix2d t = transfer_matrix(E, lambda, 1, 2);
  CHECK(t(0, 0) == doctest::Approx(E - lambda).epsilon(1e-15));
  CHECK(t(0, 1) == -1.0);
  CHECK(t(1, 0) == 1.0);
  CHECK(t(1, 1) == 0.0);

  // At lambda = 0 with |E| < 2 the product stays bounded (elliptic case),
  // so the unit determinant survives in floating point at any length.
  for (double e : {-1.9, 0.0, 1.3}) {
    const Eigen::Matrix2d m = transfer_matrix(e, 0.0, 1, 234);
    CHECK(m.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Growing products lose |det - 1| to cancellation at eps * max-entry^2.
  for (double e : {-2.3, 0.0, 1.9}) {
    const Eigen::Matrix2d m = transfer_matrix(e, 1.5, 1, 234);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    CHECK(std::abs(m.determinant() - 1.0) <= 1e-12 * scale * scale);
  }
}

TEST_CASE("transfer matrix over an approximant word equals the composition "
          "of its halves") {
  const double E = 0.4, lambda = 1.0;
  const Eigen::Matrix2d whole = transfer_matrix(E, lambda, 1, 100);
  const Eigen::Matrix2d right = transfer_matrix(E, lambda, 40, 100);
  const Eigen::Matrix2d left = transfer_matrix(E, lambda, 1, 40);
  CHECK((whole - right * left).norm() < 1e-10);
}

TEST_CASE("half traces agree with the transfer matrix over F_k sites") {
  const double lambda = 1.2;
  for (int level : {3, 6, 9}) {
    for (double E : {-1.7, 0.1, 2.4}) {
      const auto n = fibonacci_number(level);
      const Eigen::Matrix2d m = transfer_matrix(E, lambda, 1, n + 1);
      CHECK(half_trace(E, lambda, level) ==
            doctest::Approx(0.5 * m.trace()).epsilon(1e-9));
    }
  }
}

TEST_CASE("trace map conserves the Fricke invariant") {
  for (double lambda : {0.0, 0.5, 2.0}) {
    for (double E : {-2.1, 0.3, 1.0}) {
      const auto orbit = trace_map_orbit(E, lambda, 15);
      REQUIRE(!orbit.steps.empty());
      const double expect = lambda * lambda / 4.0;
      for (const auto& t : orbit.steps) {
        // Skip once the orbit diverges: the invariant is conserved exactly,
        // but evaluating it on huge traces loses all digits to cancellation.
        const double mag = std::max({std::abs(t.x), std::abs(t.y), std::abs(t.z)});
        if (mag > 1e3) break;
        CHECK(t.invariant() == doctest::Approx(expect).epsilon(1e-9).scale(1.0));
      }
    }
  }
}

TEST_CASE("trace orbit escapes outside the spectrum and stays bounded at "
          "lambda = 0 inside [-2,2]") {
  const auto inside = trace_map_orbit(1.0, 0.0, 40);
  CHECK(!inside.escaped);
  const auto outside = trace_map_orbit(3.0, 1.0, 60);
  CHECK(outside.escaped);
}

TEST_CASE("free spectrum: lambda = 0 approximant bands fill [-2,2]") {
  const auto s = spectrum_estimate(0.0, 8, 1e-3);
  REQUIRE(!s.intervals.empty());
  CHECK(s.intervals.front().lo == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(s.intervals.back().hi == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(s.total_length() == doctest::Approx(4.0).epsilon(1e-5));
  CHECK(s.max_gap() < 1e-6);
}

TEST_CASE("spectrum membership matches the half-trace band condition") {
  const auto s = spectrum_estimate(1.0, 8, 1e-3);
  for (double e = -3.0; e <= 3.0; e += 0.037) {
    if (s.contains(e, -1e-6))  // strictly interior
      CHECK(std::abs(half_trace(e, 1.0, 8)) <= 1.0 + 1e-9);
    if (!s.contains(e, 1e-6))  // strictly exterior
      CHECK(std::abs(half_trace(e, 1.0, 8)) > 1.0 - 1e-9);
  }
}

TEST_CASE("bands contain the periodic eigenvalue oracle") {
  const auto s = spectrum_estimate(1.5, 9, 1e-3);
  const auto eigs = direct_spectrum_oracle(1.5, 9, Boundary::periodic);
  for (double e : eigs) CHECK(s.contains(e, 1e-6));
  const auto anti = direct_spectrum_oracle(1.5, 9, Boundary::free);
  CHECK(anti.size() == static_cast<std::size_t>(fibonacci_number(9)));
}

TEST_CASE("direct oracle at lambda = 0, free boundary, has the closed form "
          "2 cos(pi j / (n+1))") {
  const int level = 7;
  const auto n = fibonacci_number(level);
  const auto eigs = direct_spectrum_oracle(0.0, level, Boundary::free);
  REQUIRE(eigs.size() == static_cast<std::size_t>(n));
  for (std::int64_t j = 1; j <= n; ++j) {
    const double expect = 2.0 * std::cos(M_PI * static_cast<double>(j) /
                                         static_cast<double>(n + 1));
    CHECK(eigs[static_cast<std::size_t>(n - j)] ==
          doctest::Approx(expect).epsilon(1e-10));
  }
  CHECK_THROWS_AS(direct_spectrum_oracle(1.0, 40, Boundary::free),
                  cap_exceeded);
}

TEST_CASE("interval union bookkeeping") {
  Spectrum s;
  s.intervals = {{0.0, 1.0}, {2.0, 2.5}, {4.0, 4.1}};
  CHECK(s.total_length() == doctest::Approx(1.6));
  CHECK(s.gap_count() == 2);
  CHECK(s.max_gap() == doctest::Approx(1.5));
  CHECK(s.contains(0.5));
  CHECK(s.contains(2.0));
  CHECK(!s.contains(1.5));
  CHECK(s.hausdorff_to_points({0.0, 0.5, 1.0, 2.25, 4.05}) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("minkowski sumset of interval unions") {
  Spectrum a, b;
  a.intervals = {{0.0, 1.0}};
  b.intervals = {{0.0, 1.0}, {3.0, 4.0}};
  const auto s = spectrum_sumset(a, b);
  REQUIRE(s.intervals.size() == 2);
  CHECK(s.intervals[0].lo == doctest::Approx(0.0));
  CHECK(s.intervals[0].hi == doctest::Approx(2.0));
  CHECK(s.intervals[1].lo == doctest::Approx(3.0));
  CHECK(s.intervals[1].hi == doctest::Approx(5.0));

  // Overlap merging: [0,1] + [0.5, 1.5] stays a single interval.
  Spectrum c;
  c.intervals = {{0.5, 1.5}};
  const auto t = spectrum_sumset(a, c);
  REQUIRE(t.intervals.size() == 1);
  CHECK(t.intervals[0].lo == doctest::Approx(0.5));
  CHECK(t.intervals[0].hi == doctest::Approx(2.5));

  // Commutativity.
  const auto s2 = spectrum_sumset(b, a);
  REQUIRE(s2.intervals.size() == s.intervals.size());
  for (std::size_t i = 0; i < s.intervals.size(); ++i) {
    CHECK(s2.intervals[i].lo == doctest::Approx(s.intervals[i].lo));
    CHECK(s2.intervals[i].hi == doctest::Approx(s.intervals[i].hi));
  }
}

TEST_CASE("band count grows like the approximant length and measure shrinks "
          "with coupling") {
  const auto s6 = spectrum_estimate(1.0, 6, 1e-3);
  const auto s8 = spectrum_estimate(1.0, 8, 1e-3);
  CHECK(s8.intervals.size() > s6.intervals.size());
  const auto weak = spectrum_estimate(0.2, 8, 1e-3);
  const auto strong = spectrum_estimate(2.0, 8, 1e-3);
  CHECK(strong.total_length() < weak.total_length());
}

TEST_CASE("coupling sweep produces one row per lambda with 2D sumsets") {
  const auto rows = coupling_sweep({0.0, 1.0}, 6, 1e-3);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].lambda == 0.0);
  CHECK(rows[1].lambda == 1.0);
  for (const auto& r : rows) {
    CHECK(r.two_d.total_length() >= r.one_d.total_length());
    // Sumset endpoints double the 1D extremes.
    CHECK(r.two_d.intervals.front().lo ==
          doctest::Approx(2 * r.one_d.intervals.front().lo).epsilon(1e-9));
    CHECK(r.two_d.intervals.back().hi ==
          doctest::Approx(2 * r.one_d.intervals.back().hi).epsilon(1e-9));
  }
}
