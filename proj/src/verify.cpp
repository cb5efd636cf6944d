#include "aperiodic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "aperiodic/cps.hpp"
#include "aperiodic/diffraction.hpp"
#include "aperiodic/io.hpp"
#include "aperiodic/penrose.hpp"
#include "aperiodic/schrodinger.hpp"
#include "aperiodic/substitution.hpp"

namespace aperiodic {

namespace {

// Deterministic quasi-random doubles in [0,1); no seeds anywhere.
double qrand(int i) {
  const double v = 0.5 + i * 0.6180339887498949;
  return v - std::floor(v);
}

PointSet fibonacci_patch(double lo, double hi) {
  return generate_model_set(fibonacci_cps(), fibonacci_window(),
                            Box::interval(lo, hi));
}

struct Check {
  std::string name;
  bool quick;
  std::function<bool(std::string&)> fn;
};

std::vector<Check> make_checks() {
  std::vector<Check> checks;

  checks.push_back({"star_map linearity (1e-12 relative)", true, [](std::string& d) {
    const auto& s = fibonacci_cps();
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      Eigen::VectorXi a(2), b(2);
      a << static_cast<int>(qrand(i) * 40) - 20, static_cast<int>(qrand(i + 100) * 40) - 20;
      b << static_cast<int>(qrand(i + 200) * 40) - 20, static_cast<int>(qrand(i + 300) * 40) - 20;
      const auto sa = star_map(s, a), sb = star_map(s, b), sab = star_map(s, a + b);
      const double scale = std::max(1.0, sab.physical.norm() + sab.internal.norm());
      worst = std::max(worst, (sa.physical + sb.physical - sab.physical).norm() / scale);
      worst = std::max(worst, (sa.internal + sb.internal - sab.internal).norm() / scale);
    }
    d = "max relative deviation " + format_sig12(worst);
    return worst <= 1e-12;
  }});

  checks.push_back({"model-set membership consistency", true, [](std::string& d) {
    const auto& s = fibonacci_cps();
    const Window w = fibonacci_window();
    const PointSet ps = fibonacci_patch(0, 500);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      Eigen::VectorXi n(2);
      n << static_cast<int>(ps.provenance(i)[0]), static_cast<int>(ps.provenance(i)[1]);
      if (!w.contains(star_map(s, n).internal)) return false;
    }
    const PointSet serial = generate_model_set_serial(s, w, Box::interval(0, 500));
    d = std::to_string(ps.size()) + " points, parallel == serial";
    return ps.coords() == serial.coords();
  }});

  checks.push_back({"window monotonicity (W1 in W2 => subset)", true, [](std::string& d) {
    const auto& s = fibonacci_cps();
    const PointSet small =
        generate_model_set(s, Window(IntervalWindow{-0.5, 0.3}), Box::interval(0, 300));
    const PointSet big = fibonacci_patch(0, 300);
    for (std::size_t i = 0; i < small.size(); ++i) {
      bool found = false;
      for (std::size_t j = 0; j < big.size(); ++j)
        if (std::abs(small.point(i)[0] - big.point(j)[0]) < 1e-12) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    d = std::to_string(small.size()) + " in " + std::to_string(big.size());
    return true;
  }});

  checks.push_back({"crystallographic control: Z^2 scheme stays in Z", true, [](std::string& d) {
    CutProjectScheme s = build_cps(Eigen::MatrixXd::Identity(2, 2), 1, 1);
    const PointSet ps = generate_model_set(s, Window(IntervalWindow{-0.5, 0.5}),
                                           Box::interval(0, 10));
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (ps.point(i)[0] != std::round(ps.point(i)[0])) return false;
    d = std::to_string(ps.size()) + " integer points";
    return ps.size() == 11;
  }});

  checks.push_back({"transfer matrix det = 1 (1e-12, entry-scaled)", true,
                    [](std::string& d) {
    // det(ad - bc) loses eps * max|entry|^2 to cancellation, so the pinned
    // tolerance is applied relative to that floor.
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      const double e = -3 + 6 * qrand(i);
      const double l = 4 * qrand(i + 50);
      const auto m = transfer_matrix(e, l, 1, 1 + fibonacci_number(10));
      const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
      worst = std::max(worst, std::abs(m.determinant() - 1.0) / (scale * scale));
    }
    d = "max |det - 1| / max-entry^2 = " + format_sig12(worst);
    return worst <= 1e-12;
  }});

  checks.push_back({"Fricke invariant conservation (1e-9)", true, [](std::string& d) {
    double worst = 0;
    for (int i = 0; i < 40; ++i) {
      const double e = -3 + 6 * qrand(i);
      const double l = 8 * qrand(i + 50);
      const double target = l * l / 4.0;
      const auto orbit = trace_map_orbit(e, l, 30);
      for (const auto& t : orbit.steps) {
        // Stop once traces diverge: the conserved quantity is then pure
        // cancellation noise in floating point.
        if (std::max({std::abs(t.x), std::abs(t.y), std::abs(t.z)}) > 1e3)
          break;
        worst = std::max(worst,
                         std::abs(t.invariant() - target) / std::max(1.0, target));
      }
    }
    d = "max relative drift " + format_sig12(worst);
    return worst <= 1e-9;
  }});

  checks.push_back({"diffraction positivity and inversion symmetry (1e-12)", true,
                    [](std::string& d) {
    const PointSet ps = fibonacci_patch(0, 200);
    const auto grid = GridSpec::centered(1, 2.0, 1.0 / 128);
    const auto img = diffraction_image(ps, grid);
    const int n = grid.extents[0];
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      if (img.values[static_cast<std::size_t>(i)] < 0) return false;
      worst = std::max(worst, std::abs(img.values[static_cast<std::size_t>(i)] -
                                       img.values[static_cast<std::size_t>(n - 1 - i)]));
    }
    d = "max |I(k) - I(-k)| = " + format_sig12(worst);
    return worst <= 1e-12;
  }});

  checks.push_back({"translation invariance of I(k) (1e-10)", true, [](std::string& d) {
    const PointSet ps = fibonacci_patch(0, 200);
    PointSet shifted(1);
    for (std::size_t i = 0; i < ps.size(); ++i) shifted.add1(ps.point(i)[0] + 17.375);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      Eigen::VectorXd k = Eigen::VectorXd::Constant(1, -3 + 6 * qrand(i));
      worst = std::max(worst, std::abs(intensity_at(ps, k) - intensity_at(shifted, k)));
    }
    d = "max deviation " + format_sig12(worst);
    return worst <= 1e-10;
  }});

  checks.push_back({"autocorrelation symmetry weight(z) = weight(-z)", true,
                    [](std::string& d) {
    const PointSet ps = fibonacci_patch(0, 100);
    const auto est = autocorrelation(ps, 50.0, 100.0);
    for (std::size_t i = 0; i < est.vectors.size(); ++i) {
      bool found = false;
      for (std::size_t j = 0; j < est.vectors.size(); ++j)
        if (std::abs(est.vectors[j][0] + est.vectors[i][0]) <= 1e-9 &&
            est.weights[i] == est.weights[j]) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    d = std::to_string(est.vectors.size()) + " difference vectors";
    return true;
  }});

  checks.push_back({"spectral symmetry at lambda = 0 (1e-8)", true, [](std::string& d) {
    const Spectrum s = spectrum_estimate(0.0, 8, 1e-3);
    double worst = 0;
    for (const auto& iv : s.intervals)
      for (double e : {iv.lo, iv.hi}) {
        double best = 1e300;
        for (const auto& jv : s.intervals)
          best = std::min({best, std::abs(-e - jv.lo), std::abs(-e - jv.hi)});
        worst = std::max(worst, best);
      }
    d = "max endpoint asymmetry " + format_sig12(worst);
    return worst <= 1e-8;
  }});

  checks.push_back({"oracle containment (level 10, inflation 1e-6)", true,
                    [](std::string& d) {
    const Spectrum s = spectrum_estimate(1.0, 10, 1e-3);
    const auto evs = direct_spectrum_oracle(1.0, 10, Boundary::periodic);
    for (double e : evs)
      if (!s.contains(e, 1e-6)) {
        d = "eigenvalue " + format_sig12(e) + " escapes band union";
        return false;
      }
    d = std::to_string(evs.size()) + " eigenvalues inside " +
        std::to_string(s.intervals.size()) + " bands";
    return true;
  }});

  checks.push_back({"sumset commutativity and monotonicity", true, [](std::string& d) {
    Spectrum a, b, a2;
    a.intervals = {{0, 1}, {3, 4}};
    b.intervals = {{0.5, 0.7}, {2, 2.5}};
    a2.intervals = {{0, 1.5}, {3, 4}};
    const Spectrum ab = spectrum_sumset(a, b);
    const Spectrum ba = spectrum_sumset(b, a);
    if (ab.intervals.size() != ba.intervals.size()) return false;
    for (std::size_t i = 0; i < ab.intervals.size(); ++i)
      if (ab.intervals[i].lo != ba.intervals[i].lo ||
          ab.intervals[i].hi != ba.intervals[i].hi)
        return false;
    const Spectrum a2b = spectrum_sumset(a2, b);
    for (const auto& iv : ab.intervals)
      for (double e : {iv.lo, iv.hi, 0.5 * (iv.lo + iv.hi)})
        if (!a2b.contains(e)) return false;
    d = "A+B == B+A, A+B within A'+B";
    return true;
  }});

  checks.push_back({"Fibonacci equivalence: rotation sequence == substitution", true,
                    [](std::string& d) {
    std::string fixed = "1";
    while (fixed.size() < 100000) fixed = substitute(fibonacci_rule(), fixed);
    fixed.resize(100000);
    const std::string rot = rotation_sequence(1, 100001, (std::sqrt(5.0) - 1) / 2);
    d = "100000 letters";
    return rot == fixed;
  }});

  checks.push_back({"Thue-Morse letter discrepancy <= log2(N) + 2", true,
                    [](std::string& d) {
    std::string w = "0";
    for (int g = 0; g < 16; ++g) w = substitute(thue_morse_rule(), w);
    for (int p = 1; p <= 16; ++p) {
      const std::size_t n = 1u << p;
      const auto ones = static_cast<double>(
          std::count(w.begin(), w.begin() + static_cast<long>(n), '1'));
      if (std::abs(ones - n / 2.0) > p + 2) return false;
    }
    d = "prefixes up to 2^16";
    return true;
  }});

  checks.push_back({"fixed-point property of two-sided words", true, [](std::string& d) {
    const auto rule = thue_morse_rule();
    const auto w3 = two_sided_fixed_point(rule, '0', '0', 3);
    const auto w4 = two_sided_fixed_point(rule, '0', '0', 4);
    for (std::int64_t i = w3.begin; i < w3.end(); ++i)
      if (w3.at(i) != w4.at(i)) return false;
    d = "generations 3 and 4 agree on overlap";
    return true;
  }});

  checks.push_back({"abelianization: counts of sub(w) = M * counts(w)", true,
                    [](std::string& d) {
    for (const auto& rule : {thue_morse_rule(), fibonacci_rule()}) {
      const Eigen::MatrixXi m = incidence_matrix(rule);
      std::string w = "0110100";
      for (int it = 0; it < 5; ++it) {
        Eigen::VectorXi counts = Eigen::VectorXi::Zero(2);
        for (char c : w) counts[c - '0']++;
        const std::string sw = substitute(rule, w);
        Eigen::VectorXi scounts = Eigen::VectorXi::Zero(2);
        for (char c : sw) scounts[c - '0']++;
        if (scounts != m * counts) return false;
        w = sw;
      }
    }
    d = "exact integer identity over 5 iterations";
    return true;
  }});

  checks.push_back({"model set matches substitution chain (1e-9)", true,
                    [](std::string& d) {
    const PointSet model = fibonacci_patch(0, 200);
    std::string fixed = "1";
    while (fixed.size() < 300) fixed = substitute(fibonacci_rule(), fixed);
    const PointSet chain = geometric_realization(
        fixed, {{'1', kGoldenRatio}, {'0', 1.0}});
    const double shift = model.point(0)[0] - chain.point(0)[0];
    double worst = 0;
    for (std::size_t i = 0; i < model.size(); ++i) {
      if (i >= chain.size()) return false;
      worst = std::max(worst,
                       std::abs(model.point(i)[0] - (chain.point(i)[0] + shift)));
    }
    d = std::to_string(model.size()) + " points, max deviation " + format_sig12(worst);
    return worst <= 1e-9;
  }});

  checks.push_back({"band measure non-increasing in lambda (level 10)", false,
                    [](std::string& d) {
    double prev = 1e300;
    std::ostringstream oss;
    for (double l : {0.0, 1.0, 2.0, 4.0, 8.0}) {
      const double len = spectrum_estimate(l, 10, 1e-3).total_length();
      oss << " " << format_sig12(len);
      if (len > prev + 1e-9) return false;
      prev = len;
    }
    d = "total lengths:" + oss.str();
    return true;
  }});

  checks.push_back({"Penrose local structure (edge/diagonal distances)", false,
                    [](std::string& d) {
    const PointSet ps = penrose_vertices(12.0);
    const double short_diag = 2.0 * std::sin(M_PI / 10.0);
    std::size_t edges = 0, diags = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double x = ps.point(i)[0], y = ps.point(i)[1];
      if (x * x + y * y > 10.0 * 10.0) continue;  // stay clear of the rim
      double best = 1e300;
      for (std::size_t j = 0; j < ps.size(); ++j) {
        if (j == i) continue;
        const double dx = ps.point(j)[0] - x, dy = ps.point(j)[1] - y;
        best = std::min(best, std::hypot(dx, dy));
      }
      if (std::abs(best - 1.0) <= 1e-9)
        ++edges;
      else if (std::abs(best - short_diag) <= 1e-9)
        ++diags;
      else
        return false;
      // Z^5 provenance must sit on one of the four admissible classes.
      auto prov = ps.provenance(i);
      std::int64_t sum = 0;
      for (std::size_t c = 0; c < prov.size(); ++c) sum += prov[c];
      if (sum < 1 || sum > 4) return false;
    }
    d = std::to_string(edges) + " edge neighbors, " + std::to_string(diags) +
        " short-diagonal neighbors";
    return edges > 0 && diags > 0;
  }});

  checks.push_back({"Penrose diffraction tenfold symmetry (score >= 0.95)",
                    false, [](std::string& d) {
    const PointSet ps = penrose_vertices(10.0);
    const GridSpec grid = GridSpec::centered(2, 3.0, 1.0 / 32);
    const auto peaks = grid_local_maxima(diffraction_image(ps, grid), 1e-4);
    SymmetryOptions opts;
    opts.pitch = grid.pitch;
    opts.domain_radius = 2.5;
    const double score10 = symmetry_score(peaks, 10, opts);
    d = "fold-10 score " + format_sig12(score10);
    return score10 >= 0.95;
  }});

  checks.push_back({"Wiener consistency (autocorrelation vs |S|^2, 10%)", false,
                    [](std::string& d) {
    const PointSet ps = fibonacci_patch(0, 1500);  // > 1000 points
    const double volume = 1500.0;
    const auto est = autocorrelation(ps, 1501.0, volume);
    const auto n = static_cast<double>(ps.size());
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      Eigen::VectorXd k = Eigen::VectorXd::Constant(1, -2 + 4 * qrand(i));
      const double lhs = est.fourier(k).real();
      const double rhs = intensity_at(ps, k) * n * n / volume;
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-9));
    }
    d = "max relative deviation " + format_sig12(worst);
    return worst <= 0.10;
  }});

  return checks;
}

}  // namespace

std::vector<CheckResult> run_verify(bool quick) {
  std::vector<CheckResult> results;
  for (const auto& check : make_checks()) {
    if (quick && !check.quick) continue;
    CheckResult r;
    r.name = check.name;
    try {
      r.pass = check.fn(r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace aperiodic
