// Command-line front end: generates aperiodic point sets, computes
// diffraction images and Bragg peak lists, approximates Fibonacci
// Hamiltonian spectra, and runs the invariant suite.
//
// Exit codes: 0 ok, 1 verification failure, 2 configuration error,
// 3 enumeration/matrix cap exceeded.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "aperiodic/cps.hpp"
#include "aperiodic/diffraction.hpp"
#include "aperiodic/io.hpp"
#include "aperiodic/penrose.hpp"
#include "aperiodic/schrodinger.hpp"
#include "aperiodic/substitution.hpp"
#include "aperiodic/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace aperiodic;

struct Options {
  std::string preset;
  std::string config_path;
  std::string points_path;
  std::string out_dir = "out";
  int threads = 0;
  std::string region;  // "a:b"
  double radius = 20.0;
  std::vector<double> lambdas;
  int level = 10;
  double pitch = 0.0;
  std::string sweep;  // "a:b:step"
  bool product = false;
  bool oracle = false;
  bool quick = false;
  std::string scaling;  // "k=1/3"
  double kmax = 4.0;
  std::int64_t candidate_cap = 100'000'000;
};

std::pair<double, double> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw config_error("--region expects lo:hi");
  try {
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
  } catch (const std::logic_error&) {
    throw config_error("--region expects numeric lo:hi");
  }
}

double parse_fraction(std::string s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return std::stod(s);
    return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
  } catch (const std::logic_error&) {
    throw config_error("expected a number or fraction, got '" + s + "'");
  }
}

std::vector<double> parse_sweep(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw config_error("--sweep expects lo:hi:step");
  const double lo = std::stod(parts[0]), hi = std::stod(parts[1]),
               step = std::stod(parts[2]);
  if (!(step > 0) || hi < lo) throw config_error("--sweep expects lo<=hi, step>0");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = lo + i * step;
    if (v > hi + 1e-12) break;
    out.push_back(v);
  }
  return out;
}

std::string describe(const Options& o, const std::string& cmd) {
  std::ostringstream meta;
  meta << "command=" << cmd << "\n";
  if (!o.preset.empty()) meta << "preset=" << o.preset << "\n";
  if (!o.config_path.empty()) meta << "config=" << o.config_path << "\n";
  if (!o.region.empty()) meta << "region=" << o.region << "\n";
  meta << "radius=" << format_sig12(o.radius) << "\n";
  if (o.pitch > 0) meta << "pitch=" << format_sig12(o.pitch) << "\n";
  meta << "level=" << o.level << "\n";
  return meta.str();
}

struct GeneratedPatch {
  PointSet points{1};
  // Set when the patch is a model set with an exact Bragg description.
  std::optional<CutProjectScheme> scheme;
  std::optional<Window> window;
  std::vector<std::string> notes;
};

GeneratedPatch make_patch(const Options& o) {
  GeneratedPatch out;
  GenerateOptions gen;
  gen.candidate_cap = o.candidate_cap;
  if (o.preset == "fibonacci") {
    auto [lo, hi] = parse_range(o.region.empty() ? "0:100" : o.region);
    out.scheme = fibonacci_cps();
    out.window = fibonacci_window();
    out.points = generate_model_set(*out.scheme, *out.window,
                                    Box::interval(lo, hi), gen);
  } else if (o.preset == "lattice-z2") {
    auto [lo, hi] = parse_range(o.region.empty() ? "-10:10" : o.region);
    Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(4, 4);
    CutProjectScheme s = build_cps(basis, 2, 2);
    s.builtin = true;
    s.injectivity_verified = true;
    PolygonWindow w;
    w.vertices = {{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}};
    out.scheme = s;
    out.window = Window(w);
    out.points =
        generate_model_set(*out.scheme, *out.window, Box::square(lo, hi), gen);
  } else if (o.preset == "penrose") {
    out.points = penrose_vertices(o.radius);
  } else if (o.preset == "thue-morse" || o.preset == "thue_morse") {
    auto [lo, hi] = parse_range(o.region.empty() ? "-64:64" : o.region);
    int generations = 1;
    while (two_sided_fixed_point(thue_morse_rule(), '0', '0', generations).end() <
           static_cast<std::int64_t>(hi) + 1)
      ++generations;
    const auto word = two_sided_fixed_point(thue_morse_rule(), '0', '0', generations);
    const PointSet all = ones_positions(word);
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all.point(i)[0] >= lo && all.point(i)[0] <= hi)
        out.points.add1(all.point(i)[0]);
  } else if (!o.config_path.empty()) {
    const Config cfg = Config::parse_file(o.config_path);
    CutProjectScheme s = scheme_from_config(cfg);
    const Window w = window_from_config(cfg);
    if (!s.injectivity_verified)
      out.notes.push_back(
          "warning: user-supplied scheme; injectivity of the physical "
          "projection was NOT verified");
    Box region;
    region.lo.resize(s.phys_dim);
    region.hi.resize(s.phys_dim);
    auto [lo, hi] = parse_range(o.region.empty() ? "-10:10" : o.region);
    region.lo.setConstant(lo);
    region.hi.setConstant(hi);
    out.points = generate_model_set(s, w, region, gen);
    out.scheme = s;
    out.window = w;
  } else {
    throw config_error(
        "generate: need --preset "
        "(lattice-z2|fibonacci|penrose|thue-morse) or --config");
  }
  return out;
}

int cmd_generate(const Options& o) {
  namespace fs = std::filesystem;
  fs::create_directories(o.out_dir);
  const GeneratedPatch patch = make_patch(o);
  std::vector<std::string> header;
  std::istringstream meta(describe(o, "generate"));
  std::string line;
  while (std::getline(meta, line)) header.push_back(line);
  for (const auto& n : patch.notes) header.push_back(n);
  write_file(o.out_dir + "/points.csv", pointset_to_csv(patch.points, header));

  std::string prov = "# integer lattice coordinates, one row per point\n";
  for (std::size_t i = 0; i < patch.points.size(); ++i) {
    if (!patch.points.has_provenance()) break;
    auto p = patch.points.provenance(i);
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (c) prov += ' ';
      prov += std::to_string(p[c]);
    }
    prov += '\n';
  }
  write_file(o.out_dir + "/points.provenance.txt", prov);
  for (const auto& n : patch.notes) std::cerr << n << "\n";
  std::cout << "wrote " << patch.points.size() << " points to " << o.out_dir
            << "/points.csv\n";
  return 0;
}

int cmd_diffract(const Options& o) {
  namespace fs = std::filesystem;
  fs::create_directories(o.out_dir);
  GeneratedPatch patch;
  if (!o.points_path.empty()) {
    patch.points = pointset_from_csv(read_file(o.points_path));
  } else {
    patch = make_patch(o);
  }
  const int d = patch.points.dim();
  const double pitch = o.pitch > 0 ? o.pitch : (d == 2 ? 1.0 / 64 : 1.0 / 1024);
  const GridSpec grid = GridSpec::centered(d, o.kmax, pitch);
  const IntensityGrid img = diffraction_image(patch.points, grid);

  write_file(o.out_dir + "/intensity.pgm", intensity_to_pgm16(img));
  std::ostringstream side;
  side << describe(o, "diffract");
  side << "grid.kmax=" << format_sig12(o.kmax) << "\n";
  side << "grid.pitch=" << format_sig12(pitch) << "\n";
  side << "normalization=I(k)=|S(k)|^2/N^2, I(0)=1\n";
  side << "tone_curve=v=round(65535*(I/I_max)^0.25)\n";
  write_file(o.out_dir + "/intensity.meta", side.str());

  const PeakList peaks = grid_local_maxima(img);
  write_file(o.out_dir + "/peaks.csv", peaks_to_csv(peaks, d));

  std::ostringstream report;
  report << "points=" << patch.points.size() << "\n";
  report << "numeric_peaks=" << peaks.size() << "\n";
  if (patch.scheme && patch.window) {
    const PeakList exact =
        bragg_peaks_model_set(*patch.scheme, *patch.window, o.kmax, 1e-6);
    write_file(o.out_dir + "/exact_peaks.csv",
               peaks_to_csv(exact, patch.scheme->phys_dim));
    report << "exact_peaks=" << exact.size() << "\n";
  }
  if (d == 2) {
    SymmetryOptions sopts;
    sopts.pitch = pitch;
    sopts.domain_radius = o.kmax;
    for (int fold : {4, 5, 10})
      report << "symmetry_score.fold" << fold << "="
             << format_sig12(symmetry_score(peaks, fold, sopts)) << "\n";
  }
  if (!o.scaling.empty()) {
    std::string expr = o.scaling;
    if (expr.rfind("k=", 0) == 0) expr = expr.substr(2);
    const double k = parse_fraction(expr);
    // Scaling exponent over Thue-Morse prefixes 2^8 .. 2^16, both the
    // unweighted comb and the +-1 weighted comb.
    std::string w = "0";
    while (w.size() < (1u << 16)) w = substitute(thue_morse_rule(), w);
    std::vector<WeightedComb> plain, signed_comb;
    for (int p = 8; p <= 16; ++p) {
      WeightedComb a, b;
      a.size = b.size = std::pow(2.0, p);
      for (std::size_t i = 0; i < (1u << p); ++i) {
        b.x.push_back(static_cast<double>(i));
        b.w.push_back(w[i] == '1' ? 1.0 : -1.0);
        if (w[i] == '1') a.x.push_back(static_cast<double>(i));
      }
      plain.push_back(std::move(a));
      signed_comb.push_back(std::move(b));
    }
    report << "beta.unweighted.k=" << format_sig12(k) << "="
           << format_sig12(peak_scaling_exponent(plain, k).beta) << "\n";
    report << "beta.weighted.k=" << format_sig12(k) << "="
           << format_sig12(peak_scaling_exponent(signed_comb, k).beta) << "\n";
  }
  write_file(o.out_dir + "/diffract.report", report.str());
  std::cout << report.str();
  return 0;
}

int cmd_spectrum(const Options& o) {
  namespace fs = std::filesystem;
  fs::create_directories(o.out_dir);
  const double pitch = o.pitch > 0 ? o.pitch : 1e-3;

  std::vector<double> lambdas = o.lambdas;
  if (!o.sweep.empty()) lambdas = parse_sweep(o.sweep);
  if (lambdas.empty()) throw config_error("spectrum: need --lambda or --sweep");

  const auto rows = coupling_sweep(lambdas, o.level, pitch);
  write_file(o.out_dir + "/spectrum.csv", spectrum_to_csv(rows));

  double e_min = 1e300, e_max = -1e300;
  for (const auto& row : rows) {
    const Spectrum& s = o.product ? row.two_d : row.one_d;
    e_min = std::min(e_min, s.intervals.front().lo);
    e_max = std::max(e_max, s.intervals.back().hi);
  }
  write_file(o.out_dir + (o.product ? "/raster_2d.pgm" : "/raster_1d.pgm"),
             sweep_raster_pgm16(rows, o.product, 800, e_min, e_max));
  std::ostringstream side;
  side << describe(o, "spectrum");
  side << "raster.width=800\n";
  side << "raster.e_min=" << format_sig12(e_min) << "\n";
  side << "raster.e_max=" << format_sig12(e_max) << "\n";
  side << "raster.lambda_rows=" << rows.size() << " (bottom row = smallest lambda)\n";
  write_file(o.out_dir + "/spectrum.meta", side.str());

  std::ostringstream report;
  for (const auto& row : rows) {
    report << "lambda=" << format_sig12(row.lambda)
           << " bands=" << row.one_d.intervals.size()
           << " gaps=" << row.one_d.gap_count()
           << " total_length=" << format_sig12(row.one_d.total_length())
           << " sumset_max_gap=" << format_sig12(row.two_d.max_gap()) << "\n";
    if (o.oracle) {
      const auto evs =
          direct_spectrum_oracle(row.lambda, o.level, Boundary::periodic);
      report << "lambda=" << format_sig12(row.lambda)
             << " oracle_hausdorff="
             << format_sig12(row.one_d.hausdorff_to_points(evs)) << "\n";
    }
  }
  write_file(o.out_dir + "/spectrum.report", report.str());
  std::cout << report.str();
  return 0;
}

int cmd_verify(const Options& o) {
  const auto results = run_verify(o.quick);
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
    if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
    std::cout << "\n";
    all = all && r.pass;
  }
  std::cout << (all ? "verify: all checks passed\n"
                    : "verify: FAILURES present\n");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aperiodic-order toolkit: model sets, diffraction, spectra"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--threads", o.threads, "worker thread count (0 = default)");
  };
  auto* gen = app.add_subcommand("generate", "generate a point set");
  gen->add_option("--preset", o.preset,
                  "lattice-z2 | fibonacci | penrose | thue-morse");
  gen->add_option("--config", o.config_path, "key=value scheme/window config");
  gen->add_option("--region", o.region, "physical region lo:hi (per axis)");
  gen->add_option("--radius", o.radius, "disk radius for penrose");
  gen->add_option("--cap", o.candidate_cap, "candidate enumeration cap");
  add_common(gen);

  auto* dif = app.add_subcommand("diffract", "diffraction image and peaks");
  dif->add_option("--preset", o.preset, "patch preset");
  dif->add_option("--config", o.config_path, "custom scheme config");
  dif->add_option("--points", o.points_path, "existing points.csv");
  dif->add_option("--region", o.region, "patch region lo:hi");
  dif->add_option("--radius", o.radius, "patch radius (penrose)");
  dif->add_option("--pitch", o.pitch, "k-grid pitch");
  dif->add_option("--kmax", o.kmax, "k-grid half extent");
  dif->add_option("--scaling", o.scaling,
                  "report Thue-Morse scaling exponent at k=<value>");
  add_common(dif);

  auto* spec = app.add_subcommand("spectrum", "Fibonacci Hamiltonian spectra");
  spec->add_option("--lambda", o.lambdas, "coupling constant(s)");
  spec->add_option("--level", o.level, "approximant level k");
  spec->add_option("--pitch", o.pitch, "energy grid pitch");
  spec->add_option("--sweep", o.sweep, "lambda sweep lo:hi:step");
  spec->add_flag("--product", o.product, "rasterize the 2D sumset variant");
  spec->add_flag("--oracle", o.oracle, "report Hausdorff distance to the "
                                       "direct-diagonalization oracle");
  add_common(spec);

  auto* ver = app.add_subcommand("verify", "run the invariant suite");
  ver->add_flag("--quick", o.quick, "subset completing in < 60 s");
  add_common(ver);

  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (o.threads > 0) omp_set_num_threads(o.threads);
#endif

  try {
    if (gen->parsed()) return cmd_generate(o);
    if (dif->parsed()) return cmd_diffract(o);
    if (spec->parsed()) return cmd_spectrum(o);
    if (ver->parsed()) return cmd_verify(o);
  } catch (const aperiodic::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const aperiodic::cap_exceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
