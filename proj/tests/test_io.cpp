#include <doctest.h>

#include <cstdint>
#include <sstream>

#include "aperiodic/io.hpp"

using namespace aperiodic;

TEST_CASE("config parsing: comments, quotes, typed accessors") {
  const auto cfg = Config::parse_string(
      "# a comment\n"
      "d = 1\n"
      "window.kind = interval   # trailing comment\n"
      "window.data = \"-1 0.618\"\n"
      "pitch=0.015625\n"
      "\n");
  CHECK(cfg.get_int("d") == 1);
  CHECK(cfg.get("window.kind") == "interval");
  CHECK(cfg.get("window.data") == "-1 0.618");
  CHECK(cfg.get_double("pitch") == 0.015625);
  CHECK(cfg.get_or("missing", "fallback") == "fallback");
  CHECK_THROWS_AS(cfg.get("missing"), config_error);
  CHECK_THROWS_AS(cfg.get_double("window.kind"), config_error);
  CHECK_THROWS_AS(Config::parse_string("novalue\n"), config_error);
}

TEST_CASE("scheme and window from config") {
  const auto cfg = Config::parse_string(
      "d = 1\nm = 1\n"
      "basis = 1 1.6180339887498949 1 -0.6180339887498949\n"
      "window.kind = interval\n"
      "window.data = -1 0.6180339887498949\n");
  const auto scheme = scheme_from_config(cfg);
  CHECK(scheme.phys_dim == 1);
  CHECK(scheme.internal_dim == 1);
  CHECK(!scheme.injectivity_verified);
  const auto window = window_from_config(cfg);
  CHECK(window.dim() == 1);
  CHECK(window.volume() == doctest::Approx(kGoldenRatio).epsilon(1e-12));

  const auto bad = Config::parse_string("d = 1\nm = 1\nbasis = 1 1 1 1\n");
  CHECK_THROWS_AS(scheme_from_config(bad), config_error);

  const auto poly = Config::parse_string(
      "window.kind = polygon\nwindow.data = 0 0  1 0  1 1  0 1\n");
  CHECK(window_from_config(poly).volume() == doctest::Approx(1.0));
}

TEST_CASE("substitution rule from config") {
  const auto cfg = Config::parse_string("rule.0 = 01\nrule.1 = 10\n");
  const auto rule = rule_from_config(cfg);
  CHECK(rule.image('0') == "01");
  CHECK(rule.image('1') == "10");
  CHECK_THROWS_AS(rule_from_config(Config::parse_string("d = 1\n")),
                  config_error);
}

TEST_CASE("12-significant-digit formatting") {
  CHECK(format_sig12(0.0) == "0");
  CHECK(format_sig12(1.0) == "1");
  CHECK(format_sig12(kGoldenRatio) == "1.61803398875");
  CHECK(format_sig12(-0.125) == "-0.125");
}

TEST_CASE("point-set CSV round trip with dim header") {
  PointSet ps(2);
  const double pts[4] = {0.5, -1.25, kGoldenRatio, 3.0};
  ps.add({pts, 2});
  ps.add({pts + 2, 2});
  const auto csv = pointset_to_csv(ps, {"source=test"});
  CHECK(csv.rfind("# dim=2", 0) == 0);
  CHECK(csv.find("# source=test") != std::string::npos);
  const auto back = pointset_from_csv(csv);
  REQUIRE(back.size() == 2);
  CHECK(back.dim() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(back.point(i)[j] ==
            doctest::Approx(ps.point(i)[j]).epsilon(1e-11));
}

TEST_CASE("peaks CSV lists k, intensity") {
  PeakList peaks(1);
  peaks[0].k = Eigen::VectorXd::Constant(1, 0.5);
  peaks[0].intensity = 0.25;
  const auto csv = peaks_to_csv(peaks, 1);
  CHECK(csv.rfind("kx,intensity,provenance", 0) == 0);
  CHECK(csv.find("0.5,0.25") != std::string::npos);
}

TEST_CASE("spectrum CSV") {
  Spectrum s;
  s.lambda = 1.0;
  s.level = 4;
  s.intervals = {{-2.0, -1.0}, {0.5, 2.0}};
  const auto csv = spectrum_to_csv(s);
  CHECK(csv.find("-2") != std::string::npos);
  CHECK(csv.find("0.5") != std::string::npos);
}

TEST_CASE("16-bit PGM encoding: header, size, tone curve, endianness") {
  IntensityGrid grid;
  grid.spec.dim = 2;
  grid.spec.origin = Eigen::VectorXd::Zero(2);
  grid.spec.pitch = 1.0;
  grid.spec.extents = {2, 2};  // 2 x 2 image
  grid.values = {0.0, 1.0, 0.0625, 0.0};
  const auto pgm = intensity_to_pgm16(grid);
  std::istringstream head(pgm.substr(0, 64));
  std::string magic;
  int w, h, maxval;
  head >> magic >> w >> h >> maxval;
  CHECK(magic == "P5");
  CHECK(w == 2);
  CHECK(h == 2);
  CHECK(maxval == 65535);
  const std::size_t data = pgm.size() - 2 * 2 * 2;
  auto sample = [&](int i) {
    const auto hi = static_cast<unsigned char>(pgm[data + 2 * i]);
    const auto lo = static_cast<unsigned char>(pgm[data + 2 * i + 1]);
    return (static_cast<int>(hi) << 8) | lo;
  };
  bool has_max = false, has_half = false;
  for (int i = 0; i < 4; ++i) {
    if (sample(i) == 65535) has_max = true;
    // tone curve: (0.0625)^(1/4) = 0.5 -> 32768
    if (sample(i) == 32768) has_half = true;
  }
  CHECK(has_max);
  CHECK(has_half);
}

TEST_CASE("sweep raster dimensions") {
  Spectrum a;
  a.intervals = {{-2.0, 2.0}};
  SweepRow row{0.0, a, spectrum_sumset(a, a)};
  const auto pgm = sweep_raster_pgm16({row, row}, false, 100, -3.0, 3.0);
  std::istringstream head(pgm.substr(0, 64));
  std::string magic;
  int w, h, maxval;
  head >> magic >> w >> h >> maxval;
  CHECK(magic == "P5");
  CHECK(w == 100);
  CHECK(h == 2);
  CHECK(pgm.size() >= 100 * 2 * 2);
}

TEST_CASE("two-sided word rendering marks the origin") {
  TwoSidedWord w{-2, "0110"};
  CHECK(word_to_text(w) == "01|10");
}

TEST_CASE("file round trip") {
  const std::string path = "io_test_tmp.bin";
  const std::string payload = std::string("abc\0def\n", 8);
  write_file(path, payload);
  CHECK(read_file(path) == payload);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file("definitely_missing_file_xyz"),
                  std::runtime_error);
}
