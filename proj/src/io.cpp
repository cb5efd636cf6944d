#include "aperiodic/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace aperiodic {

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) +
                         ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (key.empty()) throw config_error("config: empty key");
    cfg.kv_[key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  return parse_string(read_file(path));
}

const std::string& Config::get(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw config_error("config: missing key '" + key + "'");
  return it->second;
}

const std::string& Config::get_or(const std::string& key,
                                  const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
  try {
    return std::stod(get(key));
  } catch (const std::logic_error&) {
    throw config_error("config: key '" + key + "' is not a number");
  }
}

int Config::get_int(const std::string& key) const {
  try {
    return std::stoi(get(key));
  } catch (const std::logic_error&) {
    throw config_error("config: key '" + key + "' is not an integer");
  }
}

CutProjectScheme scheme_from_config(const Config& cfg) {
  const int d = cfg.get_int("d");
  const int m = cfg.get_int("m");
  const int n = d + m;
  std::istringstream in(cfg.get("basis"));
  Eigen::MatrixXd basis(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (!(in >> basis(r, c)))
        throw config_error("config: basis needs (d+m)^2 row-major entries");
  try {
    return build_cps(basis, d, m);
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
}

Window window_from_config(const Config& cfg) {
  const std::string kind = cfg.get("window.kind");
  std::istringstream in(cfg.get("window.data"));
  if (kind == "interval") {
    double a, b;
    if (!(in >> a >> b)) throw config_error("config: window.data = a b");
    return Window(IntervalWindow{a, b});
  }
  if (kind == "polygon") {
    std::vector<Eigen::Vector2d> verts;
    double x, y;
    while (in >> x >> y) verts.emplace_back(x, y);
    try {
      return Window(PolygonWindow{std::move(verts)});
    } catch (const std::invalid_argument& e) {
      throw config_error(e.what());
    }
  }
  throw config_error("config: window.kind must be interval or polygon");
}

SubstitutionRule rule_from_config(const Config& cfg) {
  SubstitutionRule rule;
  for (const auto& [key, value] : cfg.items()) {
    if (key.rfind("rule.", 0) != 0) continue;
    if (key.size() != 6) throw config_error("config: rule keys are rule.<letter>");
    const char letter = key[5];
    if (value.empty()) throw config_error("config: empty substitution image");
    rule.alphabet.push_back(letter);
    rule.images[letter] = value;
  }
  if (rule.alphabet.empty()) throw config_error("config: no rule.<letter> keys");
  for (const auto& [letter, image] : rule.images)
    for (char c : image)
      if (rule.alphabet.find(c) == std::string::npos)
        throw config_error("config: image letter not in alphabet");
  return rule;
}

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string pointset_to_csv(const PointSet& ps,
                            const std::vector<std::string>& header_extra) {
  std::string out = "# dim=" + std::to_string(ps.dim()) + "\n";
  for (const auto& h : header_extra) out += "# " + h + "\n";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto p = ps.point(i);
    for (int c = 0; c < ps.dim(); ++c) {
      if (c) out += ',';
      out += format_sig12(p[c]);
    }
    out += '\n';
  }
  return out;
}

PointSet pointset_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int dim = -1;
  PointSet ps(1);
  while (std::getline(in, line)) {
    if (line.rfind("# dim=", 0) == 0) {
      dim = std::stoi(line.substr(6));
      ps = PointSet(dim);
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (dim < 0) throw config_error("point CSV: missing '# dim=' header");
    std::vector<double> coords;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) coords.push_back(std::stod(cell));
    if (static_cast<int>(coords.size()) != dim)
      throw config_error("point CSV: wrong coordinate count");
    ps.add(coords);
  }
  if (dim < 0) throw config_error("point CSV: missing '# dim=' header");
  return ps;
}

std::string peaks_to_csv(const PeakList& peaks, int dim) {
  std::string out = dim == 1 ? "kx,intensity,provenance\n"
                             : "kx,ky,intensity,provenance\n";
  for (const auto& p : peaks) {
    for (int c = 0; c < dim; ++c) out += format_sig12(p.k[c]) + ",";
    out += format_sig12(p.intensity);
    out += ',';
    for (int c = 0; c < p.provenance.size(); ++c) {
      if (c) out += ' ';
      out += std::to_string(p.provenance[c]);
    }
    out += '\n';
  }
  return out;
}

std::string spectrum_to_csv(const Spectrum& s) {
  std::string out = "lambda,level,lo,hi\n";
  for (const auto& iv : s.intervals)
    out += format_sig12(s.lambda) + "," + std::to_string(s.level) + "," +
           format_sig12(iv.lo) + "," + format_sig12(iv.hi) + "\n";
  return out;
}

std::string spectrum_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "lambda,level,lo,hi,variant\n";
  for (const auto& row : rows) {
    for (const auto& iv : row.one_d.intervals)
      out += format_sig12(row.lambda) + "," + std::to_string(row.one_d.level) +
             "," + format_sig12(iv.lo) + "," + format_sig12(iv.hi) + ",1d\n";
    for (const auto& iv : row.two_d.intervals)
      out += format_sig12(row.lambda) + "," + std::to_string(row.two_d.level) +
             "," + format_sig12(iv.lo) + "," + format_sig12(iv.hi) + ",2d\n";
  }
  return out;
}

namespace {

void append_u16_be(std::string& out, unsigned v) {
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

}  // namespace

std::string intensity_to_pgm16(const IntensityGrid& grid) {
  int w, h;
  if (grid.spec.dim == 2) {
    w = grid.spec.extents[0];
    h = grid.spec.extents[1];
  } else {
    w = grid.spec.extents[0];
    h = 1;
  }
  double imax = 0;
  for (double v : grid.values) imax = std::max(imax, v);
  if (imax <= 0) imax = 1.0;
  std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) +
                    "\n65535\n";
  // Row-major image: row = y index from the top.
  for (int row = 0; row < h; ++row)
    for (int col = 0; col < w; ++col) {
      const std::size_t flat =
          grid.spec.dim == 2
              ? static_cast<std::size_t>(col) * h + (h - 1 - row)
              : static_cast<std::size_t>(col);
      const double t = std::pow(grid.values[flat] / imax, 0.25);
      append_u16_be(out, static_cast<unsigned>(std::lround(65535.0 * t)));
    }
  return out;
}

std::string sweep_raster_pgm16(const std::vector<SweepRow>& rows, bool product,
                               int width, double e_min, double e_max) {
  const int h = static_cast<int>(rows.size());
  std::string out =
      "P5\n" + std::to_string(width) + " " + std::to_string(h) + "\n65535\n";
  // Lambda increases upward, matching an energy/coupling plot.
  for (int r = h - 1; r >= 0; --r) {
    const Spectrum& s = product ? rows[static_cast<std::size_t>(r)].two_d
                                : rows[static_cast<std::size_t>(r)].one_d;
    for (int c = 0; c < width; ++c) {
      const double e = e_min + (e_max - e_min) * (c + 0.5) / width;
      append_u16_be(out, s.contains(e) ? 0u : 65535u);
    }
  }
  return out;
}

std::string word_to_text(const TwoSidedWord& word) {
  std::string out;
  for (std::int64_t i = word.begin; i < word.end(); ++i) {
    if (i == 0) out += '|';
    out += word.at(i);
  }
  if (word.end() <= 0) out += '|';
  return out;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace aperiodic
