#pragma once

#include <map>
#include <string>
#include <vector>

#include "aperiodic/cps.hpp"
#include "aperiodic/diffraction.hpp"
#include "aperiodic/pointset.hpp"
#include "aperiodic/schrodinger.hpp"
#include "aperiodic/substitution.hpp"

namespace aperiodic {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key=value configuration ('#' starts a comment, keys may contain
/// section dots such as window.kind).
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  const std::string& get_or(const std::string& key,
                            const std::string& fallback) const;
  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;

  void set(const std::string& key, const std::string& value) {
    kv_[key] = value;
  }
  const std::map<std::string, std::string>& items() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

/// Scheme from keys d, m, basis (row-major, whitespace separated).
CutProjectScheme scheme_from_config(const Config& cfg);
/// Window from window.kind (interval|polygon) and window.data.
Window window_from_config(const Config& cfg);
/// Rule from keys rule.<letter> = "<image>".
SubstitutionRule rule_from_config(const Config& cfg);

/// CSV with header line "# dim=<d>", one point per line, coordinates to
/// 12 significant digits, LF endings. Extra header lines may carry the
/// generating configuration.
std::string pointset_to_csv(const PointSet& ps,
                            const std::vector<std::string>& header_extra = {});
PointSet pointset_from_csv(const std::string& text);

std::string peaks_to_csv(const PeakList& peaks, int dim);
std::string spectrum_to_csv(const std::vector<SweepRow>& rows);
std::string spectrum_to_csv(const Spectrum& s);

/// Binary 16-bit P5 PGM (big-endian sample bytes) with the monotone tone
/// curve v = round(65535 * (I / I_max)^(1/4)). Returns the file bytes.
std::string intensity_to_pgm16(const IntensityGrid& grid);

/// Rasterizes a coupling sweep (black where E is in the spectrum) into a
/// width x rows 16-bit PGM; energies span [e_min, e_max].
std::string sweep_raster_pgm16(const std::vector<SweepRow>& rows, bool product,
                               int width, double e_min, double e_max);

std::string word_to_text(const TwoSidedWord& word);  // origin marked by '|'

void write_file(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

/// Formats a double with 12 significant digits (shortest equivalent form),
/// the fixed convention for all CSV output.
std::string format_sig12(double v);

}  // namespace aperiodic
