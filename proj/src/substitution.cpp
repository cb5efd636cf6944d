#include "aperiodic/substitution.hpp"

#include <algorithm>
#include <cmath>

namespace aperiodic {

const std::string& SubstitutionRule::image(char c) const {
  auto it = images.find(c);
  if (it == images.end())
    throw std::invalid_argument(std::string("substitution: unknown letter '") +
                                c + "'");
  return it->second;
}

SubstitutionRule thue_morse_rule() {
  return {"01", {{'0', "01"}, {'1', "10"}}};
}

SubstitutionRule fibonacci_rule() {
  return {"01", {{'0', "1"}, {'1', "10"}}};
}

std::string substitute(const SubstitutionRule& rule, const std::string& word) {
  std::string out;
  for (char c : word) out += rule.image(c);
  return out;
}

Eigen::MatrixXi incidence_matrix(const SubstitutionRule& rule) {
  const int n = static_cast<int>(rule.alphabet.size());
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (char c : rule.image(rule.alphabet[static_cast<std::size_t>(j)])) {
      const auto i = rule.alphabet.find(c);
      if (i == std::string::npos)
        throw std::invalid_argument("substitution: image letter not in alphabet");
      m(static_cast<int>(i), j) += 1;
    }
  return m;
}

bool is_primitive(const SubstitutionRule& rule, int max_power) {
  Eigen::MatrixXi m = incidence_matrix(rule);
  Eigen::MatrixXi p = m;
  for (int k = 1; k <= max_power; ++k) {
    if ((p.array() > 0).all()) return true;
    p = (p * m).cwiseMin(1000000);  // only positivity matters
  }
  return false;
}

TwoSidedWord two_sided_fixed_point(const SubstitutionRule& rule,
                                   char left_seed, char right_seed,
                                   int generations) {
  if (generations < 1)
    throw std::invalid_argument("two_sided_fixed_point: generations >= 1");
  auto square = [&](const std::string& w) {
    return substitute(rule, substitute(rule, w));
  };
  const std::string left_img = square(std::string(1, left_seed));
  const std::string right_img = square(std::string(1, right_seed));
  if (left_img.back() != left_seed)
    throw std::invalid_argument(
        "two_sided_fixed_point: rule^2(left seed) does not end with the seed");
  if (right_img.front() != right_seed)
    throw std::invalid_argument(
        "two_sided_fixed_point: rule^2(right seed) does not start with the seed");

  std::string left(1, left_seed), right(1, right_seed);
  for (int g = 0; g < generations; ++g) {
    left = square(left);
    right = square(right);
  }
  TwoSidedWord w;
  w.begin = -static_cast<std::int64_t>(left.size());
  w.letters = left + right;
  return w;
}

PointSet ones_positions(const TwoSidedWord& word) {
  PointSet out(1);
  for (std::int64_t i = word.begin; i < word.end(); ++i) {
    const char c = word.at(i);
    if (c != '0' && c != '1')
      throw std::invalid_argument("ones_positions: alphabet must be {0,1}");
    if (c == '1') out.add1(static_cast<double>(i));
  }
  return out;
}

PointSet geometric_realization(const std::string& word,
                               const std::map<char, double>& lengths) {
  PointSet out(1);
  double x = 0.0;
  for (char c : word) {
    auto it = lengths.find(c);
    if (it == lengths.end())
      throw std::invalid_argument("geometric_realization: missing tile length");
    if (!(it->second > 0.0))
      throw std::invalid_argument("geometric_realization: lengths must be > 0");
    out.add1(x);
    x += it->second;
  }
  return out;
}

namespace {

std::int64_t isqrt64(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// floor(n * phi) in exact integer arithmetic:
// n*phi = (n + sqrt(5*n^2)) / 2 and 5*n^2 is never a perfect square (n != 0).
std::int64_t floor_n_phi(std::int64_t n) {
  if (n == 0) return 0;
  if (n < 0) return -floor_n_phi(-n) - 1;
  return (n + isqrt64(5 * n * n)) / 2;
}

}  // namespace

int fibonacci_potential(std::int64_t n) {
  // frac(n*alpha) = frac(n*phi) for alpha = phi - 1, and
  // frac(n*phi) >= 2 - phi  <=>  floor((n+1)*phi) - floor(n*phi) = 2.
  return floor_n_phi(n + 1) - floor_n_phi(n) == 2 ? 1 : 0;
}

std::string rotation_sequence(std::int64_t n_begin, std::int64_t n_end,
                              double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("rotation_sequence: alpha must be in (0,1)");
  std::string out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, n_end - n_begin)));
  const bool golden = std::abs(alpha - (std::sqrt(5.0) - 1.0) / 2.0) < 1e-15;
  for (std::int64_t n = n_begin; n < n_end; ++n) {
    int v;
    if (golden) {
      v = fibonacci_potential(n);
    } else {
      const long double f =
          static_cast<long double>(n) * static_cast<long double>(alpha);
      long double frac = f - std::floor(f);
      v = (frac >= 1.0L - static_cast<long double>(alpha)) ? 1 : 0;
    }
    out.push_back(v ? '1' : '0');
  }
  return out;
}

}  // namespace aperiodic
