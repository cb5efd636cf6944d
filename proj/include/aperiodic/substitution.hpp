#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aperiodic/pointset.hpp"

namespace aperiodic {

/// A substitution rule on a finite alphabet: letter -> non-empty word.
struct SubstitutionRule {
  std::string alphabet;
  std::map<char, std::string> images;

  const std::string& image(char c) const;
};

SubstitutionRule thue_morse_rule();   // 0 -> 01, 1 -> 10
SubstitutionRule fibonacci_rule();    // 0 -> 1,  1 -> 10

/// Concatenation of the images of the letters of `word`, in order.
std::string substitute(const SubstitutionRule& rule, const std::string& word);

/// Incidence matrix M with M(i,j) = number of occurrences of alphabet[i]
/// in image(alphabet[j]). Letter counts of substitute(w) equal M times the
/// letter counts of w, exactly.
Eigen::MatrixXi incidence_matrix(const SubstitutionRule& rule);

/// True when some power of the rule (up to max_power) maps every letter to
/// a word containing every letter.
bool is_primitive(const SubstitutionRule& rule, int max_power = 10);

/// A word on the integer interval [begin, begin+letters.size()), with the
/// origin marker sitting between indices -1 and 0.
struct TwoSidedWord {
  std::int64_t begin;
  std::string letters;

  std::int64_t end() const {
    return begin + static_cast<std::int64_t>(letters.size());
  }
  char at(std::int64_t i) const { return letters[static_cast<std::size_t>(i - begin)]; }
};

/// Bi-infinite fixed point of rule^2 grown from the seed pair
/// (letter at index -1, letter at index 0) by `generations` applications.
/// The seed is legal when rule^2(left) ends with left and rule^2(right)
/// starts with right.
TwoSidedWord two_sided_fixed_point(const SubstitutionRule& rule,
                                   char left_seed, char right_seed,
                                   int generations);

/// Positions of the letter '1' as a 1D point set (binary alphabet only).
PointSet ones_positions(const TwoSidedWord& word);

/// Left endpoints of consecutive tiles starting at 0, with tile lengths
/// given per letter. Point count equals the word length.
PointSet geometric_realization(const std::string& word,
                               const std::map<char, double>& lengths);

/// v_n = 1 iff frac(n*alpha) lies in [1-alpha, 1), for n in [n_begin, n_end).
/// For the golden value alpha = (sqrt(5)-1)/2 the characteristic function is
/// evaluated in exact integer arithmetic (floor(n*phi) via integer sqrt), so
/// no n is ever misclassified by floating-point drift.
std::string rotation_sequence(std::int64_t n_begin, std::int64_t n_end,
                              double alpha);

/// Exact v_n for alpha = (sqrt(5)-1)/2; valid for |n| <= ~1.9e9.
int fibonacci_potential(std::int64_t n);

}  // namespace aperiodic
