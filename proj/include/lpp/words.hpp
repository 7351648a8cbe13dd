#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lpp/chainbounds.hpp"

namespace lpp::words {

// letters[0] is applied first. The usual display writes the word the other
// way round, last-applied letter on the left.
struct Word {
  std::vector<int> letters;

  int length() const { return static_cast<int>(letters.size()); }
  int height() const;     // sum of (letter - 1)
  int max_letter() const;
  bool operator==(const Word& o) const { return letters == o.letters; }
};

Word from_applied(std::vector<int> applied_order);
Word from_display(std::vector<int> last_applied_first);
std::vector<int> display(const Word& w);
// "1,2,2" in applied order
Word parse_applied(const std::string& csv);

// all strict suffixes keep the last-applied letter and drop a nonempty
// run of first-applied ones
Word strict_suffix(const Word& w, int dropped);

enum class WordClass { Good, Bad, Ambivalent };
const char* to_string(WordClass c);

bool is_triangular(const Word& w);
WordClass classify(const Word& w);
int coupling_number(const Word& w);

// final segments of the word applied to every state of order max_letter
std::vector<chainbounds::Segment> sweep(const Word& w, std::vector<bool>* last_moved = nullptr);

using Predicate = std::function<bool(const Word&)>;
bool is_minimal(const Word& w, const Predicate& in_set);

bool is_good(const Word& w);
bool in_G_min(const Word& w);
bool in_T_min(const Word& w);
bool in_T_min_good(const Word& w);

inline constexpr int kMaxCoefficientOrder = 10;

struct Coefficients {
  std::vector<std::int64_t> via_gmin;
  std::vector<std::int64_t> via_tmin_good;
  // counts[h][l] of G_min words with height h and length l
  std::vector<std::vector<std::int64_t>> gmin_counts;
  std::vector<std::vector<std::int64_t>> tmin_good_counts;
};

Coefficients a_coefficients_detailed(int n_max);
std::vector<std::int64_t> a_coefficients(int n_max);

// calls f on every word with height h and length l (letters = composition + 1)
void for_each_word(int h, int l, const std::function<void(const Word&)>& f);

std::int64_t binomial(int n, int k);

// partial sum of p^{|a|} (1-p)^{H(a)} over minimal triangular good words, H <= h_max
double speed_series_lower(double p, int h_max);

}  // namespace lpp::words
