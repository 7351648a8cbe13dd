#pragma once

#include <limits>
#include <utility>
#include <vector>

namespace lpp::chainbounds {

// Bins strictly above the floor bin, lowest first, front bin last. The floor
// is treated as holding enough balls for every letter in play.
using Segment = std::vector<int>;

inline constexpr int kInfLetter = std::numeric_limits<int>::max();

// Apply one finite letter >= 1 to a segment over a saturated floor.
// Returns true when the ball lands in a new bin (front advances).
bool apply_letter(Segment& seg, int xi);

// Keep only bins strictly above the one holding the k-th ball from the right.
void reproject(Segment& seg, int k);

struct ProjectedState {
  Segment a;
  int k = 2;
  bool operator==(const ProjectedState& o) const { return k == o.k && a == o.a; }
};

// L(s): front content, or k for the empty state
int front_content(const ProjectedState& s);

std::vector<ProjectedState> enumerate_states(int k);

// letters: 0, 1..k, kInfLetter
std::pair<ProjectedState, bool> transition(const ProjectedState& s, int xi);

struct FiniteMu {
  int k = 2;
  double zero = 0.0;          // mu(0)
  std::vector<double> mass;   // mass[j] = mu(j), j = 1..k; mass[0] unused
  double inf = 0.0;           // mu(inf)
};

FiniteMu mu_lower(double p, int k);  // letters > k become inf
FiniteMu mu_upper(double p, int k);  // letters > k become k
FiniteMu mu_zero(double p, int k);   // letters > k become 0

struct SpeedResult {
  double speed = 0.0;
  double residual = 0.0;
  std::vector<double> pi;
  bool dense = true;
};

inline constexpr int kDenseMaxOrder = 12;

SpeedResult exact_speed_detailed(const FiniteMu& mu);
double exact_speed(const FiniteMu& mu);

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
};

Bounds bounds_C(double p, int k);

}  // namespace lpp::chainbounds
