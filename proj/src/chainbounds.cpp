#include "lpp/chainbounds.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "lpp/errors.hpp"

namespace lpp::chainbounds {

bool apply_letter(Segment& seg, int xi) {
  int acc = 0;
  for (int i = static_cast<int>(seg.size()) - 1; i >= 0; --i) {
    acc += seg[i];
    if (acc >= xi) {
      if (i + 1 == static_cast<int>(seg.size())) {
        seg.push_back(1);
        return true;
      }
      ++seg[i + 1];
      return false;
    }
  }
  // the xi-th ball sits in the floor
  if (seg.empty()) {
    seg.push_back(1);
    return true;
  }
  ++seg[0];
  return false;
}

void reproject(Segment& seg, int k) {
  int acc = 0;
  for (int i = static_cast<int>(seg.size()) - 1; i >= 0; --i) {
    acc += seg[i];
    if (acc >= k) {
      seg.erase(seg.begin(), seg.begin() + i + 1);
      return;
    }
  }
}

int front_content(const ProjectedState& s) { return s.a.empty() ? s.k : s.a.back(); }

namespace {

void compositions(int remaining, Segment& cur, std::vector<Segment>& out) {
  out.push_back(cur);
  for (int part = 1; part <= remaining; ++part) {
    cur.push_back(part);
    compositions(remaining - part, cur, out);
    cur.pop_back();
  }
}

double total_mass(const FiniteMu& mu) {
  double t = mu.zero + mu.inf;
  for (int j = 1; j <= mu.k; ++j) t += mu.mass[j];
  return t;
}

void check_mu(const FiniteMu& mu) {
  if (mu.k < 2 || mu.k > 20) throw InvalidParameter("order k must lie in [2,20]");
  if (static_cast<int>(mu.mass.size()) != mu.k + 1) throw InvalidParameter("mu: mass vector must have k+1 entries");
  if (!(mu.mass[mu.k] > 0.0)) throw InvalidParameter("mu(k) must be positive");
  if (mu.zero < 0.0 || mu.inf < 0.0) throw InvalidParameter("mu: negative mass");
  for (int j = 1; j <= mu.k; ++j)
    if (mu.mass[j] < 0.0) throw InvalidParameter("mu: negative mass");
  if (std::abs(total_mass(mu) - 1.0) > 1e-9) throw InvalidParameter("mu: masses must sum to 1");
}

}  // namespace

std::vector<ProjectedState> enumerate_states(int k) {
  if (k < 2 || k > 20) throw InvalidParameter("enumerate_states: k must lie in [2,20]");
  std::vector<Segment> segs;
  Segment cur;
  compositions(k - 1, cur, segs);
  std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) {
    int sx = std::accumulate(x.begin(), x.end(), 0), sy = std::accumulate(y.begin(), y.end(), 0);
    if (sx != sy) return sx < sy;
    if (x.size() != y.size()) return x.size() < y.size();
    return x > y;
  });
  std::vector<ProjectedState> out;
  out.reserve(segs.size());
  for (auto& s : segs) out.push_back({std::move(s), k});
  return out;
}

std::pair<ProjectedState, bool> transition(const ProjectedState& s, int xi) {
  if (xi == 0) return {s, true};
  if (xi == kInfLetter) return {s, false};
  if (xi < 0 || xi > s.k) throw InvalidParameter("transition: letter outside {0,1..k,inf}");
  ProjectedState t = s;
  bool moved = apply_letter(t.a, xi);
  reproject(t.a, s.k);
  return {std::move(t), moved};
}

FiniteMu mu_lower(double p, int k) {
  if (!(p > 0.0) || !(p < 1.0)) throw InvalidParameter("p must lie in (0,1)");
  FiniteMu mu;
  mu.k = k;
  mu.mass.assign(k + 1, 0.0);
  double q = 1.0 - p;
  for (int j = 1; j <= k; ++j) mu.mass[j] = p * std::pow(q, j - 1);
  mu.inf = std::pow(q, k);
  return mu;
}

FiniteMu mu_upper(double p, int k) {
  FiniteMu mu = mu_lower(p, k);
  mu.mass[k] += mu.inf;
  mu.inf = 0.0;
  return mu;
}

FiniteMu mu_zero(double p, int k) {
  FiniteMu mu = mu_lower(p, k);
  mu.zero = mu.inf;
  mu.inf = 0.0;
  return mu;
}

SpeedResult exact_speed_detailed(const FiniteMu& mu) {
  check_mu(mu);
  const int k = mu.k;
  auto states = enumerate_states(k);
  const int n = static_cast<int>(states.size());
  std::map<Segment, int> index;
  for (int i = 0; i < n; ++i) index[states[i].a] = i;

  // sparse rows: (target, prob)
  std::vector<std::vector<std::pair<int, double>>> rows(n);
  for (int i = 0; i < n; ++i) {
    double self = mu.zero + mu.inf;
    for (int j = 1; j <= k; ++j) {
      if (mu.mass[j] == 0.0) continue;
      auto [t, moved] = transition(states[i], j);
      (void)moved;
      int ti = index.at(t.a);
      if (ti == i)
        self += mu.mass[j];
      else
        rows[i].push_back({ti, mu.mass[j]});
    }
    if (self > 0.0) rows[i].push_back({i, self});
  }

  SpeedResult res;
  Eigen::VectorXd pi(n);
  if (k <= kDenseMaxOrder) {
    // pi (P - I) = 0, one equation swapped for sum(pi) = 1
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (auto [t, w] : rows[i]) A(t, i) += w;
    for (int i = 0; i < n; ++i) A(i, i) -= 1.0;
    A.row(n - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b(n - 1) = 1.0;
    pi = A.partialPivLu().solve(b);
    res.dense = true;
  } else {
    pi.setConstant(1.0 / n);
    Eigen::VectorXd next(n);
    for (int it = 0; it < 2'000'000; ++it) {
      next.setZero();
      for (int i = 0; i < n; ++i)
        for (auto [t, w] : rows[i]) next(t) += 0.5 * w * pi(i);
      next += 0.5 * pi;
      double diff = (next - pi).cwiseAbs().maxCoeff();
      pi.swap(next);
      if (diff < 1e-15) break;
    }
    pi /= pi.sum();
    res.dense = false;
  }

  // residual of pi P = pi
  Eigen::VectorXd piP = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    for (auto [t, w] : rows[i]) piP(t) += w * pi(i);
  res.residual = (piP - pi).cwiseAbs().maxCoeff();
  if (!(res.residual < 1e-12) || pi.minCoeff() < -1e-12)
    throw NumericError("exact_speed: stationary solve residual " + std::to_string(res.residual));

  std::vector<double> cum(k + 1, 0.0);
  for (int j = 1; j <= k; ++j) cum[j] = cum[j - 1] + mu.mass[j];
  double v = 0.0;
  for (int i = 0; i < n; ++i) v += pi(i) * (mu.zero + cum[front_content(states[i])]);
  res.speed = v;
  res.pi.assign(pi.data(), pi.data() + n);
  return res;
}

double exact_speed(const FiniteMu& mu) { return exact_speed_detailed(mu).speed; }

Bounds bounds_C(double p, int k) {
  if (!(p > 0.0) || !(p < 1.0)) throw InvalidParameter("bounds_C: p must lie in (0,1)");
  if (k < 2) throw InvalidParameter("bounds_C: k must be at least 2");
  Bounds b;
  b.lower = exact_speed(mu_lower(p, k));
  b.upper = exact_speed(mu_upper(p, k));
  double tail = std::pow(1.0 - p, k);
  if (b.upper - b.lower > tail + 1e-12 || b.upper < b.lower - 1e-12)
    throw InternalError("bounds_C: gap bound violated");
  if (k <= 10) {
    double v0 = exact_speed(mu_zero(p, k));
    if (std::abs(v0 - (b.lower + tail)) > 1e-10) throw InternalError("bounds_C: zero/inf identity violated");
  }
  return b;
}

}  // namespace lpp::chainbounds
