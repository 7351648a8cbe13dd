#include "lpp/ibm.hpp"

#include <algorithm>
#include <cmath>

#include "lpp/errors.hpp"

namespace lpp::ibm {

using harness::RngStream;

Configuration::Configuration(std::int64_t front, const std::vector<std::int64_t>& counts_from_front,
                             bool below_is_saturated)
    : front_(front), bins_(counts_from_front.rbegin(), counts_from_front.rend()), saturated_(below_is_saturated) {
  if (bins_.empty()) throw InvalidParameter("configuration: counts must be nonempty");
  if (bins_.back() < 1) throw InvalidParameter("configuration: front bin must be nonempty");
  for (auto c : bins_)
    if (c < 0) throw InvalidParameter("configuration: negative count");
}

std::int64_t Configuration::count(std::int64_t bin) const {
  if (bin > front_) return 0;
  std::int64_t lo = lowest_stored();
  if (bin >= lo) return bins_[static_cast<std::size_t>(bin - lo)];
  return saturated_ ? -1 : 0;
}

std::vector<std::int64_t> Configuration::top(int k) const {
  std::vector<std::int64_t> out;
  for (auto it = bins_.rbegin(); it != bins_.rend() && static_cast<int>(out.size()) < k; ++it) out.push_back(*it);
  return out;
}

ExtInt Configuration::select_bin(int xi) const {
  if (xi == kInf) return ExtInt::neg_inf();
  if (xi < 1) throw InvalidParameter("select_bin: letter must be positive or inf");
  std::int64_t acc = 0;
  for (std::size_t i = bins_.size(); i-- > 0;) {
    acc += bins_[i];
    if (acc >= xi) return ExtInt(lowest_stored() + static_cast<std::int64_t>(i));
  }
  if (saturated_) return ExtInt(lowest_stored() - 1);
  return ExtInt::neg_inf();
}

bool Configuration::apply(int xi) {
  if (xi == 0) {
    ++front_;
    return true;
  }
  if (xi == kInf) return false;
  if (xi < 0) throw InvalidParameter("apply: negative letter");
  ExtInt b = select_bin(xi);
  if (b.is_neg_inf()) return false;
  std::int64_t target = b.value() + 1;
  if (target > front_) {
    bins_.push_back(1);
    ++front_;
    return true;
  }
  ++bins_[static_cast<std::size_t>(target - lowest_stored())];
  return false;
}

void Configuration::trim(std::int64_t keep_mass) {
  std::int64_t acc = 0;
  for (std::size_t i = bins_.size(); i-- > 0;) {
    acc += bins_[i];
    if (acc >= keep_mass) {
      if (i > 0) bins_.erase(bins_.begin(), bins_.begin() + static_cast<std::ptrdiff_t>(i));
      saturated_ = true;
      return;
    }
  }
}

ExtInt select_bin(const Configuration& x, int xi) { return x.select_bin(xi); }

Configuration apply_selection(const Configuration& x, int xi) {
  Configuration y = x;
  y.apply(xi);
  return y;
}

Configuration apply_word(const Configuration& x, const std::vector<int>& letters) {
  Configuration y = x;
  for (int a : letters) y.apply(a);
  return y;
}

bool precedes(const Configuration& x, const Configuration& y) {
  std::int64_t hi = std::max(x.front(), y.front());
  std::int64_t lo = std::min(x.lowest_stored(), y.lowest_stored()) - 1;
  std::int64_t sx = 0, sy = 0;
  bool inf_x = false, inf_y = false;
  for (std::int64_t l = hi; l >= lo; --l) {
    std::int64_t cx = x.count(l), cy = y.count(l);
    if (cx < 0) inf_x = true; else sx += cx;
    if (cy < 0) inf_y = true; else sy += cy;
    if (inf_y) return true;
    if (inf_x) return false;
    if (sx > sy) return false;
  }
  return true;
}

LetterLaw LetterLaw::geometric(double p) {
  if (!(p > 0.0) || p > 1.0) throw InvalidParameter("geometric letter law: p must lie in (0,1]");
  LetterLaw l;
  l.geometric_ = true;
  l.p_ = p;
  return l;
}

LetterLaw LetterLaw::table(double zero, std::vector<double> mass, double inf) {
  if (zero < 0.0 || inf < 0.0) throw InvalidParameter("letter law: negative mass");
  LetterLaw l;
  l.cum_.assign(std::max<std::size_t>(mass.size(), 1), 0.0);
  l.cum_[0] = zero;
  for (std::size_t j = 1; j < mass.size(); ++j) {
    if (mass[j] < 0.0) throw InvalidParameter("letter law: negative mass");
    l.cum_[j] = l.cum_[j - 1] + mass[j];
  }
  if (std::abs(l.cum_.back() + inf - 1.0) > 1e-9) throw InvalidParameter("letter law: masses must sum to 1");
  return l;
}

LetterLaw LetterLaw::from_finite(const chainbounds::FiniteMu& mu) { return table(mu.zero, mu.mass, mu.inf); }

int LetterLaw::sample(RngStream& rng) const {
  if (geometric_) {
    auto g = harness::sample_geometric(p_, rng);
    return g >= kInf ? kInf - 1 : static_cast<int>(g);
  }
  double u = rng.uniform();
  auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  if (it == cum_.end()) return kInf;
  return static_cast<int>(it - cum_.begin());
}

double LetterLaw::mass_one() const {
  if (geometric_) return p_;
  return cum_.size() > 1 ? cum_[1] - cum_[0] : 0.0;
}

int LetterLaw::max_letter() const { return geometric_ ? -1 : static_cast<int>(cum_.size()) - 1; }

namespace {

std::int64_t keep_mass_for(const LetterLaw& mu) {
  return std::max<std::int64_t>(kKeepMass, 4 * static_cast<std::int64_t>(std::max(mu.max_letter(), 0)));
}

void maybe_trim(Configuration& x, std::int64_t keep) {
  if (x.below_is_saturated() && x.depth() > static_cast<std::size_t>(4 * keep)) x.trim(keep);
}

}  // namespace

harness::MonteCarloSummary simulate_speed(const LetterLaw& mu, std::int64_t steps, const Configuration& x0,
                                          std::uint64_t seed, const SpeedOptions& opt) {
  if (steps < 1) throw InvalidParameter("simulate_speed: steps must be positive");
  const std::int64_t keep = keep_mass_for(mu);
  auto task = [&](RngStream& rng) {
    Configuration x = x0;
    for (std::int64_t t = 0; t < steps; ++t) {
      x.apply(mu.sample(rng));
      if ((t & 0xFFFF) == 0) maybe_trim(x, keep);
    }
    return static_cast<double>(x.front() - x0.front()) / static_cast<double>(steps);
  };
  return harness::run_replicas(task, opt.replicas, seed, opt.threads);
}

harness::MonteCarloSummary estimate_C_via_front(double p, std::int64_t steps, std::int64_t burnin, std::uint64_t seed,
                                                int batches) {
  if (!(p > 0.0) || !(p < 1.0)) throw InvalidParameter("estimate_C_via_front: p must lie in (0,1)");
  if (batches < 2) throw InvalidParameter("estimate_C_via_front: need at least two batches");
  if (steps < batches) throw InvalidParameter("estimate_C_via_front: fewer steps than batches");
  if (burnin < 0) throw InvalidParameter("estimate_C_via_front: negative burn-in");
  LetterLaw mu = LetterLaw::geometric(p);
  const std::int64_t keep = keep_mass_for(mu);
  std::vector<double> qpow(4096);
  for (std::size_t i = 0; i < qpow.size(); ++i) qpow[i] = std::pow(1.0 - p, static_cast<double>(i));
  auto weight = [&](std::int64_t c) {
    return c < static_cast<std::int64_t>(qpow.size()) ? qpow[static_cast<std::size_t>(c)]
                                                      : std::pow(1.0 - p, static_cast<double>(c));
  };

  RngStream rng(seed, 0);
  Configuration x;
  for (std::int64_t t = 0; t < burnin; ++t) {
    x.apply(mu.sample(rng));
    if ((t & 0xFFFF) == 0) maybe_trim(x, keep);
  }
  const std::int64_t per = steps / batches;
  std::vector<double> est;
  est.reserve(batches);
  std::int64_t t = 0;
  for (int b = 0; b < batches; ++b) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < per; ++i, ++t) {
      acc += weight(x.front_content());
      x.apply(mu.sample(rng));
      if ((t & 0xFFFF) == 0) maybe_trim(x, keep);
    }
    est.push_back(1.0 - acc / static_cast<double>(per));
  }
  return harness::summarize(est);
}

std::vector<std::int64_t> detect_renewals(const std::vector<int>& xi, int horizon) {
  if (horizon < 0) throw InvalidParameter("detect_renewals: negative horizon");
  std::vector<std::int64_t> out;
  const std::int64_t n = static_cast<std::int64_t>(xi.size());
  for (std::int64_t k = 0; k + horizon < n; ++k) {
    bool ok = true;
    for (int i = 0; i <= horizon; ++i) {
      int a = xi[static_cast<std::size_t>(k + i)];
      if (a < 0) throw InvalidParameter("detect_renewals: negative letter");
      if (a > i + 1) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(k);
  }
  return out;
}

CouplingReport coupling_check(const LetterLaw& mu, const Configuration& x0, const Configuration& y0, std::int64_t steps,
                              int k_max, std::uint64_t seed) {
  if (!(mu.mass_one() > 0.0)) throw InvalidParameter("coupling_check: requires mu(1) > 0");
  if (k_max < 1) throw InvalidParameter("coupling_check: k_max must be positive");
  if (steps < 0) throw InvalidParameter("coupling_check: negative steps");
  RngStream rng(seed, 0);
  Configuration x = x0, y = y0;
  std::vector<std::int64_t> last_bad(k_max, -1), first_good(k_max, -1);
  auto observe = [&](std::int64_t t) {
    for (int k = 1; k <= k_max; ++k) {
      bool same = x.top(k) == y.top(k);
      if (same && first_good[k - 1] < 0) first_good[k - 1] = t;
      if (!same) last_bad[k - 1] = t;
    }
  };
  observe(0);
  for (std::int64_t t = 1; t <= steps; ++t) {
    int a = mu.sample(rng);
    x.apply(a);
    y.apply(a);
    observe(t);
  }
  CouplingReport r;
  for (int k = 0; k < k_max; ++k) {
    r.coupled_from.push_back(last_bad[k] == steps ? -1 : last_bad[k] + 1);
    r.first_agreement.push_back(first_good[k]);
  }
  return r;
}

bool sandwich_ordered(double p, int k, std::int64_t steps, std::uint64_t seed) {
  if (k < 1) throw InvalidParameter("sandwich_ordered: k must be positive");
  LetterLaw mu = LetterLaw::geometric(p);
  RngStream rng(seed, 0);
  Configuration xinf, x, xk, x0;
  for (std::int64_t t = 0; t < steps; ++t) {
    int a = mu.sample(rng);
    bool big = a > k;
    xinf.apply(big ? kInf : a);
    x.apply(a);
    xk.apply(big ? k : a);
    x0.apply(big ? 0 : a);
    if (!precedes(xinf, x) || !precedes(x, xk) || !precedes(xk, x0)) return false;
  }
  return true;
}

}  // namespace lpp::ibm
