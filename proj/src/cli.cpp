#include "lpp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lpp/chainbounds.hpp"
#include "lpp/charged.hpp"
#include "lpp/errors.hpp"
#include "lpp/euler.hpp"
#include "lpp/graph.hpp"
#include "lpp/ibm.hpp"
#include "lpp/mgs.hpp"
#include "lpp/pwit.hpp"
#include "lpp/regen.hpp"
#include "lpp/table.hpp"
#include "lpp/weighted.hpp"
#include "lpp/words.hpp"

#ifndef LPP_VERSION
#define LPP_VERSION "0.0.0"
#endif

namespace lpp::cli {

using table::num;
using table::Table;

std::string version() { return LPP_VERSION; }

namespace {

double to_double(const std::string& s) {
  std::string t = s;
  t.erase(0, t.find_first_not_of(" \t"));
  t.erase(t.find_last_not_of(" \t") + 1);
  if (t == "inf" || t == "+inf") return INFINITY;
  if (t == "-inf") return -INFINITY;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw InvalidParameter("not a number: '" + s + "'");
  }
  if (used != t.size()) throw InvalidParameter("not a number: '" + s + "'");
  return v;
}

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r"));
  s.erase(s.find_last_not_of(" \t\r") + 1);
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  if (trim(s).empty()) throw InvalidParameter("empty grid");
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw InvalidParameter("grid range must be start:stop:step");
    double a = to_double(parts[0]), b = to_double(parts[1]), h = to_double(parts[2]);
    if (!(h > 0.0) || !(b >= a)) throw InvalidParameter("grid range needs step > 0 and stop >= start");
    auto count = static_cast<std::int64_t>(std::floor((b - a) / h + 1e-9));
    if (count > 1'000'000) throw InvalidParameter("grid range too long");
    for (std::int64_t k = 0; k <= count; ++k) {
      double v = a + static_cast<double>(k) * h;
      // snap to the decimal the user most likely meant
      out.push_back(std::round(v * 1e12) / 1e12);
    }
    return out;
  }
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(to_double(item));
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(text);
  int lineno = 0;
  for (std::string line; std::getline(ss, line);) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidParameter("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw InvalidParameter("config line " + std::to_string(lineno) + ": empty key");
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    out.emplace_back(key, value);
  }
  return out;
}

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::size_t replicas = 0;
  unsigned threads = 1;
  std::string out = "-";
  std::string format = "csv";
  std::string config;

  std::size_t reps(std::size_t fallback) const { return replicas ? replicas : fallback; }
};

struct Output {
  Table table;
  std::string raw;  // preformatted bytes, bypasses --format
};

using Action = std::function<Output()>;

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string join_ints(const std::vector<std::int64_t>& xs, char sep) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) s += sep;
    s += std::to_string(xs[k]);
  }
  return s;
}

std::vector<std::int64_t> int_grid(const std::string& s) {
  std::vector<std::int64_t> out;
  for (double v : parse_grid(s)) {
    if (v != std::floor(v) || !std::isfinite(v)) throw InvalidParameter("expected integers in grid: " + s);
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

void add_summary(std::vector<std::string>& row, const harness::MonteCarloSummary& s) {
  row.push_back(num(s.mean));
  row.push_back(num(s.sem()));
  row.push_back(num(s.ci95_halfwidth));
}

ibm::LetterLaw parse_letter_law(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon), arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "geometric") return ibm::LetterLaw::geometric(to_double(arg));
  if (kind == "file") {
    // one "letter mass" pair per line, letter 0..K or inf
    std::stringstream ss(read_file(arg));
    double zero = 0.0, inf = 0.0;
    std::vector<double> mass(1, 0.0);
    for (std::string line; std::getline(ss, line);) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::stringstream ls(line);
      std::string letter, m;
      if (!(ls >> letter)) continue;
      if (!(ls >> m)) throw InvalidParameter("letter file: missing mass for letter " + letter);
      double w = to_double(m);
      if (letter == "inf") {
        inf += w;
        continue;
      }
      double l = to_double(letter);
      if (l < 0 || l != std::floor(l) || l > 1e6) throw InvalidParameter("letter file: bad letter " + letter);
      auto j = static_cast<std::size_t>(l);
      if (j == 0) {
        zero += w;
        continue;
      }
      if (mass.size() <= j) mass.resize(j + 1, 0.0);
      mass[j] += w;
    }
    return ibm::LetterLaw::table(zero, mass, inf);
  }
  throw InvalidParameter("letter law must be geometric:<p> or file:<path>");
}

// quantiles for the debiased estimator; sup is the essential supremum
mgs::GlynnRhee parse_gr_law(const std::string& spec) {
  mgs::GlynnRhee gr;
  if (spec == "logistic") {
    gr.quantile = [](double u) { return std::log(u / (1.0 - u)); };
    gr.sup = INFINITY;
    return gr;
  }
  if (spec.rfind("pareto:", 0) == 0) {
    double a = to_double(spec.substr(7));
    if (!(a > 0.0)) throw InvalidParameter("pareto tail index must be positive");
    gr.quantile = [a](double u) { return std::exp(-std::log1p(-u) / a); };
    gr.sup = INFINITY;
    return gr;
  }
  if (spec.rfind("exp-shift:", 0) == 0) {
    double c = to_double(spec.substr(10));
    gr.quantile = [c](double u) { return c - std::log1p(-u); };
    gr.sup = INFINITY;
    return gr;
  }
  ChargeLaw f = ChargeLaw::parse(spec);
  gr.quantile = [f](double u) {
    ExtReal v = f.from_uniform(u);
    return v.finite() ? v.value() : -INFINITY;
  };
  gr.sup = 1.0;
  return gr;
}

double exact_gap(double p, std::int64_t n) {
  double q = 1.0 - p;
  switch (n) {
    case 1: return p;
    case 2: return 0.0;
    case 3: return std::pow(p, 4) * q;
    case 4: return std::pow(p, 7) * std::pow(q, 3) + 3.0 * std::pow(p, 5) * q * q;
    default: return NAN;
  }
}

struct Registry {
  CLI::App& app;
  Globals& g;
  Action& action;

  CLI::App* sub(CLI::App* parent, const std::string& name, const std::string& desc) {
    return parent->add_subcommand(name, desc);
  }

  void set(CLI::App* s, Action a) {
    s->callback([this, a] { action = a; });
  }

  // ---- graph
  void graph(CLI::App* root) {
    auto* grp = sub(root, "graph", "directed random graph simulation");
    grp->require_subcommand(1);

    {
      auto* s = sub(grp, "sample", "edge list of one sampled window");
      auto n = std::make_shared<std::int64_t>(20);
      auto law = std::make_shared<std::string>("bernoulli:0.5");
      s->add_option("--n", *n, "window size (vertices 0..n)");
      s->add_option("--law", *law, "charge law: bernoulli:<p>, two-atom:<p>,<x>, shifted-exp, uniform:<a>, one");
      set(s, [this, n, law] {
        harness::RngStream rng(g.seed, 0);
        auto w = graph::sample_window(*n, graph::EdgeLaw::charges(ChargeLaw::parse(*law)), rng);
        Table t({"i", "j", "charge"});
        for (std::int64_t j = 1; j <= w.n(); ++j)
          for (std::int64_t i = 0; i < j; ++i) {
            auto c = w.charge(i, j);
            if (c.finite()) t.add({num(i), num(j), num(c.value())});
          }
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "longest", "Monte Carlo estimate of W_{0,n}/n");
      auto p = std::make_shared<std::string>("0.5");
      auto n = std::make_shared<std::int64_t>(2000);
      auto law = std::make_shared<std::string>();
      s->add_option("--p", *p, "edge probability grid");
      s->add_option("--n", *n, "window size");
      s->add_option("--law", *law, "general charge law instead of Bernoulli(p)");
      set(s, [this, p, n, law] {
        Table t({"law", "n", "replicas", "estimate", "sem", "ci95"});
        std::vector<std::string> laws;
        if (!law->empty()) laws.push_back(*law);
        else
          for (double v : parse_grid(*p)) laws.push_back("bernoulli:" + num(v));
        const std::size_t reps = g.reps(100);
        for (const auto& spec : laws) {
          ChargeLaw f = ChargeLaw::parse(spec);
          harness::Task task;
          const double dn = static_cast<double>(*n);
          if (f.kind() == ChargeLaw::Kind::Bernoulli) {
            double pp = f.p();
            task = [pp, nn = *n, dn](harness::RngStream& rng) {
              return static_cast<double>(graph::longest_path_stream(pp, nn, rng)) / dn;
            };
          } else {
            auto law_e = graph::EdgeLaw::charges(f);
            task = [law_e, nn = *n, dn](harness::RngStream& rng) {
              auto w = graph::sample_window(nn, law_e, rng);
              ExtReal best = ExtReal::neg_inf();
              for (auto v : graph::max_charge_profile(w)) best = max(best, v);
              return best.value() / dn;
            };
          }
          auto s = harness::run_replicas(task, reps, g.seed, g.threads);
          std::vector<std::string> row{f.name(), num(*n), num(reps)};
          add_summary(row, s);
          t.add(row);
        }
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "clt", "Gaussian fluctuations of the longest path");
      auto p = std::make_shared<double>(0.5);
      auto n = std::make_shared<std::int64_t>(2000);
      auto cycles = std::make_shared<std::size_t>(20000);
      s->add_option("--p", *p, "edge probability");
      s->add_option("--n", *n, "window size");
      s->add_option("--cycles", *cycles, "skeleton cycles for the variance");
      set(s, [this, p, n, cycles] {
        const std::size_t reps = g.reps(200);
        auto r = graph::clt_experiment(*p, *n, reps, g.seed, *cycles, g.threads);
        Table t({"p", "n", "replicas", "C_hat", "sigma2", "ks", "critical", "pass", "degenerate"});
        t.add({num(*p), num(*n), num(reps), num(r.C_hat), num(r.sigma2), num(r.ks), num(r.critical),
               bool_str(!r.degenerate && r.ks < r.critical), bool_str(r.degenerate)});
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "gaps", "law of the gap between skeleton points");
      auto p = std::make_shared<double>(0.5);
      auto nmax = std::make_shared<int>(8);
      auto moment = std::make_shared<int>(0);
      auto decay = std::make_shared<double>(2.5);
      auto inf_tol = std::make_shared<double>(1e-4);
      s->add_option("--p", *p, "edge probability");
      s->add_option("--nmax", *nmax, "largest gap");
      s->add_option("--moment", *moment, "gap moment diagnostic of this order instead of the pmf");
      s->add_option("--decay", *decay, "p_d = min(0.5, c/d) for the moment diagnostic");
      s->add_option("--inf-tol", *inf_tol, "failure probability below which mu counts as infinite");
      set(s, [this, p, nmax, moment, decay, inf_tol] {
        if (*moment > 0) {
          double c = *decay;
          auto pd = [c](std::int64_t d) { return std::min(0.5, c / static_cast<double>(d)); };
          graph::RegenOptions opt;
          opt.inf_tol = *inf_tol;
          auto r = graph::gap_moment_diagnostic(pd, *moment, g.reps(4000), g.seed, opt);
          Table t({"exponent", "decay", "series", "series_finite", "moment_small", "moment_large", "relative_change",
                   "stable", "instability"});
          t.add({num(*moment), num(c), num(r.series), bool_str(r.series_finite), num(r.moment_small),
                 num(r.moment_large), num(r.relative_change), bool_str(r.stable), bool_str(r.instability)});
          return Output{t, {}};
        }
        auto pmf = graph::skeleton_gap_pmf(*p, *nmax, g.reps(100000), g.seed, g.threads);
        Table t({"n", "estimate", "ci95", "exact"});
        for (std::size_t k = 0; k < pmf.size(); ++k) {
          auto n = static_cast<std::int64_t>(k + 1);
          double e = exact_gap(*p, n);
          t.add({num(n), num(pmf[k].mean), num(pmf[k].ci95_halfwidth), std::isnan(e) ? "" : num(e)});
        }
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "skeleton", "consecutive skeleton cycles of the graph on Z");
      auto p = std::make_shared<double>(0.5);
      auto count = std::make_shared<std::size_t>(100);
      s->add_option("--p", *p, "edge probability");
      s->add_option("--count", *count, "number of cycles");
      set(s, [this, p, count] {
        auto lg = graph::LazyGraph::bernoulli(*p, harness::RngStream(g.seed, 0));
        double lambda = euler::skeleton_rate(*p);
        auto burn = static_cast<std::int64_t>(std::ceil(20.0 / std::max(lambda, 1e-6)));
        auto cyc = graph::skeleton_cycles(lg, burn, *count);
        Table t({"start", "length", "longest"});
        for (const auto& c : cyc) t.add({num(c.start), num(c.length), num(c.longest)});
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "heavy", "Pareto weights: heaviest geodesic edge or scaled weight");
      auto sidx = std::make_shared<double>(3.0);
      auto grid = std::make_shared<std::string>("64,128,256,512,1024,2048");
      auto n = std::make_shared<std::int64_t>(1000);
      s->add_option("--s", *sidx, "tail index");
      s->add_option("--grid", *grid, "n grid (tail index > 2)");
      s->add_option("--n", *n, "window size (tail index < 2)");
      set(s, [this, sidx, grid, n] {
        if (*sidx > 2.0) {
          auto r = weighted::heavy_edge_exponent(weighted::WeightLaw::pareto(*sidx), int_grid(*grid), g.reps(200),
                                                 g.seed, g.threads);
          Table t({"n", "mean_log_h", "slope", "target"});
          for (std::size_t k = 0; k < r.n.size(); ++k)
            t.add({num(r.n[k]), num(r.mean_log_h[k]), num(r.slope), num(r.target)});
          return Output{t, {}};
        }
        auto xs = weighted::heavy_tail_scaling(*sidx, *n, g.reps(200), g.seed, g.threads);
        Table t({"replica", "scaled_weight"});
        for (std::size_t k = 0; k < xs.size(); ++k) t.add({num(k), num(xs[k])});
        return Output{t, {}};
      });
    }
  }

  // ---- euler
  void euler(CLI::App* root) {
    auto* grp = sub(root, "euler", "Euler function and skeleton rate");
    grp->require_subcommand(1);
    {
      auto* s = sub(grp, "rate", "skeleton point density lambda(p)");
      auto p = std::make_shared<std::string>();
      s->add_option("--p", *p, "edge probability grid")->required();
      set(s, [p] {
        Table t({"p", "lambda", "inv_lambda"});
        for (double v : parse_grid(*p)) {
          double l = euler::skeleton_rate(v);
          t.add({num(v), num(l), num(1.0 / l)});
        }
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "partitions", "partition numbers and Euler coefficients");
      auto nmax = std::make_shared<int>(20);
      s->add_option("--nmax", *nmax, "largest index");
      set(s, [nmax] {
        if (*nmax < 0) throw InvalidParameter("partitions: nmax must be nonnegative");
        auto part = euler::partition_numbers(*nmax);
        auto phi = euler::phi_coefficients(*nmax);
        Table t({"n", "partitions", "phi_coefficient"});
        for (int k = 0; k <= *nmax; ++k)
          t.add({num(k), num(k == 0 ? std::int64_t{1} : part[static_cast<std::size_t>(k - 1)]),
                 num(phi[static_cast<std::size_t>(k)])});
        return Output{t, {}};
      });
    }
  }

  // ---- ibm
  void ibm(CLI::App* root) {
    auto* grp = sub(root, "ibm", "infinite bin model");
    grp->require_subcommand(1);
    {
      auto* s = sub(grp, "speed", "front speed by direct simulation");
      auto mu = std::make_shared<std::string>("geometric:0.5");
      auto steps = std::make_shared<std::int64_t>(100000);
      s->add_option("--mu", *mu, "geometric:<p> or file:<path>");
      s->add_option("--steps", *steps, "steps per replica");
      set(s, [this, mu, steps] {
        auto law = parse_letter_law(*mu);
        const std::size_t reps = g.reps(20);
        auto r = ibm::simulate_speed(law, *steps, ibm::Configuration(), g.seed, {reps, g.threads});
        Table t({"mu", "steps", "replicas", "estimate", "sem", "ci95"});
        std::vector<std::string> row{*mu, num(*steps), num(reps)};
        add_summary(row, r);
        t.add(row);
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "front", "C(p) from the stationary front content");
      auto p = std::make_shared<double>(0.5);
      auto steps = std::make_shared<std::int64_t>(1000000);
      auto burnin = std::make_shared<std::int64_t>(10000);
      auto batches = std::make_shared<int>(50);
      s->add_option("--p", *p, "geometric parameter");
      s->add_option("--steps", *steps, "steps after burn-in");
      s->add_option("--burnin", *burnin, "discarded steps");
      s->add_option("--batches", *batches, "batch count");
      set(s, [this, p, steps, burnin, batches] {
        auto r = ibm::estimate_C_via_front(*p, *steps, *burnin, g.seed, *batches);
        Table t({"p", "steps", "estimate", "sem", "ci95"});
        std::vector<std::string> row{num(*p), num(*steps)};
        add_summary(row, r);
        t.add(row);
        return Output{t, {}};
      });
    }
  }

  // ---- words
  void words(CLI::App* root) {
    auto* grp = sub(root, "words", "minimal good words and a_n");
    grp->require_subcommand(1);
    {
      auto* s = sub(grp, "an", "coefficients a_n of the series at p = 1");
      auto nmax = std::make_shared<int>(8);
      s->add_option("--nmax", *nmax, "largest n");
      set(s, [nmax] {
        auto c = words::a_coefficients_detailed(*nmax);
        Table t({"n", "a_n", "a_n_dual"});
        for (std::size_t k = 0; k < c.via_gmin.size(); ++k)
          t.add({num(k), num(c.via_gmin[k]), num(c.via_tmin_good[k])});
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "classify", "classify a word given in applied order, e.g. 1,2,2");
      auto word = std::make_shared<std::string>();
      s->add_option("word", *word, "letters, first applied first")->required();
      set(s, [word] {
        auto w = words::parse_applied(*word);
        auto disp = words::display(w);
        std::string d;
        for (std::size_t k = 0; k < disp.size(); ++k) d += (k ? "," : "") + std::to_string(disp[k]);
        Table t({"word", "display", "length", "height", "class", "triangular", "coupling_number", "minimal_good"});
        t.add({*word, d, num(w.length()), num(w.height()), words::to_string(words::classify(w)),
               bool_str(words::is_triangular(w)), num(words::coupling_number(w)), bool_str(words::in_G_min(w))});
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "series", "lower bound from minimal triangular good words");
      auto p = std::make_shared<std::string>("0.9");
      auto hmax = std::make_shared<int>(6);
      s->add_option("--p", *p, "edge probability grid");
      s->add_option("--hmax", *hmax, "largest height");
      set(s, [p, hmax] {
        Table t({"p", "hmax", "lower"});
        for (double v : parse_grid(*p)) t.add({num(v), num(*hmax), num(words::speed_series_lower(v, *hmax))});
        return Output{t, {}};
      });
    }
  }

  // ---- bounds
  void bounds(CLI::App* root) {
    auto* s = sub(root, "bounds", "Markov-chain bounds on C(p)");
    auto k = std::make_shared<std::string>("3");
    auto p = std::make_shared<std::string>();
    s->add_option("--k", *k, "truncation order grid");
    s->add_option("--p", *p, "edge probability grid")->required();
    set(s, [k, p] {
      Table t({"p", "k", "lower", "upper", "gap"});
      for (auto kk : int_grid(*k))
        for (double v : parse_grid(*p)) {
          auto b = chainbounds::bounds_C(v, static_cast<int>(kk));
          t.add({num(v), num(kk), num(b.lower), num(b.upper), num(b.upper - b.lower)});
        }
      return Output{t, {}};
    });
  }

  // ---- pwit
  void pwit(CLI::App* root) {
    auto* grp = sub(root, "pwit", "Poisson weighted infinite tree and sparse graphs");
    grp->require_subcommand(1);
    {
      auto* s = sub(grp, "sim", "generation sizes of the Yule tree");
      auto times = std::make_shared<std::string>("1,2,3");
      auto lmax = std::make_shared<int>(5);
      s->add_option("--t", *times, "sample times");
      s->add_option("--lmax", *lmax, "largest generation reported");
      set(s, [this, times, lmax] {
        auto ts = parse_grid(*times);
        std::sort(ts.begin(), ts.end());
        const std::size_t reps = g.reps(2000);
        const std::size_t L = static_cast<std::size_t>(std::max(*lmax, 0));
        // per time: |V| then Z(0..L)
        std::vector<std::vector<std::vector<double>>> vals(ts.size(),
                                                           std::vector<std::vector<double>>(L + 2));
        for (std::size_t r = 0; r < reps; ++r) {
          harness::RngStream rng(g.seed, r);
          auto run = pwit::simulate_pwit(ts.back(), ts, rng);
          for (std::size_t i = 0; i < ts.size(); ++i) {
            const auto& sn = run.snapshots[i];
            vals[i][0].push_back(static_cast<double>(sn.V));
            for (std::size_t l = 0; l <= L; ++l)
              vals[i][l + 1].push_back(l < sn.Z.size() ? static_cast<double>(sn.Z[l]) : 0.0);
          }
        }
        Table t({"t", "quantity", "ell", "mean", "sem", "ci95", "exact"});
        for (std::size_t i = 0; i < ts.size(); ++i) {
          std::vector<std::string> row{num(ts[i]), "V", ""};
          add_summary(row, harness::summarize(vals[i][0]));
          row.push_back(num(std::exp(ts[i])));
          t.add(row);
          for (std::size_t l = 0; l <= L; ++l) {
            std::vector<std::string> zr{num(ts[i]), "Z", num(l)};
            add_summary(zr, harness::summarize(vals[i][l + 1]));
            zr.push_back(num(std::exp(static_cast<double>(l) * std::log(ts[i]) - std::lgamma(static_cast<double>(l) + 1.0))));
            t.add(zr);
          }
        }
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "brw", "minimal displacement of the branching random walk");
      auto n = std::make_shared<std::int64_t>(500);
      auto beam = std::make_shared<std::int64_t>(1000);
      s->add_option("--n", *n, "generations");
      s->add_option("--beam", *beam, "particles kept per generation");
      set(s, [this, n, beam] {
        const std::size_t reps = g.reps(20);
        auto task = [&](harness::RngStream& rng) {
          return pwit::brw_min_displacement(*n, *beam, rng).M_n / static_cast<double>(*n);
        };
        auto r = harness::run_replicas(task, reps, g.seed, g.threads);
        Table t({"n", "beam", "replicas", "M_over_n", "sem", "ci95"});
        std::vector<std::string> row{num(*n), num(*beam), num(reps)};
        add_summary(row, r);
        t.add(row);
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "coupled", "front growth of the tree coupled to the graph");
      auto p = std::make_shared<double>(0.5);
      auto steps = std::make_shared<std::int64_t>(10000);
      s->add_option("--p", *p, "edge probability");
      s->add_option("--steps", *steps, "red particles per replica");
      set(s, [this, p, steps] {
        const std::size_t reps = g.reps(100);
        auto task = [&](harness::RngStream& rng) { return pwit::coupled_tree(*p, *steps, rng).growth_rate(); };
        auto r = harness::run_replicas(task, reps, g.seed, g.threads);
        Table t({"p", "steps", "replicas", "growth_rate", "sem", "ci95"});
        std::vector<std::string> row{num(*p), num(*steps), num(reps)};
        add_summary(row, r);
        t.add(row);
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "sparse", "longest path for small p");
      auto n = std::make_shared<std::int64_t>(1000);
      auto p = std::make_shared<double>(0.0);
      auto gamma = std::make_shared<double>(0.0);
      s->add_option("--n", *n, "vertices");
      s->add_option("--p", *p, "edge probability");
      s->add_option("--gamma", *gamma, "use p = gamma log n / n");
      set(s, [this, n, p, gamma] {
        double pp = *p;
        if (*gamma > 0.0) pp = *gamma * std::log(static_cast<double>(*n)) / static_cast<double>(*n);
        if (!(pp > 0.0)) throw InvalidParameter("pwit sparse: give --p or --gamma");
        auto r = pwit::sparse_longest(*n, pp, g.reps(1000), g.seed, g.threads);
        double pred = *gamma > 0.0 && *gamma < 1.0 ? std::exp(1.0) * pwit::A_gamma(*gamma) * *n * pp : NAN;
        Table t({"k", "probability", "mean", "ell_n", "predicted_mean"});
        for (std::size_t k = 0; k < r.pmf.size(); ++k)
          t.add({num(k), num(r.pmf[k]), num(r.mean), num(r.ell_n), std::isnan(pred) ? "" : num(pred)});
        return Output{t, {}};
      });
    }
  }

  // ---- shortest
  void shortest(CLI::App* root) {
    auto* s = sub(root, "shortest", "shortest path from the first to the last vertex");
    auto n = std::make_shared<std::int64_t>(10);
    auto p = std::make_shared<double>(0.3);
    s->add_option("--n", *n, "vertices");
    s->add_option("--p", *p, "edge probability");
    set(s, [this, n, p] {
      const std::size_t reps = g.reps(100000);
      auto r = pwit::shortest_path(*n, *p, reps, g.seed, g.threads);
      Table t({"s", "probability", "ci95", "formula"});
      auto ci = [&](double q) { return 1.96 * std::sqrt(q * (1.0 - q) / static_cast<double>(reps)); };
      for (std::size_t k = 1; k < r.pmf.size(); ++k) {
        std::string f;
        if (k == 1) f = num(pwit::shortest_p1(*p));
        if (k == 2) f = num(pwit::shortest_p2(*n, *p));
        t.add({num(k), num(r.pmf[k]), num(ci(r.pmf[k])), f});
      }
      t.add({"inf", num(r.p_inf), num(ci(r.p_inf)), ""});
      return Output{t, {}};
    });
  }

  // ---- charged
  void charged(CLI::App* root) {
    auto* grp = sub(root, "charged", "two-charge graphs and criticality");
    grp->require_subcommand(1);
    {
      auto* s = sub(grp, "estimate", "C(p,x) by the pruned window DP");
      auto p = std::make_shared<double>(0.5);
      auto x = std::make_shared<std::string>("0");
      auto n = std::make_shared<std::int64_t>(2000);
      s->add_option("--p", *p, "probability of charge 1");
      s->add_option("--x", *x, "other charge grid, -inf allowed");
      s->add_option("--n", *n, "window size");
      set(s, [this, p, x, n] {
        const std::size_t reps = g.reps(100);
        Table t({"p", "x", "n", "replicas", "estimate", "sem", "ci95", "c_at_zero"});
        for (double xv : parse_grid(*x)) {
          auto r = charged::estimate_Cpx(*p, xv, *n, reps, g.seed, g.threads);
          std::vector<std::string> row{num(*p), num(xv), num(*n), num(reps)};
          add_summary(row, r);
          row.push_back(xv == 0.0 ? num(charged::c_at_zero(1.0 - *p)) : "");
          t.add(row);
        }
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "witness", "critical graph for a rational x, as JSON");
      auto x = std::make_shared<std::string>();
      s->add_option("--x", *x, "rational charge, a/b or decimal")->required();
      set(s, [x] {
        auto r = charged::Rational::parse(*x);
        auto w = charged::build_witness(r);
        nlohmann::json j;
        j["x"] = r.str();
        j["family"] = w.family;
        j["n"] = w.n;
        j["edges"] = nlohmann::json::array();
        for (auto [a, b] : w.blue_edges) j["edges"].push_back({a, b});
        if (!w.marks.empty()) j["marks"] = w.marks;
        return Output{{}, j.dump() + "\n"};
      });
    }
    {
      auto* s = sub(grp, "verify", "check membership and criticality");
      auto x = std::make_shared<std::string>();
      auto graph_file = std::make_shared<std::string>();
      s->add_option("--x", *x, "rational charge")->required();
      s->add_option("--graph", *graph_file, "JSON edge list (default: the built-in witness)");
      set(s, [x, graph_file] {
        auto r = charged::Rational::parse(*x);
        charged::WitnessGraph w;
        if (graph_file->empty()) {
          w = charged::build_witness(r);
        } else {
          nlohmann::json j;
          try {
            j = nlohmann::json::parse(read_file(*graph_file));
          } catch (const nlohmann::json::exception& e) {
            throw InvalidParameter(std::string("graph file: ") + e.what());
          }
          std::vector<std::pair<std::int64_t, std::int64_t>> edges;
          for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<std::int64_t>(), e.at(1).get<std::int64_t>());
          w = charged::make_graph(j.at("n").get<std::int64_t>(), edges);
        }
        auto rep = charged::verify_critical(w, r);
        std::string paths;
        for (std::size_t k = 0; k < rep.certificate.size(); ++k) {
          if (k) paths += " | ";
          paths += join_ints(rep.certificate[k], '-');
        }
        Table t({"x", "n", "family", "member", "critical", "enumerated", "best_blue", "red_counts", "certificate"});
        t.add({r.str(), num(w.n), w.family, bool_str(rep.member), bool_str(rep.critical), bool_str(rep.enumerated),
               num(rep.best_blue), join_ints(rep.red_counts, ';'), paths});
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "scaling", "C(p,x) against the two rescaled variants");
      auto p = std::make_shared<double>(0.5);
      auto x = std::make_shared<double>(2.0);
      auto n = std::make_shared<std::int64_t>(2000);
      s->add_option("--p", *p, "probability of charge 1");
      s->add_option("--x", *x, "other charge, x > 0");
      s->add_option("--n", *n, "window size");
      set(s, [this, p, x, n] {
        auto r = charged::scaling_check(*p, *x, *n, g.reps(100), g.seed, g.threads);
        Table t({"route", "estimate", "sem", "ci95"});
        auto row = [&](const char* name, const harness::MonteCarloSummary& m) {
          std::vector<std::string> v{name};
          add_summary(v, m);
          t.add(v);
        };
        row("direct", r.direct);
        row("inverse", r.inverse);
        row("literal", r.literal);
        return Output{t, {}};
      });
    }
  }

  // ---- mgs
  void mgs(CLI::App* root) {
    auto* grp = sub(root, "mgs", "max growth system perfect simulation");
    grp->require_subcommand(1);
    {
      auto* s = sub(grp, "estimate", "C(F) by perfect simulation");
      auto dist = std::make_shared<std::string>("shifted-exp");
      auto ell = std::make_shared<double>(NAN);
      auto n = std::make_shared<std::size_t>(100000);
      s->add_option("--dist", *dist, "shifted-exp, bernoulli:<p>, two-atom:<p>,<x>, uniform:<a>");
      s->add_option("--ell", *ell, "threshold (default by law)");
      s->add_option("--n", *n, "perfect samples");
      set(s, [this, dist, ell, n] {
        auto f = ChargeLaw::parse(*dist);
        double l = std::isnan(*ell) ? mgs::default_ell(f) : *ell;
        auto r = mgs::estimate_CF(f, l, *n, g.seed, g.threads);
        Table t({"dist", "ell", "n", "estimate", "sem", "ci95", "mean_Tstar_sq", "max_depth"});
        std::vector<std::string> row{f.name(), num(l), num(*n)};
        add_summary(row, r.c);
        row.push_back(num(r.tstar_sq.mean));
        row.push_back(num(r.max_depth));
        t.add(row);
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "complexity", "mean (T*)^2 against the threshold");
      auto dist = std::make_shared<std::string>("shifted-exp");
      auto ell = std::make_shared<std::string>("0.3:0.9:0.1");
      auto n = std::make_shared<std::size_t>(10000);
      s->add_option("--dist", *dist, "charge law");
      s->add_option("--ell", *ell, "threshold grid");
      s->add_option("--n", *n, "samples per grid point");
      set(s, [this, dist, ell, n] {
        auto f = ChargeLaw::parse(*dist);
        auto rows = mgs::complexity_profile(f, parse_grid(*ell), *n, g.seed, g.threads);
        Table t({"dist", "ell", "mean_Tstar_sq", "sem", "ci95"});
        for (const auto& r : rows) {
          std::vector<std::string> row{f.name(), num(r.ell)};
          add_summary(row, r.tstar_sq);
          t.add(row);
        }
        return Output{t, {}};
      });
    }
    {
      auto* s = sub(grp, "glynn-rhee", "debiased estimator for unbounded charges");
      auto dist = std::make_shared<std::string>("shifted-exp");
      auto ratio = std::make_shared<double>(0.5);
      auto ell = std::make_shared<double>(0.7);
      auto n = std::make_shared<std::size_t>(10000);
      s->add_option("--dist", *dist, "a bounded charge law, or logistic, exp-shift:<c>, pareto:<s> (cost grows with the truncation level)");
      s->add_option("--ratio", *ratio, "geometric truncation ratio");
      s->add_option("--ell", *ell, "threshold");
      s->add_option("--n", *n, "samples");
      set(s, [this, dist, ratio, ell, n] {
        auto gr = parse_gr_law(*dist);
        gr.ratio = *ratio;
        gr.ell = *ell;
        auto r = mgs::glynn_rhee_estimate(gr, *n, g.seed, g.threads);
        Table t({"dist", "ratio", "n", "estimate", "sem", "ci95", "variance"});
        std::vector<std::string> row{*dist, num(*ratio), num(*n)};
        add_summary(row, r);
        row.push_back(num(r.variance));
        t.add(row);
        return Output{t, {}};
      });
    }
  }
};

std::string quote_arg(const std::string& a) {
  if (!a.empty() && a.find_first_of(" \t'\"\\") == std::string::npos) return a;
  std::string s = "'";
  for (char c : a) s += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return s + "'";
}

// appends config entries not already given on the command line
std::vector<std::string> with_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t k = 1; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
    else if (args[k].rfind("--config=", 0) == 0) path = args[k].substr(9);
  }
  if (path.empty()) return args;
  auto present = [&](const std::string& key) {
    for (std::size_t k = 1; k < args.size(); ++k)
      if (args[k] == "--" + key || args[k].rfind("--" + key + "=", 0) == 0) return true;
    return false;
  };
  for (const auto& [key, value] : parse_config(read_file(path))) {
    if (key == "config") throw InvalidParameter("config files cannot include other config files");
    if (present(key)) continue;
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

int error_exit(const char* kind, const std::string& msg) {
  nlohmann::json j = {{"error", kind}, {"message", msg}};
  std::cerr << j.dump() << "\n";
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& raw_args) {
  const auto t0 = std::chrono::steady_clock::now();
  Globals g;
  Action action;
  CLI::App app{"last-passage percolation on directed random graphs", "lpp"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", version());
  app.add_option("--seed", g.seed, "base seed");
  app.add_option("--replicas", g.replicas, "replica count (0 = command default)");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--out", g.out, "output file, - for stdout");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", g.config, "flat key=value file of option defaults");

  Registry reg{app, g, action};
  reg.graph(&app);
  reg.euler(&app);
  reg.ibm(&app);
  reg.words(&app);
  reg.bounds(&app);
  reg.pwit(&app);
  reg.shortest(&app);
  reg.charged(&app);
  reg.mgs(&app);

  if (raw_args.size() <= 1) {
    std::cerr << app.help();
    return 2;
  }

  try {
    std::vector<std::string> args = with_config(raw_args);
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::ios_base::failure& e) {
    return error_exit("io", e.what());
  } catch (const InvalidParameter& e) {
    return error_exit("invalid_parameter", e.what());
  }

  if (!action) {
    std::cerr << app.help();
    return 2;
  }

  try {
    Output out = action();
    std::uint64_t checksum = 0;
    auto fmt = table::parse_format(g.format);
    if (!out.raw.empty()) {
      checksum = table::fnv1a64(out.raw);
      if (g.out == "-") {
        std::cout << out.raw;
      } else {
        std::ofstream f(g.out, std::ios::binary);
        if (!f || !(f << out.raw)) throw std::ios_base::failure("cannot write output file: " + g.out);
      }
    } else {
      checksum = table::emit(out.table, fmt, g.out);
    }
    if (g.out != "-") {
      table::RunManifest m;
      for (std::size_t k = 0; k < raw_args.size(); ++k) m.command_line += (k ? " " : "") + quote_arg(raw_args[k]);
      m.seed = g.seed;
      m.version = version();
      m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      m.checksum = checksum;
      m.format = out.raw.empty() ? g.format : "json";
      m.output = g.out;
      std::ofstream f(g.out + ".manifest.json", std::ios::binary);
      if (!f || !(f << table::manifest_json(m))) throw std::ios_base::failure("cannot write manifest for " + g.out);
    }
    return 0;
  } catch (const InvalidParameter& e) {
    return error_exit("invalid_parameter", e.what());
  } catch (const ResourceError& e) {
    return error_exit("resource", e.what());
  } catch (const NumericError& e) {
    return error_exit("numeric", e.what());
  } catch (const std::ios_base::failure& e) {
    return error_exit("io", e.what());
  } catch (const std::out_of_range& e) {
    return error_exit("invalid_parameter", e.what());
  } catch (const nlohmann::json::exception& e) {
    return error_exit("invalid_parameter", e.what());
  } catch (const std::exception& e) {
    return error_exit("internal", e.what());
  }
}

int run(int argc, char** argv) { return run(std::vector<std::string>(argv, argv + argc)); }

}  // namespace lpp::cli
