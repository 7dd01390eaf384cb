#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "boostmargin/boosting.hpp"
#include "boostmargin/bounds.hpp"
#include "boostmargin/domain.hpp"
#include "boostmargin/ensembles.hpp"
#include "boostmargin/errors.hpp"
#include "boostmargin/oracle.hpp"
#include "boostmargin/parallel.hpp"
#include "boostmargin/rng.hpp"
#include "boostmargin/voting.hpp"

namespace boostmargin::experiments {

// ---------------------------------------------------------------------------
// Weak-learnable problem generator

struct GeneratorConfig {
  std::size_t n_points = 200;
  std::size_t n_features = 8;
  std::size_t k_terms = 5;
  double theta = 0.3;
  std::uint64_t seed = 7;
  std::size_t n_levels = 64;            // feature values live on this grid
  std::size_t probe_reweightings = 1000;

  void validate() const {
    require(n_points >= 1, "n_points must be positive");
    require(n_features >= 1, "n_features must be positive");
    require(k_terms >= 1 && k_terms <= n_features, "k_terms must lie in [1, n_features]");
    require(theta > 0.0 && theta < 1.0, "theta must lie in (0, 1)");
    require(n_levels >= 2, "n_levels must be at least 2");
  }
};

struct WeakLearnableProblem {
  HypothesisClass hypotheses;
  DiscreteDistribution distribution;
  VotingClassifier concept_vote;  // g with |g(x)| >= theta on the positive-mass support
  double min_probe_edge = 0.0;    // smallest best edge seen by the probe
};

/// Stumps on a level grid: feature values are (l + 1/2) / L and thresholds
/// are l / L for l in [0, L), both polarities. Threshold 0 gives constants.
/// Order is feature-major, then threshold, then polarity +1 before -1.
inline HypothesisClass grid_stumps(std::size_t n_features, std::size_t n_levels, std::optional<int> vc = std::nullopt) {
  std::vector<Hypothesis> hs;
  hs.reserve(2 * n_features * n_levels);
  for (std::size_t f = 0; f < n_features; ++f)
    for (std::size_t l = 0; l < n_levels; ++l)
      for (Label pol : {1, -1})
        hs.emplace_back(Stump{f, static_cast<double>(l) / static_cast<double>(n_levels), pol});
  return HypothesisClass(std::move(hs), vc);
}

/// Smallest best edge 1/2 - min_h err_w(h) over random Dirichlet(1)
/// reweightings of the positive-mass support.
inline double probe_min_edge(const HypothesisClass& hc, const DiscreteDistribution& d, std::size_t reweightings,
                             std::uint64_t seed) {
  std::vector<LabeledExample> ex;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.probs()[i] > 0.0) ex.push_back(d.labeled(i));
  TrainingSequence support(std::move(ex));
  WeakLearnerIndex index(hc, support);
  CounterRng rng(seed, 0x70726f6265ULL);
  double lowest = 0.5;
  std::vector<double> w(support.size());
  for (std::size_t r = 0; r < reweightings; ++r) {
    double total = 0.0;
    for (double& v : w) total += v = rng.exponential();
    for (double& v : w) v /= total;
    lowest = std::min(lowest, 0.5 - index.best(w).error);
  }
  return lowest;
}

/// Random feature points on a level grid and a target c* = sign(g) for a
/// convex combination g of k_terms stumps on distinct features.
///
/// Points with |g(x)| < theta stay in the support with probability zero;
/// the rest are uniform. On the positive-mass support every reweighting then
/// admits a stump with edge >= theta/2, which the sampling probe re-checks.
inline WeakLearnableProblem make_weak_learnable(const GeneratorConfig& cfg) {
  cfg.validate();
  CounterRng rng(cfg.seed, 0x67656eULL);
  const double levels = static_cast<double>(cfg.n_levels);

  std::vector<std::size_t> features(cfg.n_features);
  std::iota(features.begin(), features.end(), std::size_t{0});
  for (std::size_t i = features.size(); i > 1; --i) std::swap(features[i - 1], features[rng.below(i)]);

  std::vector<VoteTerm> terms;
  for (std::size_t k = 0; k < cfg.k_terms; ++k) {
    const std::size_t lo = cfg.n_levels / 4 + 1;
    const std::size_t hi = std::max(lo + 1, 3 * cfg.n_levels / 4);
    const auto level = static_cast<double>(lo + rng.below(hi - lo));
    const Label pol = rng.below(2) ? 1 : -1;
    terms.push_back({rng.uniform(1.0, 2.0), Stump{features[k], level / levels, pol}});
  }
  VotingClassifier g(std::move(terms));

  std::vector<Point> points;
  std::vector<Label> target;
  std::vector<char> keep;
  points.reserve(cfg.n_points);
  std::size_t kept = 0;
  for (std::size_t i = 0; i < cfg.n_points; ++i) {
    std::vector<double> x(cfg.n_features);
    for (double& v : x) v = (static_cast<double>(rng.below(cfg.n_levels)) + 0.5) / levels;
    points.push_back(Point::featured(std::move(x)));
    const double gx = g(points.back());
    target.push_back(gx >= 0.0 ? 1 : -1);
    keep.push_back(std::abs(gx) >= cfg.theta ? 1 : 0);
    kept += keep.back();
  }
  if (kept == 0) throw GenerationFailed("no support point reaches the target margin theta");
  std::vector<double> probs(cfg.n_points);
  for (std::size_t i = 0; i < cfg.n_points; ++i) probs[i] = keep[i] ? 1.0 / static_cast<double>(kept) : 0.0;

  DiscreteDistribution d(std::move(points), std::move(probs), std::move(target));
  HypothesisClass hc = grid_stumps(cfg.n_features, cfg.n_levels);

  // d is reported for the bound formulas: VC dimension of H on a sample of
  // positive-mass support points, a lower-bound estimate.
  std::vector<Point> probe_points;
  for (std::size_t i = 0; i < d.size() && probe_points.size() < oracle::kMaxVcPoints; ++i)
    if (d.probs()[i] > 0.0) probe_points.push_back(d.point(i));
  const auto vc = oracle::vc_dimension_exact(hc, probe_points).dimension;
  hc = HypothesisClass(hc.hypotheses(), static_cast<int>(std::max<std::size_t>(vc, 1)));

  const double edge = probe_min_edge(hc, d, cfg.probe_reweightings, cfg.seed);
  if (edge < cfg.theta / 2.0 - 1e-12)
    throw GenerationFailed("sampling probe found a reweighting with edge " + std::to_string(edge) +
                           " below theta/2");
  return WeakLearnableProblem{std::move(hc), std::move(d), std::move(g), edge};
}

// ---------------------------------------------------------------------------
// Trials

enum class Learner { AdaBoost, Maj3, Maj5 };

inline const char* to_string(Learner l) {
  switch (l) {
    case Learner::AdaBoost: return "adaboost";
    case Learner::Maj3: return "maj3";
    case Learner::Maj5: return "maj5";
  }
  return "unknown";
}

inline Learner parse_learner(const std::string& s) {
  if (s == "adaboost") return Learner::AdaBoost;
  if (s == "maj3") return Learner::Maj3;
  if (s == "maj5") return Learner::Maj5;
  throw InputError("unknown learner '" + s + "' (expected adaboost, maj3 or maj5)");
}

/// Exact evaluation of voting classifiers on a distribution's support.
class SupportEvaluator {
 public:
  explicit SupportEvaluator(const DiscreteDistribution& d) : d_(&d) {
    if (!d.points().front().is_indexed()) scorer_ = std::make_unique<StumpScorer>(d.points());
  }

  std::vector<double> values(const VotingClassifier& f) const { return evaluate_on(f, d_->points(), scorer_.get()); }

  double error(const VotingClassifier& f) const { return exact_error_from_values(values(f), *d_); }

  const DiscreteDistribution& distribution() const { return *d_; }

 private:
  const DiscreteDistribution* d_;
  std::unique_ptr<StumpScorer> scorer_;
};

struct TrialRecord {
  Learner learner = Learner::AdaBoost;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  double error = 0.0;           // exact generalization error
  std::size_t rounds = 0;       // total boosting rounds over all members
  double min_margin = 0.0;      // smallest achieved training margin over members
  double witness = 0.0;         // mass where a majority of members err (ensembles)
  double wall_seconds = 0.0;
  bool failed = false;
  std::string failure;
};

/// Trains one learner on fresh draws and scores it exactly against D.
inline TrialRecord run_trial(const SupportEvaluator& eval, const HypothesisClass& hc, Learner learner, std::size_t m,
                             double gamma, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  const DiscreteDistribution& d = eval.distribution();
  TrialRecord rec;
  rec.learner = learner;
  rec.m = m;
  rec.seed = seed;
  try {
    std::vector<BoostResult> results;
    if (learner == Learner::AdaBoost) {
      results.push_back(adaboost(sample_training_sequence(d, m, seed), hc, gamma));
      rec.error = eval.error(results.front().classifier);
    } else {
      MajorityEnsemble e = learner == Learner::Maj3
                               ? train_majority_of_3(d, m, hc, gamma, seed, &results)
                               : train_majority_of_5_partition(sample_training_sequence(d, m, seed), hc, gamma, &results);
      std::vector<std::vector<double>> values;
      for (const auto& f : e.members()) values.push_back(eval.values(f));
      const MajorityErrors errs = majority_errors_from_values(values, d);
      rec.error = errs.ensemble;
      rec.witness = errs.witness;
      ensure(rec.error <= rec.witness, "majority error exceeds the majority-err witness");
    }
    rec.min_margin = std::numeric_limits<double>::infinity();
    for (const auto& r : results) {
      rec.rounds += r.logs.size();
      rec.min_margin = std::min(rec.min_margin, r.achieved_min_margin);
    }
  } catch (const EdgeViolation& ev) {
    rec.failed = true;
    rec.failure = ev.what();
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

inline TrialRecord run_trial(const DiscreteDistribution& d, const HypothesisClass& hc, Learner learner, std::size_t m,
                             double gamma, std::uint64_t seed) {
  SupportEvaluator eval(d);
  return run_trial(eval, hc, learner, m, gamma, seed);
}

// ---------------------------------------------------------------------------
// Scaling

struct SlopeFit {
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  double slope_se = std::numeric_limits<double>::quiet_NaN();
  std::size_t points = 0;
  bool floor_reached = false;
};

/// OLS of ln(y) on ln(m). Zero means are excluded; if more than half of
/// them are zero the fit runs on the nonzero prefix and floor_reached is set.
inline SlopeFit fit_loglog(const std::vector<double>& ms, const std::vector<double>& ys) {
  require(ms.size() == ys.size(), "slope fit needs matching m and y vectors");
  std::size_t zeros = 0;
  for (double y : ys) zeros += y <= 0.0;
  SlopeFit fit;
  std::vector<double> xs, ls;
  if (2 * zeros > ys.size()) {
    fit.floor_reached = true;
    for (std::size_t i = 0; i < ys.size() && ys[i] > 0.0; ++i) {
      xs.push_back(std::log(ms[i]));
      ls.push_back(std::log(ys[i]));
    }
  } else {
    for (std::size_t i = 0; i < ys.size(); ++i)
      if (ys[i] > 0.0) {
        xs.push_back(std::log(ms[i]));
        ls.push_back(std::log(ys[i]));
      }
  }
  fit.points = xs.size();
  if (xs.size() < 2) return fit;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ls[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ls[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (xs.size() > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ls[i] - fit.intercept - fit.slope * xs[i];
      rss += r * r;
    }
    fit.slope_se = std::sqrt(rss / (n - 2.0) / sxx);
  } else {
    fit.slope_se = 0.0;
  }
  return fit;
}

struct ScalingRow {
  std::size_t m = 0;
  double mean_error = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;  // successful trials
  std::size_t failed = 0;
  double optimal_rate = 0.0;
  double adaboost_bound = 0.0;
  double mean_rounds = 0.0;
  double min_margin = 0.0;
};

struct ScalingReport {
  Learner learner = Learner::Maj3;
  double gamma = 0.0;
  long long d = 1;
  std::vector<ScalingRow> rows;
  SlopeFit fit;
  std::vector<TrialRecord> records;
  double wall_seconds = 0.0;
};

struct ScalingConfig {
  GeneratorConfig generator;
  std::vector<std::size_t> m_grid;
  std::size_t trials = 50;
  double gamma = 0.15;
  Learner learner = Learner::Maj3;
  std::uint64_t seed = 1;
  double delta = 0.05;  // for the bound columns

  void validate() const {
    generator.validate();
    require(!m_grid.empty(), "m_grid must be non-empty");
    require(std::is_sorted(m_grid.begin(), m_grid.end()) &&
                std::adjacent_find(m_grid.begin(), m_grid.end()) == m_grid.end(),
            "m_grid must be strictly ascending");
    require(m_grid.front() >= 2, "m values must be at least 2");
    if (learner == Learner::Maj5) require(m_grid.front() >= 5, "maj5 needs m >= 5");
    require(trials >= 30, "scaling needs at least 30 trials per m");
    require(gamma > 0.0 && gamma <= generator.theta / 2.0, "gamma must lie in (0, theta/2]");
    require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  }
};

/// Sum in ascending order so the result is independent of worker scheduling.
inline double sorted_sum(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

/// Mean exact error per m over independent trials, with a log-log slope fit
/// and the optimal-rate and AdaBoost-bound reference curves.
inline ScalingReport scaling_experiment(const WeakLearnableProblem& problem, const ScalingConfig& cfg,
                                        unsigned threads = worker_count()) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  SupportEvaluator eval(problem.distribution);
  const std::size_t per_m = cfg.trials;
  std::vector<TrialRecord> records(cfg.m_grid.size() * per_m);
  parallel_for(
      records.size(),
      [&](std::size_t k) {
        const std::size_t mi = k / per_m;
        const std::size_t trial = k % per_m;
        const std::uint64_t seed = derive_seed(derive_seed(cfg.seed, cfg.m_grid[mi]), trial);
        records[k] = run_trial(eval, problem.hypotheses, cfg.learner, cfg.m_grid[mi], cfg.gamma, seed);
      },
      threads);

  ScalingReport rep;
  rep.learner = cfg.learner;
  rep.gamma = cfg.gamma;
  rep.d = problem.hypotheses.declared_vc().value_or(1);
  std::vector<double> ms, means;
  for (std::size_t mi = 0; mi < cfg.m_grid.size(); ++mi) {
    ScalingRow row;
    row.m = cfg.m_grid[mi];
    std::vector<double> errs, rounds, sq;
    double low_margin = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < per_m; ++t) {
      const TrialRecord& r = records[mi * per_m + t];
      if (r.failed) {
        ++row.failed;
        continue;
      }
      errs.push_back(r.error);
      rounds.push_back(static_cast<double>(r.rounds));
      low_margin = std::min(low_margin, r.min_margin);
    }
    row.trials = errs.size();
    if (!errs.empty()) {
      const double n = static_cast<double>(errs.size());
      row.mean_error = sorted_sum(errs) / n;
      for (double e : errs) sq.push_back((e - row.mean_error) * (e - row.mean_error));
      row.std_error = errs.size() > 1 ? std::sqrt(sorted_sum(sq) / (n - 1.0) / n) : 0.0;
      row.mean_rounds = sorted_sum(rounds) / n;
      row.min_margin = low_margin;
    }
    bounds::BoundInputs in;
    in.d = rep.d;
    in.m = static_cast<long long>(row.m);
    in.gamma = cfg.gamma;
    in.delta = cfg.delta;
    row.optimal_rate = bounds::optimal_rate(in);
    row.adaboost_bound = bounds::adaboost_bound(in);
    ms.push_back(static_cast<double>(row.m));
    means.push_back(row.mean_error);
    rep.rows.push_back(row);
  }
  rep.fit = fit_loglog(ms, means);
  rep.records = std::move(records);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline ScalingReport scaling_experiment(const ScalingConfig& cfg, unsigned threads = worker_count()) {
  cfg.validate();
  return scaling_experiment(make_weak_learnable(cfg.generator), cfg, threads);
}

/// Mean errors may rise at most once between adjacent m, by at most
/// `tolerance` relative.
inline bool nearly_non_increasing(const std::vector<ScalingRow>& rows, double tolerance = 0.10) {
  std::size_t inversions = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].mean_error <= rows[i - 1].mean_error) continue;
    ++inversions;
    if (rows[i].mean_error > rows[i - 1].mean_error * (1.0 + tolerance)) return false;
  }
  return inversions <= 1;
}

// ---------------------------------------------------------------------------
// Margin histogram

struct MarginHistogram {
  std::vector<double> edges;         // bins + 1 edges over [-1, 1]
  std::vector<std::size_t> counts;   // last bin is closed on the right
};

inline MarginHistogram margin_histogram(const VotingClassifier& f, const TrainingSequence& s, std::size_t bins) {
  require(bins >= 1, "histogram needs at least one bin");
  MarginHistogram h;
  h.counts.assign(bins, 0);
  for (std::size_t b = 0; b <= bins; ++b) h.edges.push_back(-1.0 + 2.0 * static_cast<double>(b) / static_cast<double>(bins));
  for (const auto& ex : s) {
    const double v = std::clamp(margin(f, ex), -1.0, 1.0);
    auto b = static_cast<std::size_t>(std::floor((v + 1.0) / 2.0 * static_cast<double>(bins)));
    h.counts[std::min(b, bins - 1)] += 1;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Probabilistic-consistency probe for the fixed-threshold margin lemma

struct WilsonInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Wilson score interval for k successes in n trials at normal quantile z.
inline WilsonInterval wilson(std::size_t k, std::size_t n, double z) {
  require(n >= 1, "Wilson interval needs at least one trial");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * nn)) / (1.0 + z2 / nn);
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / (1.0 + z2 / nn);
  return {k == 0 ? 0.0 : std::max(0.0, centre - half), k == n ? 1.0 : std::min(1.0, centre + half)};
}

struct ProbeConfig {
  std::vector<std::vector<int>> hypotheses;  // +-1 truth tables over the support
  std::vector<double> probs;
  std::vector<int> target;
  std::size_t m = 50;
  double gamma0 = 0.1;
  double gamma1 = 0.3;
  double tau0 = 0.0;
  double tau1 = 0.2;
  double delta = 0.05;
  int q = 6;                     // grid resolution of the convex hull
  std::size_t trials = 10'000;
  std::uint64_t seed = 1;
  double slack_constant = 64.0;  // multiplier of the deviation term

  void validate() const {
    require(!probs.empty() && probs.size() <= 12, "probe support must have 1 to 12 points");
    require(!hypotheses.empty() && hypotheses.size() <= 4, "probe class must have 1 to 4 hypotheses");
    for (const auto& h : hypotheses) require(h.size() == probs.size(), "probe hypotheses must cover the support");
    require(target.size() == probs.size(), "probe target must cover the support");
    require(m >= 1 && trials >= 1, "probe needs m >= 1 and trials >= 1");
    require(gamma0 > 0.0 && gamma0 <= gamma1 && gamma1 <= 1.0, "need 0 < gamma0 <= gamma1 <= 1");
    require(tau0 >= 0.0 && tau0 <= tau1, "need 0 <= tau0 <= tau1");
    require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
    require(slack_constant >= 0.0, "slack constant must be non-negative");
  }
};

struct ProbeResult {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double frequency = 0.0;
  WilsonInterval wilson95;
  double threshold = 0.0;        // tau1 + slack * deviation
  std::size_t hull_size = 0;
  std::size_t cover_size = 0;    // internal cover of the clipped grid hull at gamma0/2
  bool cover_exact = false;
  double bound = 0.0;            // delta * cover_size
  bool consistent = false;       // wilson95.upper <= bound
};

/// tau1 + slack * (sqrt(2 tau1 ln(e/delta) / m) + 2 ln(e/delta) / m).
inline double probe_threshold(double tau1, double delta, std::size_t m, double slack) {
  const double l = std::log(std::numbers::e / delta);
  const double md = static_cast<double>(m);
  return tau1 + slack * (std::sqrt(2.0 * tau1 * l / md) + 2.0 * l / md);
}

/// Monte Carlo frequency of the event: some f in the grid hull and some
/// gamma in [gamma0, gamma1] have Ls^gamma_S(f) in [tau0, tau1] while
/// Ls_D(f) >= threshold, over fresh S ~ D^m. The reference bound is
/// delta times the cover size of the hull clipped at 2 gamma1 at scale
/// gamma0/2 on the whole support, which dominates every 2m-point set.
inline ProbeResult lemma31_probe(const ProbeConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.probs.size();
  std::vector<std::vector<double>> base;
  for (const auto& h : cfg.hypotheses) {
    std::vector<double> row;
    for (int v : h) {
      require(is_label(v), "probe hypotheses must be +-1 valued");
      row.push_back(v);
    }
    base.push_back(std::move(row));
  }
  const oracle::FunctionTable hull = oracle::grid_convex_hull(oracle::FunctionTable::from_rows(base), cfg.q);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(Point::indexed(i));
  DiscreteDistribution d(pts, cfg.probs, std::vector<Label>(cfg.target.begin(), cfg.target.end()));

  ProbeResult res;
  res.trials = cfg.trials;
  res.hull_size = hull.rows();
  res.threshold = probe_threshold(cfg.tau1, cfg.delta, cfg.m, cfg.slack_constant);

  // Only rows whose true error reaches the threshold can trigger the event.
  struct Candidate {
    std::vector<double> margins;  // y_x f(x) per support point
    std::vector<double> levels;   // gamma values where Ls^gamma_S can change
  };
  std::vector<Candidate> candidates;
  for (std::size_t r = 0; r < hull.rows(); ++r) {
    Candidate c;
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      c.margins.push_back(cfg.target[i] * hull(r, i));
      if (c.margins.back() <= 0.0) err += cfg.probs[i];
    }
    if (err < res.threshold) continue;
    c.levels.push_back(cfg.gamma0);
    for (double v : c.margins)
      if (v > cfg.gamma0 && v <= cfg.gamma1) c.levels.push_back(v);
    candidates.push_back(std::move(c));
  }

  std::size_t hits = 0;
  std::vector<std::size_t> counts(n);
  const double md = static_cast<double>(cfg.m);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i : sample_indices(d, cfg.m, derive_seed(cfg.seed, t))) ++counts[i];
    bool event = false;
    for (const auto& c : candidates) {
      for (double g : c.levels) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (c.margins[i] <= g) k += counts[i];
        const double loss = static_cast<double>(k) / md;
        if (loss >= cfg.tau0 && loss <= cfg.tau1) {
          event = true;
          break;
        }
      }
      if (event) break;
    }
    hits += event;
  }
  res.violations = hits;
  res.frequency = static_cast<double>(hits) / static_cast<double>(cfg.trials);
  res.wilson95 = wilson(hits, cfg.trials, 1.959963984540054);

  const oracle::FunctionTable clipped = oracle::clip_table(hull, 2.0 * cfg.gamma1);
  const oracle::CoverResult cover = oracle::covering_number_exact(clipped, cfg.gamma0 / 2.0);
  res.cover_size = cover.size;
  res.cover_exact = cover.exact;
  res.bound = cfg.delta * static_cast<double>(cover.size);
  res.consistent = res.wilson95.upper <= res.bound;
  return res;
}

/// Closed-form event probability for a single-hypothesis class with
/// gamma1 < 1: Pr[Bin(m, p) / m in [tau0, tau1]] when p = Ls_D(h) reaches
/// the threshold, else 0.
inline double single_hypothesis_event_probability(double p, std::size_t m, double tau0, double tau1,
                                                  double threshold) {
  if (p < threshold) return 0.0;
  const double md = static_cast<double>(m);
  double total = 0.0;
  for (std::size_t k = 0; k <= m; ++k) {
    const double frac = static_cast<double>(k) / md;
    if (frac < tau0 || frac > tau1) continue;
    const double logp = std::lgamma(md + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
                        std::lgamma(md - static_cast<double>(k) + 1.0) +
                        (k ? static_cast<double>(k) * std::log(p) : 0.0) +
                        (m - k ? (md - static_cast<double>(k)) * std::log1p(-p) : 0.0);
    total += std::exp(logp);
  }
  return std::min(1.0, total);
}

}  // namespace boostmargin::experiments
