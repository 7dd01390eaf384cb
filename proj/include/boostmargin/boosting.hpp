#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "boostmargin/domain.hpp"
#include "boostmargin/errors.hpp"
#include "boostmargin/voting.hpp"

namespace boostmargin {

/// A probability vector over the examples of a training sequence.
class WeightVector {
 public:
  static WeightVector uniform(std::size_t m) {
    require(m >= 1, "weight vector needs at least one entry");
    return WeightVector(std::vector<double>(m, 1.0 / static_cast<double>(m)));
  }

  explicit WeightVector(std::vector<double> w) : w_(std::move(w)) {
    require(!w_.empty(), "weight vector needs at least one entry");
    double total = 0.0;
    for (double v : w_) {
      require(std::isfinite(v) && v >= 0.0, "weights must be non-negative");
      total += v;
    }
    require(std::abs(total - 1.0) <= 1e-9, "weights must sum to 1");
  }

  std::span<const double> values() const { return w_; }
  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }

 private:
  std::vector<double> w_;
};

struct WeakPick {
  std::size_t index = 0;
  double error = 0.0;
};

/// Weighted error sum_i w_i 1{h(x_i) != y_i}, accumulated in example order.
inline double weighted_error(const Hypothesis& h, const TrainingSequence& s, std::span<const double> w) {
  double err = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (h(s[i].point) != s[i].label) err += w[i];
  return err;
}

/// Exhaustive argmin of weighted error over H; ties go to the lowest index.
inline WeakPick best_hypothesis(const HypothesisClass& hc, const TrainingSequence& s,
                                std::span<const double> w) {
  require(w.size() == s.size(), "weight vector length must match the training sequence");
  WeakPick best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t j = 0; j < hc.size(); ++j) {
    const double e = weighted_error(hc[j], s, w);
    if (e < best.error) best = {j, e};
  }
  return best;
}

inline WeakPick best_hypothesis(const HypothesisClass& hc, const TrainingSequence& s, const WeightVector& w) {
  return best_hypothesis(hc, s, w.values());
}

/// Precomputed weak-learner state for one (H, S) pair.
///
/// For stump classes every hypothesis is reduced to a split position in the
/// per-feature sort order of S, so a round costs O(features * m + groups).
/// Candidates within kTieWindow of the approximate minimum are re-scored with
/// weighted_error's summation order, which makes the result identical to
/// best_hypothesis. Truth-table classes use a precomputed mistake matrix.
class WeakLearnerIndex {
 public:
  static constexpr double kTieWindow = 1e-9;

  WeakLearnerIndex(const HypothesisClass& hc, const TrainingSequence& s) : hc_(&hc), m_(s.size()) {
    labels_.reserve(m_);
    for (const auto& ex : s) labels_.push_back(ex.label);
    if (hc.is_stumps())
      build_stumps(hc, s);
    else
      build_tables(hc, s);
  }

  std::size_t size() const { return m_; }

  WeakPick best(std::span<const double> w) {
    require(w.size() == m_, "weight vector length must match the training sequence");
    return stumps_ ? best_stump(w) : best_table(w);
  }

  /// y_i * h_j(x_i) for every example.
  std::vector<int> agreement(std::size_t j) const {
    std::vector<int> out(m_);
    if (stumps_) {
      const Stump& st = (*hc_)[j].stump();
      const auto& col = columns_[st.feature];
      for (std::size_t i = 0; i < m_; ++i) out[i] = labels_[i] * (col[i] >= st.threshold ? st.polarity : -st.polarity);
    } else {
      const std::uint8_t* row = &mistakes_[j * m_];
      for (std::size_t i = 0; i < m_; ++i) out[i] = row[i] ? -1 : 1;
    }
    return out;
  }

 private:
  struct Group {
    std::size_t feature;
    std::size_t split;  // number of examples with x[feature] < threshold
    int polarity;
    std::size_t first;  // lowest hypothesis index in the group
  };

  void build_stumps(const HypothesisClass& hc, const TrainingSequence& s) {
    stumps_ = true;
    const std::size_t nf = s[0].point.features().size();
    columns_.assign(nf, std::vector<double>(m_));
    for (std::size_t i = 0; i < m_; ++i) {
      auto x = s[i].point.features();
      require(x.size() == nf, "training feature vectors must share dimension");
      for (std::size_t f = 0; f < nf; ++f) columns_[f][i] = x[f];
    }
    order_.assign(nf, {});
    sorted_.assign(nf, {});
    std::vector<char> used(nf, 0);
    for (const auto& h : hc) {
      require(h.stump().feature < nf, "stump feature index out of range for training data");
      used[h.stump().feature] = 1;
    }
    for (std::size_t f = 0; f < nf; ++f) {
      if (!used[f]) continue;
      used_features_.push_back(f);
      auto& ord = order_[f];
      ord.resize(m_);
      std::iota(ord.begin(), ord.end(), std::size_t{0});
      const auto& col = columns_[f];
      std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return col[a] < col[b]; });
      sorted_[f].reserve(m_);
      for (std::size_t i : ord) sorted_[f].push_back(col[i]);
    }
    // group id per (feature, split, polarity)
    std::vector<std::vector<std::int64_t>> slot(nf);
    for (std::size_t j = 0; j < hc.size(); ++j) {
      const Stump& st = hc[j].stump();
      auto& v = slot[st.feature];
      if (v.empty()) v.assign(2 * (m_ + 1), -1);
      const auto& sv = sorted_[st.feature];
      const auto split = static_cast<std::size_t>(std::lower_bound(sv.begin(), sv.end(), st.threshold) - sv.begin());
      const std::size_t key = 2 * split + (st.polarity > 0 ? 0 : 1);
      if (v[key] < 0) {
        v[key] = static_cast<std::int64_t>(groups_.size());
        groups_.push_back({st.feature, split, st.polarity, j});
      }
    }
    approx_.resize(groups_.size());
    prefix_plus_.assign(nf, {});
    prefix_minus_.assign(nf, {});
  }

  void build_tables(const HypothesisClass& hc, const TrainingSequence& s) {
    stumps_ = false;
    mistakes_.assign(hc.size() * m_, 0);
    for (std::size_t j = 0; j < hc.size(); ++j)
      for (std::size_t i = 0; i < m_; ++i) mistakes_[j * m_ + i] = hc[j](s[i].point) != s[i].label ? 1 : 0;
  }

  WeakPick best_table(std::span<const double> w) const {
    WeakPick best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t j = 0; j < hc_->size(); ++j) {
      const std::uint8_t* row = &mistakes_[j * m_];
      double e = 0.0;
      for (std::size_t i = 0; i < m_; ++i)
        if (row[i]) e += w[i];
      if (e < best.error) best = {j, e};
    }
    return best;
  }

  WeakPick best_stump(std::span<const double> w) {
    for (std::size_t f : used_features_) {
      auto& pp = prefix_plus_[f];
      auto& pn = prefix_minus_[f];
      pp.resize(m_ + 1);
      pn.resize(m_ + 1);
      pp[0] = pn[0] = 0.0;
      const auto& ord = order_[f];
      for (std::size_t k = 0; k < m_; ++k) {
        const std::size_t i = ord[k];
        const bool pos = labels_[i] > 0;
        pp[k + 1] = pp[k] + (pos ? w[i] : 0.0);
        pn[k + 1] = pn[k] + (pos ? 0.0 : w[i]);
      }
    }
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      const Group& gr = groups_[g];
      const auto& pp = prefix_plus_[gr.feature];
      const auto& pn = prefix_minus_[gr.feature];
      // polarity +1 predicts -1 below the split and +1 from it on
      const double e = gr.polarity > 0 ? pp[gr.split] + (pn[m_] - pn[gr.split])
                                       : pn[gr.split] + (pp[m_] - pp[gr.split]);
      approx_[g] = e;
      lo = std::min(lo, e);
    }
    WeakPick best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      if (approx_[g] > lo + kTieWindow) continue;
      const Group& gr = groups_[g];
      const Stump& st = (*hc_)[gr.first].stump();
      const auto& col = columns_[gr.feature];
      double e = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const int pred = col[i] >= st.threshold ? st.polarity : -st.polarity;
        if (pred != labels_[i]) e += w[i];
      }
      if (e < best.error || (e == best.error && gr.first < best.index)) best = {gr.first, e};
    }
    return best;
  }

  const HypothesisClass* hc_;
  std::size_t m_;
  std::vector<int> labels_;
  bool stumps_ = false;
  // stump path
  std::vector<std::vector<double>> columns_;
  std::vector<std::vector<std::size_t>> order_;
  std::vector<std::vector<double>> sorted_;
  std::vector<std::size_t> used_features_;
  std::vector<Group> groups_;
  std::vector<double> approx_;
  std::vector<std::vector<double>> prefix_plus_, prefix_minus_;
  // table path
  std::vector<std::uint8_t> mistakes_;
};

struct RoundLog {
  std::size_t round = 0;
  std::size_t hypothesis_index = 0;
  double epsilon = 0.0;     // weighted error of the chosen hypothesis
  double alpha = 0.0;       // 1/2 ln((1-eps)/eps), eps clamped to min(1/(2m), 1/4) if zero
  double normalizer = 0.0;  // Z_t from explicit renormalization
  double min_margin = 0.0;  // min training margin of the normalized vote so far
};

/// No hypothesis in H reaches the required edge on the current reweighting.
class EdgeViolation : public std::runtime_error {
 public:
  EdgeViolation(double best_error, double gamma, std::size_t round = 0, std::vector<RoundLog> partial = {})
      : std::runtime_error("weak learner edge violated: best weighted error " + std::to_string(best_error) +
                           " exceeds 1/2 - gamma = " + std::to_string(0.5 - gamma) +
                           (round ? " in round " + std::to_string(round) : std::string())),
        best_error_(best_error),
        round_(round),
        partial_(std::move(partial)) {}

  double best_error() const { return best_error_; }
  std::size_t round() const { return round_; }
  const std::vector<RoundLog>& partial_logs() const { return partial_; }

 private:
  double best_error_;
  std::size_t round_;
  std::vector<RoundLog> partial_;
};

/// Empirical gamma-weak learner: the exhaustive best hypothesis, if it has
/// weighted error at most 1/2 - gamma.
inline Hypothesis weak_learn(const HypothesisClass& hc, const TrainingSequence& s, const WeightVector& w,
                             double gamma) {
  require(gamma > 0.0 && gamma < 0.5, "weak learner edge must lie in (0, 1/2)");
  const WeakPick pick = best_hypothesis(hc, s, w);
  if (pick.error > 0.5 - gamma) throw EdgeViolation(pick.error, gamma);
  return hc[pick.index];
}

/// ceil(constant * ln(m) / gamma^2).
inline std::size_t default_rounds(double gamma, double m, double constant = 16.0) {
  require(gamma > 0.0 && gamma < 0.5, "gamma must lie in (0, 1/2)");
  require(m >= 2.0, "sample size must be at least 2");
  require(constant > 0.0, "round constant must be positive");
  const double raw = constant * std::log(m) / (gamma * gamma);
  return static_cast<std::size_t>(std::ceil(raw * (1.0 - 1e-12)));
}

/// Stop at whichever fires first: min training margin >= target, or the round cap.
struct StopRule {
  double target_min_margin = 0.0;
  std::size_t max_rounds = 0;

  static StopRule for_edge(double gamma, std::size_t m, double round_constant = 16.0) {
    return {gamma / 2.0, default_rounds(gamma, static_cast<double>(std::max<std::size_t>(m, 2)), round_constant)};
  }
};

enum class StopReason { TargetMargin, MaxRounds, ZeroError };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::TargetMargin: return "target_margin";
    case StopReason::MaxRounds: return "max_rounds";
    case StopReason::ZeroError: return "zero_error";
  }
  return "unknown";
}

struct BoostResult {
  VotingClassifier classifier;
  std::vector<RoundLog> logs;
  double achieved_min_margin = 0.0;
  StopReason stop_reason = StopReason::MaxRounds;
  double normalizer_product = 1.0;  // prod_t Z_t, bounds the training error
};

/// AdaBoost with the exhaustive weak learner over H.
///
/// D_1 is uniform; each round picks h_t, sets alpha_t = 1/2 ln((1-eps_t)/eps_t)
/// and reweights D_{t+1}(i) ~ D_t(i) exp(-alpha_t y_i h_t(x_i)). A round with
/// eps_t = 0 is taken with eps clamped to min(1/(2m), 1/4) and ends the run. The output
/// is the normalized vote sum_t alpha_t h_t / sum_t alpha_t.
inline BoostResult adaboost(const TrainingSequence& s, const HypothesisClass& hc, double gamma, const StopRule& stop) {
  require(gamma > 0.0 && gamma < 0.5, "gamma must lie in (0, 1/2)");
  require(stop.max_rounds >= 1, "stop rule needs at least one round");
  const std::size_t m = s.size();
  const double md = static_cast<double>(m);
  WeakLearnerIndex index(hc, s);
  std::vector<double> dist(m, 1.0 / md);
  std::vector<double> scores(m, 0.0);
  std::vector<RoundLog> logs;
  std::vector<VoteTerm> terms;
  double alpha_sum = 0.0;
  double z_product = 1.0;
  StopReason reason = StopReason::MaxRounds;

  auto build = [&] { return VotingClassifier(terms); };

  for (std::size_t t = 1; t <= stop.max_rounds; ++t) {
    const WeakPick pick = index.best(dist);
    if (pick.error > 0.5 - gamma) throw EdgeViolation(pick.error, gamma, t, logs);
    const bool degenerate = pick.error <= 0.0;
    const double eps = degenerate ? std::min(1.0 / (2.0 * md), 0.25) : pick.error;
    const double alpha = 0.5 * std::log((1.0 - eps) / eps);
    ensure(alpha > 0.0, "round weight must be positive");

    const std::vector<int> agree = index.agreement(pick.index);
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      dist[i] *= std::exp(-alpha * agree[i]);
      z += dist[i];
    }
    double total = 0.0;
    for (auto& d : dist) total += d /= z;
    ensure(std::abs(total - 1.0) <= 1e-9, "boosting distribution lost normalization");
    if (!degenerate)
      ensure(std::abs(z - 2.0 * std::sqrt(pick.error * (1.0 - pick.error))) <= 1e-6,
             "renormalizer disagrees with 2 sqrt(eps (1 - eps))");
    z_product *= z;

    alpha_sum += alpha;
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      scores[i] += alpha * agree[i];
      lowest = std::min(lowest, scores[i]);
    }
    terms.push_back({alpha, hc[pick.index]});
    logs.push_back({t, pick.index, pick.error, alpha, z, lowest / alpha_sum});

    if (degenerate) {
      reason = StopReason::ZeroError;
      break;
    }
    // The running margins are exact up to rounding; confirm on the built vote.
    if (lowest / alpha_sum >= stop.target_min_margin &&
        MarginProfile(build(), s).min() >= stop.target_min_margin) {
      reason = StopReason::TargetMargin;
      break;
    }
  }

  VotingClassifier f = build();
  const double achieved = MarginProfile(f, s).min();
  std::size_t wrong = 0;
  for (double v : scores)
    if (v <= 0.0) ++wrong;
  const double train_err = static_cast<double>(wrong) / md;
  ensure(train_err <= z_product + 1e-12, "training error exceeds prod Z_t");
  ensure(z_product <= std::exp(-2.0 * gamma * gamma * static_cast<double>(logs.size())) + 1e-12,
         "prod Z_t exceeds exp(-2 gamma^2 T)");
  return BoostResult{std::move(f), std::move(logs), achieved, reason, z_product};
}

inline BoostResult adaboost(const TrainingSequence& s, const HypothesisClass& hc, double gamma) {
  return adaboost(s, hc, gamma, StopRule::for_edge(gamma, s.size()));
}

}  // namespace boostmargin
