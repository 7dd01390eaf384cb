#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "boostmargin/domain.hpp"
#include "boostmargin/errors.hpp"

namespace boostmargin {

struct VoteTerm {
  double weight;
  Hypothesis hypothesis;
};

/// f = sum_i a_i h_i with a_i > 0 and sum a_i = 1.
///
/// Raw positive weights are normalized once at construction, so the margin
/// of (x, y) is exactly y * f(x).
class VotingClassifier {
 public:
  static constexpr double kSumTolerance = 1e-9;

  explicit VotingClassifier(std::vector<VoteTerm> terms) : terms_(std::move(terms)) {
    require(!terms_.empty(), "voting classifier needs at least one term");
    double total = 0.0;
    for (const auto& t : terms_) {
      require(std::isfinite(t.weight) && t.weight > 0.0, "vote weights must be positive and finite");
      total += t.weight;
    }
    for (auto& t : terms_) t.weight /= total;
  }

  const std::vector<VoteTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  double operator()(const Point& x) const {
    double v = 0.0;
    for (const auto& t : terms_) v += t.weight * t.hypothesis(x);
    return v;
  }

  bool all_stumps() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const VoteTerm& t) { return t.hypothesis.is_stump(); });
  }

 private:
  std::vector<VoteTerm> terms_;
};

inline double evaluate_vote(const VotingClassifier& f, const Point& x) { return f(x); }

inline double margin(const VotingClassifier& f, const LabeledExample& ex) {
  return ex.label * f(ex.point);
}

/// f capped to [-level, level].
class ClippedClassifier {
 public:
  ClippedClassifier(VotingClassifier inner, double level) : inner_(std::move(inner)), level_(level) {
    require(level > 0.0 && level <= 1.0, "clipping level must lie in (0, 1]");
  }

  double operator()(const Point& x) const { return std::clamp(inner_(x), -level_, level_); }

  const VotingClassifier& inner() const { return inner_; }
  double level() const { return level_; }

 private:
  VotingClassifier inner_;
  double level_;
};

inline ClippedClassifier clip(const VotingClassifier& f, double level) { return {f, level}; }

/// Re-clipping at the same level is the identity on clipped values.
inline ClippedClassifier clip(const ClippedClassifier& f, double level) {
  require(level > 0.0 && level <= 1.0, "clipping level must lie in (0, 1]");
  return {f.inner(), std::min(level, f.level())};
}

inline double clip_value(double v, double level) { return std::clamp(v, -level, level); }

/// sign of the evaluation, sign(0) = 0.
template <typename Classifier>
int predict(const Classifier& f, const Point& x) {
  return sign_of(f(x));
}

/// Sorted training margins; Ls^gamma_S is a binary search.
class MarginProfile {
 public:
  explicit MarginProfile(std::vector<double> margins) : margins_(std::move(margins)) {
    require(!margins_.empty(), "margin profile needs at least one example");
    std::sort(margins_.begin(), margins_.end());
  }

  MarginProfile(const VotingClassifier& f, const TrainingSequence& s)
      : MarginProfile(collect(f, s)) {}

  /// Fraction of margins <= gamma (ties count as loss).
  double loss(double gamma) const {
    auto it = std::upper_bound(margins_.begin(), margins_.end(), gamma);
    return static_cast<double>(it - margins_.begin()) / static_cast<double>(margins_.size());
  }

  double min() const { return margins_.front(); }
  double max() const { return margins_.back(); }
  const std::vector<double>& margins() const { return margins_; }
  std::size_t size() const { return margins_.size(); }

 private:
  static std::vector<double> collect(const VotingClassifier& f, const TrainingSequence& s) {
    std::vector<double> m;
    m.reserve(s.size());
    for (const auto& ex : s) m.push_back(margin(f, ex));
    return m;
  }

  std::vector<double> margins_;
};

/// Ls^gamma_S(f). gamma = 0 gives the empirical error.
inline double empirical_margin_loss(const VotingClassifier& f, const TrainingSequence& s, double gamma) {
  require(gamma >= 0.0, "margin level must be non-negative");
  std::size_t count = 0;
  for (const auto& ex : s)
    if (margin(f, ex) <= gamma) ++count;
  return static_cast<double>(count) / static_cast<double>(s.size());
}

/// Ls^gamma_D(f) = Pr_{x~D}[c*(x) f(x) <= gamma], exact.
template <typename Classifier>
double true_margin_loss(const Classifier& f, const DiscreteDistribution& d, double gamma) {
  double loss = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.probs()[i] != 0.0 && d.target()[i] * f(d.point(i)) <= gamma) loss += d.probs()[i];
  return std::min(1.0, loss);
}

/// Evaluates all-stump votes on a fixed set of feature points.
///
/// Each feature's contribution is a step function of the feature value, so
/// it is tabulated once per distinct value and then summed per point. Cost
/// per classifier is O(terms log terms + points * features) instead of
/// O(terms * points). Results agree with direct evaluation up to rounding.
class StumpScorer {
 public:
  explicit StumpScorer(const std::vector<Point>& points) {
    require(!points.empty() && !points.front().is_indexed(), "stump scorer needs feature points");
    n_points_ = points.size();
    n_features_ = points.front().features().size();
    values_.resize(n_features_);
    ranks_.assign(n_points_ * n_features_, 0);
    for (std::size_t f = 0; f < n_features_; ++f) {
      std::vector<double>& v = values_[f];
      v.reserve(n_points_);
      for (const auto& p : points) v.push_back(p.features()[f]);
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      for (std::size_t i = 0; i < n_points_; ++i) {
        const double x = points[i].features()[f];
        ranks_[i * n_features_ + f] =
            static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
      }
    }
  }

  std::size_t size() const { return n_points_; }

  std::vector<double> scores(const VotingClassifier& f) const {
    require(f.all_stumps(), "stump scorer only evaluates all-stump votes");
    std::vector<std::vector<std::pair<double, double>>> by_feature(n_features_);
    for (const auto& t : f.terms()) {
      const Stump& s = t.hypothesis.stump();
      require(s.feature < n_features_, "stump feature out of range");
      by_feature[s.feature].emplace_back(s.threshold, t.weight * s.polarity);
    }
    std::vector<std::vector<double>> tables(n_features_);
    for (std::size_t k = 0; k < n_features_; ++k) {
      auto& terms = by_feature[k];
      auto& table = tables[k];
      table.assign(values_[k].size(), 0.0);
      if (terms.empty()) continue;
      std::sort(terms.begin(), terms.end());
      double total = 0.0;
      for (const auto& [thr, w] : terms) total += w;
      // table[u] = sum_{thr <= u} w - sum_{thr > u} w = 2 * below - total
      double below = 0.0;
      std::size_t j = 0;
      for (std::size_t u = 0; u < values_[k].size(); ++u) {
        while (j < terms.size() && terms[j].first <= values_[k][u]) below += terms[j++].second;
        table[u] = 2.0 * below - total;
      }
    }
    std::vector<double> out(n_points_, 0.0);
    for (std::size_t i = 0; i < n_points_; ++i) {
      double v = 0.0;
      for (std::size_t k = 0; k < n_features_; ++k)
        if (!by_feature[k].empty()) v += tables[k][ranks_[i * n_features_ + k]];
      out[i] = v;
    }
    return out;
  }

 private:
  std::size_t n_points_ = 0;
  std::size_t n_features_ = 0;
  std::vector<std::vector<double>> values_;
  std::vector<std::size_t> ranks_;
};

/// Values of f on every point, using the stump scorer when possible.
inline std::vector<double> evaluate_on(const VotingClassifier& f, const std::vector<Point>& points,
                                       const StumpScorer* scorer = nullptr) {
  if (scorer != nullptr && f.all_stumps()) return scorer->scores(f);
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(f(p));
  return out;
}

}  // namespace boostmargin
