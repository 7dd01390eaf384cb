#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "boostmargin/errors.hpp"
#include "boostmargin/rng.hpp"

namespace boostmargin {

/// A label in {-1, +1}. Predictions may additionally be 0 (abstain).
using Label = int;

inline bool is_label(int v) { return v == 1 || v == -1; }

/// Sign with sign(0) = 0.
inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

/// An element of the input domain: an index into a finite domain or a
/// feature vector.
class Point {
 public:
  static Point indexed(std::size_t index) { return Point(index); }
  static Point featured(std::vector<double> features) { return Point(std::move(features)); }

  bool is_indexed() const { return std::holds_alternative<std::size_t>(repr_); }

  std::size_t index() const {
    if (!is_indexed()) throw InputError("point has features, not an index");
    return std::get<std::size_t>(repr_);
  }

  std::span<const double> features() const {
    if (is_indexed()) throw InputError("point is an index, not a feature vector");
    return std::get<std::vector<double>>(repr_);
  }

  bool operator==(const Point&) const = default;

 private:
  explicit Point(std::size_t index) : repr_(index) {}
  explicit Point(std::vector<double> features) : repr_(std::move(features)) {}

  std::variant<std::size_t, std::vector<double>> repr_;
};

/// Hypothesis given by its value on every index of a finite domain.
struct TruthTable {
  std::vector<Label> outputs;

  bool operator==(const TruthTable&) const = default;
};

/// Axis-aligned threshold: polarity if x[feature] >= threshold, else -polarity.
struct Stump {
  std::size_t feature = 0;
  double threshold = 0.0;
  Label polarity = 1;

  bool operator==(const Stump&) const = default;
};

/// A {-1,+1}-valued base classifier.
class Hypothesis {
 public:
  Hypothesis(TruthTable table) : repr_(std::move(table)) {  // NOLINT(google-explicit-constructor)
    for (Label v : std::get<TruthTable>(repr_).outputs)
      require(is_label(v), "truth table entries must be -1 or +1");
  }
  Hypothesis(Stump stump) : repr_(stump) {  // NOLINT(google-explicit-constructor)
    require(is_label(stump.polarity), "stump polarity must be -1 or +1");
    require(std::isfinite(stump.threshold), "stump threshold must be finite");
  }

  bool is_stump() const { return std::holds_alternative<Stump>(repr_); }
  bool is_table() const { return std::holds_alternative<TruthTable>(repr_); }
  const Stump& stump() const { return std::get<Stump>(repr_); }
  const TruthTable& table() const { return std::get<TruthTable>(repr_); }

  Label operator()(const Point& x) const {
    if (const auto* s = std::get_if<Stump>(&repr_)) {
      auto f = x.features();
      if (s->feature >= f.size()) throw InputError("stump feature index out of range for point");
      return f[s->feature] >= s->threshold ? s->polarity : -s->polarity;
    }
    const auto& t = std::get<TruthTable>(repr_);
    std::size_t i = x.index();
    if (i >= t.outputs.size()) throw InputError("point index outside truth table domain");
    return t.outputs[i];
  }

  bool operator==(const Hypothesis&) const = default;

 private:
  std::variant<TruthTable, Stump> repr_;
};

inline Label evaluate_hypothesis(const Hypothesis& h, const Point& x) { return h(x); }

/// A non-empty, homogeneous list of hypotheses with an optional VC dimension.
class HypothesisClass {
 public:
  explicit HypothesisClass(std::vector<Hypothesis> hypotheses,
                           std::optional<int> declared_vc = std::nullopt)
      : hypotheses_(std::move(hypotheses)), declared_vc_(declared_vc) {
    require(!hypotheses_.empty(), "hypothesis class must be non-empty");
    const bool stumps = hypotheses_.front().is_stump();
    for (const auto& h : hypotheses_)
      require(h.is_stump() == stumps, "hypothesis class mixes stumps and truth tables");
    if (declared_vc_) require(*declared_vc_ >= 0, "declared VC dimension must be non-negative");
  }

  std::size_t size() const { return hypotheses_.size(); }
  const Hypothesis& operator[](std::size_t i) const { return hypotheses_[i]; }
  const std::vector<Hypothesis>& hypotheses() const { return hypotheses_; }
  auto begin() const { return hypotheses_.begin(); }
  auto end() const { return hypotheses_.end(); }
  bool is_stumps() const { return hypotheses_.front().is_stump(); }
  std::optional<int> declared_vc() const { return declared_vc_; }

 private:
  std::vector<Hypothesis> hypotheses_;
  std::optional<int> declared_vc_;
};

struct LabeledExample {
  Point point;
  Label label;
};

/// Ordered training sequence; repetitions allowed, never empty.
class TrainingSequence {
 public:
  explicit TrainingSequence(std::vector<LabeledExample> examples) : examples_(std::move(examples)) {
    require(!examples_.empty(), "training sequence must contain at least one example");
    for (const auto& e : examples_) require(is_label(e.label), "example labels must be -1 or +1");
  }

  std::size_t size() const { return examples_.size(); }
  const LabeledExample& operator[](std::size_t i) const { return examples_[i]; }
  const std::vector<LabeledExample>& examples() const { return examples_; }
  auto begin() const { return examples_.begin(); }
  auto end() const { return examples_.end(); }

 private:
  std::vector<LabeledExample> examples_;
};

/// Finite-support distribution together with the target concept on it.
class DiscreteDistribution {
 public:
  static constexpr double kExactTolerance = 1e-12;
  static constexpr double kRenormalizeTolerance = 1e-9;

  DiscreteDistribution(std::vector<Point> points, std::vector<double> probs, std::vector<Label> target)
      : points_(std::move(points)), probs_(std::move(probs)), target_(std::move(target)) {
    require(!points_.empty(), "distribution support must be non-empty");
    require(points_.size() == probs_.size() && points_.size() == target_.size(),
            "distribution points, probs and target must share length");
    double total = 0.0;
    for (double p : probs_) {
      require(std::isfinite(p) && p >= 0.0, "distribution probabilities must be non-negative");
      total += p;
    }
    const double gap = std::abs(total - 1.0);
    require(gap <= kRenormalizeTolerance, "distribution probabilities must sum to 1");
    if (gap > kExactTolerance)
      for (double& p : probs_) p /= total;
    for (Label y : target_) require(is_label(y), "target labels must be -1 or +1");
    const bool indexed = points_.front().is_indexed();
    for (const auto& x : points_) {
      require(x.is_indexed() == indexed, "distribution mixes indexed and feature points");
      if (!indexed)
        require(x.features().size() == points_.front().features().size(),
                "feature vectors must share dimension");
    }
    cdf_.resize(probs_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) cdf_[i] = acc += probs_[i];
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<Label>& target() const { return target_; }
  const Point& point(std::size_t i) const { return points_[i]; }

  /// Support index for a uniform draw u in [0, 1).
  std::size_t locate(double u) const {
    const double scaled = u * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), scaled);
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
    while (probs_[i] == 0.0 && i > 0) --i;
    return i;
  }

  LabeledExample labeled(std::size_t i) const { return {points_[i], target_[i]}; }

 private:
  std::vector<Point> points_;
  std::vector<double> probs_;
  std::vector<Label> target_;
  std::vector<double> cdf_;
};

/// Support indices of an i.i.d. draw of size m; pure in (D, m, seed).
inline std::vector<std::size_t> sample_indices(const DiscreteDistribution& d, std::size_t m,
                                               std::uint64_t seed) {
  require(m >= 1, "sample size must be at least 1");
  CounterRng rng(seed);
  std::vector<std::size_t> idx(m);
  for (auto& i : idx) i = d.locate(rng.uniform());
  return idx;
}

inline TrainingSequence sample_training_sequence(const DiscreteDistribution& d, std::size_t m,
                                                 std::uint64_t seed) {
  std::vector<LabeledExample> ex;
  ex.reserve(m);
  for (std::size_t i : sample_indices(d, m, seed)) ex.push_back(d.labeled(i));
  return TrainingSequence(std::move(ex));
}

/// Exact Pr_{x~D}[c*(x) * p(x) <= 0]. The predictor may return any real
/// value; zero counts as an error.
template <typename Predictor>
double exact_error(const Predictor& predictor, const DiscreteDistribution& d) {
  double err = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.probs()[i] == 0.0) continue;
    const double v = static_cast<double>(predictor(d.point(i)));
    if (d.target()[i] * v <= 0.0) err += d.probs()[i];
  }
  return std::min(1.0, err);
}

/// Exact error from precomputed predictor values on the support.
inline double exact_error_from_values(std::span<const double> values, const DiscreteDistribution& d) {
  require(values.size() == d.size(), "value vector must cover the support");
  double err = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.probs()[i] != 0.0 && d.target()[i] * values[i] <= 0.0) err += d.probs()[i];
  return std::min(1.0, err);
}

}  // namespace boostmargin
