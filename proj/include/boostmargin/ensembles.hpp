#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "boostmargin/boosting.hpp"
#include "boostmargin/domain.hpp"
#include "boostmargin/errors.hpp"
#include "boostmargin/rng.hpp"
#include "boostmargin/voting.hpp"

namespace boostmargin {

/// Unweighted majority of an odd number of voting classifiers:
/// sign(sum_i sign(f_i(x))), sign(0) = 0.
class MajorityEnsemble {
 public:
  MajorityEnsemble(std::vector<VotingClassifier> members, std::string protocol = "")
      : members_(std::move(members)), protocol_(std::move(protocol)) {
    require(members_.size() % 2 == 1, "majority ensemble needs an odd number of members");
  }

  const std::vector<VotingClassifier>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const std::string& protocol() const { return protocol_; }

  int operator()(const Point& x) const {
    int sum = 0;
    for (const auto& f : members_) sum += sign_of(f(x));
    return sign_of(sum);
  }

 private:
  std::vector<VotingClassifier> members_;
  std::string protocol_;
};

inline int majority_predict(const MajorityEnsemble& e, const Point& x) { return e(x); }

inline int majority_of_signs(std::span<const int> signs) {
  int sum = 0;
  for (int s : signs) sum += s;
  return sign_of(sum);
}

namespace detail {

inline MajorityEnsemble boost_members(const std::vector<TrainingSequence>& pieces, const HypothesisClass& hc,
                                      double gamma, std::string protocol, std::vector<BoostResult>* results) {
  std::vector<VotingClassifier> members;
  for (const auto& s : pieces) {
    BoostResult r = adaboost(s, hc, gamma);
    members.push_back(r.classifier);
    if (results) results->push_back(std::move(r));
  }
  return MajorityEnsemble(std::move(members), std::move(protocol));
}

}  // namespace detail

/// Majority of three AdaBoost votes on independent size-m draws from D.
/// Member j's sample uses the seed derive_seed(seed, j).
inline MajorityEnsemble train_majority_of_3(const DiscreteDistribution& d, std::size_t m, const HypothesisClass& hc,
                                            double gamma, std::uint64_t seed,
                                            std::vector<BoostResult>* results = nullptr) {
  require(m >= 1, "sample size must be at least 1");
  std::vector<TrainingSequence> samples;
  for (std::uint64_t j = 0; j < 3; ++j) samples.push_back(sample_training_sequence(d, m, derive_seed(seed, j)));
  return detail::boost_members(samples, hc, gamma, "maj3_iid", results);
}

/// Splits S into five contiguous pieces of floor(|S|/5) examples (the
/// remainder is dropped) and boosts each.
inline std::vector<TrainingSequence> partition_five(const TrainingSequence& s) {
  require(s.size() >= 5, "partition needs at least 5 examples");
  const std::size_t piece = s.size() / 5;
  std::vector<TrainingSequence> pieces;
  for (std::size_t p = 0; p < 5; ++p) {
    std::vector<LabeledExample> ex(s.examples().begin() + static_cast<std::ptrdiff_t>(p * piece),
                                   s.examples().begin() + static_cast<std::ptrdiff_t>((p + 1) * piece));
    pieces.emplace_back(std::move(ex));
  }
  return pieces;
}

inline MajorityEnsemble train_majority_of_5_partition(const TrainingSequence& s, const HypothesisClass& hc,
                                                      double gamma, std::vector<BoostResult>* results = nullptr) {
  return detail::boost_members(partition_five(s), hc, gamma, "maj5_partition", results);
}

/// Exact mass of support points where at least two of three members err
/// (abstaining counts as erring).
inline double two_agree_error_witness(const MajorityEnsemble& e, const DiscreteDistribution& d) {
  require(e.size() == 3, "two-agree witness is defined for three members");
  double mass = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.probs()[i] == 0.0) continue;
    int wrong = 0;
    for (const auto& f : e.members())
      if (d.target()[i] * f(d.point(i)) <= 0.0) ++wrong;
    if (wrong >= 2) mass += d.probs()[i];
  }
  return std::min(1.0, mass);
}

/// Exact ensemble error and the mass where at least k of 2k-1 members err,
/// from precomputed member values on the support. For three members the
/// witness is the two-agree mass.
struct MajorityErrors {
  double ensemble = 0.0;
  double witness = 0.0;
};

inline MajorityErrors majority_errors_from_values(const std::vector<std::vector<double>>& member_values,
                                                  const DiscreteDistribution& d) {
  require(member_values.size() % 2 == 1, "majority needs an odd number of members");
  MajorityErrors out;
  const std::size_t k = (member_values.size() + 1) / 2;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.probs()[i] == 0.0) continue;
    int sum = 0;
    int wrong = 0;
    for (const auto& v : member_values) {
      sum += sign_of(v[i]);
      if (d.target()[i] * v[i] <= 0.0) ++wrong;
    }
    if (d.target()[i] * sign_of(sum) <= 0) out.ensemble += d.probs()[i];
    if (static_cast<std::size_t>(wrong) >= k) out.witness += d.probs()[i];
  }
  out.ensemble = std::min(1.0, out.ensemble);
  out.witness = std::min(1.0, out.witness);
  return out;
}

}  // namespace boostmargin
