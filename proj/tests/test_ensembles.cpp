#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "boostmargin/ensembles.hpp"
#include "boostmargin/errors.hpp"
#include "boostmargin/experiments.hpp"
#include "boostmargin/rng.hpp"

using namespace boostmargin;

namespace {

VotingClassifier table_vote(std::vector<Label> outputs) { return VotingClassifier({{1.0, TruthTable{std::move(outputs)}}}); }

DiscreteDistribution uniform_indexed(const std::vector<Label>& target) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < target.size(); ++i) pts.push_back(Point::indexed(i));
  return DiscreteDistribution(pts, std::vector<double>(target.size(), 1.0 / static_cast<double>(target.size())), target);
}

}  // namespace

TEST(MajorityPredict, Examples) {
  EXPECT_EQ(majority_of_signs(std::vector<int>{1, 1, -1}), 1);
  EXPECT_EQ(majority_of_signs(std::vector<int>{-1, -1, -1}), -1);
  EXPECT_EQ(majority_of_signs(std::vector<int>{1, -1, 0}), 0);
  const Hypothesis plus = TruthTable{{1}};
  const Hypothesis minus = TruthTable{{-1}};
  const VotingClassifier zero({{0.5, plus}, {0.5, minus}});
  const MajorityEnsemble e({VotingClassifier({{1.0, plus}}), VotingClassifier({{1.0, minus}}), zero});
  EXPECT_EQ(majority_predict(e, Point::indexed(0)), 0);
}

TEST(MajorityEnsemble, RequiresOddMembers) {
  const auto f = table_vote({1});
  EXPECT_THROW(MajorityEnsemble({f, f}), InputError);
  EXPECT_NO_THROW(MajorityEnsemble({f}));
}

TEST(PartitionFive, PieceSizes) {
  std::vector<LabeledExample> ex;
  for (int i = 0; i < 13; ++i) ex.push_back({Point::indexed(static_cast<std::size_t>(i)), 1});
  const auto pieces13 = partition_five(TrainingSequence(ex));
  ASSERT_EQ(pieces13.size(), 5u);
  for (std::size_t p = 0; p < 5; ++p) {
    ASSERT_EQ(pieces13[p].size(), 2u);
    EXPECT_EQ(pieces13[p][0].point.index(), 2 * p);
  }
  ex.erase(ex.begin() + 10, ex.end());
  for (const auto& piece : partition_five(TrainingSequence(ex))) EXPECT_EQ(piece.size(), 2u);
  ex.erase(ex.begin() + 4, ex.end());
  EXPECT_THROW(partition_five(TrainingSequence(ex)), InputError);
}

TEST(TwoAgreeWitness, Examples) {
  const std::vector<Label> target = {1, -1, 1, 1, -1};
  const auto d = uniform_indexed(target);
  std::vector<Label> neg(target);
  for (auto& v : neg) v = -v;
  const MajorityEnsemble all({table_vote(target), table_vote(target), table_vote(target)});
  EXPECT_EQ(two_agree_error_witness(all, d), 0.0);
  const MajorityEnsemble one_wrong({table_vote(target), table_vote(target), table_vote(neg)});
  EXPECT_EQ(two_agree_error_witness(one_wrong, d), 0.0);
  EXPECT_EQ(exact_error(one_wrong, d), 0.0);
  EXPECT_EQ(exact_error(one_wrong.members()[2], d), 1.0);
}

TEST(TwoAgreeWitness, MatchesBruteForceAndDominates) {
  CounterRng rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Label> target(10);
    std::vector<double> probs(10);
    double total = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
      target[i] = rng.below(2) ? 1 : -1;
      total += probs[i] = rng.below(4) ? rng.uniform() : 0.0;
    }
    if (total == 0.0) continue;
    for (double& p : probs) p /= total;
    std::vector<Point> pts;
    for (std::size_t i = 0; i < 10; ++i) pts.push_back(Point::indexed(i));
    DiscreteDistribution d(pts, probs, target);
    std::vector<VotingClassifier> members;
    for (int j = 0; j < 3; ++j) {
      std::vector<VoteTerm> terms;
      for (int k = 0; k < 2; ++k) {
        std::vector<Label> out(10);
        for (auto& v : out) v = rng.below(2) ? 1 : -1;
        terms.push_back({k == 0 ? 0.5 : 0.5, TruthTable{out}});  // equal weights allow abstention
      }
      members.emplace_back(terms);
    }
    const MajorityEnsemble e(members);
    double brute = 0.0, maj = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
      int wrong = 0;
      for (const auto& f : members) wrong += target[i] * f(pts[i]) <= 0.0;
      if (wrong >= 2) brute += probs[i];
      if (target[i] * e(pts[i]) <= 0) maj += probs[i];
    }
    EXPECT_NEAR(two_agree_error_witness(e, d), brute, 1e-15);
    EXPECT_NEAR(exact_error(e, d), maj, 1e-15);
    EXPECT_LE(exact_error(e, d), two_agree_error_witness(e, d));
    std::vector<std::vector<double>> values;
    for (const auto& f : members) {
      values.emplace_back();
      for (const auto& p : pts) values.back().push_back(f(p));
    }
    const auto errs = majority_errors_from_values(values, d);
    EXPECT_EQ(errs.ensemble, exact_error(e, d));
    EXPECT_EQ(errs.witness, two_agree_error_witness(e, d));
    // permutation invariance
    std::vector<VotingClassifier> rev(members.rbegin(), members.rend());
    const MajorityEnsemble r(rev);
    for (const auto& p : pts) EXPECT_EQ(r(p), e(p));
    // unanimity
    for (std::size_t i = 0; i < 10; ++i) {
      bool all_right = true;
      for (const auto& f : members) all_right = all_right && target[i] * f(pts[i]) > 0.0;
      if (all_right) {
        EXPECT_EQ(e(pts[i]), target[i]);
      }
    }
  }
}

TEST(Majority3, DegenerateSinglePoint) {
  DiscreteDistribution d({Point::featured({0.3})}, {1.0}, {-1});
  const HypothesisClass hc({Stump{0, 0.5, 1}, Stump{0, 0.5, -1}});
  const auto e = train_majority_of_3(d, 10, hc, 0.1, 4);
  EXPECT_EQ(e.size(), 3u);
  EXPECT_EQ(e.protocol(), "maj3_iid");
  for (const auto& f : e.members()) EXPECT_EQ(predict(f, d.point(0)), -1);
  EXPECT_EQ(exact_error(e, d), 0.0);
}

TEST(Majority3, GeneratorRunBeatsWorstMemberAndIsReproducible) {
  const auto p = experiments::make_weak_learnable(experiments::GeneratorConfig{});
  std::vector<BoostResult> results;
  const auto e = train_majority_of_3(p.distribution, 512, p.hypotheses, 0.15, 21, &results);
  ASSERT_EQ(results.size(), 3u);
  double worst = 0.0;
  for (const auto& f : e.members()) worst = std::max(worst, exact_error(f, p.distribution));
  EXPECT_LE(exact_error(e, p.distribution), worst);
  EXPECT_LE(exact_error(e, p.distribution), two_agree_error_witness(e, p.distribution));
  const auto again = train_majority_of_3(p.distribution, 512, p.hypotheses, 0.15, 21);
  for (std::size_t j = 0; j < 3; ++j) {
    ASSERT_EQ(again.members()[j].size(), e.members()[j].size());
    for (std::size_t t = 0; t < e.members()[j].size(); ++t) {
      EXPECT_EQ(again.members()[j].terms()[t].weight, e.members()[j].terms()[t].weight);
      EXPECT_EQ(again.members()[j].terms()[t].hypothesis, e.members()[j].terms()[t].hypothesis);
    }
  }
}

TEST(Majority5, PartitionRun) {
  const auto p = experiments::make_weak_learnable(experiments::GeneratorConfig{});
  const auto s = sample_training_sequence(p.distribution, 1000, 8);
  std::vector<BoostResult> results;
  const auto e = train_majority_of_5_partition(s, p.hypotheses, 0.15, &results);
  EXPECT_EQ(e.size(), 5u);
  EXPECT_EQ(e.protocol(), "maj5_partition");
  const double err = exact_error(e, p.distribution);
  EXPECT_GE(err, 0.0);
  EXPECT_LE(err, 1.0);
  std::vector<std::vector<double>> values;
  for (const auto& f : e.members()) values.push_back(evaluate_on(f, p.distribution.points()));
  const auto errs = majority_errors_from_values(values, p.distribution);
  EXPECT_EQ(errs.ensemble, err);
  EXPECT_LE(errs.ensemble, errs.witness);
}
