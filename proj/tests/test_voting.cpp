#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "boostmargin/domain.hpp"
#include "boostmargin/errors.hpp"
#include "boostmargin/rng.hpp"
#include "boostmargin/voting.hpp"

using namespace boostmargin;

namespace {

VotingClassifier random_vote(CounterRng& rng, std::size_t terms, std::size_t features) {
  std::vector<VoteTerm> t;
  for (std::size_t k = 0; k < terms; ++k)
    t.push_back({rng.uniform(0.01, 1.0), Stump{rng.below(features), rng.uniform(), rng.below(2) ? 1 : -1}});
  return VotingClassifier(std::move(t));
}

Point random_point(CounterRng& rng, std::size_t features) {
  std::vector<double> x(features);
  for (double& v : x) v = rng.uniform();
  return Point::featured(std::move(x));
}

MarginProfile prof_of(const VotingClassifier& f, const TrainingSequence& s) { return MarginProfile(f, s); }

}  // namespace

TEST(EvaluateVote, Examples) {
  const Hypothesis plus = TruthTable{{1}};
  const Hypothesis minus = TruthTable{{-1}};
  const Point x = Point::indexed(0);
  EXPECT_EQ(evaluate_vote(VotingClassifier({{1.0, plus}}), x), 1.0);
  EXPECT_EQ(evaluate_vote(VotingClassifier({{0.5, plus}, {0.5, minus}}), x), 0.0);
  EXPECT_EQ(evaluate_vote(VotingClassifier({{0.75, plus}, {0.25, minus}}), x), 0.5);
}

TEST(VotingClassifier, NormalizesAndRejectsBadWeights) {
  const Hypothesis h = TruthTable{{1}};
  VotingClassifier f({{2.0, h}, {6.0, h}});
  EXPECT_EQ(f.terms()[0].weight, 0.25);
  EXPECT_EQ(f.terms()[1].weight, 0.75);
  EXPECT_THROW(VotingClassifier({{0.0, h}}), InputError);
  EXPECT_THROW(VotingClassifier({{-1.0, h}, {2.0, h}}), InputError);
  EXPECT_THROW(VotingClassifier(std::vector<VoteTerm>{}), InputError);
}

TEST(Margin, AgreementAndSplit) {
  const Hypothesis plus = TruthTable{{1}};
  const Hypothesis minus = TruthTable{{-1}};
  const Point x = Point::indexed(0);
  const VotingClassifier agree({{0.3, plus}, {0.7, plus}});
  EXPECT_EQ(margin(agree, {x, 1}), 1.0);
  EXPECT_EQ(margin(agree, {x, -1}), -1.0);
  EXPECT_EQ(margin(VotingClassifier({{0.5, plus}, {0.5, minus}}), {x, 1}), 0.0);
}

TEST(EmpiricalMarginLoss, CountsTiesAsLoss) {
  const MarginProfile prof({-0.2, 0.1, 0.4});
  EXPECT_DOUBLE_EQ(prof.loss(0.1), 2.0 / 3.0);
  EXPECT_EQ(prof.loss(-0.3), 0.0);
  EXPECT_EQ(prof.loss(1.0), 1.0);

  // weights 1/4, 1/4, 1/2 give exactly representable margins -1/2, 0, 1/2
  const VotingClassifier f({{0.25, TruthTable{{1, 1, -1}}}, {0.25, TruthTable{{-1, 1, 1}}},
                            {0.5, TruthTable{{-1, -1, 1}}}});
  const TrainingSequence s({{Point::indexed(0), 1}, {Point::indexed(1), -1}, {Point::indexed(2), 1}});
  EXPECT_EQ(empirical_margin_loss(f, s, 0.0), 2.0 / 3.0);
  EXPECT_EQ(prof_of(f, s).loss(-0.5), 1.0 / 3.0);
  EXPECT_EQ(empirical_margin_loss(f, s, 1.0), 1.0);
  EXPECT_EQ(prof_of(f, s).loss(-0.75), 0.0);
  EXPECT_THROW(empirical_margin_loss(f, s, -0.1), InputError);
}

TEST(TrueMarginLoss, TwoPointExample) {
  // f = 0.3 at point 0 (target +1) and 0.1 at point 1 (target -1)
  const VotingClassifier f({{0.2, TruthTable{{1, 1}}}, {0.35, TruthTable{{-1, 1}}}, {0.45, TruthTable{{1, -1}}}});
  DiscreteDistribution d({Point::indexed(0), Point::indexed(1)}, {0.5, 0.5}, {1, -1});
  EXPECT_NEAR(f(Point::indexed(0)), 0.3, 1e-15);
  EXPECT_NEAR(f(Point::indexed(1)), 0.1, 1e-15);
  EXPECT_EQ(true_margin_loss(f, d, 0.0), 0.5);
  EXPECT_EQ(true_margin_loss(f, d, 0.5), 1.0);
  EXPECT_EQ(true_margin_loss(f, d, -0.5), 0.0);
  EXPECT_EQ(true_margin_loss(f, d, 0.0), exact_error([&](const Point& x) { return predict(f, x); }, d));
}

TEST(TrueMarginLoss, MarginOneEverywhere) {
  const VotingClassifier f({{1.0, TruthTable{{1, -1}}}});
  DiscreteDistribution d({Point::indexed(0), Point::indexed(1)}, {0.3, 0.7}, {1, -1});
  EXPECT_EQ(true_margin_loss(f, d, 0.999), 0.0);
}

TEST(Clip, Examples) {
  EXPECT_EQ(clip_value(0.7, 0.3), 0.3);
  EXPECT_EQ(clip_value(-0.7, 0.3), -0.3);
  EXPECT_EQ(clip_value(0.2, 0.3), 0.2);
  const VotingClassifier f({{1.0, TruthTable{{1}}}});
  EXPECT_EQ(clip(f, 0.4)(Point::indexed(0)), 0.4);
  EXPECT_THROW(clip(f, 0.0), InputError);
  EXPECT_THROW(clip(f, 1.5), InputError);
}

TEST(Predict, SignConvention) {
  const auto at = [](double v) { return predict([v](const Point&) { return v; }, Point::indexed(0)); };
  EXPECT_EQ(at(0.5), 1);
  EXPECT_EQ(at(0.0), 0);
  EXPECT_EQ(at(-1e-9), -1);
}

TEST(VotingProperties, RangeSignIdempotenceAndThresholdEquivalence) {
  CounterRng rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto f = random_vote(rng, 1 + rng.below(6), 3);
    const Point x = random_point(rng, 3);
    const double v = f(x);
    EXPECT_LE(std::abs(v), 1.0 + 1e-12);
    const double level = rng.uniform(0.01, 1.0);
    const auto c = clip(f, level);
    EXPECT_EQ(predict(c, x), predict(f, x));
    EXPECT_EQ(clip(c, level)(x), c(x));
    const double g1 = rng.uniform(0.01, 0.5);
    const double gp = rng.uniform(-2.0 * g1, g1);
    const auto c2 = clip(f, 2.0 * g1);
    for (Label y : {1, -1}) EXPECT_EQ(v * y <= gp, c2(x) * y <= gp);
    for (Label y : {1, -1}) EXPECT_EQ(predict(f, x) != y, margin(f, {x, y}) <= 0.0);
  }
}

TEST(VotingProperties, MarginLossMonotoneInGamma) {
  CounterRng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_vote(rng, 5, 2);
    std::vector<LabeledExample> ex;
    std::vector<Point> pts;
    std::vector<Label> target;
    for (int i = 0; i < 30; ++i) {
      pts.push_back(random_point(rng, 2));
      target.push_back(rng.below(2) ? 1 : -1);
      ex.push_back({pts.back(), target.back()});
    }
    const TrainingSequence s(ex);
    DiscreteDistribution d(pts, std::vector<double>(30, 1.0 / 30.0), target);
    double prev_s = -1.0, prev_d = -1.0;
    for (double g = -1.0; g <= 1.0; g += 0.05) {
      const double ls = g >= 0.0 ? empirical_margin_loss(f, s, g) : MarginProfile(f, s).loss(g);
      const double ld = true_margin_loss(f, d, g);
      EXPECT_GE(ls, prev_s);
      EXPECT_GE(ld, prev_d);
      prev_s = ls;
      prev_d = ld;
    }
  }
}

TEST(MarginProfile, SortedAndMatchesDirectCount) {
  CounterRng rng(29);
  const auto f = random_vote(rng, 4, 2);
  std::vector<LabeledExample> ex;
  for (int i = 0; i < 40; ++i) ex.push_back({random_point(rng, 2), rng.below(2) ? 1 : -1});
  const TrainingSequence s(ex);
  const MarginProfile prof(f, s);
  EXPECT_TRUE(std::is_sorted(prof.margins().begin(), prof.margins().end()));
  EXPECT_EQ(prof.size(), s.size());
  for (double g : {-0.5, -0.1, 0.0, 0.2, 0.6}) {
    std::size_t k = 0;
    for (const auto& e : s) k += margin(f, e) <= g;
    EXPECT_EQ(prof.loss(g), static_cast<double>(k) / 40.0);
  }
}

TEST(StumpScorer, MatchesDirectEvaluation) {
  CounterRng rng(31);
  std::vector<Point> pts;
  for (int i = 0; i < 300; ++i) {
    std::vector<double> x(4);
    for (double& v : x) v = static_cast<double>(rng.below(16)) / 16.0;  // repeated values and exact ties
    pts.push_back(Point::featured(std::move(x)));
  }
  const StumpScorer scorer(pts);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<VoteTerm> terms;
    for (int k = 0; k < 7; ++k)
      terms.push_back({rng.uniform(0.1, 1.0),
                       Stump{rng.below(4), static_cast<double>(rng.below(18)) / 16.0 - 1.0 / 16.0, rng.below(2) ? 1 : -1}});
    const VotingClassifier f(terms);
    const auto fast = scorer.scores(f);
    for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_NEAR(fast[i], f(pts[i]), 1e-12);
    const auto via = evaluate_on(f, pts, &scorer);
    for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(predict([&](const Point&) { return via[i]; }, pts[i]),
                                                           predict(f, pts[i]));
  }
}
