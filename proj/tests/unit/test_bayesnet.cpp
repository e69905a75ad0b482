#include <cmath>

#include <gtest/gtest.h>

#include "ahmp/bayesnet.hpp"
#include "ahmp/error.hpp"
#include "bn_gen.hpp"
#include "oracles/oracles.hpp"

namespace ahmp {
namespace {

bool has_kind(const std::vector<Violation>& v, Violation::Kind kind)
{
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind; });
}

NodeSpec root(const std::string& name, double p_first, std::vector<std::string> states = {"t", "f"})
{
  return {name, std::move(states), {}, {{p_first, 1.0 - p_first}}};
}

// Every full assignment of the net, enumerated by odometer.
std::vector<Assignment> all_assignments(const BayesNet& net)
{
  std::vector<Assignment> out;
  const auto& nodes = net.nodes();
  std::vector<std::size_t> digit(nodes.size(), 0);
  while (true)
  {
    Assignment a;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      a[nodes[i].name] = nodes[i].states[digit[i]];
    out.push_back(a);
    std::size_t i = 0;
    while (i < nodes.size() && ++digit[i] == nodes[i].states.size())
      digit[i++] = 0;
    if (i == nodes.size())
      return out;
  }
}

TEST(Validate, SingleUniformNodeIsOk)
{
  const BayesNet net({root("A", 0.5)});
  EXPECT_TRUE(validate(net).empty());
  EXPECT_TRUE(net.valid());
}

TEST(Validate, MutualParentsAreACycle)
{
  const BayesNet net({
      {"A", {"t", "f"}, {"B"}, {{0.5, 0.5}, {0.5, 0.5}}},
      {"B", {"t", "f"}, {"A"}, {{0.5, 0.5}, {0.5, 0.5}}},
  });
  EXPECT_TRUE(has_kind(validate(net), Violation::Kind::Cycle));
  EXPECT_THROW(posterior(net, "A", {}), ConfigError);
}

TEST(Validate, RowSummingToPointNineIsNamed)
{
  const BayesNet net({
      root("A", 0.5),
      {"B", {"t", "f"}, {"A"}, {{0.5, 0.5}, {0.6, 0.3}}},
  });
  const auto v = validate(net);
  ASSERT_TRUE(has_kind(v, Violation::Kind::RowNormalization));
  const auto it = std::find_if(v.begin(), v.end(), [](const Violation& x) {
    return x.kind == Violation::Kind::RowNormalization;
  });
  EXPECT_NE(it->message.find("B"), std::string::npos);
  EXPECT_NE(it->message.find("1"), std::string::npos);   // row index
}

TEST(Validate, StructuralProblems)
{
  EXPECT_TRUE(has_kind(validate(BayesNet({root("A", 0.5), root("A", 0.5)})),
                       Violation::Kind::DuplicateName));
  EXPECT_TRUE(has_kind(validate(BayesNet({NodeSpec{"A", {"only"}, {}, {{1.0}}}})),
                       Violation::Kind::TooFewStates));
  EXPECT_TRUE(has_kind(validate(BayesNet({NodeSpec{"A", {"t", "f"}, {"Z"}, {{0.5, 0.5}}}})),
                       Violation::Kind::UnknownParent));
  EXPECT_TRUE(has_kind(
      validate(BayesNet({root("A", 0.5), NodeSpec{"B", {"t", "f"}, {"A"}, {{0.5, 0.5}}}})),
      Violation::Kind::RowCount));
  EXPECT_TRUE(has_kind(validate(BayesNet({NodeSpec{"A", {"t", "f"}, {}, {{1.0}}}})),
                       Violation::Kind::RowWidth));
  EXPECT_TRUE(has_kind(validate(BayesNet({NodeSpec{"A", {"t", "f"}, {}, {{1.5, -0.5}}}})),
                       Violation::Kind::NegativeProbability));
}

TEST(Validate, TooManyJointStates)
{
  std::vector<NodeSpec> nodes;
  for (int i = 0; i < 17; ++i)
    nodes.push_back(root("N" + std::to_string(i), 0.5));
  EXPECT_TRUE(has_kind(validate(BayesNet(nodes)), Violation::Kind::TooManyStates));
  nodes.pop_back();
  EXPECT_TRUE(validate(BayesNet(nodes)).empty());
}

TEST(JointProbability, IndependentHalves)
{
  const BayesNet net({root("A", 0.5), root("B", 0.5), root("C", 0.5)});
  for (const Assignment& a : all_assignments(net))
    EXPECT_DOUBLE_EQ(joint_probability(net, a), 0.125);
}

TEST(JointProbability, TwoNodeChain)
{
  const BayesNet net({
      root("A", 0.3),
      {"B", {"t", "f"}, {"A"}, {{0.9, 0.1}, {0.2, 0.8}}},
  });
  EXPECT_NEAR(joint_probability(net, {{"A", "t"}, {"B", "t"}}), 0.27, 1e-15);
  EXPECT_THROW(joint_probability(net, {{"A", "t"}}), ContractViolation);
  EXPECT_THROW(joint_probability(net, {{"A", "t"}, {"B", "maybe"}}), ContractViolation);
}

TEST(JointProbability, SumsToOneOnRandomNets)
{
  Rng rng(404);
  for (int trial = 0; trial < 30; ++trial)
  {
    const BayesNet net = fixtures::random_net(rng, 4, 3);
    ASSERT_TRUE(net.valid());
    double sum = 0.0;
    for (const Assignment& a : all_assignments(net))
      sum += joint_probability(net, a);
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(Posterior, RootWithoutEvidenceIsItsPrior)
{
  const BayesNet net = BayesNet::default_net();
  const auto p = posterior(net, "Disturbance", {});
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p[0], 0.7, 1e-12);
  EXPECT_NEAR(p[1], 0.3, 1e-12);
}

TEST(Posterior, AllParentsObservedGivesCptRow)
{
  const BayesNet net = BayesNet::default_net();
  const auto p = posterior(net, kPathSuccessNode,
                           {{"Disturbance", "high"}, {"SensorNoise", "low"}, {"Clearance", "high"}});
  EXPECT_NEAR(p[0], 0.75, 1e-12);
  EXPECT_NEAR(p[1], 0.25, 1e-12);
}

TEST(Posterior, MatchesFullJointTableOnRandomNets)
{
  Rng rng(2718);
  for (int trial = 0; trial < 20; ++trial)
  {
    const BayesNet net = fixtures::random_net(rng, 5);
    const auto& nodes = net.nodes();
    const std::size_t qi = rng.below(nodes.size());
    Evidence ev;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (i != qi && rng.uniform01() < 0.4)
        ev[nodes[i].name] = nodes[i].states[rng.below(nodes[i].states.size())];
    const auto got = posterior(net, nodes[qi].name, ev);
    const auto want = oracle::brute_posterior(net, nodes[qi].name, ev);
    ASSERT_EQ(got.size(), want.size());
    double sum = 0.0;
    for (std::size_t s = 0; s < got.size(); ++s)
    {
      EXPECT_NEAR(got[s], want[s], 1e-9);
      sum += got[s];
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(Posterior, EvidenceOrderDoesNotMatter)
{
  // Evidence is a map, so insertion order never reaches the algorithm; build
  // the same evidence two ways and compare bitwise.
  const BayesNet net = BayesNet::default_net();
  Evidence a, b;
  a["Clearance"] = "low";
  a["Disturbance"] = "high";
  b["Disturbance"] = "high";
  b["Clearance"] = "low";
  EXPECT_EQ(posterior(net, kPathSuccessNode, a), posterior(net, kPathSuccessNode, b));
}

TEST(Posterior, Errors)
{
  const BayesNet net = BayesNet::default_net();
  EXPECT_THROW(posterior(net, "Disturbance", {{"Disturbance", "low"}}), ContractViolation);
  EXPECT_THROW(posterior(net, "Nope", {}), ContractViolation);
  EXPECT_THROW(posterior(net, "Disturbance", {{"Clearance", "medium"}}), ContractViolation);

  const BayesNet certain({
      root("A", 1.0),
      {"B", {"t", "f"}, {"A"}, {{1.0, 0.0}, {0.5, 0.5}}},
  });
  EXPECT_THROW(posterior(certain, "B", {{"A", "f"}}), ImpossibleEvidence);
}

TEST(SuccessProbability, DefaultPrior)
{
  // Hand enumeration over (Disturbance, SensorNoise, Clearance).
  const double pd[2] = {0.7, 0.3}, ps[2] = {0.8, 0.2}, pc[2] = {0.4, 0.6};
  const double row[8] = {0.80, 0.95, 0.65, 0.85, 0.50, 0.75, 0.30, 0.60};
  double expected = 0.0;
  for (int d = 0; d < 2; ++d)
    for (int s = 0; s < 2; ++s)
      for (int c = 0; c < 2; ++c)
        expected += pd[d] * ps[s] * pc[c] * row[4 * d + 2 * s + c];
  EXPECT_NEAR(success_probability(BayesNet::default_net(), {}), expected, 1e-12);
  EXPECT_NEAR(expected, 0.791, 1e-12);
}

TEST(SuccessProbability, HighDisturbanceLowClearance)
{
  // 0.8 * P(S|h,l,l) + 0.2 * P(S|h,h,l) = 0.8 * 0.5 + 0.2 * 0.3
  EXPECT_NEAR(success_probability(BayesNet::default_net(),
                                  {{"Disturbance", "high"}, {"Clearance", "low"}}),
              0.46, 1e-12);
}

TEST(SuccessProbability, ImpossibleEvidenceAndMissingNode)
{
  const BayesNet net({
      root("Disturbance", 1.0, {"low", "high"}),
      {kPathSuccessNode, {"true", "false"}, {"Disturbance"}, {{0.9, 0.1}, {0.5, 0.5}}},
  });
  EXPECT_NEAR(success_probability(net, {}), 0.9, 1e-12);
  EXPECT_THROW(success_probability(net, {{"Disturbance", "high"}}), ImpossibleEvidence);
  EXPECT_THROW(success_probability(BayesNet({root("A", 0.5)}), {}), ConfigError);
}

} // namespace
} // namespace ahmp
