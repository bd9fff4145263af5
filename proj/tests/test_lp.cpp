#include <gtest/gtest.h>

#include "hmatch/generators.hpp"
#include "hmatch/lp.hpp"
#include "oracles.hpp"

using namespace hmatch;

TEST(Lp, TriangleOptimumIsAllHalves) {
  const auto sol = max_weight_basic_fractional_matching(WeightedInstance::unit(gen::triangle()));
  EXPECT_EQ(sol.objective, Rational(3, 2));
  EXPECT_EQ(sol.x, EdgeValues(3, Rational(1, 2)));
  EXPECT_TRUE(verify_basic(gen::triangle(), sol.x));
}

TEST(Lp, FanoOptimumIsUniqueAllThirds) {
  const auto fano = gen::fano();
  const auto sol = max_weight_basic_fractional_matching(WeightedInstance::unit(fano));
  EXPECT_EQ(sol.objective, Rational(7, 3));
  EXPECT_EQ(sol.x, EdgeValues(7, Rational(1, 3)));
  // y = 1/3 on every point covers every line exactly and has value 7/3.
  const EdgeValues y(7, Rational(1, 3));
  EXPECT_TRUE(oracle::dual_feasible(fano, EdgeValues(7, Rational(1)), y));
  EXPECT_EQ(sum(y), sol.objective);
}

TEST(Lp, ProjectivePlaneOfOrderThree) {
  const auto plane = gen::projective_plane(3);
  const auto sol = max_weight_basic_fractional_matching(WeightedInstance::unit(plane));
  EXPECT_EQ(sol.objective, Rational(13, 4));
  EXPECT_TRUE(verify_basic(plane, sol.x));
}

TEST(Lp, PathPicksAlternateEdges) {
  const auto p = gen::path(3);
  const auto sol = max_weight_basic_fractional_matching(p, EdgeValues{1, 1, 1});
  EXPECT_EQ(sol.objective, 2);
  EXPECT_EQ(sol.x, (EdgeValues{1, 0, 1}));
}

TEST(Lp, NonpositiveWeightsGiveZero) {
  const auto tri = gen::triangle();
  const auto sol = max_weight_basic_fractional_matching(tri, EdgeValues{0, -1, 0});
  EXPECT_EQ(sol.objective, 0);
  EXPECT_TRUE(verify_basic(tri, sol.x));
  EXPECT_ERRC(max_weight_basic_fractional_matching(tri, EdgeValues{1, 1}), Errc::SizeMismatch);
}

TEST(Lp, EmptyAndSingletonEdges) {
  const auto empty = Hypergraph::build(3, {});
  EXPECT_EQ(fractional_optimum(empty, EdgeValues{}), 0);
  const auto single = Hypergraph::build(2, {{0}, {0, 1}});
  const auto sol = max_weight_basic_fractional_matching(single, EdgeValues{2, 3});
  EXPECT_EQ(sol.objective, 3);
}

TEST(Lp, VerifyBasicRejectsInteriorPoints) {
  const auto p = gen::path(3);
  EXPECT_FALSE(verify_basic(p, EdgeValues(3, Rational(1, 2))));
  EXPECT_TRUE(verify_basic(p, EdgeValues{1, 0, 1}));
  EXPECT_FALSE(verify_basic(p, EdgeValues{0, 0, Rational(1, 2)}));
  EXPECT_ERRC(verify_basic(p, EdgeValues{1, 1, 0}), Errc::InfeasiblePoint);
}

TEST(Lp, ActiveConstraintsListBoundsAndRows) {
  const auto p = gen::path(2);
  const auto active = active_constraints(p, EdgeValues{1, 0});
  const std::vector<ActiveConstraint> expected{{ConstraintKind::Vertex, 0},
                                               {ConstraintKind::Vertex, 1},
                                               {ConstraintKind::Upper, 0},
                                               {ConstraintKind::Lower, 1}};
  EXPECT_EQ(active, expected);
}

TEST(Lp, LBInequalityOnReducedBasicPoints) {
  const auto tri = gen::triangle();
  const EdgeValues half(3, Rational(1, 2));
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_TRUE(check_L_B_inequality(tri, half, std::vector<std::size_t>{a}));
    EXPECT_TRUE(check_L_B_inequality(tri, half, std::vector<std::size_t>{a, (a + 1) % 3}));
  }
  EXPECT_TRUE(check_L_B_inequality(tri, half, std::vector<std::size_t>{0, 1, 2}));
  EXPECT_ERRC(check_L_B_inequality(tri, EdgeValues{1, 0, 0}, std::vector<std::size_t>{0}),
              Errc::NotReduced);
  const auto p = gen::path(3);
  EXPECT_ERRC(check_L_B_inequality(p, EdgeValues(3, Rational(1, 2)), std::vector<std::size_t>{0}),
              Errc::NotBasic);
}

TEST(Lp, LBInequalityOnFanoSubsets) {
  const auto fano = gen::fano();
  const EdgeValues third(7, Rational(1, 3));
  for (std::uint32_t mask = 1; mask < 128; ++mask) {
    std::vector<std::size_t> l;
    for (std::size_t e = 0; e < 7; ++e) {
      if (mask >> e & 1u) l.push_back(e);
    }
    EXPECT_TRUE(check_L_B_inequality(fano, third, l));
  }
}

class LpRandom : public ::testing::TestWithParam<int> {};

TEST_P(LpRandom, MatchesBruteForceVertexOracle) {
  const auto seed = static_cast<std::uint64_t>(GetParam());
  const auto inst = gen::random_hypergraph(6, 1 + seed % 6, 2, 4, seed);
  const auto vertices = oracle::polytope_vertices(inst.graph);
  const auto sol = max_weight_basic_fractional_matching(inst);
  EXPECT_TRUE(vertices.count(sol.x)) << "LP returned a non-vertex";
  EXPECT_TRUE(verify_basic(inst.graph, sol.x));
  EXPECT_EQ(sol.objective, oracle::best_vertex_value(vertices, inst.weights));

  const auto enumerated = enumerate_polytope_vertices(inst.graph);
  EXPECT_EQ(std::set<EdgeValues>(enumerated.begin(), enumerated.end()), vertices);
}

INSTANTIATE_TEST_SUITE_P(Seeds, LpRandom, ::testing::Range(0, 40));

TEST(Lp, LargerRandomInstancesAreBasicAndBeatMatchings) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = gen::random_hypergraph(12, 20, 2, 5, 1000 + seed);
    const auto sol = max_weight_basic_fractional_matching(inst);
    ASSERT_TRUE(is_fractional_matching(inst.graph, sol.x));
    EXPECT_TRUE(verify_basic(inst.graph, sol.x));
    EXPECT_GE(sol.objective, brute_force_max_matching(inst).value);
  }
}
