#include <gtest/gtest.h>

#include <random>

#include "fosf/fixtures.hpp"
#include "fosf/fosf.hpp"
#include "fosf/random.hpp"

using namespace fosf;

namespace {

struct Movies : ::testing::Test {
  std::shared_ptr<const SortLattice> lat = validate_lattice(parse_ontology_text(fixtures::movie_ontology()).graph);
  const Signature& sig = lat->signature();
  NormalTerm t1 = parse_normal_term("X1:movie(directed_by -> Y1:person, genre -> Z1:thriller)", sig);
  NormalTerm t2 =
      parse_normal_term("X2:movie(title -> W2:string, genre -> Z2:slasher, directed_by -> Y2:director)", sig);
};

struct Walkthrough : ::testing::Test {
  std::shared_ptr<const SortLattice> lat = validate_lattice(load_ontology(FOSF_SAMPLES "/walkthrough.onto").graph);
  const Signature& sig = lat->signature();
  NormalTerm psi = parse_normal_term("Z0:q(f -> Z1:s(g -> Z0, h -> Z2:r))", sig);
  NormalTerm psi1 = parse_normal_term("Y0:u(f -> Y1:v(g -> Y0, h -> Y2:r))", sig);
  NormalTerm psi2 = parse_normal_term("X0:v(f -> X1:u(g -> X2:t))", sig);
};

}  // namespace

TEST_F(Movies, RunningExampleDegrees) {
  EXPECT_EQ(fuzzy_subsumption_degree(t2, t1, *lat), 0.5);
  EXPECT_EQ(fuzzy_subsumption_degree(t1, t2, *lat), 0.0);
  EXPECT_TRUE(crisp_subsumes(t2, t1, *lat));
  EXPECT_FALSE(crisp_subsumes(t1, t2, *lat));
  auto w = subsumption_witness(t2, t1, *lat);
  ASSERT_TRUE(w);
  std::map<std::string, std::string> h;
  for (const auto& [a, b] : w->h) h[a.name] = b.name;
  EXPECT_EQ(h, (std::map<std::string, std::string>{{"X1", "X2"}, {"Y1", "Y2"}, {"Z1", "Z2"}}));
}

TEST_F(Movies, SelfAndDisjointSorts) {
  EXPECT_EQ(fuzzy_subsumption_degree(t1, t1, *lat), 1.0);
  EXPECT_FALSE(crisp_subsumes(parse_normal_term("X:director", sig), parse_normal_term("X:thriller", sig), *lat));
}

TEST_F(Movies, EndomorphicApproximation) {
  OsfGraph g0 = term_to_graph(parse_normal_term("X0:thriller(directed_by -> Y0:director)", sig));
  OsfGraph g1 =
      term_to_graph(parse_normal_term("X1:slasher(directed_by -> Y1:director, title -> Z1:string)", sig));
  EXPECT_EQ(approximation_degree(g0, g1, *lat), 0.5);
  EXPECT_EQ(approximation_degree(g1, g0, *lat), 0.0);
  EXPECT_EQ(approximation_degree(g0, g0, *lat), 1.0);
  EXPECT_EQ(graph_morphism_degree(g0, g1, *lat), std::optional<Degree>(0.5));
}

TEST_F(Walkthrough, WitnessDegreesIntoUnifier) {
  auto w1 = syntactic_subsumes(psi, psi1, *lat);
  auto w2 = syntactic_subsumes(psi, psi2, *lat);
  ASSERT_TRUE(w1 && w2);
  EXPECT_EQ(w1->degree, 0.4);
  EXPECT_EQ(w2->degree, 0.5);
  EXPECT_EQ(w1->per_tag.size(), 3u);
}

TEST_F(Walkthrough, UnmatchedFeatureHasNoSyntacticWitness) {
  NormalTerm a = parse_normal_term("X:s", sig);
  NormalTerm b = parse_normal_term("Y:s(f -> Z:t)", sig);
  EXPECT_FALSE(syntactic_subsumes(a, b, *lat).has_value());
  EXPECT_EQ(fuzzy_subsumption_degree(a, b, *lat), 0.0);
}

TEST_F(Walkthrough, CompletionAddsTopNodes) {
  NormalTerm a = parse_normal_term("X0:s(f -> Y0:u)", sig);
  NormalTerm b = parse_normal_term("X1:s(f -> Y1:u, g -> Z1:top)", sig);
  EXPECT_FALSE(syntactic_subsumes(a, b, *lat).has_value());
  EXPECT_EQ(fuzzy_subsumption_degree(a, b, *lat), 1.0);
  EXPECT_EQ(fuzzy_subsumption_degree(b, a, *lat), 1.0);
  auto w = subsumption_witness(a, b, *lat);
  ASSERT_TRUE(w);
  bool completed = false;
  for (const auto& [x, y] : w->h)
    if (y.name == "X0.g") completed = true;
  EXPECT_TRUE(completed);
}

TEST_F(Walkthrough, CoreferenceMustBeRespected) {
  NormalTerm split = parse_normal_term("X:p(f -> Y:u, g -> Z:u)", sig);
  NormalTerm shared = parse_normal_term("X:p(f -> Y:u, g -> Y)", sig);
  EXPECT_EQ(fuzzy_subsumption_degree(shared, split, *lat), 1.0);
  EXPECT_EQ(fuzzy_subsumption_degree(split, shared, *lat), 0.0);
}

TEST(SubsumptionLaws, PreorderOnRandomTerms) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    auto lat = gen::random_lattice(rng, 2 + i % 5, 2);
    const auto& sig = lat->signature();
    OsfGraph g0 = gen::random_graph(rng, sig, 4);
    OsfGraph g1 = gen::generalize(rng, g0, *lat, "Y");
    OsfGraph g2 = gen::generalize(rng, g1, *lat, "Z");
    NormalTerm a = graph_to_term(g0, sig), b = graph_to_term(g1, sig), c = graph_to_term(g2, sig);
    ASSERT_EQ(fuzzy_subsumption_degree(a, a, *lat), 1.0);
    Degree ab = fuzzy_subsumption_degree(a, b, *lat), bc = fuzzy_subsumption_degree(b, c, *lat);
    ASSERT_GE(fuzzy_subsumption_degree(a, c, *lat), std::min(ab, bc));
    if (ab > 0 && fuzzy_subsumption_degree(b, a, *lat) > 0) ASSERT_TRUE(term_equivalent(a, b));
  }
}
