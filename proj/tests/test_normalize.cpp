#include <gtest/gtest.h>

#include <random>

#include "fosf/fixtures.hpp"
#include "fosf/fosf.hpp"
#include "fosf/random.hpp"

using namespace fosf;

namespace {

std::shared_ptr<const SortLattice> movies() {
  return validate_lattice(parse_ontology_text(fixtures::movie_ontology()).graph);
}

std::shared_ptr<const SortLattice> walkthrough() { return validate_lattice(load_ontology(FOSF_SAMPLES "/walkthrough.onto").graph); }

Clause conj(Clause a, const Clause& b) {
  a.constraints.insert(a.constraints.end(), b.constraints.begin(), b.constraints.end());
  return a;
}

std::set<std::set<std::string>> partition(const Normalized& n) {
  std::set<std::set<std::string>> out;
  for (const auto& c : n.classes) {
    std::set<std::string> s;
    for (const auto& t : c) s.insert(t.name);
    out.insert(s);
  }
  return out;
}

}  // namespace

TEST(Normalize, DirectorStringClashIsInconsistent) {
  auto lat = movies();
  const auto& sig = lat->signature();
  for (const char* text : {"X:movie(directed_by -> Y:director, directed_by -> Y2:string)",
                           "X:movie(directed_by -> Y:director, directed_by -> Y:string)"}) {
    NormalForm nf = normalize(term_to_clause(parse_term(text, sig)), *lat);
    EXPECT_FALSE(nf.consistent()) << text;
    EXPECT_THROW(solved_part(nf), InconsistentInput);
  }
}

TEST(Normalize, SolvedClauseIsFixpoint) {
  auto lat = movies();
  const auto& sig = lat->signature();
  Clause c = parse_clause("X:movie & X.title = Y & Y:string & X.directed_by = Z & Z:director", sig);
  NormalForm nf = normalize(c, *lat);
  ASSERT_TRUE(nf.consistent());
  EXPECT_TRUE(same_constraints(solved_part(nf), c));
  EXPECT_TRUE(nf.normalized().equalities.empty());
  EXPECT_EQ(nf.steps(), 0u);
}

TEST(Normalize, SingleTagElimination) {
  auto lat = movies();
  const auto& sig = lat->signature();
  NormalForm nf = normalize(parse_clause("X = Y & X:movie", sig), *lat);
  ASSERT_TRUE(nf.consistent());
  EXPECT_TRUE(same_constraints(solved_part(nf), parse_clause("X:movie", sig)));
  ASSERT_EQ(nf.normalized().equalities.size(), 1u);
  EXPECT_EQ(nf.normalized().equalities[0], (std::pair<Tag, Tag>{Tag{"X"}, Tag{"Y"}}));
}

TEST(Normalize, SortIntersectionUsesGlb) {
  auto lat = movies();
  const auto& sig = lat->signature();
  NormalForm nf = normalize(parse_clause("X:thriller & X:horror", sig), *lat);
  ASSERT_TRUE(nf.consistent());
  EXPECT_TRUE(same_constraints(solved_part(nf), parse_clause("X:slasher", sig)));
}

TEST(Normalize, UnificationClauseOfWalkthrough) {
  auto lat = walkthrough();
  const auto& sig = lat->signature();
  Clause psi1 = term_to_clause(parse_term("Y0:u(f -> Y1:v(g -> Y0, h -> Y2:r))", sig));
  Clause psi2 = term_to_clause(parse_term("X0:v(f -> X1:u(g -> X2:t))", sig));
  Clause phi = conj(psi2, psi1);
  phi.constraints.push_back(EqC{Tag{"X0"}, Tag{"Y0"}});
  NormalizeOptions opt;
  opt.trace = true;
  NormalForm nf = normalize(phi, *lat, opt);
  ASSERT_TRUE(nf.consistent());
  Clause expected = parse_clause("X0:q & X1:s & Y2:r & X0.f = X1 & X1.g = X0 & X1.h = Y2", sig);
  EXPECT_TRUE(same_constraints(solved_part(nf), expected)) << print_clause(solved_part(nf), sig);
  std::set<std::set<std::string>> want{{"X0", "X2", "Y0"}, {"X1", "Y1"}, {"Y2"}};
  EXPECT_EQ(partition(nf.normalized()), want);
  EXPECT_FALSE(nf.trace().empty());
  EXPECT_LE(nf.steps(), normalization_step_bound(phi));
}

TEST(Normalize, BotSortIsInconsistent) {
  auto lat = movies();
  NormalForm nf = normalize(parse_clause("X:bot", lat->signature()), *lat);
  EXPECT_FALSE(nf.consistent());
  EXPECT_EQ(nf.inconsistent().witness, Tag{"X"});
}

TEST(Normalize, RandomizedOrdersAgreeOnPartition) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    auto lat = gen::random_lattice(rng, 1 + i % 6, 1 + i % 2);
    Clause c = gen::random_clause(rng, lat->signature(), 6, 10);
    NormalForm base = normalize(c, *lat);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      NormalizeOptions opt;
      opt.randomized = true;
      opt.seed = seed;
      NormalForm nf = normalize(c, *lat, opt);
      ASSERT_EQ(nf.consistent(), base.consistent());
      ASSERT_LE(nf.steps(), normalization_step_bound(c));
      if (!base.consistent()) continue;
      ASSERT_EQ(partition(nf.normalized()), partition(base.normalized()));
      ASSERT_TRUE(same_constraints(nf.normalized().solved, base.normalized().solved));
      ASSERT_TRUE(is_solved(nf.normalized().solved));
    }
  }
}

TEST(UnionFindTest, Basics) {
  UnionFind uf;
  uf.reset(5);
  EXPECT_FALSE(uf.same(0, 1));
  uf.unite(0, 1);
  uf.unite(3, 4);
  EXPECT_TRUE(uf.same(1, 0));
  EXPECT_FALSE(uf.same(1, 3));
  uf.unite(1, 4);
  EXPECT_TRUE(uf.same(0, 3));
  EXPECT_EQ(uf.size(), 5u);
}
