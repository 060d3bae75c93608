#include <gtest/gtest.h>

#include <random>

#include "fosf/fixtures.hpp"
#include "fosf/fosf.hpp"
#include "fosf/random.hpp"

using namespace fosf;

namespace {

const char* kCoref =
    "X0:movie(title -> X1:string, directed_by -> X:director(name -> X2:string, spouse -> Y), "
    "written_by -> Y:writer(spouse -> X))";

struct Ext : ::testing::Test {
  std::shared_ptr<const SortLattice> lat = validate_lattice(load_ontology(FOSF_SAMPLES "/movies_ext.onto").graph);
  const Signature& sig = lat->signature();
};

}  // namespace

TEST_F(Ext, CorefGraphShape) {
  OsfGraph g = term_to_graph(parse_normal_term(kCoref, sig));
  EXPECT_EQ(g.size(), 5u);
  EXPECT_EQ(g.nodes[g.root], Tag{"X0"});
  std::size_t edges = 0;
  for (const auto& o : g.out) edges += o.size();
  EXPECT_EQ(edges, 6u);
  auto x = *g.find(Tag{"X"}), y = *g.find(Tag{"Y"});
  EXPECT_EQ(g.child(x, sig.feature("spouse")), y);
  EXPECT_EQ(g.child(y, sig.feature("spouse")), x);
  EXPECT_EQ(g.label[x], sig.sort("director"));
  EXPECT_FALSE(graph_violation(g).has_value());
}

TEST_F(Ext, GraphClauseTermAgree) {
  NormalTerm t = parse_normal_term(kCoref, sig);
  OsfGraph g = term_to_graph(t);
  EXPECT_TRUE(same_constraints(graph_to_clause(g), term_to_clause(t)));
  EXPECT_TRUE(same_graph(clause_to_graph(term_to_clause(t), t.root()), g));
  EXPECT_EQ(graph_to_term(g, sig).term(), canonical_layout(t));
}

TEST_F(Ext, RestrictKeepsReachablePart) {
  OsfGraph g = term_to_graph(parse_normal_term(kCoref, sig));
  OsfGraph sub = restrict(g, *g.find(Tag{"X"}));
  EXPECT_EQ(sub.size(), 3u);
  EXPECT_EQ(sub.nodes[sub.root], Tag{"X"});
  EXPECT_FALSE(sub.find(Tag{"X0"}).has_value());
}

TEST_F(Ext, DotMarksRoot) {
  std::string dot = graph_to_dot(term_to_graph(parse_normal_term(kCoref, sig)), sig);
  EXPECT_NE(dot.find("peripheries=2"), std::string::npos);
  EXPECT_NE(dot.find("spouse"), std::string::npos);
}

TEST(GraphEquivalence, TrivialLeafIgnored) {
  auto sig = gen::make_signature(2, 2);
  NormalTerm a = parse_normal_term("X0:s0(f0 -> Y0:s1)", *sig);
  NormalTerm b = parse_normal_term("X1:s0(f0 -> Y1:s1, f1 -> Z1:top)", *sig);
  NormalTerm c = parse_normal_term("X1:s0(f0 -> Y1:s1, f1 -> Z1:s1)", *sig);
  EXPECT_TRUE(term_equivalent(a, b));
  EXPECT_FALSE(term_equivalent(a, c));
  EXPECT_FALSE(same_graph(term_to_graph(a), term_to_graph(b)));
}

TEST(GraphEquivalence, SharedTopNodeIsNotStripped) {
  auto sig = gen::make_signature(1, 2);
  NormalTerm a = parse_normal_term("X:s0(f0 -> Y:top, f1 -> Y)", *sig);
  NormalTerm b = parse_normal_term("X:s0", *sig);
  EXPECT_FALSE(term_equivalent(a, b));
}

TEST(GraphEquivalence, RenamingIsEquivalent) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    auto sig = gen::make_signature(3, 2);
    NormalTerm t = gen::random_normal_term(rng, *sig, 7);
    std::unordered_map<Tag, Tag> m;
    for (const auto& x : t.tags()) m[x] = Tag{"R" + x.name};
    NormalTerm r(rename(t.term(), m), *sig);
    ASSERT_TRUE(term_equivalent(t, r));
    ASSERT_TRUE(term_equivalent(t, NormalTerm(gen::random_layout_term(rng, term_to_graph(t), *sig))));
  }
}

TEST(GraphAlgebra, FeatureApplication) {
  auto sig = gen::make_signature(2, 2);
  OsfGraph g = term_to_graph(parse_normal_term("X:s0(f0 -> Y:s1(f0 -> X))", *sig));
  GraphElement e(g);
  GraphElement y = apply_feature(e, FeatureId{0});
  ASSERT_FALSE(y.trivial());
  EXPECT_EQ(y.graph().nodes[y.graph().root], Tag{"Y"});
  EXPECT_TRUE(apply_feature(y, FeatureId{0}) == e);
  GraphElement t = apply_feature(e, FeatureId{1});
  ASSERT_TRUE(t.trivial());
  EXPECT_EQ(t.root_label(), Signature::top());
  EXPECT_TRUE(apply_feature(e, FeatureId{1}) == t);
  EXPECT_FALSE(apply_feature(y, FeatureId{1}) == t);
  EXPECT_FALSE(apply_feature(t, FeatureId{0}) == t);
}

TEST(GraphAlgebra, SortMembershipIsSubsumptionDegree) {
  auto lat = validate_lattice(load_ontology(FOSF_SAMPLES "/walkthrough.onto").graph);
  const auto& sig = lat->signature();
  GraphElement q(term_to_graph(parse_normal_term("X:q", sig)));
  EXPECT_EQ(sort_membership(q, sig.sort("u"), *lat), 0.7);
  EXPECT_EQ(sort_membership(q, sig.sort("r"), *lat), 0.0);
  GraphElement t = apply_feature(q, sig.feature("f"));
  EXPECT_EQ(sort_membership(t, Signature::top(), *lat), 1.0);
  EXPECT_EQ(sort_membership(t, sig.sort("u"), *lat), 0.0);
}
