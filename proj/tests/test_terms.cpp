#include <gtest/gtest.h>

#include <random>

#include "fosf/fixtures.hpp"
#include "fosf/fosf.hpp"
#include "fosf/random.hpp"

using namespace fosf;

namespace {

struct Movies : ::testing::Test {
  std::shared_ptr<const SortLattice> lat = validate_lattice(load_ontology(FOSF_SAMPLES "/movies_ext.onto").graph);
  const Signature& sig = lat->signature();
};

const char* kCoref =
    "X0:movie(title -> X1:string, directed_by -> X:director(name -> X2:string, spouse -> Y), "
    "written_by -> Y:writer(spouse -> X))";

const char* kCorefClause =
    "X0:movie & X0.title = X1 & X1:string & X0.directed_by = X & X:director & X.name = X2 & X2:string & "
    "X.spouse = Y & X0.written_by = Y & Y:writer & Y.spouse = X";

}  // namespace

TEST_F(Movies, ParsesSharedTag) {
  Term t = parse_term("X:movie(directed_by -> Y:person, written_by -> Y)", sig);
  EXPECT_EQ(t.tag.name, "X");
  ASSERT_EQ(t.args.size(), 2u);
  EXPECT_EQ(t.args[0].value.tag, t.args[1].value.tag);
  EXPECT_TRUE(t.args[1].value.trivial());
  EXPECT_TRUE(normal_violation(t, sig) == std::nullopt);
}

TEST_F(Movies, BareSortGetsFreshTag) {
  Term t = parse_term("top", sig);
  EXPECT_EQ(t.sort, Signature::top());
  EXPECT_EQ(t.tag.name.substr(0, 2), "_Z");
}

TEST_F(Movies, FreshTagsAvoidUserTags) {
  Term t = parse_term("_Z0:movie(title -> string)", sig);
  EXPECT_NE(t.args[0].value.tag.name, "_Z0");
}

TEST_F(Movies, DuplicateFeaturesParseButAreNotNormal) {
  Term t = parse_term("X:movie(genre -> thriller, genre -> horror)", sig);
  EXPECT_EQ(t.args.size(), 2u);
  EXPECT_TRUE(normal_violation(t, sig).has_value());
  EXPECT_THROW(NormalTerm(t, sig), NotNormal);
}

TEST_F(Movies, BotAndRestructuredTagsAreNotNormal) {
  EXPECT_THROW(parse_normal_term("X:bot", sig), NotNormal);
  EXPECT_THROW(parse_normal_term("X:movie(title -> X:movie)", sig), NotNormal);
  EXPECT_NO_THROW(parse_normal_term("X:movie(title -> X)", sig));
}

TEST_F(Movies, SyntaxErrors) {
  EXPECT_THROW(parse_term("X:movie(title string)", sig), SyntaxError);
  EXPECT_THROW(parse_term("X:movie(", sig), SyntaxError);
  EXPECT_THROW(parse_term("X:movie extra", sig), SyntaxError);
  EXPECT_THROW(parse_term("X:Movie", sig), SyntaxError);
  EXPECT_THROW(parse_term("X:film", sig), UnknownSort);
  EXPECT_THROW(parse_term("X:movie(plot -> Y)", sig), UnknownFeature);
  try {
    parse_term("X:movie(title string)", sig);
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 14u);
  }
}

TEST_F(Movies, UnicodeArrowAndEquality) {
  Term a = parse_term("X:movie(title \xE2\x86\x92 Y:string)", sig);
  Term b = parse_term("X:movie(title -> Y:string)", sig);
  EXPECT_EQ(a, b);
  Clause c = parse_clause("X:movie & X.title \xE2\x89\x90 Y & X \xE2\x89\x90 Z", sig);
  EXPECT_EQ(c.constraints.size(), 3u);
}

TEST_F(Movies, TermToClauseMatchesDisplayedClause) {
  Clause from_term = term_to_clause(parse_term(kCoref, sig));
  Clause expected = parse_clause(kCorefClause, sig);
  EXPECT_TRUE(same_constraints(from_term, expected));
  EXPECT_EQ(from_term.root, Tag{"X0"});
}

TEST_F(Movies, ClauseToTermRecoversTerm) {
  NormalTerm t = parse_normal_term(kCoref, sig);
  NormalTerm back = clause_to_term(parse_clause(kCorefClause, sig), sig);
  EXPECT_TRUE(same_graph(term_to_graph(back), term_to_graph(t)));
  EXPECT_EQ(back.term(), canonical_layout(t));
}

TEST_F(Movies, SmallClauses) {
  Clause c = term_to_clause(parse_term("X:movie", sig));
  ASSERT_EQ(c.constraints.size(), 1u);
  EXPECT_EQ(print_term(clause_to_term(c, sig), sig), "X:movie");
  Clause loop = term_to_clause(parse_term("X:movie(title -> X)", sig));
  EXPECT_TRUE(same_constraints(loop, parse_clause("X:movie & X.title = X", sig)));
}

TEST_F(Movies, CyclicClauseToTerm) {
  Clause c = parse_clause("X:director & X.spouse = Y & Y:writer & Y.spouse = X", sig);
  NormalTerm t = clause_to_term(c, sig);
  EXPECT_EQ(print_term(t, sig), "X:director(spouse -> Y:writer(spouse -> X))");
  EXPECT_TRUE(same_constraints(term_to_clause(t), c));
}

TEST_F(Movies, ClauseToTermPreconditions) {
  EXPECT_THROW(clause_to_term(parse_clause("X:movie & X = Y", sig), sig), NotSolved);
  EXPECT_THROW(clause_to_term(parse_clause("X:movie & X:string", sig), sig), NotSolved);
  EXPECT_THROW(clause_to_term(parse_clause("X:movie & X.title = Y & X.title = Z & Y:string & Z:string", sig), sig),
               NotSolved);
  EXPECT_THROW(clause_to_term(parse_clause("X:movie & Y:string", sig), sig), NotRooted);
  EXPECT_THROW(clause_to_term(parse_clause("X:movie & X.title = Y", sig), sig), NotRooted);
}

TEST_F(Movies, CompactStyleElidesSingleTags) {
  auto onto = parse_ontology_text(fixtures::movie_ontology());
  const auto& s = onto.graph->signature();
  NormalTerm t1 = parse_normal_term("X1:movie(directed_by -> Y1:person, genre -> Z1:thriller)", s);
  EXPECT_EQ(print_term(t1, s, TermStyle::Compact), "movie(directed_by -> person, genre -> thriller)");
  EXPECT_EQ(print_term(t1, s), "X1:movie(directed_by -> Y1:person, genre -> Z1:thriller)");
}

TEST_F(Movies, CompactStyleKeepsSharedTags) {
  std::string c = print_term(parse_normal_term(kCoref, sig), sig, TermStyle::Compact);
  EXPECT_NE(c.find("X:director"), std::string::npos);
  EXPECT_NE(c.find("spouse -> Y)"), std::string::npos);
  EXPECT_NE(c.find("Y:writer"), std::string::npos);
  EXPECT_EQ(c.find("X0"), std::string::npos);
}

TEST(TermProperties, PrintParseIsIdentityOnRandomTerms) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    auto sig = gen::make_signature(1 + i % 5, 1 + i % 3);
    Term t = gen::random_raw_term(rng, *sig, 6);
    std::string text = print_term(t, *sig);
    ASSERT_EQ(parse_term(text, *sig), t) << text;
  }
}

TEST(TermProperties, BijectionsOnRandomNormalTerms) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    auto sig = gen::make_signature(1 + i % 6, 1 + i % 3);
    NormalTerm t = gen::random_normal_term(rng, *sig, 8);
    Clause c = term_to_clause(t);
    ASSERT_TRUE(is_solved(c));
    ASSERT_TRUE(is_rooted(c));
    NormalTerm back = clause_to_term(c, *sig);
    ASSERT_EQ(back.term(), canonical_layout(t));
    ASSERT_TRUE(same_constraints(term_to_clause(back), c));
    std::set<Tag> a(t.tags().begin(), t.tags().end()), b(back.tags().begin(), back.tags().end());
    ASSERT_EQ(a, b);
  }
}

TEST(TermProperties, RenameIsInvertible) {
  std::mt19937_64 rng(9);
  auto sig = gen::make_signature(4, 2);
  for (int i = 0; i < 100; ++i) {
    NormalTerm t = gen::random_normal_term(rng, *sig, 6);
    std::unordered_map<Tag, Tag> fwd, back;
    for (const auto& x : t.tags()) {
      fwd[x] = Tag{"R" + x.name};
      back[Tag{"R" + x.name}] = x;
    }
    ASSERT_EQ(rename(rename(t.term(), fwd), back), t.term());
  }
}
