#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = fosf::cli::run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

const std::string kMovies = FOSF_SAMPLES "/movies.onto";
const std::string kWalkthrough = FOSF_SAMPLES "/walkthrough.onto";
const std::string kT1 = "X1:movie(directed_by -> Y1:person, genre -> Z1:thriller)";
const std::string kT2 = "X2:movie(title -> W2:string, genre -> Z2:slasher, directed_by -> Y2:director)";

}  // namespace

TEST(Cli, Check) {
  EXPECT_EQ(run({"check", kMovies}).code, 0);
  EXPECT_EQ(run({"check", kWalkthrough}).code, 0);
  CliRun bad = run({"check", FOSF_SAMPLES "/diamond.onto"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("(a, b)"), std::string::npos);
  EXPECT_EQ(run({"check", "/nonexistent.onto"}).code, 1);
}

TEST(Cli, DegreeAndGlb) {
  EXPECT_EQ(run({"--ontology", kWalkthrough, "degree", "s", "s"}).out, "1\n");
  EXPECT_EQ(run({"degree", "q", "u", "--ontology", kWalkthrough}).out, "0.7\n");
  EXPECT_EQ(run({"--ontology", kWalkthrough, "glb", "u", "v"}).out, "s\n");
  EXPECT_EQ(run({"--ontology", kWalkthrough, "degree", "s", "nope"}).code, 1);
}

TEST(Cli, Closure) {
  CliRun r = run({"--ontology", kMovies, "closure", "slasher"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("slasher thriller 0.5\n"), std::string::npos);
  EXPECT_NE(r.out.find("slasher movie 1\n"), std::string::npos);
  EXPECT_EQ(run({"--dense", "--ontology", kMovies, "closure"}).code, 0);
}

TEST(Cli, Unify) {
  CliRun r = run({"--ontology", kWalkthrough, "unify", "Y0:u(f -> Y1:v(g -> Y0, h -> Y2:r))", "X0:v(f -> X1:u(g -> X2:t))"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "unifier=_Z0:q(f -> _Z1:s(g -> _Z0, h -> _Z2:r))\nbeta1=0.4\nbeta2=0.5\nbeta=0.4\n");
  CliRun b = run({"--ontology", kMovies, "unify", "X:movie(directed_by -> Y:director)", "X:movie(directed_by -> Y:string)"});
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(b.out, "BOTTOM beta=1\n");
  EXPECT_EQ(run({"--ontology", kMovies, "unify", "X:movie(", "X:movie"}).code, 1);
}

TEST(Cli, UnifyJsonRoundTrips) {
  CliRun r = run({"--json", "--ontology", kWalkthrough, "unify", "Y0:u(f -> Y1:v(g -> Y0, h -> Y2:r))",
               "X0:v(f -> X1:u(g -> X2:t))"});
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["beta"].get<double>(), 0.4);
  EXPECT_EQ(j["classes"].size(), 3u);
  auto lat = fosf::validate_lattice(fosf::load_ontology(kWalkthrough).graph);
  auto u = fosf::parse_normal_term(j["unifier"].get<std::string>(), lat->signature());
  EXPECT_TRUE(fosf::term_equivalent(u, fosf::parse_normal_term("Z0:q(f -> Z1:s(g -> Z0, h -> Z2:r))", lat->signature())));
}

TEST(Cli, UnifyBatch) {
  std::string path = ::testing::TempDir() + "/pairs.txt";
  {
    std::ofstream f(path);
    f << "# pairs\n"
      << kT1 << " ; X3:movie(directed_by -> Y3:director, title -> W3:string, genre -> Z3:horror)\n"
      << "X:movie(directed_by -> Y:director) ; X:movie(directed_by -> Y:string)\n";
  }
  CliRun r = run({"--ontology", kMovies, "unify", "--batch", path, "--threads", "2"});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string a, b;
  std::getline(lines, a);
  std::getline(lines, b);
  EXPECT_NE(a.find("beta=0.5"), std::string::npos);
  EXPECT_EQ(b, "BOTTOM beta=1");
}

TEST(Cli, TermsFromFiles) {
  std::string path = ::testing::TempDir() + "/t1.term";
  {
    std::ofstream f(path);
    f << kT1 << "\n";
  }
  CliRun r = run({"--ontology", kMovies, "subsumes", kT2, "@" + path});
  EXPECT_EQ(r.out.substr(0, 11), "degree=0.5\n");
  EXPECT_EQ(run({"--ontology", kMovies, "subsumes", kT2, "@/nonexistent"}).code, 1);
}

TEST(Cli, Subsumes) {
  CliRun r = run({"--ontology", kMovies, "subsumes", kT2, kT1});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "degree=0.5\nX2 <- X1\nY2 <- Y1\nZ2 <- Z1\n");
  CliRun n = run({"--ontology", kMovies, "subsumes", kT1, kT2});
  EXPECT_EQ(n.code, 0);
  EXPECT_EQ(n.out, "none\n");
}

TEST(Cli, Normalize) {
  CliRun r = run({"--ontology", kMovies, "normalize", "X:movie & X.directed_by = Y & Y:director & X.directed_by = Y2 & Y2:string"});
  EXPECT_EQ(r.out, "INCONSISTENT\n");
  CliRun ok = run({"--ontology", kMovies, "--trace", "normalize", "X = Y & X:thriller & Y:horror"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("# Tag Elimination"), std::string::npos);
  EXPECT_NE(ok.out.find("X:slasher\nEQ X Y\n"), std::string::npos);
}

TEST(Cli, Enrich) {
  CliRun r = run({"--ontology", FOSF_SAMPLES "/similar.onto", "enrich"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("edge slasher thriller 0.5"), std::string::npos);
}

TEST(Cli, Dot) {
  EXPECT_NE(run({"--ontology", kMovies, "dot"}).out.find("digraph"), std::string::npos);
  EXPECT_NE(run({"--ontology", kMovies, "dot", kT1}).out.find("peripheries=2"), std::string::npos);
}

TEST(Cli, Eval) {
  std::string interp = FOSF_SAMPLES "/movies.interp";
  CliRun r = run({"--ontology", kMovies, "eval", "--interp", interp, "X:thriller(directed_by -> Y:director)", "halloween"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "halloween 0.5\n");
  std::string bad = ::testing::TempDir() + "/bad.interp";
  {
    std::ofstream f(bad);
    std::ifstream in(interp);
    f << in.rdbuf() << "deg thriller halloween 0.3\n";
  }
  CliRun b = run({"--ontology", kMovies, "eval", "--interp", bad, "X:movie"});
  EXPECT_EQ(b.code, 2);
  EXPECT_FALSE(b.err.empty());
}

TEST(Cli, Theorems) {
  CliRun r = run({"--seed", "3", "theorems", "--rounds", "30", "--max-domain", "3", "--max-sorts", "4"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"degree", "a", "b"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}
