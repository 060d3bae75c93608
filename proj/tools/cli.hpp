#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fosf/fosf.hpp"
#include "fosf/theorems.hpp"

namespace fosf::cli {

using json = nlohmann::json;

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kSemanticFailure = 2;

struct Session {
  std::string ontology_file;
  bool json = false;
  bool trace = false;
  bool dense = false;
  std::uint64_t seed = 0;

  Ontology ontology;
  std::shared_ptr<const SortLattice> lattice;

  const Signature& sig() const { return lattice->signature(); }

  void load() {
    if (ontology_file.empty()) throw Error("--ontology is required");
    ontology = load_ontology(ontology_file);
    lattice = validate_lattice(ontology.graph, dense);
  }
};

// `@path` reads the argument from a file.
inline std::string read_arg(const std::string& a) {
  if (a.empty() || a[0] != '@') return a;
  std::ifstream in(a.substr(1));
  if (!in) throw FileError(a.substr(1), 0, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

inline void print_unify(std::ostream& out, const UnifyResult& r, const Signature& sig) {
  if (r.bottom()) {
    out << "BOTTOM beta=1\n";
    return;
  }
  out << "unifier=" << print_term(*r.unifier, sig) << "\n"
      << "beta1=" << format_degree(r.beta1) << "\n"
      << "beta2=" << format_degree(r.beta2) << "\n"
      << "beta=" << format_degree(r.beta) << "\n";
}

inline json unify_json(const UnifyResult& r, const Signature& sig) {
  json j;
  j["unifier"] = r.bottom() ? json(nullptr) : json(print_term(*r.unifier, sig));
  j["bottom"] = r.bottom();
  j["beta1"] = r.beta1;
  j["beta2"] = r.beta2;
  j["beta"] = r.beta;
  json classes = json::array();
  for (const auto& c : r.classes) {
    json m = json::array();
    for (const auto& t : c.members) m.push_back(t.name);
    classes.push_back({{"representative", c.representative.name}, {"members", m}});
  }
  j["classes"] = classes;
  json ren = json::object();
  for (const auto& [from, to] : r.renamed) ren[from.name] = to.name;
  j["renamed"] = ren;
  return j;
}

// Splits a batch line `term1 ; term2`.
inline std::pair<std::string, std::string> split_pair(const std::string& line, std::size_t no) {
  auto k = line.find(';');
  if (k == std::string::npos) throw FileError("<batch>", no, "expected `term ; term`");
  return {line.substr(0, k), line.substr(k + 1)};
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy order-sorted feature logic toolkit", "fosf"};
  app.require_subcommand(1);
  app.fallthrough();
  Session s;
  app.add_option("--ontology", s.ontology_file, "ontology file");
  app.add_flag("--json", s.json, "machine-readable output");
  app.add_flag("--trace", s.trace, "print rule applications");
  app.add_flag("--dense", s.dense, "compute the whole closure table up front");
  app.add_option("--seed", s.seed, "random seed");

  std::string a1, a2, interp_file, batch_file, elem;
  unsigned threads = 1;
  TheoremOptions topt;

  auto* check = app.add_subcommand("check", "validate an ontology");
  check->add_option("file", s.ontology_file, "ontology file (or --ontology)");
  auto* closure = app.add_subcommand("closure", "print the subsumption closure");
  closure->add_option("sort", a1, "only this row");
  auto* degree = app.add_subcommand("degree", "subsumption degree of two sorts");
  degree->add_option("sub", a1)->required();
  degree->add_option("super", a2)->required();
  auto* glb = app.add_subcommand("glb", "greatest common subsort");
  glb->add_option("s", a1)->required();
  glb->add_option("t", a2)->required();
  auto* norm = app.add_subcommand("normalize", "normalize a clause");
  norm->add_option("clause", a1)->required();
  auto* uni = app.add_subcommand("unify", "unify two terms");
  uni->add_option("term1", a1);
  uni->add_option("term2", a2);
  uni->add_option("--batch", batch_file, "file of `term ; term` lines");
  uni->add_option("--threads", threads, "worker threads for --batch");
  auto* sub = app.add_subcommand("subsumes", "degree to which term1 is subsumed by term2");
  sub->add_option("term1", a1)->required();
  sub->add_option("term2", a2)->required();
  auto* enrich = app.add_subcommand("enrich", "derive fuzzy edges from similarities");
  auto* dot = app.add_subcommand("dot", "Graphviz output for the ontology or a term");
  dot->add_option("term", a1);
  auto* eval = app.add_subcommand("eval", "denotation of a term in an interpretation");
  eval->add_option("--interp", interp_file, "interpretation file")->required();
  eval->add_option("term", a1)->required();
  eval->add_option("elem", elem, "only this element");
  auto* thm = app.add_subcommand("theorems", "run the randomized property harness");
  thm->add_option("--max-domain", topt.max_domain);
  thm->add_option("--max-sorts", topt.max_sorts);
  thm->add_option("--max-features", topt.max_features);
  thm->add_option("--rounds", topt.rounds);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*thm) {
      topt.seed = s.seed;
      TheoremReport rep = check_theorems(topt);
      if (s.json) {
        json j = json::array();
        for (const auto& c : rep.checks)
          j.push_back({{"name", c.name}, {"cases", c.cases}, {"passed", c.passed()}, {"counterexamples", c.counterexamples}});
        out << json{{"checks", j}, {"passed", rep.passed()}, {"seconds", rep.seconds}}.dump(2) << "\n";
      } else {
        out << rep.to_text();
      }
      return rep.passed() ? kOk : kSemanticFailure;
    }

    if (*check) {
      try {
        s.load();
      } catch (const NotALattice& e) {
        if (s.json) out << json{{"ok", false}, {"error", e.what()}}.dump() << "\n";
        err << s.ontology_file << ": " << e.what() << "\n";
        return kInputError;
      }
      const auto& g = s.lattice->graph();
      if (s.json)
        out << json{{"ok", true}, {"sorts", s.sig().sort_count()}, {"features", s.sig().feature_count()},
                    {"edges", g.edges().size()}}.dump() << "\n";
      else
        out << "ok: " << s.sig().sort_count() << " sorts, " << s.sig().feature_count() << " features, "
            << g.edges().size() << " edges\n";
      return kOk;
    }

    s.load();
    const Signature& sig = s.sig();
    const SortLattice& lat = *s.lattice;

    if (*closure) {
      std::vector<SortId> rows = a1.empty() ? sig.sorts() : std::vector<SortId>{sig.sort(a1)};
      json j = json::array();
      for (SortId x : rows)
        for (SortId y : sig.sorts()) {
          Degree d = lat.degree(x, y);
          if (d == kZero || x == y || x == Signature::bot() || y == Signature::top()) continue;
          if (s.json)
            j.push_back({{"sub", sig.name(x)}, {"super", sig.name(y)}, {"degree", d}});
          else
            out << sig.name(x) << " " << sig.name(y) << " " << format_degree(d) << "\n";
        }
      if (s.json) out << j.dump(2) << "\n";
      return kOk;
    }

    if (*degree) {
      Degree d = lat.degree(sig.sort(a1), sig.sort(a2));
      if (s.json)
        out << json{{"sub", a1}, {"super", a2}, {"degree", d}}.dump() << "\n";
      else
        out << format_degree(d) << "\n";
      return kOk;
    }

    if (*glb) {
      SortId g = lat.glb(sig.sort(a1), sig.sort(a2));
      if (s.json)
        out << json{{"s", a1}, {"t", a2}, {"glb", sig.name(g)}}.dump() << "\n";
      else
        out << sig.name(g) << "\n";
      return kOk;
    }

    if (*norm) {
      Clause c = parse_clause(read_arg(a1), sig);
      NormalizeOptions opt;
      opt.trace = s.trace;
      NormalForm nf = normalize(c, lat, opt);
      if (s.json) {
        json j{{"consistent", nf.consistent()}, {"steps", nf.steps()}};
        if (nf.consistent()) {
          j["clause"] = print_clause(nf.normalized().solved, sig);
          json eq = json::array();
          for (const auto& [rep, m] : nf.normalized().equalities) eq.push_back({rep.name, m.name});
          j["equalities"] = eq;
        }
        if (s.trace) j["trace"] = nf.trace();
        out << j.dump(2) << "\n";
        return kOk;
      }
      if (s.trace)
        for (const auto& l : nf.trace()) out << "# " << l << "\n";
      if (!nf.consistent()) {
        out << "INCONSISTENT\n";
        return kOk;
      }
      out << print_clause(nf.normalized().solved, sig) << "\n";
      for (const auto& [rep, m] : nf.normalized().equalities) out << "EQ " << rep.name << " " << m.name << "\n";
      return kOk;
    }

    if (*uni) {
      if (!batch_file.empty()) {
        std::ifstream in(batch_file);
        if (!in) throw FileError(batch_file, 0, "cannot open file");
        std::vector<std::pair<NormalTerm, NormalTerm>> pairs;
        std::string line;
        for (std::size_t no = 1; std::getline(in, line); ++no) {
          if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
          auto [x, y] = split_pair(line, no);
          try {
            pairs.emplace_back(parse_normal_term(x, sig), parse_normal_term(y, sig));
          } catch (const FileError&) {
            throw;
          } catch (const Error& e) {
            throw FileError(batch_file, no, e.what());
          }
        }
        auto results = unify_batch(pairs, lat, std::max(1u, threads));
        if (s.json) {
          json j = json::array();
          for (const auto& r : results) j.push_back(unify_json(r, sig));
          out << j.dump(2) << "\n";
        } else {
          for (const auto& r : results) {
            if (r.bottom())
              out << "BOTTOM beta=1\n";
            else
              out << print_term(*r.unifier, sig) << " beta=" << format_degree(r.beta) << "\n";
          }
        }
        return kOk;
      }
      if (a1.empty() || a2.empty()) throw Error("unify needs two terms or --batch");
      NormalTerm t1 = parse_normal_term(read_arg(a1), sig);
      NormalTerm t2 = parse_normal_term(read_arg(a2), sig);
      NormalizeOptions opt;
      opt.trace = s.trace;
      UnifyResult r = unify(t1, t2, lat, opt);
      if (s.json)
        out << unify_json(r, sig).dump(2) << "\n";
      else
        print_unify(out, r, sig);
      return kOk;
    }

    if (*sub) {
      NormalTerm t1 = parse_normal_term(read_arg(a1), sig);
      NormalTerm t2 = parse_normal_term(read_arg(a2), sig);
      auto w = subsumption_witness(t1, t2, lat);
      bool none = !w || w->degree == kZero;
      if (s.json) {
        json j{{"degree", none ? kZero : w->degree}, {"subsumed", !none}};
        if (!none) {
          json h = json::array();
          for (const auto& [y, x] : w->h) h.push_back({{"tag", y.name}, {"image", x.name}});
          j["witness"] = h;
        }
        out << j.dump(2) << "\n";
      } else if (none) {
        out << "none\n";
      } else {
        out << "degree=" << format_degree(w->degree) << "\n";
        for (const auto& [y, x] : w->h) out << x.name << " <- " << y.name << "\n";
      }
      return kOk;
    }

    if (*enrich) {
      EnrichResult r = enrich_from_similarity(*s.ontology.graph, s.ontology.sim);
      if (s.json) {
        json edges = json::array(), dropped = json::array();
        for (const auto& e : r.graph.edges())
          edges.push_back({{"sub", sig.name(e.sub)}, {"super", sig.name(e.super)}, {"degree", e.degree}});
        for (const auto& d : r.dropped)
          dropped.push_back({{"sub", sig.name(d.edge.sub)}, {"super", sig.name(d.edge.super)},
                             {"degree", d.edge.degree}, {"reason", to_string(d.reason)}});
        out << json{{"edges", edges}, {"dropped", dropped}}.dump(2) << "\n";
      } else {
        out << print_ontology(r.graph);
        for (const auto& d : r.dropped)
          out << "# dropped " << sig.name(d.edge.sub) << " " << sig.name(d.edge.super) << " "
              << format_degree(d.edge.degree) << " (" << to_string(d.reason) << ")\n";
      }
      return kOk;
    }

    if (*dot) {
      if (a1.empty())
        out << lat.graph().to_dot();
      else
        out << graph_to_dot(term_to_graph(parse_normal_term(read_arg(a1), sig)), sig);
      return kOk;
    }

    if (*eval) {
      Interpretation I = load_interpretation(interp_file, s.lattice->signature_ptr());
      auto bad = validate_interpretation(I, lat);
      if (!bad.empty()) {
        for (const auto& v : bad) err << interp_file << ": " << v << "\n";
        return kSemanticFailure;
      }
      Term t = parse_term(read_arg(a1), sig);
      std::vector<Element> which;
      if (elem.empty()) {
        for (Element e = 0; e < I.size(); ++e) which.push_back(e);
      } else {
        auto e = I.find(elem);
        if (!e) throw Error("unknown element '" + elem + "'");
        which.push_back(*e);
      }
      json j = json::object();
      for (Element e : which) {
        Degree d = denote(t, I, e);
        if (s.json)
          j[I.name(e)] = d;
        else
          out << I.name(e) << " " << format_degree(d) << "\n";
      }
      if (s.json) out << j.dump(2) << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace fosf::cli
