#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fosf/degree.hpp"
#include "fosf/errors.hpp"
#include "fosf/signature.hpp"
#include "fosf/similarity.hpp"

namespace fosf {

struct Ontology {
  std::shared_ptr<const SubsumptionGraph> graph;
  SimilarityRelation sim;
};

// Line format: `sort <name>`, `feature <name>`, `edge <sub> <super> <degree>`,
// `sim <a> <b> <degree>`. `#` starts a comment. bot and top are implicit.
inline Ontology parse_ontology(std::istream& in, const std::string& file = "<input>") {
  auto sig = std::make_shared<Signature>();
  struct PendingEdge { std::string a, b; Degree d; std::size_t line; };
  std::vector<PendingEdge> edges, sims;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> w;
    for (std::string tok; ls >> tok;) w.push_back(tok);
    if (w.empty()) continue;
    try {
      if (w[0] == "sort" && w.size() == 2) {
        if (w[1] != "bot" && w[1] != "top") sig->add_sort(w[1]);
      } else if (w[0] == "feature" && w.size() == 2) {
        sig->add_feature(w[1]);
      } else if ((w[0] == "edge" || w[0] == "sim") && w.size() == 4) {
        auto d = parse_degree(w[3]);
        if (!d) throw FileError(file, lineno, "bad degree '" + w[3] + "'");
        if (!(*d > 0.0 && *d <= 1.0)) throw FileError(file, lineno, "degree " + w[3] + " outside (0,1]");
        (w[0] == "edge" ? edges : sims).push_back({w[1], w[2], *d, lineno});
      } else {
        throw FileError(file, lineno, "unrecognized line");
      }
    } catch (const FileError&) {
      throw;
    } catch (const Error& e) {
      throw FileError(file, lineno, e.what());
    }
  }
  auto resolve = [&](const std::string& name, std::size_t line) {
    if (auto id = sig->find_sort(name)) return *id;
    throw FileError(file, line, "unknown sort '" + name + "'");
  };
  std::vector<SubsumptionEdge> resolved;
  for (const auto& e : edges) resolved.push_back({resolve(e.a, e.line), resolve(e.b, e.line), e.d});
  Ontology out;
  for (const auto& s : sims) out.sim.set(resolve(s.a, s.line), resolve(s.b, s.line), s.d);
  out.graph = std::make_shared<const SubsumptionGraph>(std::shared_ptr<const Signature>(sig), std::move(resolved));
  return out;
}

inline Ontology parse_ontology_text(const std::string& text) {
  std::istringstream in(text);
  return parse_ontology(in);
}

inline Ontology load_ontology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError(path, 0, "cannot open file");
  return parse_ontology(in, path);
}

inline std::string print_ontology(const SubsumptionGraph& g, const SimilarityRelation* sim = nullptr) {
  const auto& sig = g.signature();
  std::ostringstream os;
  for (SortId s : sig.sorts())
    if (s != Signature::bot() && s != Signature::top()) os << "sort " << sig.name(s) << "\n";
  for (FeatureId f : sig.features()) os << "feature " << sig.name(f) << "\n";
  for (const auto& e : g.edges())
    os << "edge " << sig.name(e.sub) << " " << sig.name(e.super) << " " << format_degree(e.degree) << "\n";
  if (sim) {
    for (const auto& [a, b, d] : sim->pairs())
      if (a < b) os << "sim " << sig.name(a) << " " << sig.name(b) << " " << format_degree(d) << "\n";
  }
  return os.str();
}

}  // namespace fosf
