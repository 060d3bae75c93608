#pragma once

#include <algorithm>
#include <deque>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "fosf/degree.hpp"
#include "fosf/errors.hpp"
#include "fosf/lattice.hpp"
#include "fosf/term.hpp"

namespace fosf {

using Element = std::uint32_t;

// Finite fuzzy OSF interpretation: sort memberships and total features.
class Interpretation {
 public:
  Interpretation(std::shared_ptr<const Signature> sig, std::vector<std::string> names)
      : sig_(std::move(sig)), names_(std::move(names)) {
    const std::size_t n = names_.size();
    deg_.assign(sig_->sort_count(), std::vector<Degree>(n, kZero));
    deg_[Signature::top().index].assign(n, kOne);
    feat_.assign(sig_->feature_count(), std::vector<Element>(n, 0));
    for (Element i = 0; i < n; ++i) {
      for (auto& f : feat_) f[i] = i;
      index_.emplace(names_[i], i);
    }
  }

  const Signature& signature() const { return *sig_; }
  const std::shared_ptr<const Signature>& signature_ptr() const { return sig_; }
  std::size_t size() const { return names_.size(); }
  const std::string& name(Element e) const { return names_.at(e); }
  std::optional<Element> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Degree degree(SortId s, Element e) const { return deg_[s.index][e]; }
  Element apply(FeatureId f, Element e) const { return feat_[f.index][e]; }
  void set_degree(SortId s, Element e, Degree d) { deg_[s.index][e] = d; }
  void set_feature(FeatureId f, Element from, Element to) { feat_[f.index][from] = to; }

 private:
  std::shared_ptr<const Signature> sig_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, Element> index_;
  std::vector<std::vector<Degree>> deg_;
  std::vector<std::vector<Element>> feat_;
};

// Every violated condition of the interpretation definition, or none.
inline std::vector<std::string> validate_interpretation(const Interpretation& I, const SortLattice& lat) {
  std::vector<std::string> v;
  const auto& sig = lat.signature();
  if (I.size() == 0) v.push_back("empty domain");
  auto sorts = sig.sorts();
  for (Element d = 0; d < I.size(); ++d) {
    if (I.degree(Signature::top(), d) != kOne) v.push_back("top(" + I.name(d) + ") != 1");
    if (I.degree(Signature::bot(), d) != kZero) v.push_back("bot(" + I.name(d) + ") != 0");
    for (SortId s : sorts) {
      Degree x = I.degree(s, d);
      if (!(x >= 0.0 && x <= 1.0)) v.push_back(sig.name(s) + "(" + I.name(d) + ") outside [0,1]");
    }
    for (SortId s0 : sorts) {
      Degree d0 = I.degree(s0, d);
      if (d0 == kZero) continue;
      for (SortId s1 : sorts) {
        Degree need = std::min(d0, lat.degree(s0, s1));
        if (need > I.degree(s1, d))
          v.push_back("subsumption: " + sig.name(s0) + "(" + I.name(d) + ") & " + sig.name(s0) + "<=" +
                      sig.name(s1) + " = " + format_degree(need) + " > " + sig.name(s1) + "(" + I.name(d) +
                      ") = " + format_degree(I.degree(s1, d)));
        if (I.degree(s1, d) > kZero && I.degree(lat.glb(s0, s1), d) == kZero)
          v.push_back("glb: " + sig.name(s0) + " and " + sig.name(s1) + " hold at " + I.name(d) + " but " +
                      sig.name(lat.glb(s0, s1)) + " does not");
      }
    }
    for (FeatureId f : sig.features())
      if (I.apply(f, d) >= I.size()) v.push_back("feature " + sig.name(f) + " undefined at " + I.name(d));
  }
  return v;
}

using Assignment = std::unordered_map<Tag, Element>;

// Denotation of t at d under alpha.
inline Degree denote(const Term& t, const Interpretation& I, const Assignment& alpha, Element d) {
  auto it = alpha.find(t.tag);
  if (it == alpha.end() || it->second != d) return kZero;
  Degree r = I.degree(t.sort, d);
  for (const auto& a : t.args) {
    if (r == kZero) break;
    r = std::min(r, denote(a.value, I, alpha, I.apply(a.feature, d)));
  }
  return r;
}

// The only assignment that can give t a positive degree at d: each tag is
// forced to the element reached along its path. Empty if two occurrences of
// a tag are forced to different elements.
inline std::optional<Assignment> forced_assignment(const Term& t, const Interpretation& I, Element d) {
  Assignment alpha;
  std::vector<std::pair<const Term*, Element>> stack{{&t, d}};
  while (!stack.empty()) {
    auto [x, e] = stack.back();
    stack.pop_back();
    auto [it, fresh] = alpha.emplace(x->tag, e);
    if (!fresh && it->second != e) return std::nullopt;
    for (const auto& a : x->args) stack.push_back({&a.value, I.apply(a.feature, e)});
  }
  return alpha;
}

// Denotation of t at d, the maximum over all assignments.
inline Degree denote(const Term& t, const Interpretation& I, Element d) {
  auto alpha = forced_assignment(t, I, d);
  return alpha ? denote(t, I, *alpha, d) : kZero;
}

inline bool satisfies(const Constraint& k, const Interpretation& I, const Assignment& alpha, Degree beta) {
  if (beta <= kZero) return true;
  if (auto* s = std::get_if<SortC>(&k)) return I.degree(s->s, alpha.at(s->x)) >= beta;
  if (auto* e = std::get_if<EqC>(&k)) return alpha.at(e->x) == alpha.at(e->y);
  const auto& f = std::get<FeatC>(k);
  return I.apply(f.f, alpha.at(f.x)) == alpha.at(f.y);
}

inline bool satisfies(const Clause& c, const Interpretation& I, const Assignment& alpha, Degree beta) {
  return std::all_of(c.constraints.begin(), c.constraints.end(),
                     [&](const Constraint& k) { return satisfies(k, I, alpha, beta); });
}

// The largest beta at which alpha solves c (0 if no positive one).
inline Degree satisfaction_degree(const Clause& c, const Interpretation& I, const Assignment& alpha) {
  Degree best = kOne;
  for (const auto& k : c.constraints) {
    if (auto* s = std::get_if<SortC>(&k)) {
      best = std::min(best, I.degree(s->s, alpha.at(s->x)));
    } else if (!satisfies(k, I, alpha, kOne)) {
      return kZero;
    }
  }
  return best;
}

struct Subalgebra {
  Interpretation algebra;
  std::vector<Element> embedding;  // element of the subalgebra -> element of I
};

// I[D]: the closure of D under all features, with restricted maps.
inline Subalgebra generated_subalgebra(const Interpretation& I, const std::vector<Element>& D) {
  std::vector<Element> members;
  std::vector<Element> local(I.size(), UINT32_MAX);
  std::deque<Element> queue;
  auto add = [&](Element e) {
    if (local[e] != UINT32_MAX) return;
    local[e] = static_cast<Element>(members.size());
    members.push_back(e);
    queue.push_back(e);
  };
  for (Element d : D) add(d);
  const auto& sig = I.signature();
  while (!queue.empty()) {
    Element e = queue.front();
    queue.pop_front();
    for (FeatureId f : sig.features()) add(I.apply(f, e));
  }
  std::vector<std::string> names;
  for (Element e : members) names.push_back(I.name(e));
  Interpretation sub(I.signature_ptr(), std::move(names));
  for (Element i = 0; i < members.size(); ++i) {
    for (SortId s : sig.sorts()) sub.set_degree(s, i, I.degree(s, members[i]));
    for (FeatureId f : sig.features()) sub.set_feature(f, i, local[I.apply(f, members[i])]);
  }
  return {std::move(sub), std::move(members)};
}

// Text format: `elem <name>`, `deg <sort> <elem> <degree>`,
// `fun <feature> <elem|*> <elem>`. Unstated degrees are 0 (top is 1);
// every feature must end up total.
inline Interpretation parse_interpretation(std::istream& in, std::shared_ptr<const Signature> sig,
                                           const std::string& file = "<input>") {
  struct Line { std::vector<std::string> w; std::size_t no; };
  std::vector<Line> lines;
  std::vector<std::string> names;
  std::string raw;
  std::size_t no = 0;
  while (std::getline(in, raw)) {
    ++no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    Line l{{}, no};
    for (std::string tok; ls >> tok;) l.w.push_back(tok);
    if (l.w.empty()) continue;
    if (l.w[0] == "elem" && l.w.size() == 2) {
      if (std::find(names.begin(), names.end(), l.w[1]) != names.end())
        throw FileError(file, no, "duplicate element '" + l.w[1] + "'");
      names.push_back(l.w[1]);
    } else if ((l.w[0] == "deg" || l.w[0] == "fun") && l.w.size() == 4) {
      lines.push_back(std::move(l));
    } else {
      throw FileError(file, no, "unrecognized line");
    }
  }
  Interpretation I(sig, names);
  std::vector<std::vector<char>> set(sig->feature_count(), std::vector<char>(names.size(), 0));
  auto elem = [&](const std::string& n, std::size_t line) {
    if (auto e = I.find(n)) return *e;
    throw FileError(file, line, "unknown element '" + n + "'");
  };
  // Defaults first so explicit entries override them.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& l : lines) {
      try {
        if (l.w[0] == "deg") {
          if (pass) continue;
          auto d = parse_degree(l.w[3]);
          if (!d || *d < 0.0 || *d > 1.0) throw FileError(file, l.no, "bad degree '" + l.w[3] + "'");
          I.set_degree(sig->sort(l.w[1]), elem(l.w[2], l.no), *d);
        } else {
          bool dflt = l.w[2] == "*";
          if (dflt != (pass == 0)) continue;
          FeatureId f = sig->feature(l.w[1]);
          Element to = elem(l.w[3], l.no);
          if (dflt) {
            for (Element e = 0; e < I.size(); ++e) {
              I.set_feature(f, e, to);
              set[f.index][e] = 1;
            }
          } else {
            Element from = elem(l.w[2], l.no);
            I.set_feature(f, from, to);
            set[f.index][from] = 1;
          }
        }
      } catch (const FileError&) {
        throw;
      } catch (const Error& e) {
        throw FileError(file, l.no, e.what());
      }
    }
  }
  for (FeatureId f : sig->features())
    for (Element e = 0; e < I.size(); ++e)
      if (!set[f.index][e]) throw FileError(file, 0, "feature " + sig->name(f) + " undefined at " + I.name(e));
  return I;
}

inline Interpretation load_interpretation(const std::string& path, std::shared_ptr<const Signature> sig) {
  std::ifstream in(path);
  if (!in) throw FileError(path, 0, "cannot open file");
  return parse_interpretation(in, std::move(sig), path);
}

}  // namespace fosf
