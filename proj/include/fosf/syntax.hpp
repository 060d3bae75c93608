#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fosf/errors.hpp"
#include "fosf/signature.hpp"
#include "fosf/term.hpp"

namespace fosf {

namespace detail {

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  std::size_t pos() const { return pos_; }

  bool accept(std::string_view lit) {
    skip_ws();
    if (s_.substr(pos_, lit.size()) == lit) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view lit) {
    if (!accept(lit)) throw SyntaxError("expected '" + std::string(lit) + "'", pos_);
  }
  bool accept_arrow() { return accept("->") || accept("\xE2\x86\x92"); }
  bool accept_eq() { return accept("\xE2\x89\x90") || accept("="); }

  // Identifier starting at the cursor, or empty.
  std::string_view peek_ident() {
    skip_ws();
    std::size_t e = pos_;
    while (e < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[e])) || s_[e] == '_')) ++e;
    return s_.substr(pos_, e - pos_);
  }
  std::string ident() {
    auto id = peek_ident();
    if (id.empty()) throw SyntaxError("expected identifier", pos_);
    pos_ += id.size();
    return std::string(id);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

inline bool looks_like_tag(std::string_view id) {
  return !id.empty() && ((id[0] >= 'A' && id[0] <= 'Z') || id[0] == '_');
}

class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig) : lex_(text), sig_(sig) {}

  Term parse() {
    Term t = term();
    if (!lex_.at_end()) throw SyntaxError("trailing input", lex_.pos());
    TagGenerator gen(user_tags_);
    fill(t, gen);
    return t;
  }

 private:
  Term term() {
    Term t;
    std::size_t at = lex_.pos();
    std::string id = lex_.ident();
    if (looks_like_tag(id)) {
      if (!is_valid_tag(id)) throw SyntaxError("invalid tag '" + id + "'", at);
      t.tag = Tag{id};
      user_tags_.push_back(t.tag);
      if (!lex_.accept(":")) return t;
      at = lex_.pos();
      id = lex_.ident();
    }
    if (looks_like_tag(id)) throw SyntaxError("expected sort, got '" + id + "'", at);
    t.sort = sig_.sort(id);
    if (lex_.accept("(")) {
      do {
        std::string f = lex_.ident();
        FeatureId fid = sig_.feature(f);
        if (!lex_.accept_arrow()) throw SyntaxError("expected '->'", lex_.pos());
        t.args.push_back(Arg{fid, term()});
      } while (lex_.accept(","));
      lex_.expect(")");
    }
    return t;
  }

  static void fill(Term& t, TagGenerator& gen) {
    if (t.tag.name.empty()) t.tag = gen.fresh();
    for (auto& a : t.args) fill(a.value, gen);
  }

  Lexer lex_;
  const Signature& sig_;
  std::vector<Tag> user_tags_;
};

}  // namespace detail

// term := tag ':' sort [args] | sort [args] | tag
// args := '(' feature '->' term (',' feature '->' term)* ')'
inline Term parse_term(std::string_view text, const Signature& sig) {
  return detail::TermParser(text, sig).parse();
}

inline NormalTerm parse_normal_term(std::string_view text, const Signature& sig) {
  return NormalTerm(parse_term(text, sig), sig);
}

// Conjunction of `X:s`, `X.f = Y` and `X = Y` separated by `&`. The root is
// the first tag mentioned.
inline Clause parse_clause(std::string_view text, const Signature& sig) {
  detail::Lexer lex(text);
  Clause c;
  if (lex.at_end()) return c;
  auto tag = [&] {
    std::size_t at = lex.pos();
    std::string id = lex.ident();
    if (!is_valid_tag(id)) throw SyntaxError("invalid tag '" + id + "'", at);
    return Tag{id};
  };
  do {
    Tag x = tag();
    if (!c.root) c.root = x;
    if (lex.accept(":")) {
      c.constraints.push_back(SortC{x, sig.sort(lex.ident())});
    } else if (lex.accept(".")) {
      FeatureId f = sig.feature(lex.ident());
      if (!lex.accept_eq()) throw SyntaxError("expected '='", lex.pos());
      c.constraints.push_back(FeatC{x, f, tag()});
    } else if (lex.accept_eq()) {
      c.constraints.push_back(EqC{x, tag()});
    } else {
      throw SyntaxError("expected ':', '.' or '='", lex.pos());
    }
  } while (lex.accept("&"));
  if (!lex.at_end()) throw SyntaxError("trailing input", lex.pos());
  return c;
}

enum class TermStyle { Explicit, Compact };

namespace detail {

inline void print_term(std::ostream& os, const Term& t, const Signature& sig, TermStyle style,
                       const std::unordered_map<Tag, int>& count) {
  bool show_tag = style == TermStyle::Explicit || count.at(t.tag) > 1;
  if (t.trivial() && show_tag) {
    os << t.tag.name;
    return;
  }
  if (show_tag) os << t.tag.name << ':';
  os << sig.name(t.sort);
  if (!t.args.empty()) {
    os << '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) os << ", ";
      os << sig.name(t.args[i].feature) << " -> ";
      print_term(os, t.args[i].value, sig, style, count);
    }
    os << ')';
  }
}

}  // namespace detail

// Explicit style shows every tag; compact style drops tags that occur once.
inline std::string print_term(const Term& t, const Signature& sig, TermStyle style = TermStyle::Explicit) {
  std::unordered_map<Tag, int> count;
  for_each_subterm(t, [&](const Term& x) { ++count[x.tag]; });
  std::ostringstream os;
  detail::print_term(os, t, sig, style, count);
  return os.str();
}

inline std::string print_term(const NormalTerm& t, const Signature& sig, TermStyle style = TermStyle::Explicit) {
  return print_term(t.term(), sig, style);
}

inline std::string print_constraint(const Constraint& k, const Signature& sig) {
  return std::visit([&](const auto& x) -> std::string {
    using K = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<K, SortC>) return x.x.name + ":" + sig.name(x.s);
    if constexpr (std::is_same_v<K, EqC>) return x.x.name + " = " + x.y.name;
    if constexpr (std::is_same_v<K, FeatC>) return x.x.name + "." + sig.name(x.f) + " = " + x.y.name;
  }, k);
}

inline std::string print_clause(const Clause& c, const Signature& sig) {
  std::string out;
  for (std::size_t i = 0; i < c.constraints.size(); ++i) {
    if (i) out += " & ";
    out += print_constraint(c.constraints[i], sig);
  }
  return out;
}

}  // namespace fosf
