#pragma once

// Line-oriented model files.
//
//   vertex <id>
//   arrow <id> <tail> <head> [color <c>]
//   rel <b> <a>                 # ba lies in the ideal
//   beta <vertex> <n>
//   rank <arrow> <n>
//
// or, for an abstract matching system,
//
//   vars <name>...
//   eq <j>: <names...> = <names...>     # `0` or nothing for an empty side
//
// Lines may appear in any order; `#` starts a comment.

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gsi/error.hpp"
#include "gsi/matching.hpp"
#include "gsi/quiver.hpp"
#include "gsi/rank.hpp"

namespace gsi {

struct Model {
  bool abstract = false;
  Quiver quiver;
  std::optional<Coloring> coloring;
  std::optional<RelationSet> relations;
  std::map<std::string, int> beta_entries;
  std::map<std::string, int> rank_entries;
  MatchingSystem system;

  DimensionVector beta() const {
    DimensionVector b;
    for (const std::string& v : quiver.vertex_ids()) {
      auto it = beta_entries.find(v);
      if (it == beta_entries.end()) throw input_error("no beta given for vertex '" + v + "'");
      b.push_back(it->second);
    }
    return b;
  }

  std::optional<RankSequence> rank() const {
    if (rank_entries.empty()) return std::nullopt;
    RankSequence r;
    for (const Arrow& a : quiver.arrows()) {
      auto it = rank_entries.find(a.id);
      if (it == rank_entries.end()) throw input_error("no rank given for arrow '" + a.id + "'");
      r.push_back(it->second);
    }
    return r;
  }
};

namespace detail {

[[noreturn]] inline void syntax(std::size_t line, const std::string& msg) {
  throw input_error("line " + std::to_string(line) + ": " + msg);
}

inline int parse_count(std::size_t line, const std::string& tok) {
  std::size_t used = 0;
  int v = -1;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    syntax(line, "expected a nonnegative integer, got '" + tok + "'");
  }
  if (used != tok.size() || v < 0) syntax(line, "expected a nonnegative integer, got '" + tok + "'");
  return v;
}

inline std::vector<std::string> split_words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

}  // namespace detail

inline Model parse_model(std::istream& in) {
  struct ArrowLine {
    std::size_t line;
    std::string id, tail, head;
    std::optional<std::string> color;
  };
  struct EqLine {
    std::size_t line;
    std::vector<std::string> lhs, rhs;
  };
  std::vector<std::pair<std::size_t, std::string>> vertices;
  std::vector<ArrowLine> arrows;
  std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> rels;
  std::vector<std::pair<std::size_t, std::pair<std::string, int>>> betas, ranks;
  std::optional<std::vector<std::string>> vars;
  std::map<int, EqLine> eqs;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::vector<std::string> tok = detail::split_words(raw);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "vertex") {
      if (tok.size() != 2) detail::syntax(lineno, "usage: vertex <id>");
      vertices.emplace_back(lineno, tok[1]);
    } else if (kw == "arrow") {
      if (tok.size() == 4) {
        arrows.push_back({lineno, tok[1], tok[2], tok[3], std::nullopt});
      } else if (tok.size() == 6 && tok[4] == "color") {
        arrows.push_back({lineno, tok[1], tok[2], tok[3], tok[5]});
      } else {
        detail::syntax(lineno, "usage: arrow <id> <tail> <head> [color <c>]");
      }
    } else if (kw == "rel") {
      if (tok.size() != 3) detail::syntax(lineno, "usage: rel <b> <a>");
      rels.push_back({lineno, {tok[1], tok[2]}});
    } else if (kw == "beta" || kw == "rank") {
      if (tok.size() != 3) detail::syntax(lineno, "usage: " + kw + " <id> <n>");
      auto& dst = kw == "beta" ? betas : ranks;
      dst.push_back({lineno, {tok[1], detail::parse_count(lineno, tok[2])}});
    } else if (kw == "vars") {
      if (vars) detail::syntax(lineno, "duplicate vars line");
      vars = std::vector<std::string>(tok.begin() + 1, tok.end());
    } else if (kw == "eq") {
      std::string rest = raw.substr(raw.find("eq") + 2);
      auto colon = rest.find(':');
      auto eqsign = rest.find('=');
      if (colon == std::string::npos || eqsign == std::string::npos || eqsign < colon) {
        detail::syntax(lineno, "usage: eq <j>: <vars> = <vars>");
      }
      std::vector<std::string> idx = detail::split_words(rest.substr(0, colon));
      if (idx.size() != 1) detail::syntax(lineno, "usage: eq <j>: <vars> = <vars>");
      int j = detail::parse_count(lineno, idx[0]);
      auto side = [&](const std::string& s) {
        std::vector<std::string> w = detail::split_words(s);
        if (w.size() == 1 && w[0] == "0") w.clear();
        return w;
      };
      EqLine e{lineno, side(rest.substr(colon + 1, eqsign - colon - 1)),
               side(rest.substr(eqsign + 1))};
      if (!eqs.emplace(j, std::move(e)).second) {
        detail::syntax(lineno, "duplicate equation " + std::to_string(j));
      }
    } else {
      detail::syntax(lineno, "unknown keyword '" + kw + "'");
    }
  }

  Model model;
  const bool has_quiver = !vertices.empty() || !arrows.empty() || !rels.empty() ||
                          !betas.empty() || !ranks.empty();
  if (vars || !eqs.empty()) {
    if (has_quiver) throw input_error("a model is either a quiver or an abstract system");
    model.abstract = true;
    std::vector<std::string> names = vars.value_or(std::vector<std::string>{});
    std::map<std::string, std::size_t> index;
    for (const std::string& n : names) {
      if (!index.emplace(n, index.size()).second) throw input_error("duplicate variable '" + n + "'");
    }
    auto resolve = [&](const EqLine& e, const std::vector<std::string>& side) {
      std::vector<std::size_t> out;
      for (const std::string& n : side) {
        auto it = index.find(n);
        if (it == index.end()) {
          if (vars) detail::syntax(e.line, "undeclared variable '" + n + "'");
          it = index.emplace(n, names.size()).first;
          names.push_back(n);
        }
        out.push_back(it->second);
      }
      return out;
    };
    for (const auto& [j, e] : eqs) {
      std::vector<std::size_t> l = resolve(e, e.lhs);
      std::vector<std::size_t> r = resolve(e, e.rhs);
      model.system.add_equation(std::move(l), std::move(r));
    }
    model.system.names = std::move(names);
    return model;
  }
  if (vertices.empty()) throw input_error("no vertices");

  std::vector<std::string> vids;
  for (const auto& [line, id] : vertices) {
    if (std::find(vids.begin(), vids.end(), id) != vids.end()) {
      detail::syntax(line, "duplicate vertex '" + id + "'");
    }
    vids.push_back(id);
  }
  std::vector<std::tuple<std::string, std::string, std::string>> triples;
  for (const ArrowLine& a : arrows) {
    for (const std::string* v : {&a.tail, &a.head}) {
      if (std::find(vids.begin(), vids.end(), *v) == vids.end()) {
        detail::syntax(a.line, "unknown vertex '" + *v + "'");
      }
    }
    for (const auto& t : triples) {
      if (std::get<0>(t) == a.id) detail::syntax(a.line, "duplicate arrow '" + a.id + "'");
    }
    triples.emplace_back(a.id, a.tail, a.head);
  }
  model.quiver = Quiver::from_ids(vids, triples);
  const Quiver& q = model.quiver;

  const auto colored = std::count_if(arrows.begin(), arrows.end(),
                                     [](const ArrowLine& a) { return a.color.has_value(); });
  if (colored != 0 && colored != static_cast<long>(arrows.size())) {
    throw input_error("either every arrow has a color or none does");
  }
  if (colored > 0) {
    std::map<std::string, std::string> cmap;
    for (const ArrowLine& a : arrows) cmap[a.id] = *a.color;
    model.coloring = Coloring::from_map(q, cmap);
  }
  if (!rels.empty()) {
    RelationSet rs;
    for (const auto& [line, ba] : rels) {
      auto b = q.find_arrow(ba.first), a = q.find_arrow(ba.second);
      if (!b) detail::syntax(line, "unknown arrow '" + ba.first + "'");
      if (!a) detail::syntax(line, "unknown arrow '" + ba.second + "'");
      if (q.arrow(*a).head != q.arrow(*b).tail) {
        detail::syntax(line, "relation " + ba.first + ba.second + " is not a composable path");
      }
      if (!rs.insert({*a, *b}).second) detail::syntax(line, "duplicate relation");
    }
    model.relations = std::move(rs);
  }
  if (!model.coloring && !model.relations && q.num_arrows() > 0) {
    throw input_error("a quiver with arrows needs colors or relations");
  }
  for (const auto& [line, entry] : betas) {
    if (!q.find_vertex(entry.first)) detail::syntax(line, "unknown vertex '" + entry.first + "'");
    if (!model.beta_entries.emplace(entry).second) {
      detail::syntax(line, "duplicate beta for '" + entry.first + "'");
    }
  }
  for (const auto& [line, entry] : ranks) {
    if (!q.find_arrow(entry.first)) detail::syntax(line, "unknown arrow '" + entry.first + "'");
    if (!model.rank_entries.emplace(entry).second) {
      detail::syntax(line, "duplicate rank for '" + entry.first + "'");
    }
  }
  return model;
}

inline Model parse_model(const std::string& text) {
  std::istringstream is(text);
  return parse_model(is);
}

}  // namespace gsi
