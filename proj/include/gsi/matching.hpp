#pragma once

// Matching semigroups: systems f_i = f_{m+i}, their graphs, and alternating
// walks generating the semigroup.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gsi/error.hpp"
#include "gsi/quiver.hpp"

namespace gsi {

using Vec = std::vector<int>;

inline int total(const Vec& v) { return std::accumulate(v.begin(), v.end(), 0); }

inline bool leq(const Vec& a, const Vec& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] > b[j]) return false;
  }
  return true;
}

inline Vec operator+(Vec a, const Vec& b) {
  for (std::size_t j = 0; j < a.size(); ++j) a[j] += b[j];
  return a;
}

inline Vec operator-(Vec a, const Vec& b) {
  for (std::size_t j = 0; j < a.size(); ++j) a[j] -= b[j];
  return a;
}

/// Equations lhs[i] = rhs[i], i < m, over l variables. Function f_i is lhs[i]
/// for i < m and rhs[i - m] otherwise. Each function is a list of variable
/// indices with coefficient 1.
struct MatchingSystem {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> lhs;
  std::vector<std::vector<std::size_t>> rhs;

  std::size_t num_vars() const noexcept { return names.size(); }
  std::size_t num_equations() const noexcept { return lhs.size(); }
  std::size_t num_functions() const noexcept { return 2 * lhs.size(); }

  const std::vector<std::size_t>& function(std::size_t i) const {
    return i < lhs.size() ? lhs[i] : rhs.at(i - lhs.size());
  }
  std::size_t partner(std::size_t i) const {
    return i < lhs.size() ? i + lhs.size() : i - lhs.size();
  }

  /// The functions containing variable j, in increasing order.
  std::vector<std::size_t> occurrences(std::size_t j) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < num_functions(); ++i) {
      const auto& f = function(i);
      if (std::find(f.begin(), f.end(), j) != f.end()) out.push_back(i);
    }
    return out;
  }

  int eval(std::size_t i, const Vec& u) const {
    int s = 0;
    for (std::size_t j : function(i)) s += u[j];
    return s;
  }

  std::optional<std::size_t> find_var(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
  }

  void add_equation(std::vector<std::size_t> l, std::vector<std::size_t> r) {
    std::sort(l.begin(), l.end());
    std::sort(r.begin(), r.end());
    lhs.push_back(std::move(l));
    rhs.push_back(std::move(r));
  }
};

/// Checks axioms (a) 0/1 coefficients, (b) reduced and (c) every variable in
/// at most two functions.
inline ValidationReport validate_system(const MatchingSystem& sys) {
  ValidationReport report;
  if (sys.lhs.size() != sys.rhs.size()) {
    report.violations.push_back({"a", {}, "unequal number of left and right sides"});
    return report;
  }
  for (std::size_t i = 0; i < sys.num_functions(); ++i) {
    std::set<std::size_t> seen;
    for (std::size_t j : sys.function(i)) {
      if (j >= sys.num_vars()) {
        report.violations.push_back({"a", {}, "variable index out of range"});
      } else if (!seen.insert(j).second) {
        report.violations.push_back(
            {"a", {sys.names[j]}, "coefficient larger than 1 in f" + std::to_string(i + 1)});
      }
    }
  }
  if (!report.ok()) return report;
  for (std::size_t j = 0; j < sys.num_vars(); ++j) {
    std::vector<std::size_t> occ = sys.occurrences(j);
    if (occ.size() > 2) {
      report.violations.push_back(
          {"c", {sys.names[j]}, "variable occurs in more than two functions"});
    }
    for (std::size_t a = 0; a < occ.size(); ++a) {
      for (std::size_t b = a + 1; b < occ.size(); ++b) {
        if (sys.partner(occ[a]) == occ[b]) {
          report.violations.push_back(
              {"b", {sys.names[j]}, "variable on both sides of equation " +
                                        std::to_string(std::min(occ[a], occ[b]) + 1)});
        }
      }
    }
  }
  return report;
}

inline void require_valid(const MatchingSystem& sys, const char* who) {
  ValidationReport rep = validate_system(sys);
  if (!rep.ok()) {
    throw precondition_error(std::string(who) + ": invalid matching system (" +
                             rep.violations.front().message + ")");
  }
}

inline bool is_member(const MatchingSystem& sys, const Vec& u) {
  if (u.size() != sys.num_vars()) {
    throw input_error("vector length does not match the number of variables");
  }
  if (std::any_of(u.begin(), u.end(), [](int x) { return x < 0; })) return false;
  for (std::size_t i = 0; i < sys.num_equations(); ++i) {
    if (sys.eval(i, u) != sys.eval(i + sys.num_equations(), u)) return false;
  }
  return true;
}

/// max_i f_i(u), the f-degree used to bound searches.
inline int f_degree(const MatchingSystem& sys, const Vec& u) {
  int d = 0;
  for (std::size_t i = 0; i < sys.num_functions(); ++i) d = std::max(d, sys.eval(i, u));
  return d;
}

struct SolidEdge {
  std::size_t var;
  std::size_t a;
  std::size_t b;  // equal to a for a loop
  bool is_loop() const noexcept { return a == b; }
};

/// G(f): vertices are the 2m functions (0-based here, 1-based in reports).
struct MatchingGraph {
  std::size_t m = 0;
  std::vector<SolidEdge> solid;
  std::vector<std::size_t> free_vars;
  std::vector<std::vector<std::size_t>> solid_at;  // edge indices per vertex

  std::size_t num_vertices() const noexcept { return 2 * m; }
  std::size_t dotted_partner(std::size_t v) const { return v < m ? v + m : v - m; }
  std::size_t other_end(const SolidEdge& e, std::size_t v) const {
    return e.a == v ? e.b : e.a;
  }
};

inline MatchingGraph build_graph(const MatchingSystem& sys) {
  require_valid(sys, "build_graph");
  MatchingGraph g;
  g.m = sys.num_equations();
  g.solid_at.resize(g.num_vertices());
  for (std::size_t j = 0; j < sys.num_vars(); ++j) {
    std::vector<std::size_t> occ = sys.occurrences(j);
    if (occ.empty()) {
      g.free_vars.push_back(j);
      continue;
    }
    SolidEdge e{j, occ.front(), occ.back()};
    std::size_t idx = g.solid.size();
    g.solid.push_back(e);
    g.solid_at[e.a].push_back(idx);
    if (!e.is_loop()) g.solid_at[e.b].push_back(idx);
  }
  // Two solid edges joining i and m+i would form an alternating 2-cycle;
  // axiom (b) rules this out.
  for (const SolidEdge& e : g.solid) {
    detail::ensure(e.is_loop() || g.dotted_partner(e.a) != e.b,
                   "build_graph: alternating two-cycle");
  }
  return g;
}

struct PresolveResult {
  MatchingSystem reduced;  // same variables and equation count
  std::vector<std::size_t> forced_zero;
};

/// An equation with an empty side forces every variable of the other side to
/// vanish. Forced variables are removed from all functions until nothing
/// changes.
inline PresolveResult presolve(const MatchingSystem& sys) {
  require_valid(sys, "presolve");
  PresolveResult out{sys, {}};
  std::set<std::size_t> forced;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < out.reduced.num_equations(); ++i) {
      auto& l = out.reduced.lhs[i];
      auto& r = out.reduced.rhs[i];
      if (l.empty() != r.empty()) {
        for (std::size_t j : l.empty() ? r : l) forced.insert(j);
        changed = true;
      }
      auto drop = [&](std::vector<std::size_t>& f) {
        std::erase_if(f, [&](std::size_t j) { return forced.contains(j); });
      };
      for (auto& eq : out.reduced.lhs) drop(eq);
      for (auto& eq : out.reduced.rhs) drop(eq);
    }
  }
  out.forced_zero.assign(forced.begin(), forced.end());
  return out;
}

enum class WalkKind { String, Band };

inline const char* to_string(WalkKind k) {
  return k == WalkKind::String ? "string" : "band";
}

/// vertices[0], edges[0], vertices[1], ..., edges[n-1], vertices[n].
/// A solid edge holds its variable index; a dotted edge holds nullopt.
struct Walk {
  WalkKind kind = WalkKind::String;
  std::vector<std::size_t> vertices;
  std::vector<std::optional<std::size_t>> edges;

  /// Interleaved integer code: vertex, edge (-1 for dotted), vertex, ...
  std::vector<std::int64_t> encode() const {
    std::vector<std::int64_t> code;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      code.push_back(static_cast<std::int64_t>(vertices[k]));
      code.push_back(edges[k] ? static_cast<std::int64_t>(*edges[k]) : -1);
    }
    if (!vertices.empty()) code.push_back(static_cast<std::int64_t>(vertices.back()));
    return code;
  }

  Walk reversed() const {
    Walk w{kind, {vertices.rbegin(), vertices.rend()}, {edges.rbegin(), edges.rend()}};
    return w;
  }
};

inline Vec walk_vector(const Walk& w, std::size_t num_vars) {
  Vec u(num_vars, 0);
  for (const auto& e : w.edges) {
    if (e) ++u.at(*e);
  }
  return u;
}

/// Text form "v e v e ... v" with 1-based vertices, variable names for solid
/// edges and `E` for dotted ones.
inline std::string format_walk(const Walk& w, const MatchingSystem& sys) {
  std::ostringstream os;
  for (std::size_t k = 0; k < w.vertices.size(); ++k) {
    if (k) os << ' ' << (w.edges[k - 1] ? sys.names[*w.edges[k - 1]] : "E") << ' ';
    os << w.vertices[k] + 1;
  }
  return os.str();
}

/// Parses the text form and checks that consecutive items fit the graph and
/// alternate. Loops at both ends make a string; a closed walk is a band.
inline Walk parse_walk(const std::string& text, const MatchingSystem& sys) {
  std::istringstream is(text);
  std::vector<std::string> tok;
  for (std::string t; is >> t;) tok.push_back(t);
  Walk w;
  if (tok.empty()) return w;
  if (tok.size() % 2 == 0) throw input_error("walk must start and end at a vertex");
  const std::size_t n = 2 * sys.num_equations();
  auto vertex = [&](const std::string& t) {
    std::size_t v = 0;
    try {
      v = std::stoul(t);
    } catch (const std::exception&) {
      throw input_error("walk: expected a vertex number, got '" + t + "'");
    }
    if (v < 1 || v > n) throw input_error("walk: vertex out of range: " + t);
    return v - 1;
  };
  w.vertices.push_back(vertex(tok[0]));
  for (std::size_t k = 1; k < tok.size(); k += 2) {
    std::size_t from = w.vertices.back();
    std::size_t to = vertex(tok[k + 1]);
    if (tok[k] == "E") {
      if (sys.partner(from) != to) throw input_error("walk: '" + tok[k] + "' is not a dotted edge here");
      w.edges.push_back(std::nullopt);
    } else {
      auto j = sys.find_var(tok[k]);
      if (!j) throw input_error("walk: unknown variable '" + tok[k] + "'");
      auto occ = sys.occurrences(*j);
      bool fits = (occ.size() == 1 && from == occ[0] && to == occ[0]) ||
                  (occ.size() == 2 && ((from == occ[0] && to == occ[1]) ||
                                       (from == occ[1] && to == occ[0])));
      if (!fits) throw input_error("walk: edge '" + tok[k] + "' does not join these vertices");
      w.edges.push_back(*j);
    }
    w.vertices.push_back(to);
  }
  for (std::size_t k = 1; k < w.edges.size(); ++k) {
    if (w.edges[k].has_value() == w.edges[k - 1].has_value()) {
      throw input_error("walk is not alternating");
    }
  }
  w.kind = w.vertices.front() == w.vertices.back() && w.edges.size() > 1 &&
                   w.edges.front().has_value() != w.edges.back().has_value()
               ? WalkKind::Band
               : WalkKind::String;
  return w;
}

namespace detail {

inline Walk canonical_string(const Walk& w) {
  Walk r = w.reversed();
  return r.encode() < w.encode() ? r : w;
}

// Bands are stored starting with a solid edge; the canonical form is the
// smallest code over those rotations and both directions.
inline Walk canonical_band(const Walk& w) {
  const std::size_t n = w.edges.size();
  std::optional<Walk> best;
  for (const Walk& dir : {w, w.reversed()}) {
    for (std::size_t s = 0; s < n; ++s) {
      if (!dir.edges[s]) continue;
      Walk rot{WalkKind::Band, {}, {}};
      for (std::size_t k = 0; k < n; ++k) {
        rot.vertices.push_back(dir.vertices[(s + k) % n]);
        rot.edges.push_back(dir.edges[(s + k) % n]);
      }
      rot.vertices.push_back(rot.vertices.front());
      if (!best || rot.encode() < best->encode()) best = rot;
    }
  }
  return *best;
}

}  // namespace detail

/// Canonical representative up to reversal (strings) or rotation and
/// reversal (bands).
inline Walk canonical(const Walk& w) {
  return w.kind == WalkKind::String ? detail::canonical_string(w)
                                    : detail::canonical_band(w);
}

struct Generator {
  std::string name;
  Vec vector;
  std::string kind;  // "string", "band" or "free"
  std::optional<Walk> walk;
};

struct WalkSearchLimits {
  int dotted_cap = 2;  // traversals per dotted edge, i.e. the bound on f_i
};

/// Every alternating string and band in which each dotted edge is traversed
/// at most `dotted_cap` times, keyed by vector with the shortest (then
/// smallest canonical) representative.
inline std::map<Vec, Walk> enumerate_walks(const MatchingSystem& sys,
                                           const MatchingGraph& g,
                                           WalkSearchLimits limits = {}) {
  std::map<Vec, Walk> best;
  const std::size_t l = sys.num_vars();
  std::vector<int> used(g.m, 0);
  Walk cur;
  Vec u(l, 0);

  auto record = [&](Walk w) {
    w = canonical(w);
    Vec v = walk_vector(w, l);
    detail::ensure(is_member(sys, v), "walk vector is not in the semigroup");
    auto it = best.find(v);
    if (it == best.end()) {
      best.emplace(std::move(v), std::move(w));
    } else if (w.edges.size() < it->second.edges.size() ||
               (w.edges.size() == it->second.edges.size() &&
                w.encode() < it->second.encode())) {
      it->second = std::move(w);
    }
  };
  auto dot_index = [&](std::size_t v) { return v < g.m ? v : v - g.m; };

  auto push = [&](std::optional<std::size_t> e, std::size_t to) {
    cur.edges.push_back(e);
    cur.vertices.push_back(to);
    if (e) ++u[*e];
  };
  auto pop = [&]() {
    if (cur.edges.back()) --u[*cur.edges.back()];
    cur.edges.pop_back();
    cur.vertices.pop_back();
  };

  // At vertex v having just arrived by a solid edge: cross the dotted edge,
  // then either close with a loop (string), close the band, or continue.
  auto extend = [&](auto&& self, std::size_t start, bool band) -> void {
    std::size_t v = cur.vertices.back();
    std::size_t d = dot_index(v);
    if (used[d] >= limits.dotted_cap) return;
    ++used[d];
    std::size_t w = g.dotted_partner(v);
    push(std::nullopt, w);
    if (band) {
      if (w == start) {
        Walk b = cur;
        b.kind = WalkKind::Band;
        record(b);
      }
    }
    for (std::size_t ei : g.solid_at[w]) {
      const SolidEdge& e = g.solid[ei];
      if (e.is_loop()) {
        if (band) continue;
        push(e.var, w);
        Walk s = cur;
        s.kind = WalkKind::String;
        record(s);
        pop();
        continue;
      }
      push(e.var, g.other_end(e, w));
      self(self, start, band);
      pop();
    }
    pop();
    --used[d];
  };

  for (const SolidEdge& e : g.solid) {
    if (e.is_loop()) {
      cur = Walk{WalkKind::String, {e.a}, {}};
      push(e.var, e.a);
      extend(extend, e.a, false);
    } else {
      for (auto [from, to] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
        cur = Walk{WalkKind::Band, {from}, {}};
        push(e.var, to);
        extend(extend, from, true);
      }
    }
  }
  return best;
}

struct IrreducibleWalks {
  std::vector<Generator> generators;
  std::vector<std::size_t> forced_zero;
  std::size_t walks_examined = 0;
};

/// Irreducible walk vectors plus unit vectors of free variables. A vector is
/// reducible iff it is h + (u - h) with h an earlier generator and u - h a
/// nonzero member.
inline IrreducibleWalks enumerate_irreducible_walks(const MatchingSystem& sys) {
  PresolveResult pre = presolve(sys);
  MatchingGraph g = build_graph(pre.reduced);
  std::map<Vec, Walk> walks = enumerate_walks(pre.reduced, g);

  std::vector<std::pair<Vec, Walk>> cand(walks.begin(), walks.end());
  std::stable_sort(cand.begin(), cand.end(), [](const auto& x, const auto& y) {
    return total(x.first) < total(y.first);
  });
  IrreducibleWalks out;
  out.forced_zero = pre.forced_zero;
  out.walks_examined = cand.size();
  std::vector<Vec> found;
  for (auto& [v, w] : cand) {
    bool reducible = std::any_of(found.begin(), found.end(), [&](const Vec& h) {
      return h != v && leq(h, v) && is_member(pre.reduced, v - h);
    });
    if (reducible) continue;
    found.push_back(v);
    detail::ensure(f_degree(sys, v) <= 2, "irreducible walk with f_i > 2");
    out.generators.push_back({"", v, to_string(w.kind), w});
  }
  // Strings first, then bands; each group by vector, largest first so that
  // names follow the lexicographic order of supports.
  std::stable_sort(out.generators.begin(), out.generators.end(),
                   [](const Generator& x, const Generator& y) {
                     if (x.kind != y.kind) return x.kind > y.kind;
                     return x.vector > y.vector;
                   });
  std::size_t ns = 0, nb = 0;
  for (Generator& gen : out.generators) {
    gen.name = gen.kind == "string" ? "S" + std::to_string(++ns) : "B" + std::to_string(++nb);
  }
  std::size_t nf = 0;
  for (std::size_t j : g.free_vars) {
    if (std::binary_search(pre.forced_zero.begin(), pre.forced_zero.end(), j)) continue;
    Vec e(sys.num_vars(), 0);
    e[j] = 1;
    out.generators.push_back({"F" + std::to_string(++nf), e, "free", std::nullopt});
  }
  return out;
}

}  // namespace gsi
