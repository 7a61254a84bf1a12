#pragma once

// Binomial relations among walk generators. Candidates come from X- and
// H-configurations; a fiber-by-fiber completion over the toric kernel makes
// the set complete up to an f-degree cap and keeps it minimal.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gsi/error.hpp"
#include "gsi/matching.hpp"

namespace gsi {

/// Multiplicity per generator.
using Monomial = std::vector<int>;

struct Relation {
  Monomial lhs;
  Monomial rhs;
  std::string provenance;  // X-configuration(..), H-configuration(..), toric-kernel
};

struct Presentation {
  MatchingSystem system;
  std::vector<Generator> generators;
  std::vector<Relation> relations;
  std::vector<std::size_t> forced_zero;
  int f_cap = 4;
};

struct RelationConfig {
  /// Fibers b with f_i(b) <= f_cap for every i are completed.
  int f_cap = 4;
};

inline Vec monomial_vector(const Monomial& mono, const std::vector<Generator>& gens,
                           std::size_t num_vars) {
  Vec v(num_vars, 0);
  for (std::size_t k = 0; k < mono.size(); ++k) {
    for (int t = 0; t < mono[k]; ++t) v = v + gens[k].vector;
  }
  return v;
}

/// Removes the common part of both sides.
inline void cancel_common(Monomial& a, Monomial& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    int c = std::min(a[k], b[k]);
    a[k] -= c;
    b[k] -= c;
  }
}

/// Applies rel (either direction) to mono wherever one side divides it.
template <typename Visit>
void for_each_move(const Monomial& mono, const std::vector<Relation>& rels, Visit&& visit) {
  for (const Relation& rel : rels) {
    for (int dir = 0; dir < 2; ++dir) {
      const Monomial& from = dir ? rel.rhs : rel.lhs;
      const Monomial& to = dir ? rel.lhs : rel.rhs;
      if (!leq(from, mono)) continue;
      visit(mono - from + to);
    }
  }
}

namespace detail {

class Factorizer {
 public:
  Factorizer(const MatchingSystem& sys, const std::vector<Generator>& gens)
      : sys_(sys), gens_(gens) {}

  /// Some expression of v as a sum of generators; nullopt if none exists.
  std::optional<Monomial> operator()(const Vec& v) {
    if (total(v) == 0) return Monomial(gens_.size(), 0);
    if (auto it = memo_.find(v); it != memo_.end()) return it->second;
    std::optional<Monomial> res;
    for (std::size_t k = 0; k < gens_.size() && !res; ++k) {
      const Vec& g = gens_[k].vector;
      if (!leq(g, v)) continue;
      Vec rest = v - g;
      if (!is_member(sys_, rest)) continue;
      if (auto sub = (*this)(rest)) {
        ++(*sub)[k];
        res = sub;
      }
    }
    memo_.emplace(v, res);
    return res;
  }

 private:
  const MatchingSystem& sys_;
  const std::vector<Generator>& gens_;
  std::map<Vec, std::optional<Monomial>> memo_;
};

struct Segment {
  std::size_t start;
  std::size_t end;
  Vec vector;
  std::set<std::size_t> dotted;  // dotted edges crossed inside
};

// Alternating pieces that begin with a loop (partial strings) or a solid
// edge leaving `start`, and end right after a solid edge. Each dotted edge is
// crossed at most once inside a piece.
inline std::vector<Segment> segments(const MatchingSystem& sys, const MatchingGraph& g,
                                     bool loop_started) {
  std::vector<Segment> out;
  const std::size_t l = sys.num_vars();
  auto dot = [&](std::size_t v) { return v < g.m ? v : v - g.m; };
  Segment cur;
  auto grow = [&](auto&& self, std::size_t v) -> void {
    cur.end = v;
    out.push_back(cur);
    std::size_t d = dot(v);
    if (cur.dotted.contains(d)) return;
    cur.dotted.insert(d);
    std::size_t w = g.dotted_partner(v);
    for (std::size_t ei : g.solid_at[w]) {
      const SolidEdge& e = g.solid[ei];
      if (e.is_loop()) continue;
      ++cur.vector[e.var];
      self(self, g.other_end(e, w));
      --cur.vector[e.var];
    }
    cur.dotted.erase(d);
  };
  for (const SolidEdge& e : g.solid) {
    if (e.is_loop() != loop_started) continue;
    for (auto [from, to] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
      cur = Segment{from, to, Vec(l, 0), {}};
      ++cur.vector[e.var];
      grow(grow, to);
      if (e.is_loop()) break;
    }
  }
  return out;
}

struct Candidate {
  Monomial lhs;
  Monomial rhs;
  std::string provenance;
};

inline std::string dotted_name(const MatchingGraph& g, std::size_t d) {
  return "{" + std::to_string(d + 1) + "," + std::to_string(d + g.m + 1) + "}";
}

// X: swap the halves of two strings through the same dotted edge.
// H: swap the connectors of two bands through the same pair of dotted edges.
inline std::vector<Candidate> configuration_candidates(const MatchingSystem& sys,
                                                       const MatchingGraph& g,
                                                       const std::vector<Generator>& gens,
                                                       Factorizer& fac, bool want_x,
                                                       bool want_h) {
  std::vector<Candidate> out;
  auto emit = [&](const Vec& l1, const Vec& l2, const Vec& r1, const Vec& r2,
                  std::string prov) {
    auto a = fac(l1), b = fac(l2), c = fac(r1), d = fac(r2);
    if (!a || !b || !c || !d) return;
    Monomial lhs = *a + *b, rhs = *c + *d;
    cancel_common(lhs, rhs);
    if (total(lhs) == 0 || total(rhs) == 0) return;
    if (rhs < lhs) std::swap(lhs, rhs);
    out.push_back({lhs, rhs, std::move(prov)});
  };
  auto dot = [&](std::size_t v) { return v < g.m ? v : v - g.m; };

  if (want_x) {
    std::vector<Segment> partial = segments(sys, g, true);
    for (std::size_t d = 0; d < g.m; ++d) {
      std::vector<Vec> at_p, at_q;
      for (const Segment& s : partial) {
        if (s.dotted.contains(d)) continue;
        if (s.end == d) at_p.push_back(s.vector);
        if (s.end == d + g.m) at_q.push_back(s.vector);
      }
      std::sort(at_p.begin(), at_p.end());
      at_p.erase(std::unique(at_p.begin(), at_p.end()), at_p.end());
      std::sort(at_q.begin(), at_q.end());
      at_q.erase(std::unique(at_q.begin(), at_q.end()), at_q.end());
      for (std::size_t p1 = 0; p1 < at_p.size(); ++p1) {
        for (std::size_t p2 = p1 + 1; p2 < at_p.size(); ++p2) {
          for (std::size_t q1 = 0; q1 < at_q.size(); ++q1) {
            for (std::size_t q2 = q1 + 1; q2 < at_q.size(); ++q2) {
              emit(at_p[p1] + at_q[q1], at_p[p2] + at_q[q2], at_p[p2] + at_q[q1],
                   at_p[p1] + at_q[q2], "X-configuration(" + dotted_name(g, d) + ")");
            }
          }
        }
      }
    }
  }
  if (want_h) {
    // Connectors keyed by (start, end); a band is c1 from s to t followed by
    // c2 from partner(t) to partner(s).
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Vec>> conn;
    for (const Segment& s : segments(sys, g, false)) {
      std::size_t d1 = dot(s.start), d2 = dot(s.end);
      if (d1 == d2 || s.dotted.contains(d1) || s.dotted.contains(d2)) continue;
      conn[{s.start, s.end}].push_back(s.vector);
    }
    for (auto& [key, list] : conn) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    for (const auto& [key, first] : conn) {
      auto [s, t] = key;
      if (dot(s) > dot(t)) continue;
      auto it = conn.find({g.dotted_partner(t), g.dotted_partner(s)});
      if (it == conn.end()) continue;
      const std::vector<Vec>& second = it->second;
      std::string prov = "H-configuration(" + dotted_name(g, dot(s)) + "," +
                         dotted_name(g, dot(t)) + ")";
      for (std::size_t a = 0; a < first.size(); ++a) {
        for (std::size_t b = a + 1; b < first.size(); ++b) {
          for (std::size_t c = 0; c < second.size(); ++c) {
            for (std::size_t d = c + 1; d < second.size(); ++d) {
              emit(first[a] + second[c], first[b] + second[d], first[a] + second[d],
                   first[b] + second[c], prov);
            }
          }
        }
      }
    }
  }
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// All monomials in the generators listed in `active` whose vector b has
/// f_i(b) <= f_cap for all i, grouped by vector.
inline std::map<Vec, std::vector<Monomial>> fibers(const MatchingSystem& sys,
                                                   const std::vector<Generator>& gens,
                                                   const std::vector<std::size_t>& active,
                                                   int f_cap) {
  std::map<Vec, std::vector<Monomial>> out;
  Monomial mono(gens.size(), 0);
  Vec sum(sys.num_vars(), 0);
  std::vector<int> fsum(sys.num_functions(), 0);
  std::vector<std::vector<int>> fvals(gens.size());
  for (std::size_t k : active) {
    for (std::size_t i = 0; i < sys.num_functions(); ++i) {
      fvals[k].push_back(sys.eval(i, gens[k].vector));
    }
  }
  auto rec = [&](auto&& self, std::size_t from) -> void {
    out[sum].push_back(mono);
    for (std::size_t idx = from; idx < active.size(); ++idx) {
      std::size_t k = active[idx];
      bool fits = true;
      for (std::size_t i = 0; i < fsum.size() && fits; ++i) {
        fits = fsum[i] + fvals[k][i] <= f_cap;
      }
      if (!fits) continue;
      for (std::size_t i = 0; i < fsum.size(); ++i) fsum[i] += fvals[k][i];
      ++mono[k];
      sum = sum + gens[k].vector;
      self(self, idx);
      sum = sum - gens[k].vector;
      --mono[k];
      for (std::size_t i = 0; i < fsum.size(); ++i) fsum[i] -= fvals[k][i];
    }
  };
  rec(rec, 0);
  return out;
}

/// Minimal binomial relations among `gens` complete for all fibers within
/// the f-degree cap. Configuration candidates are preferred when they join
/// two classes of a fiber.
inline std::vector<Relation> compute_relations(const MatchingSystem& sys,
                                               const std::vector<Generator>& gens,
                                               RelationConfig cfg = {}) {
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (f_degree(sys, gens[k].vector) > 0) active.push_back(k);
  }
  std::vector<Relation> kept;
  if (active.size() < 2) return kept;

  MatchingSystem reduced = presolve(sys).reduced;
  MatchingGraph g = build_graph(reduced);
  std::vector<Generator> active_gens;
  for (std::size_t k : active) active_gens.push_back(gens[k]);
  detail::Factorizer fac(reduced, active_gens);
  std::vector<detail::Candidate> cands =
      detail::configuration_candidates(reduced, g, active_gens, fac, true, true);
  auto lift = [&](const Monomial& small) {
    Monomial big(gens.size(), 0);
    for (std::size_t k = 0; k < active.size(); ++k) big[active[k]] = small[k];
    return big;
  };
  std::map<Vec, std::vector<std::pair<Monomial, Monomial>>> cand_by_fiber;
  std::map<std::pair<Monomial, Monomial>, std::string> cand_prov;
  for (detail::Candidate& c : cands) {
    Monomial l = lift(c.lhs), r = lift(c.rhs);
    auto key = std::pair{l, r};
    auto [it, fresh] = cand_prov.emplace(key, c.provenance);
    if (fresh) {
      cand_by_fiber[monomial_vector(l, gens, sys.num_vars())].push_back(key);
    } else if (c.provenance[0] == 'H' && it->second[0] == 'X') {
      // Band-only exchanges read more naturally as H-configurations.
      bool bands_only = true;
      for (std::size_t k = 0; k < gens.size(); ++k) {
        if ((l[k] || r[k]) && gens[k].kind != "band") bands_only = false;
      }
      if (bands_only) it->second = c.provenance;
    }
  }
  for (auto& [b, list] : cand_by_fiber) std::sort(list.begin(), list.end());

  std::map<Vec, std::vector<Monomial>> fib = fibers(sys, gens, active, cfg.f_cap);
  std::vector<const Vec*> order;
  for (const auto& [b, monos] : fib) {
    if (monos.size() > 1) order.push_back(&b);
  }
  auto weight = [&](const Vec& b) {
    int s = 0;
    for (std::size_t i = 0; i < sys.num_functions(); ++i) s += sys.eval(i, b);
    return s;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](const Vec* x, const Vec* y) { return weight(*x) < weight(*y); });

  for (const Vec* b : order) {
    std::vector<Monomial> monos = fib.at(*b);
    std::sort(monos.begin(), monos.end(), std::greater<>());
    std::map<Monomial, std::size_t> index;
    for (std::size_t k = 0; k < monos.size(); ++k) index[monos[k]] = k;
    detail::UnionFind uf(monos.size());
    for (std::size_t k = 0; k < monos.size(); ++k) {
      for_each_move(monos[k], kept, [&](const Monomial& to) {
        auto it = index.find(to);
        detail::ensure(it != index.end(), "relation move left its fiber");
        uf.unite(k, it->second);
      });
    }
    if (auto it = cand_by_fiber.find(*b); it != cand_by_fiber.end()) {
      for (const auto& [l, r] : it->second) {
        if (uf.unite(index.at(l), index.at(r))) {
          kept.push_back({l, r, cand_prov.at({l, r})});
        }
      }
    }
    // Join what is left to the class of the largest monomial.
    for (std::size_t k = 1; k < monos.size(); ++k) {
      if (uf.unite(0, k)) {
        Monomial l = monos[0], r = monos[k];
        cancel_common(l, r);
        detail::ensure(monos[0] == l && monos[k] == r,
                       "classes of a fiber share a generator");
        kept.push_back({l, r, "toric-kernel"});
      }
    }
  }
  return kept;
}

/// True if `to` is reachable from `from` by applying relations.
inline bool reachable(const Monomial& from, const Monomial& to,
                      const std::vector<Relation>& rels) {
  std::set<Monomial> seen{from};
  std::vector<Monomial> stack{from};
  while (!stack.empty()) {
    Monomial cur = std::move(stack.back());
    stack.pop_back();
    if (cur == to) return true;
    for_each_move(cur, rels, [&](const Monomial& next) {
      if (seen.insert(next).second) stack.push_back(next);
    });
  }
  return false;
}

namespace detail {
inline std::vector<Relation> irredundant_configurations(const MatchingSystem& sys,
                                                        const std::vector<Generator>& gens,
                                                        bool want_x, bool want_h) {
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (f_degree(sys, gens[k].vector) > 0) active.push_back(k);
  }
  MatchingSystem reduced = presolve(sys).reduced;
  MatchingGraph g = build_graph(reduced);
  std::vector<Generator> active_gens;
  for (std::size_t k : active) active_gens.push_back(gens[k]);
  Factorizer fac(reduced, active_gens);
  std::vector<Candidate> cands =
      configuration_candidates(reduced, g, active_gens, fac, want_x, want_h);
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return std::pair{total(a.lhs) + total(a.rhs), std::pair{a.lhs, a.rhs}} <
           std::pair{total(b.lhs) + total(b.rhs), std::pair{b.lhs, b.rhs}};
  });
  std::vector<Relation> kept;
  for (const Candidate& c : cands) {
    Monomial l(gens.size(), 0), r(gens.size(), 0);
    for (std::size_t k = 0; k < active.size(); ++k) {
      l[active[k]] = c.lhs[k];
      r[active[k]] = c.rhs[k];
    }
    if (!reachable(l, r, kept)) kept.push_back({l, r, c.provenance});
  }
  return kept;
}
}  // namespace detail

/// Irredundant relations read off X-configurations (two strings through a
/// common dotted edge with their halves exchanged).
inline std::vector<Relation> find_x_configurations(const MatchingSystem& sys,
                                                   const std::vector<Generator>& gens) {
  return detail::irredundant_configurations(sys, gens, true, false);
}

/// Irredundant relations read off H-configurations (two bands through a
/// common pair of dotted edges with their connectors exchanged).
inline std::vector<Relation> find_h_configurations(const MatchingSystem& sys,
                                                   const std::vector<Generator>& gens) {
  return detail::irredundant_configurations(sys, gens, false, true);
}

inline Presentation presentation(const MatchingSystem& sys, RelationConfig cfg = {}) {
  IrreducibleWalks walks = enumerate_irreducible_walks(sys);
  Presentation p;
  p.system = sys;
  p.generators = std::move(walks.generators);
  p.forced_zero = std::move(walks.forced_zero);
  p.f_cap = cfg.f_cap;
  p.relations = compute_relations(sys, p.generators, cfg);
  for (const Relation& r : p.relations) {
    detail::ensure(monomial_vector(r.lhs, p.generators, sys.num_vars()) ==
                       monomial_vector(r.rhs, p.generators, sys.num_vars()),
                   "relation sides have different vectors");
  }
  return p;
}

/// Human-readable side, e.g. "S1 + 2 B2".
inline std::string format_monomial(const Monomial& mono, const std::vector<Generator>& gens) {
  std::string out;
  for (std::size_t k = 0; k < mono.size(); ++k) {
    if (mono[k] == 0) continue;
    if (!out.empty()) out += " + ";
    if (mono[k] > 1) out += std::to_string(mono[k]) + " ";
    out += gens[k].name;
  }
  return out.empty() ? "0" : out;
}

}  // namespace gsi
