#pragma once

// Brute-force ground truth: lattice points of U in a box, minimal
// generators, the toric relations of a generator list, and the weight
// equations evaluated entry by entry.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "gsi/error.hpp"
#include "gsi/matching.hpp"
#include "gsi/rank.hpp"
#include "gsi/relations.hpp"

namespace gsi::oracle {

struct OracleConfig {
  int coordinate_cap = 3;
  int relation_f_cap = 4;
  std::uint64_t seed = 20240611;
};

/// All u with 0 <= u_j <= cap satisfying every equation, lexicographic.
inline std::vector<Vec> enumerate_points(const MatchingSystem& sys, int cap) {
  require_valid(sys, "enumerate_points");
  const std::size_t l = sys.num_vars();
  const std::size_t m = sys.num_equations();
  // Equation i can be checked once its largest variable is assigned.
  std::vector<std::vector<std::size_t>> check_at(l + 1);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t last = 0;
    for (std::size_t j : sys.lhs[i]) last = std::max(last, j + 1);
    for (std::size_t j : sys.rhs[i]) last = std::max(last, j + 1);
    check_at[last].push_back(i);
  }
  std::vector<Vec> out;
  Vec u(l, 0);
  auto ok_at = [&](std::size_t depth) {
    for (std::size_t i : check_at[depth]) {
      if (sys.eval(i, u) != sys.eval(i + m, u)) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (!ok_at(j)) return;
    if (j == l) {
      out.push_back(u);
      return;
    }
    for (int v = 0; v <= cap; ++v) {
      u[j] = v;
      self(self, j + 1);
    }
    u[j] = 0;
  };
  rec(rec, 0);
  return out;
}

/// Nonzero points of the box that are not a sum of two nonzero points.
/// Throws if one of them has some f_i > 2.
inline std::vector<Vec> minimal_generators_bruteforce(const MatchingSystem& sys, int cap) {
  if (cap < 2) throw precondition_error("minimal_generators_bruteforce: cap must be >= 2");
  std::vector<Vec> pts = enumerate_points(sys, cap);
  std::set<Vec> in_box(pts.begin(), pts.end());
  std::stable_sort(pts.begin(), pts.end(),
                   [](const Vec& a, const Vec& b) { return total(a) < total(b); });
  std::vector<Vec> mins;
  for (const Vec& p : pts) {
    if (total(p) == 0) continue;
    bool split = false;
    for (const Vec& h : mins) {
      if (leq(h, p) && in_box.contains(p - h)) {
        split = true;
        break;
      }
    }
    if (split) continue;
    for (std::size_t i = 0; i < sys.num_functions(); ++i) {
      if (sys.eval(i, p) > 2) {
        throw invariant_error("oracle: minimal generator with f_i > 2");
      }
    }
    mins.push_back(p);
  }
  std::sort(mins.begin(), mins.end());
  return mins;
}

namespace detail {

// All monomials in gens summing to target.
inline void factorizations(const std::vector<Vec>& gens, std::size_t from, Vec& rest,
                           Monomial& cur, std::vector<Monomial>& out) {
  if (total(rest) == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t k = from; k < gens.size(); ++k) {
    if (!leq(gens[k], rest)) continue;
    rest = rest - gens[k];
    ++cur[k];
    factorizations(gens, k, rest, cur, out);
    --cur[k];
    rest = rest + gens[k];
  }
}

}  // namespace detail

/// Minimal binomials for every point b of U with f_i(b) <= f_cap. In each
/// fiber, factorizations sharing a generator are linked; c classes give
/// c - 1 binomials joining the first class to the others.
inline std::vector<Relation> toric_relations_bruteforce(const MatchingSystem& sys,
                                                        const std::vector<Vec>& gens,
                                                        int f_cap) {
  std::vector<Relation> out;
  std::vector<Vec> active;
  std::vector<std::size_t> index;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (f_degree(sys, gens[k]) > 0) {
      active.push_back(gens[k]);
      index.push_back(k);
    }
  }
  // Candidates b: members with every f_i(b) <= f_cap. Variables in no
  // function play no part in relations and stay 0.
  const std::size_t l = sys.num_vars();
  std::vector<std::vector<std::size_t>> occ(l);
  for (std::size_t j = 0; j < l; ++j) occ[j] = sys.occurrences(j);
  std::vector<Vec> pts;
  Vec u(l, 0);
  std::vector<int> fs(sys.num_functions(), 0);
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == l) {
      if (total(u) > 0 && is_member(sys, u)) pts.push_back(u);
      return;
    }
    self(self, j + 1);
    if (occ[j].empty()) return;
    int added = 0;
    while (std::all_of(occ[j].begin(), occ[j].end(),
                       [&](std::size_t i) { return fs[i] < f_cap; })) {
      ++u[j];
      ++added;
      for (std::size_t i : occ[j]) ++fs[i];
      self(self, j + 1);
    }
    u[j] -= added;
    for (std::size_t i : occ[j]) fs[i] -= added;
  };
  rec(rec, 0);
  for (Vec b : pts) {
    std::vector<Monomial> facs;
    Monomial cur(active.size(), 0);
    detail::factorizations(active, 0, b, cur, facs);
    if (facs.size() < 2) continue;
    std::sort(facs.begin(), facs.end(), std::greater<>());
    std::vector<std::size_t> cls(facs.size());
    for (std::size_t k = 0; k < facs.size(); ++k) cls[k] = k;
    auto root = [&](std::size_t x) {
      while (cls[x] != x) x = cls[x];
      return x;
    };
    for (std::size_t a = 0; a < facs.size(); ++a) {
      for (std::size_t c = a + 1; c < facs.size(); ++c) {
        bool share = false;
        for (std::size_t k = 0; k < active.size() && !share; ++k) {
          share = facs[a][k] > 0 && facs[c][k] > 0;
        }
        if (share) {
          std::size_t ra = root(a), rc = root(c);
          if (ra != rc) cls[std::max(ra, rc)] = std::min(ra, rc);
        }
      }
    }
    std::set<std::size_t> seen{root(0)};
    for (std::size_t k = 1; k < facs.size(); ++k) {
      if (!seen.insert(root(k)).second) continue;
      Relation rel{Monomial(gens.size(), 0), Monomial(gens.size(), 0), "oracle"};
      for (std::size_t t = 0; t < active.size(); ++t) {
        rel.lhs[index[t]] = facs[0][t];
        rel.rhs[index[t]] = facs[k][t];
      }
      out.push_back(std::move(rel));
    }
  }
  return out;
}

/// Each relation of `a` follows from `b` and vice versa.
inline bool same_congruence(const std::vector<Relation>& a, const std::vector<Relation>& b) {
  auto implied = [](const std::vector<Relation>& xs, const std::vector<Relation>& by) {
    return std::all_of(xs.begin(), xs.end(),
                       [&](const Relation& r) { return reachable(r.lhs, r.rhs, by); });
  };
  return implied(a, b) && implied(b, a);
}

/// Evaluates every weight equation literally from the partition parts.
inline bool verify_si_equations(const std::vector<std::vector<int>>& lambda,
                                const Quiver& q, const Coloring& c,
                                const DimensionVector& beta) {
  // entry(x, s, i) for 1 <= i <= beta_x, straight from the definition.
  auto entry = [&](const Incidence& inc, int i) {
    const int b = beta[inc.vertex];
    if (inc.out && i <= static_cast<int>(lambda[*inc.out].size())) {
      return lambda[*inc.out][static_cast<std::size_t>(i - 1)];
    }
    if (inc.in) {
      const int k = b + 1 - i;
      if (k <= static_cast<int>(lambda[*inc.in].size())) {
        return -lambda[*inc.in][static_cast<std::size_t>(k - 1)];
      }
    }
    return 0;
  };
  std::map<VertexIndex, std::vector<Incidence>> at;
  for (const Incidence& inc : incidences(q, c)) at[inc.vertex].push_back(inc);
  for (const auto& [x, incs] : at) {
    const int b = beta[x];
    if (b == 0) continue;
    if (incs.size() == 1) {
      for (int i = 1; i < b; ++i) {
        if (entry(incs[0], i) != entry(incs[0], i + 1)) return false;
      }
    } else if (incs.size() == 2) {
      const int sigma = entry(incs[0], 1) + entry(incs[1], b);
      for (int i = 2; i <= b; ++i) {
        if (entry(incs[0], i) + entry(incs[1], b + 1 - i) != sigma) return false;
      }
    } else {
      return false;
    }
  }
  return true;
}

/// Minimal nonzero partition maps (lambda(a) of length r(a), parts <= cap)
/// satisfying the weight equations, sorted. Works on partitions directly and
/// never touches the graph of roots.
inline std::vector<std::vector<std::vector<int>>> minimal_si_bruteforce(
    const Quiver& q, const Coloring& c, const DimensionVector& beta, const RankSequence& r,
    int cap) {
  using PMap = std::vector<std::vector<int>>;
  std::vector<std::vector<std::vector<int>>> choices(q.num_arrows());
  for (ArrowIndex a = 0; a < q.num_arrows(); ++a) {
    std::vector<int> cur(static_cast<std::size_t>(r[a]), 0);
    auto rec = [&](auto&& self, std::size_t i, int top) -> void {
      if (i == cur.size()) {
        choices[a].push_back(cur);
        return;
      }
      for (int v = 0; v <= top; ++v) {
        cur[i] = v;
        self(self, i + 1, v);
      }
    };
    rec(rec, 0, cap);
  }
  std::vector<PMap> members;
  PMap cur(q.num_arrows());
  auto rec = [&](auto&& self, std::size_t a) -> void {
    if (a == q.num_arrows()) {
      if (verify_si_equations(cur, q, c, beta)) members.push_back(cur);
      return;
    }
    for (const auto& parts : choices[a]) {
      cur[a] = parts;
      self(self, a + 1);
    }
  };
  rec(rec, 0);
  auto size = [](const PMap& l) {
    int s = 0;
    for (const auto& p : l) s += total(p);
    return s;
  };
  std::set<PMap> in_box(members.begin(), members.end());
  std::stable_sort(members.begin(), members.end(),
                   [&](const PMap& x, const PMap& y) { return size(x) < size(y); });
  std::vector<PMap> mins;
  for (const PMap& l : members) {
    if (size(l) == 0) continue;
    bool split = std::any_of(mins.begin(), mins.end(), [&](const PMap& h) {
      PMap diff(l.size());
      for (std::size_t a = 0; a < l.size(); ++a) {
        if (!leq(h[a], l[a])) return false;
        diff[a] = l[a] - h[a];
      }
      return in_box.contains(diff);
    });
    if (!split) mins.push_back(l);
  }
  std::sort(mins.begin(), mins.end());
  return mins;
}

struct ColoredQuiver {
  Quiver quiver;
  Coloring coloring;
};

/// Random acyclic quiver on n vertices built from colored paths along the
/// order 1 < 2 < ... < n, with at most two colors through any vertex.
inline ColoredQuiver random_colored_quiver(std::mt19937_64& rng, int max_vertices = 5,
                                           int max_colors = 3) {
  std::uniform_int_distribution<int> dn(2, max_vertices), dc(1, max_colors);
  const int n = dn(rng);
  const int colors = dc(rng);
  std::vector<int> load(static_cast<std::size_t>(n), 0);
  std::vector<std::string> vids;
  for (int v = 0; v < n; ++v) vids.push_back(std::to_string(v + 1));
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  std::vector<std::size_t> label;
  for (int s = 0; s < colors; ++s) {
    std::vector<int> path;
    for (int v = 0; v < n; ++v) {
      if (load[static_cast<std::size_t>(v)] < 2 && std::bernoulli_distribution(0.6)(rng)) {
        path.push_back(v);
      }
    }
    if (path.size() < 2) continue;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      arrows.emplace_back(std::string(1, static_cast<char>('a' + s)) + std::to_string(k + 1),
                          vids[static_cast<std::size_t>(path[k])],
                          vids[static_cast<std::size_t>(path[k + 1])]);
      label.push_back(static_cast<std::size_t>(s));
    }
    for (int v : path) ++load[static_cast<std::size_t>(v)];
  }
  Quiver q = Quiver::from_ids(vids, arrows);
  Coloring c = Coloring::from_labels(q, label);
  return {std::move(q), std::move(c)};
}

/// Random valid system with m <= max_m equations and l <= max_l variables;
/// columns are resampled until no variable sits on both sides of an equation.
inline MatchingSystem random_matching_system(std::mt19937_64& rng, int max_m = 4,
                                             int max_l = 8) {
  std::uniform_int_distribution<int> dm(1, max_m), dl(1, max_l), dk(0, 2);
  const int m = dm(rng);
  const int l = dl(rng);
  while (true) {
    MatchingSystem sys;
    sys.lhs.assign(static_cast<std::size_t>(m), {});
    sys.rhs.assign(static_cast<std::size_t>(m), {});
    std::uniform_int_distribution<int> dv(0, 2 * m - 1);
    for (int j = 0; j < l; ++j) {
      sys.names.push_back("x" + std::to_string(j + 1));
      std::set<int> col;
      const int k = dk(rng);
      while (static_cast<int>(col.size()) < k) col.insert(dv(rng));
      for (int i : col) {
        auto& f = i < m ? sys.lhs[static_cast<std::size_t>(i)]
                        : sys.rhs[static_cast<std::size_t>(i - m)];
        f.push_back(static_cast<std::size_t>(j));
      }
    }
    if (validate_system(sys).ok()) return sys;
  }
}

}  // namespace gsi::oracle
