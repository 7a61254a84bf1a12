#pragma once

// Semi-invariant data: partitions lambda_{u,y}, weights, degrees, and the
// assembled presentation SI = k[U][y_b].

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsi/error.hpp"
#include "gsi/matching.hpp"
#include "gsi/peg.hpp"
#include "gsi/rank.hpp"
#include "gsi/relations.hpp"

namespace gsi {

/// lambda(a) per arrow, weakly decreasing, length r(a).
using PartitionMap = std::vector<std::vector<int>>;
/// GL-character exponent per vertex.
using Weight = std::vector<int>;

inline bool is_partition_map(const PartitionMap& lambda) {
  for (const auto& parts : lambda) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] < 0 || (i > 0 && parts[i] > parts[i - 1])) return false;
    }
  }
  return true;
}

/// lambda(x,s) = (lambda(o), 0, ..., 0, -lambda(i) reversed), length beta_x.
inline std::vector<int> incidence_vector(const PartitionMap& lambda, const Incidence& inc,
                                         int beta_x) {
  std::vector<int> v(static_cast<std::size_t>(beta_x), 0);
  const std::size_t no = inc.out ? lambda[*inc.out].size() : 0;
  const std::size_t ni = inc.in ? lambda[*inc.in].size() : 0;
  if (no + ni > v.size()) {
    throw precondition_error("partition has more parts than the vertex dimension allows");
  }
  for (std::size_t k = 0; k < no; ++k) v[k] = lambda[*inc.out][k];
  for (std::size_t k = 0; k < ni; ++k) v[v.size() - 1 - k] = -lambda[*inc.in][k];
  return v;
}

/// f_lambda at every root of the graph.
inline std::vector<int> root_values(const PegGraph& g, const PartitionMap& lambda) {
  std::vector<int> out(g.roots.size(), 0);
  for (NodeIndex n = 0; n < g.roots.size(); ++n) {
    const RootId& id = g.roots[n];
    std::vector<int> v =
        incidence_vector(lambda, g.incidence(id.vertex, id.color), g.beta[id.vertex]);
    out[n] = v[id.index - 1] - v[id.index];
  }
  return out;
}

namespace detail {
inline std::vector<std::size_t> component_of(const PegGraph& g,
                                             const std::vector<PegComponent>& comps) {
  std::vector<std::size_t> out(g.roots.size(), 0);
  for (std::size_t k = 0; k < comps.size(); ++k) {
    for (NodeIndex n : comps[k].walk) out[n] = k;
  }
  return out;
}
}  // namespace detail

/// Value v(K) of every component: phi_u at a type-I endpoint for strings,
/// y for bands, 0 otherwise.
inline std::vector<int> component_values(const MatchingSystemExtract& ex, const Vec& u,
                                         const Vec& y) {
  std::vector<int> v(ex.comps.size(), 0);
  for (std::size_t k = 0; k < ex.comps.size(); ++k) {
    if (ex.value_endpoint[k]) v[k] = ex.value_endpoint[k]->phi(u);
  }
  for (std::size_t b = 0; b < ex.band_index.size(); ++b) v[ex.band_index[b]] = y[b];
  return v;
}

inline PartitionMap lambda_from_uy(const PegGraph& g, const MatchingSystemExtract& ex,
                                   const Vec& u, const Vec& y) {
  if (y.size() != ex.band_index.size()) {
    throw precondition_error("lambda_from_uy: one y value per band required");
  }
  if (!is_member(ex.system, u)) throw precondition_error("lambda_from_uy: u is not in U");
  if (std::any_of(y.begin(), y.end(), [](int t) { return t < 0; })) {
    throw precondition_error("lambda_from_uy: negative band value");
  }
  std::vector<std::size_t> comp = detail::component_of(g, ex.comps);
  std::vector<int> value = component_values(ex, u, y);
  const Quiver& q = g.quiver;
  PartitionMap lambda(q.num_arrows());
  for (ArrowIndex a = 0; a < q.num_arrows(); ++a) {
    const int r = g.rank[a];
    lambda[a].assign(static_cast<std::size_t>(r), 0);
    int acc = u[a];
    for (int i = r; i >= 1; --i) {
      if (i < r) acc += value[comp[g.node({q.arrow(a).tail, g.coloring[a], i})]];
      lambda[a][static_cast<std::size_t>(i - 1)] = acc;
    }
  }
  return lambda;
}

struct SiMembership {
  bool ok = false;
  Weight sigma;
  std::string witness;  // first failing (vertex, i) when !ok
};

/// Solves the weight equations: at a coupled vertex the sums
/// lambda(x,s1)_i + lambda(x,s2)_{beta+1-i} agree; at a lonely vertex all
/// entries of lambda(x,s) agree. The common value is sigma_x.
inline SiMembership si_membership(const PartitionMap& lambda, const Quiver& q,
                                  const Coloring& c, const DimensionVector& beta) {
  if (lambda.size() != q.num_arrows() || !is_partition_map(lambda)) {
    throw precondition_error("si_membership: not a partition map");
  }
  SiMembership res{true, Weight(q.num_vertices(), 0), {}};
  std::vector<Incidence> incs = incidences(q, c);
  for (VertexIndex x = 0; x < q.num_vertices(); ++x) {
    std::vector<std::vector<int>> rows;
    for (const Incidence& inc : incs) {
      if (inc.vertex == x) rows.push_back(incidence_vector(lambda, inc, beta[x]));
    }
    if (rows.size() > 2) {
      throw precondition_error("si_membership: more than two colors at a vertex");
    }
    const int b = beta[x];
    if (rows.empty() || b == 0) continue;
    auto at = [&](std::size_t i) {
      return rows.size() == 1 ? rows[0][i] : rows[0][i] + rows[1][b - 1 - i];
    };
    res.sigma[x] = at(0);
    for (int i = 1; i < b; ++i) {
      if (at(static_cast<std::size_t>(i)) != res.sigma[x]) {
        res.ok = false;
        res.witness = "vertex " + q.vertex_id(x) + ", i=" + std::to_string(i + 1);
        return res;
      }
    }
  }
  return res;
}

/// Inverse of lambda_from_uy: u(a) is the last part of lambda(a), y the
/// constant value of f_lambda on each band.
inline std::pair<Vec, Vec> roundtrip_uy(const PegGraph& g, const MatchingSystemExtract& ex,
                                        const PartitionMap& lambda) {
  Vec u(g.quiver.num_arrows(), 0);
  for (ArrowIndex a = 0; a < u.size(); ++a) {
    if (!lambda[a].empty()) u[a] = lambda[a].back();
  }
  std::vector<int> f = root_values(g, lambda);
  Vec y;
  for (std::size_t b : ex.band_index) {
    const auto& walk = ex.comps[b].walk;
    int v = f[walk.front()];
    for (NodeIndex n : walk) {
      detail::ensure(f[n] == v, "roundtrip_uy: band values are not constant");
    }
    y.push_back(v);
  }
  return {u, y};
}

inline int generator_degree(const PartitionMap& lambda) {
  int d = 0;
  for (const auto& parts : lambda) {
    for (int p : parts) d += p;
  }
  return d;
}

struct DegreeBounds {
  int generators;
  int relations;
};

/// 2 * sum C(r(a)+1, 2) and 8 * sum C(r(a)+1, 2).
inline DegreeBounds degree_bounds(const RankSequence& r) {
  int s = 0;
  for (int v : r) s += v * (v + 1) / 2;
  return {2 * s, 8 * s};
}

/// f_lambda at the smallest root of every string and band, in component order.
inline std::vector<int> multigrading(const PegGraph& g, const MatchingSystemExtract& ex,
                                     const Vec& u, const Vec& y) {
  std::vector<int> f = root_values(g, lambda_from_uy(g, ex, u, y));
  std::vector<int> grade;
  for (const PegComponent& comp : ex.comps) {
    if (comp.kind != ComponentKind::Isolated) grade.push_back(f[comp.smallest()]);
  }
  return grade;
}

struct SiGenerator {
  std::string name;
  std::string kind;  // string, band, free or band-variable
  Vec u;
  Vec y;
  PartitionMap lambda;
  int degree = 0;
  Weight sigma;
  std::vector<int> grade;
};

struct SiRelation {
  Monomial lhs;  // over SiPresentation::generators
  Monomial rhs;
  std::string provenance;
  int degree = 0;
};

struct SiPresentation {
  RankSequence component_label;
  bool maximal = true;
  PegGraph peg;
  MatchingSystemExtract extract;
  Presentation matching;
  std::vector<std::string> band_vars;
  std::vector<SiGenerator> generators;
  std::vector<SiRelation> relations;
  DegreeBounds bounds{0, 0};
  std::vector<std::string> notes;
};

inline SiPresentation si_presentation(const Quiver& q, const Coloring& c,
                                      const DimensionVector& beta, const RankSequence& r,
                                      RelationConfig cfg = {}) {
  SiPresentation p;
  p.component_label = r;
  p.maximal = is_maximal_rank_sequence(q, c, beta, r);
  if (!p.maximal) p.notes.push_back("rank sequence is not maximal");
  p.peg = build_peg(q, c, beta, r);
  p.extract = extract_matching_system(p.peg);
  p.matching = presentation(p.extract.system, cfg);
  p.bounds = degree_bounds(r);

  const std::size_t nb = p.extract.band_index.size();
  auto finish = [&](SiGenerator gen) {
    gen.lambda = lambda_from_uy(p.peg, p.extract, gen.u, gen.y);
    SiMembership m = si_membership(gen.lambda, q, c, beta);
    detail::ensure(m.ok, "generator " + gen.name + " fails the weight equations at " +
                             m.witness);
    gen.sigma = m.sigma;
    gen.degree = generator_degree(gen.lambda);
    detail::ensure(gen.degree <= p.bounds.generators,
                   "generator " + gen.name + " exceeds the degree bound");
    gen.grade = multigrading(p.peg, p.extract, gen.u, gen.y);
    p.generators.push_back(std::move(gen));
  };
  for (const Generator& g : p.matching.generators) {
    finish({g.name, g.kind, g.vector, Vec(nb, 0), {}, 0, {}, {}});
  }
  for (std::size_t b = 0; b < nb; ++b) {
    std::string name = "Y" + std::to_string(b + 1);
    p.band_vars.push_back(name);
    Vec y(nb, 0);
    y[b] = 1;
    finish({name, "band-variable", Vec(q.num_arrows(), 0), y, {}, 0, {}, {}});
  }
  for (const Relation& rel : p.matching.relations) {
    SiRelation out{rel.lhs, rel.rhs, rel.provenance, 0};
    out.lhs.resize(p.generators.size(), 0);
    out.rhs.resize(p.generators.size(), 0);
    int dl = 0, dr = 0;
    for (std::size_t k = 0; k < p.generators.size(); ++k) {
      dl += out.lhs[k] * p.generators[k].degree;
      dr += out.rhs[k] * p.generators[k].degree;
    }
    detail::ensure(dl == dr, "relation sides have different degrees");
    detail::ensure(dl <= p.bounds.relations, "relation exceeds the degree bound");
    out.degree = dl;
    p.relations.push_back(std::move(out));
  }
  return p;
}

}  // namespace gsi
