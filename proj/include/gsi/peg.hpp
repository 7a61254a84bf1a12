#pragma once

// The partition equivalence graph on labeled simple roots, its components,
// endpoint classes and the matching system it induces on arrow variables.

#include <algorithm>
#include <compare>
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

/// alpha_index^{(vertex, color)} with 1 <= index <= beta_vertex - 1.
struct RootId {
  VertexIndex vertex;
  ColorIndex color;
  int index;
  auto operator<=>(const RootId&) const = default;
};

using NodeIndex = std::size_t;

struct PegGraph {
  Quiver quiver;
  Coloring coloring;
  DimensionVector beta;
  RankSequence rank;
  std::vector<Incidence> incidences;

  std::vector<RootId> roots;  // sorted
  std::vector<std::optional<NodeIndex>> vertex_nbr;
  std::vector<std::optional<std::pair<NodeIndex, ArrowIndex>>> colored_nbr;

  std::optional<NodeIndex> find(const RootId& id) const {
    auto it = std::lower_bound(roots.begin(), roots.end(), id);
    if (it == roots.end() || *it != id) return std::nullopt;
    return static_cast<NodeIndex>(it - roots.begin());
  }
  NodeIndex node(const RootId& id) const {
    auto n = find(id);
    detail::ensure(n.has_value(), "peg: unknown root");
    return *n;
  }
  int degree(NodeIndex n) const {
    return (vertex_nbr[n] ? 1 : 0) + (colored_nbr[n] ? 1 : 0);
  }
  std::size_t colors_at(VertexIndex x) const {
    return static_cast<std::size_t>(std::count_if(
        incidences.begin(), incidences.end(),
        [&](const Incidence& inc) { return inc.vertex == x; }));
  }
  const Incidence& incidence(VertexIndex x, ColorIndex s) const {
    for (const Incidence& inc : incidences) {
      if (inc.vertex == x && inc.color == s) return inc;
    }
    throw invariant_error("peg: missing incidence");
  }
  std::size_t num_vertex_edges() const {
    return static_cast<std::size_t>(
               std::count_if(vertex_nbr.begin(), vertex_nbr.end(),
                             [](const auto& v) { return v.has_value(); })) / 2;
  }
  std::size_t num_colored_edges() const {
    return static_cast<std::size_t>(
               std::count_if(colored_nbr.begin(), colored_nbr.end(),
                             [](const auto& v) { return v.has_value(); })) / 2;
  }

  std::string root_name(NodeIndex n) const {
    const RootId& r = roots[n];
    return "(" + quiver.vertex_id(r.vertex) + "," + std::to_string(r.color + 1) + ")_" +
           std::to_string(r.index);
  }
};

inline PegGraph build_peg(const Quiver& q, const Coloring& c, const DimensionVector& beta,
                          const RankSequence& r) {
  if (!is_rank_sequence(q, c, beta, r)) {
    throw precondition_error("build_peg: not a rank sequence for this dimension vector");
  }
  PegGraph g{q, c, beta, r, incidences(q, c), {}, {}, {}};
  for (VertexIndex x = 0; x < q.num_vertices(); ++x) {
    if (g.colors_at(x) > 2) {
      throw precondition_error("build_peg: more than two colors meet at vertex '" +
                               q.vertex_id(x) + "'");
    }
  }
  for (const Incidence& inc : g.incidences) {
    for (int i = 1; i < beta[inc.vertex]; ++i) g.roots.push_back({inc.vertex, inc.color, i});
  }
  std::sort(g.roots.begin(), g.roots.end());
  g.vertex_nbr.assign(g.roots.size(), std::nullopt);
  g.colored_nbr.assign(g.roots.size(), std::nullopt);

  for (std::size_t k = 0; k + 1 < g.incidences.size(); ++k) {
    const Incidence& s1 = g.incidences[k];
    const Incidence& s2 = g.incidences[k + 1];
    if (s1.vertex != s2.vertex) continue;
    const int b = beta[s1.vertex];
    for (int i = 1; i < b; ++i) {
      NodeIndex u = g.node({s1.vertex, s1.color, i});
      NodeIndex v = g.node({s2.vertex, s2.color, b - i});
      g.vertex_nbr[u] = v;
      g.vertex_nbr[v] = u;
    }
  }
  for (ArrowIndex a = 0; a < q.num_arrows(); ++a) {
    const VertexIndex x = q.arrow(a).tail, y = q.arrow(a).head;
    for (int i = 1; i < r[a]; ++i) {
      NodeIndex u = g.node({x, c[a], i});
      NodeIndex v = g.node({y, c[a], beta[y] - i});
      detail::ensure(!g.colored_nbr[u] && !g.colored_nbr[v],
                     "peg: root with two colored edges");
      g.colored_nbr[u] = std::pair{v, a};
      g.colored_nbr[v] = std::pair{u, a};
    }
  }
  return g;
}

enum class ComponentKind { String, Band, Isolated };

inline const char* to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::String: return "string";
    case ComponentKind::Band: return "band";
    default: return "isolated";
  }
}

struct PegComponent {
  ComponentKind kind;
  std::vector<NodeIndex> walk;       // in canonical orientation
  std::vector<NodeIndex> endpoints;  // two for strings, otherwise empty
  NodeIndex smallest() const { return *std::min_element(walk.begin(), walk.end()); }
};

namespace detail {
inline std::vector<NodeIndex> neighbors(const PegGraph& g, NodeIndex n) {
  std::vector<NodeIndex> out;
  if (g.vertex_nbr[n]) out.push_back(*g.vertex_nbr[n]);
  if (g.colored_nbr[n]) out.push_back(g.colored_nbr[n]->first);
  return out;
}

// Follow the path from `start` leaving through `next`.
inline std::vector<NodeIndex> trace(const PegGraph& g, NodeIndex start, NodeIndex next) {
  std::vector<NodeIndex> walk{start};
  NodeIndex prev = start, cur = next;
  while (cur != start) {
    walk.push_back(cur);
    std::optional<NodeIndex> step;
    for (NodeIndex nb : neighbors(g, cur)) {
      if (nb != prev) step = nb;
    }
    if (!step) break;
    prev = cur;
    cur = *step;
  }
  return walk;
}
}  // namespace detail

/// Strings first by smallest endpoint, then bands, then isolated roots, all
/// in order of their smallest root.
inline std::vector<PegComponent> components(const PegGraph& g) {
  std::vector<PegComponent> out;
  std::vector<bool> seen(g.roots.size(), false);
  for (NodeIndex n = 0; n < g.roots.size(); ++n) {
    if (seen[n] || g.degree(n) > 1) continue;
    PegComponent comp;
    if (g.degree(n) == 0) {
      comp = {ComponentKind::Isolated, {n}, {}};
    } else {
      comp.kind = ComponentKind::String;
      comp.walk = detail::trace(g, n, detail::neighbors(g, n).front());
      comp.endpoints = {comp.walk.front(), comp.walk.back()};
    }
    for (NodeIndex k : comp.walk) seen[k] = true;
    out.push_back(std::move(comp));
  }
  for (NodeIndex n = 0; n < g.roots.size(); ++n) {
    if (seen[n]) continue;
    // Smallest unseen root of a cycle; take the smaller neighbor second.
    std::vector<NodeIndex> nb = detail::neighbors(g, n);
    detail::ensure(nb.size() == 2, "peg: degree-2 root outside a cycle");
    PegComponent comp{ComponentKind::Band,
                      detail::trace(g, n, std::min(nb[0], nb[1])), {}};
    detail::ensure(comp.walk.size() % 2 == 0, "peg: odd cycle");
    for (NodeIndex k : comp.walk) seen[k] = true;
    out.push_back(std::move(comp));
  }
  auto rank_of = [](ComponentKind k) {
    return k == ComponentKind::String ? 0 : k == ComponentKind::Band ? 1 : 2;
  };
  std::stable_sort(out.begin(), out.end(), [&](const PegComponent& a, const PegComponent& b) {
    if (rank_of(a.kind) != rank_of(b.kind)) return rank_of(a.kind) < rank_of(b.kind);
    return a.walk.front() < b.walk.front();
  });
  return out;
}

struct Endpoint {
  NodeIndex node;
  RootId root;
  bool coupled;  // type I when true, type II otherwise
  char subtype;  // 'a'..'d'
  std::optional<ArrowIndex> out_arrow;
  std::optional<ArrowIndex> in_arrow;
  std::vector<ArrowIndex> phi_coeffs;

  std::string label(const Quiver& q) const {
    std::string s = std::string(coupled ? "I" : "II") + subtype;
    if (subtype == 'a') s += "(" + q.arrow(*out_arrow).id + "," + q.arrow(*in_arrow).id + ")";
    if (subtype == 'b') s += "(" + q.arrow(*out_arrow).id + ")";
    if (subtype == 'c') s += "(" + q.arrow(*in_arrow).id + ")";
    return s;
  }
  int phi(const Vec& u) const {
    int v = 0;
    for (ArrowIndex a : phi_coeffs) v += u[a];
    return v;
  }
};

inline Endpoint classify_endpoint(const PegGraph& g, NodeIndex n) {
  const RootId& id = g.roots[n];
  const Incidence& inc = g.incidence(id.vertex, id.color);
  const int b = g.beta[id.vertex];
  const int ro = rank_or_zero(g.rank, inc.out);
  const int ri = rank_or_zero(g.rank, inc.in);
  Endpoint e{n, id, g.colors_at(id.vertex) == 2, 'd', inc.out, inc.in, {}};
  const bool at_out = id.index == ro;
  const bool at_in = id.index == b - ri;
  if (at_out && at_in) {
    e.subtype = 'a';
    e.phi_coeffs = {*inc.out, *inc.in};
  } else if (at_out) {
    e.subtype = 'b';
    e.phi_coeffs = {*inc.out};
  } else if (at_in) {
    e.subtype = 'c';
    e.phi_coeffs = {*inc.in};
  }
  return e;
}

/// Every root of degree at most one, in root order.
inline std::vector<Endpoint> classify_endpoints(const PegGraph& g) {
  std::vector<Endpoint> out;
  for (NodeIndex n = 0; n < g.roots.size(); ++n) {
    if (g.degree(n) <= 1) out.push_back(classify_endpoint(g, n));
  }
  return out;
}

/// The other endpoint of the string through e.
inline Endpoint theta(const PegGraph& g, const Endpoint& e) {
  if (g.degree(e.node) != 1) {
    throw precondition_error("theta: root " + g.root_name(e.node) + " is not on a string");
  }
  std::vector<NodeIndex> walk =
      detail::trace(g, e.node, detail::neighbors(g, e.node).front());
  return classify_endpoint(g, walk.back());
}

enum class EquationSource { String, LonelyString, LonelyIsolated, ZeroRank };

inline const char* to_string(EquationSource s) {
  switch (s) {
    case EquationSource::String: return "string";
    case EquationSource::LonelyString: return "lonely-string";
    case EquationSource::LonelyIsolated: return "lonely-isolated";
    default: return "zero-rank";
  }
}

struct EquationOrigin {
  EquationSource source;
  std::optional<std::size_t> component;
  std::optional<Endpoint> endpoint;
  std::optional<Endpoint> partner;  // theta(endpoint) for string equations
  std::optional<ArrowIndex> arrow;  // zero-rank equations
};

struct MatchingSystemExtract {
  MatchingSystem system;  // one variable per arrow, named by arrow id
  std::vector<EquationOrigin> origins;
  std::vector<ArrowIndex> free_arrows;
  std::vector<PegComponent> comps;
  std::vector<std::size_t> band_index;  // component indices of bands
  /// For a string with both endpoints of type I, the endpoint whose phi gives
  /// the component value; strings touching a lonely vertex have value 0.
  std::vector<std::optional<Endpoint>> value_endpoint;
};

/// Equations on u in N^{Q_1} such that u extends to a semi-invariant weight:
///   type-I strings:  phi(e) = phi(theta(e)), common arrows cancelled;
///   strings through a lonely vertex: every nonempty phi(e) = 0;
///   isolated lonely roots: phi(e) = 0;
///   arrows of rank 0: a = 0.
inline MatchingSystemExtract extract_matching_system(const PegGraph& g) {
  const Quiver& q = g.quiver;
  MatchingSystemExtract out;
  for (ArrowIndex a = 0; a < q.num_arrows(); ++a) out.system.names.push_back(q.arrow(a).id);
  out.comps = components(g);
  out.value_endpoint.assign(out.comps.size(), std::nullopt);

  auto add = [&](std::vector<ArrowIndex> l, std::vector<ArrowIndex> r, EquationOrigin o) {
    std::vector<ArrowIndex> lc, rc;
    for (ArrowIndex a : l) {
      if (std::find(r.begin(), r.end(), a) == r.end()) lc.push_back(a);
    }
    for (ArrowIndex a : r) {
      if (std::find(l.begin(), l.end(), a) == l.end()) rc.push_back(a);
    }
    if (lc.empty() && rc.empty()) return;
    out.system.add_equation(lc, rc);
    out.origins.push_back(std::move(o));
  };

  for (std::size_t k = 0; k < out.comps.size(); ++k) {
    const PegComponent& comp = out.comps[k];
    if (comp.kind == ComponentKind::Band) {
      out.band_index.push_back(k);
      continue;
    }
    if (comp.kind == ComponentKind::Isolated) {
      Endpoint e = classify_endpoint(g, comp.walk.front());
      detail::ensure(!e.coupled, "peg: isolated root at a coupled vertex");
      if (!e.phi_coeffs.empty()) {
        add(e.phi_coeffs, {}, {EquationSource::LonelyIsolated, k, e, std::nullopt, std::nullopt});
      }
      continue;
    }
    Endpoint e1 = classify_endpoint(g, comp.endpoints[0]);
    Endpoint e2 = classify_endpoint(g, comp.endpoints[1]);
    if (e1.coupled && e2.coupled) {
      out.value_endpoint[k] = e1;
      add(e1.phi_coeffs, e2.phi_coeffs, {EquationSource::String, k, e1, e2, std::nullopt});
    } else {
      for (const Endpoint& e : {e1, e2}) {
        if (e.phi_coeffs.empty()) continue;
        add(e.phi_coeffs, {}, {EquationSource::LonelyString, k, e, std::nullopt, std::nullopt});
      }
    }
  }
  for (ArrowIndex a = 0; a < q.num_arrows(); ++a) {
    if (g.rank[a] == 0) {
      add({a}, {}, {EquationSource::ZeroRank, std::nullopt, std::nullopt, std::nullopt, a});
    }
  }
  ValidationReport rep = validate_system(out.system);
  detail::ensure(rep.ok(), "extract_matching_system: result violates axiom " +
                               (rep.ok() ? std::string() : rep.violations.front().axiom));
  for (ArrowIndex a = 0; a < q.num_arrows(); ++a) {
    if (out.system.occurrences(a).empty()) out.free_arrows.push_back(a);
  }
  return out;
}

/// DOT text: vertex edges solid, colored edges dashed and labeled.
inline std::string export_dot(const PegGraph& g) {
  std::ostringstream os;
  os << "digraph peg {\n  edge [dir=none];\n";
  auto id = [&](NodeIndex n) { return "\"" + g.root_name(n) + "\""; };
  for (NodeIndex n = 0; n < g.roots.size(); ++n) os << "  " << id(n) << ";\n";
  for (NodeIndex n = 0; n < g.roots.size(); ++n) {
    if (g.vertex_nbr[n] && n < *g.vertex_nbr[n]) {
      os << "  " << id(n) << " -> " << id(*g.vertex_nbr[n]) << " [style=solid];\n";
    }
  }
  for (NodeIndex n = 0; n < g.roots.size(); ++n) {
    if (g.colored_nbr[n] && n < g.colored_nbr[n]->first) {
      os << "  " << id(n) << " -> " << id(g.colored_nbr[n]->first)
         << " [style=dashed, label=\"" << g.quiver.arrow(g.colored_nbr[n]->second).id
         << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace gsi
