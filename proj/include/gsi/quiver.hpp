#pragma once

// Quivers, colorings and monomial relations of length two.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "gsi/error.hpp"

namespace gsi {

using VertexIndex = std::size_t;
using ArrowIndex = std::size_t;
using ColorIndex = std::size_t;

struct Arrow {
  std::string id;
  VertexIndex tail;
  VertexIndex head;
};

/// Finite acyclic quiver without loops. Ids are opaque strings; everything
/// internal works on the dense indices given by declaration order.
class Quiver {
 public:
  Quiver() = default;

  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
      : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    for (VertexIndex v = 0; v < vertices_.size(); ++v) {
      if (!vertex_lookup_.emplace(vertices_[v], v).second) {
        throw input_error("duplicate vertex id '" + vertices_[v] + "'");
      }
    }
    in_.resize(vertices_.size());
    out_.resize(vertices_.size());
    for (ArrowIndex a = 0; a < arrows_.size(); ++a) {
      const Arrow& arr = arrows_[a];
      if (!arrow_lookup_.emplace(arr.id, a).second) {
        throw input_error("duplicate arrow id '" + arr.id + "'");
      }
      if (arr.tail >= vertices_.size() || arr.head >= vertices_.size()) {
        throw input_error("arrow '" + arr.id + "' has an unknown endpoint");
      }
      if (arr.tail == arr.head) {
        throw input_error("arrow '" + arr.id + "' is a loop");
      }
      out_[arr.tail].push_back(a);
      in_[arr.head].push_back(a);
    }
    topo_ = compute_topological_order();
    if (topo_.size() != vertices_.size()) {
      throw input_error("quiver has a directed cycle");
    }
  }

  /// Convenience builder from (arrow id, tail id, head id) triples.
  static Quiver from_ids(
      std::vector<std::string> vertices,
      const std::vector<std::tuple<std::string, std::string, std::string>>&
          arrows) {
    std::map<std::string, VertexIndex, std::less<>> lookup;
    for (VertexIndex v = 0; v < vertices.size(); ++v) lookup.emplace(vertices[v], v);
    std::vector<Arrow> list;
    for (const auto& [id, t, h] : arrows) {
      auto ti = lookup.find(t);
      auto hi = lookup.find(h);
      if (ti == lookup.end() || hi == lookup.end()) {
        throw input_error("arrow '" + id + "' references an unknown vertex");
      }
      list.push_back({id, ti->second, hi->second});
    }
    return Quiver(std::move(vertices), std::move(list));
  }

  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_arrows() const noexcept { return arrows_.size(); }
  const std::string& vertex_id(VertexIndex v) const { return vertices_.at(v); }
  const std::vector<std::string>& vertex_ids() const noexcept { return vertices_; }
  const Arrow& arrow(ArrowIndex a) const { return arrows_.at(a); }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const std::vector<ArrowIndex>& in_arrows(VertexIndex v) const { return in_.at(v); }
  const std::vector<ArrowIndex>& out_arrows(VertexIndex v) const { return out_.at(v); }
  const std::vector<VertexIndex>& topological_order() const noexcept { return topo_; }

  std::optional<VertexIndex> find_vertex(std::string_view id) const {
    auto it = vertex_lookup_.find(id);
    if (it == vertex_lookup_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<ArrowIndex> find_arrow(std::string_view id) const {
    auto it = arrow_lookup_.find(id);
    if (it == arrow_lookup_.end()) return std::nullopt;
    return it->second;
  }
  ArrowIndex arrow_index(std::string_view id) const {
    auto a = find_arrow(id);
    if (!a) throw input_error("unknown arrow id '" + std::string(id) + "'");
    return *a;
  }
  VertexIndex vertex_index(std::string_view id) const {
    auto v = find_vertex(id);
    if (!v) throw input_error("unknown vertex id '" + std::string(id) + "'");
    return *v;
  }

 private:
  std::vector<VertexIndex> compute_topological_order() const {
    std::vector<std::size_t> indeg(vertices_.size());
    for (const Arrow& a : arrows_) ++indeg[a.head];
    std::vector<VertexIndex> order;
    std::vector<VertexIndex> ready;
    for (VertexIndex v = vertices_.size(); v-- > 0;) {
      if (indeg[v] == 0) ready.push_back(v);
    }
    while (!ready.empty()) {
      VertexIndex v = ready.back();
      ready.pop_back();
      order.push_back(v);
      for (ArrowIndex a : out_[v]) {
        if (--indeg[arrows_[a].head] == 0) ready.push_back(arrows_[a].head);
      }
    }
    return order;
  }

  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<ArrowIndex>> in_;
  std::vector<std::vector<ArrowIndex>> out_;
  std::vector<VertexIndex> topo_;
  std::map<std::string, VertexIndex, std::less<>> vertex_lookup_;
  std::map<std::string, ArrowIndex, std::less<>> arrow_lookup_;
};

/// Assignment of a color to every arrow. Color indices are canonical:
/// consecutive from 0, ordered by the smallest arrow id in each class.
class Coloring {
 public:
  Coloring() = default;

  /// `raw` holds an arbitrary class label per arrow.
  static Coloring from_labels(const Quiver& q, const std::vector<std::size_t>& raw) {
    if (raw.size() != q.num_arrows()) {
      throw input_error("coloring does not cover every arrow");
    }
    std::map<std::size_t, std::string> smallest;
    for (ArrowIndex a = 0; a < raw.size(); ++a) {
      auto [it, fresh] = smallest.emplace(raw[a], q.arrow(a).id);
      if (!fresh && q.arrow(a).id < it->second) it->second = q.arrow(a).id;
    }
    std::vector<std::pair<std::string, std::size_t>> order;
    for (const auto& [label, id] : smallest) order.emplace_back(id, label);
    std::sort(order.begin(), order.end());
    std::map<std::size_t, ColorIndex> canon;
    for (ColorIndex c = 0; c < order.size(); ++c) canon[order[c].second] = c;
    Coloring out;
    out.num_colors_ = order.size();
    out.color_of_.reserve(raw.size());
    for (std::size_t label : raw) out.color_of_.push_back(canon[label]);
    return out;
  }

  /// Build from external (arrow id -> color name) pairs.
  static Coloring from_map(const Quiver& q,
                           const std::map<std::string, std::string>& colors) {
    std::vector<std::size_t> raw(q.num_arrows(), 0);
    std::vector<bool> seen(q.num_arrows(), false);
    std::map<std::string, std::size_t> names;
    for (const auto& [arrow_id, color] : colors) {
      ArrowIndex a = q.arrow_index(arrow_id);
      raw[a] = names.emplace(color, names.size()).first->second;
      seen[a] = true;
    }
    for (ArrowIndex a = 0; a < seen.size(); ++a) {
      if (!seen[a]) throw input_error("arrow '" + q.arrow(a).id + "' has no color");
    }
    return from_labels(q, raw);
  }

  std::size_t num_colors() const noexcept { return num_colors_; }
  std::size_t size() const noexcept { return color_of_.size(); }
  ColorIndex operator[](ArrowIndex a) const { return color_of_.at(a); }
  const std::vector<ColorIndex>& colors() const noexcept { return color_of_; }

  std::vector<ArrowIndex> arrows_of(ColorIndex s) const {
    std::vector<ArrowIndex> out;
    for (ArrowIndex a = 0; a < color_of_.size(); ++a) {
      if (color_of_[a] == s) out.push_back(a);
    }
    return out;
  }

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::vector<ColorIndex> color_of_;
  std::size_t num_colors_ = 0;
};

/// The length-two path `outer * inner` (traverse `inner`, then `outer`).
struct Composite {
  ArrowIndex inner;
  ArrowIndex outer;
  auto operator<=>(const Composite&) const = default;
};

using RelationSet = std::set<Composite>;

inline std::string composite_name(const Quiver& q, Composite p) {
  return q.arrow(p.outer).id + q.arrow(p.inner).id;
}

struct Violation {
  std::string axiom;  // "a".."d" or "coloring"
  std::vector<std::string> witnesses;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  bool has(std::string_view axiom) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.axiom == axiom; });
  }
};

/// Checks that every color class is a single directed path.
inline ValidationReport validate_coloring(const Quiver& q, const Coloring& c) {
  if (c.size() != q.num_arrows()) {
    throw input_error("coloring does not cover every arrow");
  }
  ValidationReport report;
  for (ColorIndex s = 0; s < c.num_colors(); ++s) {
    std::vector<ArrowIndex> arrows = c.arrows_of(s);
    std::map<VertexIndex, std::vector<ArrowIndex>> ins, outs;
    for (ArrowIndex a : arrows) {
      ins[q.arrow(a).head].push_back(a);
      outs[q.arrow(a).tail].push_back(a);
    }
    std::vector<std::string> ids;
    for (ArrowIndex a : arrows) ids.push_back(q.arrow(a).id);
    bool branching = false;
    for (const auto* side : {&ins, &outs}) {
      for (const auto& [v, list] : *side) {
        if (list.size() > 1) branching = true;
      }
    }
    if (branching) {
      report.violations.push_back(
          {"coloring", ids,
           "color " + std::to_string(s + 1) + " branches at a vertex"});
      continue;
    }
    // No branching and acyclic: the class is a disjoint union of paths.
    // It is a single path iff exactly one arrow has no predecessor.
    std::size_t starts = 0;
    for (ArrowIndex a : arrows) {
      if (!ins.contains(q.arrow(a).tail)) ++starts;
    }
    if (starts != 1) {
      report.violations.push_back(
          {"coloring", ids,
           "color " + std::to_string(s + 1) + " is not a connected path"});
    }
  }
  return report;
}

/// All monochromatic composable pairs.
inline RelationSet monochromatic_ideal(const Quiver& q, const Coloring& c) {
  if (!validate_coloring(q, c).ok()) {
    throw precondition_error("monochromatic_ideal: invalid coloring");
  }
  RelationSet out;
  for (ArrowIndex a = 0; a < q.num_arrows(); ++a) {
    for (ArrowIndex b : q.out_arrows(q.arrow(a).head)) {
      if (c[a] == c[b]) out.insert({a, b});
    }
  }
  return out;
}

namespace detail {

inline void check_degree_axiom(const Quiver& q, ValidationReport& report) {
  for (VertexIndex v = 0; v < q.num_vertices(); ++v) {
    if (q.in_arrows(v).size() > 2 || q.out_arrows(v).size() > 2) {
      report.violations.push_back(
          {"a", {q.vertex_id(v)}, "vertex has more than two in- or out-arrows"});
    }
  }
}

inline void check_composable(const Quiver& q, const RelationSet& rels,
                             ValidationReport& report) {
  for (const Composite& p : rels) {
    if (p.inner >= q.num_arrows() || p.outer >= q.num_arrows() ||
        q.arrow(p.inner).head != q.arrow(p.outer).tail) {
      report.violations.push_back(
          {"d", {}, "relation is not a composable path of length 2"});
    }
  }
}

// Axioms (b) [in_ideal == false] and (c) [in_ideal == true].
inline void check_continuation_axiom(const Quiver& q, const RelationSet& rels,
                                     bool in_ideal, ValidationReport& report) {
  const std::string tag = in_ideal ? "c" : "b";
  for (ArrowIndex b = 0; b < q.num_arrows(); ++b) {
    std::vector<std::string> after, before;
    for (ArrowIndex a : q.out_arrows(q.arrow(b).head)) {
      if (rels.contains({b, a}) == in_ideal) after.push_back(q.arrow(a).id);
    }
    for (ArrowIndex c : q.in_arrows(q.arrow(b).tail)) {
      if (rels.contains({c, b}) == in_ideal) before.push_back(q.arrow(c).id);
    }
    const std::string what = in_ideal ? "in" : "not in";
    if (after.size() > 1) {
      after.insert(after.begin(), q.arrow(b).id);
      report.violations.push_back(
          {tag, after, "several arrows continue '" + q.arrow(b).id +
                           "' with the composite " + what + " the ideal"});
    }
    if (before.size() > 1) {
      before.insert(before.begin(), q.arrow(b).id);
      report.violations.push_back(
          {tag, before, "several arrows precede '" + q.arrow(b).id +
                            "' with the composite " + what + " the ideal"});
    }
  }
}

}  // namespace detail

/// Checks the gentle axioms (a)-(d).
inline ValidationReport is_gentle(const Quiver& q, const RelationSet& rels) {
  ValidationReport report;
  detail::check_degree_axiom(q, report);
  detail::check_composable(q, rels, report);
  if (report.has("d")) return report;
  detail::check_continuation_axiom(q, rels, false, report);
  detail::check_continuation_axiom(q, rels, true, report);
  return report;
}

/// Checks the string-algebra axioms (a), (b) and composability.
inline ValidationReport is_string_algebra(const Quiver& q, const RelationSet& rels) {
  ValidationReport report;
  detail::check_degree_axiom(q, report);
  detail::check_composable(q, rels, report);
  if (report.has("d")) return report;
  detail::check_continuation_axiom(q, rels, false, report);
  return report;
}

/// Coloring whose monochromatic ideal is exactly `rels`. Colors are the
/// maximal chains p_1, p_2, ... with p_{i+1} p_i in the ideal.
inline Coloring coloring_from_gentle(const Quiver& q, const RelationSet& rels) {
  if (!is_gentle(q, rels).ok()) {
    throw precondition_error("coloring_from_gentle: relations are not gentle");
  }
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(q.num_arrows(), unset);
  std::size_t next = 0;
  for (ArrowIndex a = 0; a < q.num_arrows(); ++a) {
    bool has_predecessor = false;
    for (ArrowIndex b : q.in_arrows(q.arrow(a).tail)) {
      if (rels.contains({b, a})) has_predecessor = true;
    }
    if (has_predecessor) continue;
    std::optional<ArrowIndex> cur = a;
    while (cur) {
      label[*cur] = next;
      std::optional<ArrowIndex> succ;
      for (ArrowIndex b : q.out_arrows(q.arrow(*cur).head)) {
        if (rels.contains({*cur, b})) succ = b;
      }
      cur = succ;
    }
    ++next;
  }
  detail::ensure(std::find(label.begin(), label.end(), unset) == label.end(),
                 "coloring_from_gentle: arrow left uncolored");
  return Coloring::from_labels(q, label);
}

struct GentleCover {
  Coloring coloring;
  /// Relations of the input that are not monochromatic.
  RelationSet kernel;
  /// Steps where both continuation candidates were blocked by the same
  /// incoming arrow; resolved by the smallest arrow id.
  std::vector<std::string> ambiguous_steps;
};

/// Colors a string algebra so that kQ/I_c is gentle and surjects onto kQ/I.
/// Paths are peeled off one at a time, starting at a source of the remaining
/// quiver and following relations.
inline GentleCover gentle_cover(const Quiver& q, const RelationSet& rels) {
  if (!is_string_algebra(q, rels).ok()) {
    throw precondition_error("gentle_cover: input is not a string algebra");
  }
  GentleCover result;
  std::vector<bool> removed(q.num_arrows(), false);
  std::vector<std::size_t> label(q.num_arrows(), 0);
  auto id_less = [&](ArrowIndex x, ArrowIndex y) {
    return q.arrow(x).id < q.arrow(y).id;
  };
  auto live_in = [&](VertexIndex v) {
    std::vector<ArrowIndex> out;
    for (ArrowIndex a : q.in_arrows(v)) {
      if (!removed[a]) out.push_back(a);
    }
    return out;
  };
  std::size_t remaining = q.num_arrows();
  std::size_t color = 0;
  while (remaining > 0) {
    std::optional<ArrowIndex> first;
    for (ArrowIndex a = 0; a < q.num_arrows(); ++a) {
      if (removed[a] || !live_in(q.arrow(a).tail).empty()) continue;
      if (!first || id_less(a, *first)) first = a;
    }
    detail::ensure(first.has_value(), "gentle_cover: no source arrow found");
    std::vector<ArrowIndex> path{*first};
    while (true) {
      ArrowIndex cur = path.back();
      VertexIndex h = q.arrow(cur).head;
      std::vector<ArrowIndex> next;
      for (ArrowIndex b : q.out_arrows(h)) {
        if (!removed[b] && rels.contains({cur, b}) &&
            std::find(path.begin(), path.end(), b) == path.end()) {
          next.push_back(b);
        }
      }
      std::sort(next.begin(), next.end(), id_less);
      if (next.empty()) break;
      if (next.size() == 1) {
        path.push_back(next.front());
        continue;
      }
      // Two candidates. Avoid the one that another live arrow into h needs.
      std::vector<bool> blocked(next.size(), false);
      for (ArrowIndex other : live_in(h)) {
        if (other == cur) continue;
        for (std::size_t k = 0; k < next.size(); ++k) {
          if (rels.contains({other, next[k]})) blocked[k] = true;
        }
      }
      ArrowIndex pick = next.front();
      if (blocked[0] && !blocked[1]) {
        pick = next[1];
      } else if (blocked[0] && blocked[1]) {
        result.ambiguous_steps.push_back("after '" + q.arrow(cur).id + "': both '" +
                                         q.arrow(next[0]).id + "' and '" +
                                         q.arrow(next[1]).id + "' are blocked");
      }
      path.push_back(pick);
    }
    for (ArrowIndex a : path) {
      removed[a] = true;
      label[a] = color;
      --remaining;
    }
    ++color;
  }
  result.coloring = Coloring::from_labels(q, label);
  RelationSet ic = monochromatic_ideal(q, result.coloring);
  for (const Composite& p : ic) {
    detail::ensure(rels.contains(p), "gentle_cover: colored path leaves the ideal");
  }
  for (const Composite& p : rels) {
    if (!ic.contains(p)) result.kernel.insert(p);
  }
  detail::ensure(is_gentle(q, ic).ok(), "gentle_cover: result is not gentle");
  return result;
}

}  // namespace gsi
