#pragma once

// Incidences, dimension vectors, rank sequences and irreducible components.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "gsi/error.hpp"
#include "gsi/quiver.hpp"

namespace gsi {

using DimensionVector = std::vector<int>;  // indexed by vertex
using RankSequence = std::vector<int>;     // indexed by arrow

/// A pair (x, s) with some arrow of color s touching x.
struct Incidence {
  VertexIndex vertex;
  ColorIndex color;
  std::optional<ArrowIndex> in;   // i(x,s)
  std::optional<ArrowIndex> out;  // o(x,s)
};

/// All incidences sorted by (vertex, color).
inline std::vector<Incidence> incidences(const Quiver& q, const Coloring& c) {
  std::vector<Incidence> out;
  for (VertexIndex x = 0; x < q.num_vertices(); ++x) {
    std::vector<Incidence> here;
    auto slot = [&](ColorIndex s) -> Incidence& {
      for (Incidence& inc : here) {
        if (inc.color == s) return inc;
      }
      here.push_back({x, s, std::nullopt, std::nullopt});
      return here.back();
    };
    for (ArrowIndex a : q.in_arrows(x)) slot(c[a]).in = a;
    for (ArrowIndex a : q.out_arrows(x)) slot(c[a]).out = a;
    std::sort(here.begin(), here.end(),
              [](const Incidence& l, const Incidence& r) { return l.color < r.color; });
    out.insert(out.end(), here.begin(), here.end());
  }
  return out;
}

inline int rank_or_zero(const RankSequence& r, std::optional<ArrowIndex> a) {
  return a ? r[*a] : 0;
}

namespace detail {
inline void check_sizes(const Quiver& q, const DimensionVector& beta) {
  if (beta.size() != q.num_vertices()) {
    throw input_error("dimension vector does not cover every vertex");
  }
  for (int b : beta) {
    if (b < 0) throw input_error("dimension vector has a negative entry");
  }
}
inline void check_sizes(const Quiver& q, const DimensionVector& beta,
                        const RankSequence& r) {
  check_sizes(q, beta);
  if (r.size() != q.num_arrows()) {
    throw input_error("rank sequence does not cover every arrow");
  }
}
}  // namespace detail

inline bool is_rank_sequence(const Quiver& q, const Coloring& c,
                             const DimensionVector& beta, const RankSequence& r) {
  detail::check_sizes(q, beta, r);
  if (std::any_of(r.begin(), r.end(), [](int v) { return v < 0; })) return false;
  for (const Incidence& inc : incidences(q, c)) {
    if (rank_or_zero(r, inc.in) + rank_or_zero(r, inc.out) > beta[inc.vertex]) {
      return false;
    }
  }
  return true;
}

struct ColorRestriction {
  ColorIndex color;
  std::vector<VertexIndex> vertex_path;
  std::vector<ArrowIndex> arrow_path;
  std::vector<int> beta_s;
  std::vector<int> r_s;
};

/// The arrows of color s in path order.
inline std::vector<ArrowIndex> color_path(const Quiver& q, const Coloring& c,
                                          ColorIndex s) {
  if (s >= c.num_colors()) {
    throw input_error("unknown color " + std::to_string(s + 1));
  }
  std::vector<ArrowIndex> arrows = c.arrows_of(s);
  std::optional<ArrowIndex> first;
  for (ArrowIndex a : arrows) {
    bool has_pred = std::any_of(arrows.begin(), arrows.end(), [&](ArrowIndex b) {
      return q.arrow(b).head == q.arrow(a).tail;
    });
    if (!has_pred) first = a;
  }
  if (!first) throw precondition_error("color class is not a path");
  std::vector<ArrowIndex> path{*first};
  while (path.size() < arrows.size()) {
    VertexIndex h = q.arrow(path.back()).head;
    auto it = std::find_if(arrows.begin(), arrows.end(),
                           [&](ArrowIndex b) { return q.arrow(b).tail == h; });
    if (it == arrows.end()) throw precondition_error("color class is not a path");
    path.push_back(*it);
  }
  return path;
}

inline ColorRestriction restrict_to_color(const Quiver& q, const Coloring& c,
                                          const DimensionVector& beta,
                                          const RankSequence& r, ColorIndex s) {
  detail::check_sizes(q, beta, r);
  ColorRestriction out{s, {}, color_path(q, c, s), {}, {}};
  out.vertex_path.push_back(q.arrow(out.arrow_path.front()).tail);
  for (ArrowIndex a : out.arrow_path) {
    out.vertex_path.push_back(q.arrow(a).head);
    out.r_s.push_back(r[a]);
  }
  for (VertexIndex v : out.vertex_path) out.beta_s.push_back(beta[v]);
  return out;
}

namespace detail {

// Maximal admissible rank vectors along one colored path with vertex
// dimensions b_0..b_k: r_j + r_{j+1} <= b_j, with r_0 = r_{k+1} = 0.
inline std::vector<std::vector<int>> maximal_on_path(const std::vector<int>& b) {
  const std::size_t k = b.size() - 1;
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k, 0);
  auto admissible_at = [&](std::size_t j, int value) {
    int prev = j == 0 ? 0 : cur[j - 1];
    return prev + value <= b[j] && value <= b[j + 1];
  };
  auto dfs = [&](auto&& self, std::size_t j) -> void {
    if (j == k) {
      for (std::size_t t = 0; t < k; ++t) {
        int prev = t == 0 ? 0 : cur[t - 1];
        int next = t + 1 == k ? 0 : cur[t + 1];
        if (prev + cur[t] + 1 <= b[t] && cur[t] + 1 + next <= b[t + 1]) return;
      }
      out.push_back(cur);
      return;
    }
    for (int v = std::min(b[j], b[j + 1]); v >= 0; --v) {
      if (!admissible_at(j, v)) continue;
      cur[j] = v;
      self(self, j + 1);
    }
    cur[j] = 0;
  };
  dfs(dfs, 0);
  return out;
}

}  // namespace detail

/// All maximal rank sequences, one per irreducible component, in descending
/// lexicographic order of (r(a)) listed by arrow id.
inline std::vector<RankSequence> maximal_rank_sequences(const Quiver& q,
                                                        const Coloring& c,
                                                        const DimensionVector& beta) {
  detail::check_sizes(q, beta);
  std::vector<RankSequence> acc{RankSequence(q.num_arrows(), 0)};
  for (ColorIndex s = 0; s < c.num_colors(); ++s) {
    std::vector<ArrowIndex> path = color_path(q, c, s);
    std::vector<int> b{beta[q.arrow(path.front()).tail]};
    for (ArrowIndex a : path) b.push_back(beta[q.arrow(a).head]);
    std::vector<RankSequence> next;
    for (const std::vector<int>& local : detail::maximal_on_path(b)) {
      for (RankSequence r : acc) {
        for (std::size_t j = 0; j < path.size(); ++j) r[path[j]] = local[j];
        next.push_back(std::move(r));
      }
    }
    acc = std::move(next);
  }
  std::vector<ArrowIndex> by_id(q.num_arrows());
  for (ArrowIndex a = 0; a < by_id.size(); ++a) by_id[a] = a;
  std::sort(by_id.begin(), by_id.end(),
            [&](ArrowIndex x, ArrowIndex y) { return q.arrow(x).id < q.arrow(y).id; });
  auto key = [&](const RankSequence& r) {
    std::vector<int> k;
    for (ArrowIndex a : by_id) k.push_back(r[a]);
    return k;
  };
  std::sort(acc.begin(), acc.end(),
            [&](const RankSequence& x, const RankSequence& y) { return key(x) > key(y); });
  return acc;
}

/// True if no admissible sequence strictly dominates r.
inline bool is_maximal_rank_sequence(const Quiver& q, const Coloring& c,
                                     const DimensionVector& beta, const RankSequence& r) {
  if (!is_rank_sequence(q, c, beta, r)) return false;
  RankSequence bumped = r;
  for (ArrowIndex a = 0; a < r.size(); ++a) {
    ++bumped[a];
    bool ok = is_rank_sequence(q, c, beta, bumped);
    --bumped[a];
    if (ok) return false;
  }
  return true;
}

}  // namespace gsi
