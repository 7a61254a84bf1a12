#pragma once

// JSON and DOT reports for the command-line driver.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsi/error.hpp"
#include "gsi/matching.hpp"
#include "gsi/model.hpp"
#include "gsi/oracle.hpp"
#include "gsi/peg.hpp"
#include "gsi/quiver.hpp"
#include "gsi/rank.hpp"
#include "gsi/relations.hpp"
#include "gsi/si.hpp"

namespace gsi {

using json = nlohmann::json;

struct CommandConfig {
  bool dot = false;
  int cap = 3;
  int relation_cap = 4;
  std::uint64_t seed = 20240611;
};

struct CommandResult {
  std::string text;
  int exit_code = 0;
};

namespace report {

inline json validation(const ValidationReport& r) {
  json v = json::array();
  for (const Violation& x : r.violations) {
    v.push_back({{"axiom", x.axiom}, {"witnesses", x.witnesses}, {"message", x.message}});
  }
  return {{"ok", r.ok()}, {"violations", v}};
}

inline json relation_list(const Quiver& q, const RelationSet& rels) {
  std::vector<std::string> names;
  for (const Composite& p : rels) names.push_back(composite_name(q, p));
  std::sort(names.begin(), names.end());
  return names;
}

inline json coloring(const Quiver& q, const Coloring& c) {
  json colors = json::object();
  json classes = json::array();
  for (ArrowIndex a = 0; a < q.num_arrows(); ++a) colors[q.arrow(a).id] = c[a] + 1;
  for (ColorIndex s = 0; s < c.num_colors(); ++s) {
    json path = json::array();
    for (ArrowIndex a : color_path(q, c, s)) path.push_back(q.arrow(a).id);
    classes.push_back(path);
  }
  return {{"colors", colors}, {"classes", classes}};
}

inline json rank_map(const Quiver& q, const RankSequence& r) {
  json out = json::object();
  for (ArrowIndex a = 0; a < q.num_arrows(); ++a) out[q.arrow(a).id] = r[a];
  return out;
}

inline json named_vector(const std::vector<std::string>& names, const Vec& v) {
  json out = json::object();
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != 0) out[names[j]] = v[j];
  }
  return out;
}

inline json side(const Monomial& mono, const std::vector<std::string>& names) {
  json out = json::array();
  for (std::size_t k = 0; k < mono.size(); ++k) {
    for (int t = 0; t < mono[k]; ++t) out.push_back(names[k]);
  }
  return out;
}

inline json system(const MatchingSystem& sys) {
  json eqs = json::array();
  for (std::size_t i = 0; i < sys.num_equations(); ++i) {
    json l = json::array(), r = json::array();
    for (std::size_t j : sys.lhs[i]) l.push_back(sys.names[j]);
    for (std::size_t j : sys.rhs[i]) r.push_back(sys.names[j]);
    eqs.push_back({{"lhs", l}, {"rhs", r}});
  }
  return {{"variables", sys.names}, {"equations", eqs}};
}

inline json presentation(const Presentation& p) {
  std::vector<std::string> names;
  json gens = json::array();
  for (const Generator& g : p.generators) {
    names.push_back(g.name);
    json entry = {{"name", g.name},
                  {"kind", g.kind},
                  {"vector", g.vector},
                  {"support", named_vector(p.system.names, g.vector)}};
    if (g.walk) entry["walk"] = format_walk(*g.walk, p.system);
    gens.push_back(entry);
  }
  json rels = json::array();
  for (const Relation& r : p.relations) {
    rels.push_back({{"lhs", side(r.lhs, names)},
                    {"rhs", side(r.rhs, names)},
                    {"provenance", r.provenance}});
  }
  json forced = json::array();
  for (std::size_t j : p.forced_zero) forced.push_back(p.system.names[j]);
  return {{"generators", gens},
          {"relations", rels},
          {"forced_zero", forced},
          {"relation_f_cap", p.f_cap}};
}

inline json peg(const PegGraph& g) {
  json roots = json::array();
  for (NodeIndex n = 0; n < g.roots.size(); ++n) roots.push_back(g.root_name(n));
  json vedges = json::array(), cedges = json::array();
  for (NodeIndex n = 0; n < g.roots.size(); ++n) {
    if (g.vertex_nbr[n] && n < *g.vertex_nbr[n]) {
      vedges.push_back({g.root_name(n), g.root_name(*g.vertex_nbr[n])});
    }
    if (g.colored_nbr[n] && n < g.colored_nbr[n]->first) {
      cedges.push_back({{"roots", {g.root_name(n), g.root_name(g.colored_nbr[n]->first)}},
                        {"arrow", g.quiver.arrow(g.colored_nbr[n]->second).id}});
    }
  }
  json comps = json::array();
  for (const PegComponent& c : components(g)) {
    json walk = json::array();
    for (NodeIndex n : c.walk) walk.push_back(g.root_name(n));
    json entry = {{"kind", to_string(c.kind)}, {"roots", walk}};
    if (c.kind == ComponentKind::String) {
      entry["endpoints"] = {classify_endpoint(g, c.endpoints[0]).label(g.quiver),
                            classify_endpoint(g, c.endpoints[1]).label(g.quiver)};
    }
    comps.push_back(entry);
  }
  json ends = json::array();
  for (const Endpoint& e : classify_endpoints(g)) {
    json phi = json::array();
    for (ArrowIndex a : e.phi_coeffs) phi.push_back(g.quiver.arrow(a).id);
    ends.push_back({{"root", g.root_name(e.node)}, {"type", e.label(g.quiver)}, {"phi", phi}});
  }
  return {{"roots", roots},
          {"vertex_edges", vedges},
          {"colored_edges", cedges},
          {"components", comps},
          {"endpoints", ends}};
}

inline json si(const SiPresentation& p) {
  const Quiver& q = p.peg.quiver;
  std::vector<std::string> names;
  for (const SiGenerator& g : p.generators) names.push_back(g.name);
  json gens = json::array();
  for (std::size_t k = 0; k < p.generators.size(); ++k) {
    const SiGenerator& g = p.generators[k];
    json lambda = json::object();
    for (ArrowIndex a = 0; a < q.num_arrows(); ++a) lambda[q.arrow(a).id] = g.lambda[a];
    json sigma = json::object();
    for (VertexIndex x = 0; x < q.num_vertices(); ++x) sigma[q.vertex_id(x)] = g.sigma[x];
    json entry = {{"name", g.name}, {"kind", g.kind},   {"u", named_vector(p.extract.system.names, g.u)},
                  {"y", g.y},       {"lambda", lambda}, {"degree", g.degree},
                  {"sigma", sigma}, {"grade", g.grade}};
    if (k < p.matching.generators.size() && p.matching.generators[k].walk) {
      entry["walk"] = format_walk(*p.matching.generators[k].walk, p.extract.system);
    }
    gens.push_back(entry);
  }
  json rels = json::array();
  for (const SiRelation& r : p.relations) {
    rels.push_back({{"lhs", side(r.lhs, names)},
                    {"rhs", side(r.rhs, names)},
                    {"provenance", r.provenance},
                    {"degree", r.degree}});
  }
  json free_arrows = json::array();
  for (ArrowIndex a : p.extract.free_arrows) free_arrows.push_back(q.arrow(a).id);
  json forced = json::array();
  for (std::size_t j : p.matching.forced_zero) forced.push_back(p.extract.system.names[j]);
  return {{"rank", rank_map(q, p.component_label)},
          {"maximal", p.maximal},
          {"system", system(p.extract.system)},
          {"free_arrows", free_arrows},
          {"forced_zero", forced},
          {"band_variables", p.band_vars},
          {"generators", gens},
          {"relations", rels},
          {"bounds", {{"generators", p.bounds.generators}, {"relations", p.bounds.relations}}},
          {"notes", p.notes}};
}

inline json verify_system(const MatchingSystem& sys, const CommandConfig& cfg) {
  Presentation p = presentation(sys, {cfg.relation_cap});
  std::vector<Vec> walk_vecs;
  for (const Generator& g : p.generators) walk_vecs.push_back(g.vector);
  std::sort(walk_vecs.begin(), walk_vecs.end());
  std::vector<Vec> brute = oracle::minimal_generators_bruteforce(sys, cfg.cap);
  json witnesses = json::array();
  for (const Vec& v : walk_vecs) {
    if (!std::binary_search(brute.begin(), brute.end(), v)) {
      witnesses.push_back({{"walk_only", named_vector(sys.names, v)}});
    }
  }
  for (const Vec& v : brute) {
    if (!std::binary_search(walk_vecs.begin(), walk_vecs.end(), v)) {
      witnesses.push_back({{"oracle_only", named_vector(sys.names, v)}});
    }
  }
  const bool gens_match = walk_vecs == brute;
  std::vector<Vec> gen_list;
  for (const Generator& g : p.generators) gen_list.push_back(g.vector);
  std::vector<Relation> kernel =
      oracle::toric_relations_bruteforce(sys, gen_list, cfg.relation_cap);
  const bool rels_match = oracle::same_congruence(p.relations, kernel);
  if (!rels_match) witnesses.push_back({{"relations", "congruences differ"}});
  int max_f = 0;
  for (const Generator& g : p.generators) max_f = std::max(max_f, f_degree(sys, g.vector));
  return {{"system", system(sys)},
          {"cap", cfg.cap},
          {"relation_f_cap", cfg.relation_cap},
          {"generators_match", gens_match},
          {"relations_match", rels_match},
          {"generator_count", p.generators.size()},
          {"relation_count", p.relations.size()},
          {"oracle_relation_count", kernel.size()},
          {"max_generator_f", max_f},
          {"witnesses", witnesses}};
}

}  // namespace report

namespace detail {

inline Coloring model_coloring(const Model& m) {
  if (m.coloring) return *m.coloring;
  return coloring_from_gentle(m.quiver, m.relations.value_or(RelationSet{}));
}

inline std::vector<RankSequence> model_ranks(const Model& m, const Coloring& c) {
  if (auto r = m.rank()) return {*r};
  return maximal_rank_sequences(m.quiver, c, m.beta());
}

inline void require_quiver(const Model& m, const std::string& cmd) {
  if (m.abstract) throw input_error("'" + cmd + "' needs a quiver model");
}

}  // namespace detail

inline json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

/// Runs one command. Errors become a JSON error object with exit code 1
/// (input or precondition) or 2 (internal invariant).
inline CommandResult run_command(const std::string& cmd, const Model& m,
                                 const CommandConfig& cfg = {}) {
  try {
    json out;
    if (cmd == "validate") {
      if (m.abstract) {
        out = {{"system", report::validation(validate_system(m.system))}};
      } else {
        const Quiver& q = m.quiver;
        if (m.coloring) {
          ValidationReport cr = validate_coloring(q, *m.coloring);
          out["coloring"] = report::validation(cr);
          if (cr.ok()) out["gentle"] = report::validation(is_gentle(q, monochromatic_ideal(q, *m.coloring)));
        }
        if (m.relations) {
          out["relations_gentle"] = report::validation(is_gentle(q, *m.relations));
          out["relations_string_algebra"] = report::validation(is_string_algebra(q, *m.relations));
        }
        if (auto r = m.rank()) {
          Coloring c = detail::model_coloring(m);
          out["rank_sequence"] = is_rank_sequence(q, c, m.beta(), *r);
        }
      }
    } else if (cmd == "color") {
      detail::require_quiver(m, cmd);
      Coloring c = detail::model_coloring(m);
      out = report::coloring(m.quiver, c);
      out["ideal"] = report::relation_list(m.quiver, monochromatic_ideal(m.quiver, c));
    } else if (cmd == "cover") {
      detail::require_quiver(m, cmd);
      if (!m.relations) throw input_error("'cover' needs relations");
      GentleCover gc = gentle_cover(m.quiver, *m.relations);
      out = report::coloring(m.quiver, gc.coloring);
      out["ideal"] = report::relation_list(m.quiver, monochromatic_ideal(m.quiver, gc.coloring));
      out["kernel"] = report::relation_list(m.quiver, gc.kernel);
      out["ambiguous_steps"] = gc.ambiguous_steps;
    } else if (cmd == "components") {
      detail::require_quiver(m, cmd);
      Coloring c = detail::model_coloring(m);
      json list = json::array();
      for (const RankSequence& r : maximal_rank_sequences(m.quiver, c, m.beta())) {
        list.push_back({{"r", report::rank_map(m.quiver, r)}});
      }
      out = {{"components", list}};
    } else if (cmd == "peg") {
      detail::require_quiver(m, cmd);
      Coloring c = detail::model_coloring(m);
      std::string dot;
      json list = json::array();
      for (const RankSequence& r : detail::model_ranks(m, c)) {
        PegGraph g = build_peg(m.quiver, c, m.beta(), r);
        if (cfg.dot) {
          dot += export_dot(g);
        } else {
          json entry = report::peg(g);
          entry["rank"] = report::rank_map(m.quiver, r);
          list.push_back(entry);
        }
      }
      if (cfg.dot) return {dot, 0};
      out = {{"pegs", list}};
    } else if (cmd == "generators" || cmd == "relations" || cmd == "presentation") {
      if (m.abstract) {
        Presentation p = presentation(m.system, {cfg.relation_cap});
        json full = report::presentation(p);
        if (cmd == "generators") {
          out = {{"generators", full["generators"]}, {"forced_zero", full["forced_zero"]}};
        } else if (cmd == "relations") {
          out = {{"relations", full["relations"]}, {"relation_f_cap", full["relation_f_cap"]}};
        } else {
          out = full;
          out["system"] = report::system(m.system);
        }
      } else {
        Coloring c = detail::model_coloring(m);
        json list = json::array();
        for (const RankSequence& r : detail::model_ranks(m, c)) {
          json full = report::si(si_presentation(m.quiver, c, m.beta(), r, {cfg.relation_cap}));
          if (cmd == "generators") {
            list.push_back({{"rank", full["rank"]}, {"generators", full["generators"]}});
          } else if (cmd == "relations") {
            list.push_back({{"rank", full["rank"]}, {"relations", full["relations"]}});
          } else {
            list.push_back(full);
          }
        }
        out = {{"components", list}};
      }
    } else if (cmd == "degrees") {
      detail::require_quiver(m, cmd);
      Coloring c = detail::model_coloring(m);
      json list = json::array();
      for (const RankSequence& r : detail::model_ranks(m, c)) {
        DegreeBounds b = degree_bounds(r);
        list.push_back({{"rank", report::rank_map(m.quiver, r)},
                        {"generators", b.generators},
                        {"relations", b.relations}});
      }
      out = {{"bounds", list}};
    } else if (cmd == "verify") {
      if (m.abstract) {
        out = report::verify_system(m.system, cfg);
      } else {
        Coloring c = detail::model_coloring(m);
        json list = json::array();
        for (const RankSequence& r : detail::model_ranks(m, c)) {
          SiPresentation p = si_presentation(m.quiver, c, m.beta(), r, {cfg.relation_cap});
          json entry = report::verify_system(p.extract.system, cfg);
          bool agree = true;
          for (const SiGenerator& g : p.generators) {
            agree = agree && oracle::verify_si_equations(g.lambda, m.quiver, c, m.beta());
          }
          entry["si_equations_match"] = agree;
          entry["rank"] = report::rank_map(m.quiver, r);
          list.push_back(entry);
        }
        out = {{"components", list}, {"seed", cfg.seed}};
      }
    } else {
      throw input_error("unknown command '" + cmd + "'");
    }
    return {out.dump(2) + "\n", 0};
  } catch (const invariant_error& e) {
    return {error_json("invariant", e.what()).dump(2) + "\n", 2};
  } catch (const precondition_error& e) {
    return {error_json("precondition", e.what()).dump(2) + "\n", 1};
  } catch (const input_error& e) {
    return {error_json("input", e.what()).dump(2) + "\n", 1};
  }
}

}  // namespace gsi
