#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gsi/model.hpp"
#include "gsi/quiver.hpp"

namespace gsi::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) {
  return std::string(GSI_TEST_DATA) + "/" + name;
}

inline Model load(const std::string& name) { return parse_model(read_file(data_path(name))); }

inline Coloring coloring_of(const Model& m) {
  return m.coloring ? *m.coloring : coloring_from_gentle(m.quiver, *m.relations);
}

/// Composites as "ba" strings.
inline std::set<std::string> names(const Quiver& q, const RelationSet& rels) {
  std::set<std::string> out;
  for (const Composite& p : rels) out.insert(composite_name(q, p));
  return out;
}

/// Color classes as sets of arrow ids, independent of color numbering.
inline std::set<std::set<std::string>> classes(const Quiver& q, const Coloring& c) {
  std::set<std::set<std::string>> out;
  for (ColorIndex s = 0; s < c.num_colors(); ++s) {
    std::set<std::string> cls;
    for (ArrowIndex a : c.arrows_of(s)) cls.insert(q.arrow(a).id);
    out.insert(cls);
  }
  return out;
}

inline Vec support(const MatchingSystem& sys, const std::vector<std::string>& vars) {
  Vec v(sys.num_vars(), 0);
  for (const std::string& n : vars) v[*sys.find_var(n)] += 1;
  return v;
}

}  // namespace gsi::test
