#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tensorpoly/multipoly.hpp"
#include "tensorpoly/stranded.hpp"

namespace tensorpoly {

// Graph file format:
// {
//   "template": "tetrahedral" | {"leg_order": [...], "slot_order": [[...]x4],
//                                "corner_order": [[...]x4]},
//   "vertices": N,
//   "edges":   [{"id": "e0", "ends": [[v,leg],[v,leg]]}, ...],
//   "flags":   [[v,leg], ...],
//   "passive": ["e2", ...]
// }
// Unknown fields are rejected. The parsed graph is fully validated.
StrandedGraph parse_graph(const nlohmann::json& doc);
StrandedGraph parse_graph_text(const std::string& text);
StrandedGraph load_graph(const std::string& path);

// Deterministic inverse of parse_graph: sorted keys, edges ordered by id,
// ends, flags and passive sets normalized. parse(serialize(g)) == g.
nlohmann::json serialize_graph(const StrandedGraph& g);

nlohmann::json poly_to_json(const MultiPoly& p);

struct BubbleSummary {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int genus = 0;
};

// Full topology report; every field is recomputed from the graph.
struct Report {
  int vertices = 0;
  int edges_active = 0;
  int edges_passive = 0;
  int flags = 0;
  int components = 0;
  int rank = 0;
  int nullity = 0;
  int jacket_faces = 0;
  int jacket_genus = 0;
  std::vector<BubbleSummary> bubbles;
  int bubble_genus_sum = 0;
  bool colorable = false;
  ManifoldVerdict verdict = ManifoldVerdict::Manifold;
};

Report build_report(const StrandedGraph& g);
nlohmann::json report_to_json(const Report& r);
std::string report_to_text(const Report& r);

}  // namespace tensorpoly
