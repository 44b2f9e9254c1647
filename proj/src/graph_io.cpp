#include "tensorpoly/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tensorpoly/errors.hpp"

namespace tensorpoly {

namespace {

using nlohmann::json;

void reject_unknown_fields(const json& obj, const std::vector<std::string>& allowed,
                           const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ParseError("unknown field \"" + it.key() + "\" in " + where);
  }
}

StrandedGraph::End parse_end(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ParseError(where + " must be a [vertex, leg] pair");
  return {j[0].get<int>(), j[1].get<int>()};
}

VertexTemplate parse_template(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "tetrahedral") return VertexTemplate::tetrahedral();
    throw ParseError("unknown template name \"" + j.get<std::string>() + "\"");
  }
  if (!j.is_object()) throw ParseError("template must be a name or an inline table");
  reject_unknown_fields(j, {"leg_order", "slot_order", "corner_order"}, "template");
  VertexTemplate t;
  auto read4x = [&](const char* key, auto& target, int row_len) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 4)
      throw ParseError(std::string("template.") + key + " must be an array of 4 rows");
    for (int i = 0; i < 4; ++i) {
      const json& row = j[key][i];
      if (!row.is_array() || static_cast<int>(row.size()) != row_len)
        throw ParseError(std::string("template.") + key + " rows must have " +
                         std::to_string(row_len) + " entries");
      for (int k = 0; k < row_len; ++k) {
        if (!row[k].is_number_integer())
          throw ParseError(std::string("template.") + key + " entries must be integers");
        target[i][k] = row[k].get<int>();
      }
    }
  };
  if (!j.contains("leg_order") || !j["leg_order"].is_array() || j["leg_order"].size() != 4)
    throw ParseError("template.leg_order must be an array of 4 legs");
  for (int i = 0; i < 4; ++i) t.leg_order[i] = j["leg_order"][i].get<int>();
  std::array<std::array<int, 3>, 4> slot{}, corner{};
  read4x("slot_order", slot, 3);
  read4x("corner_order", corner, 3);
  t.slot_targets = slot;
  t.corner_legs = corner;
  t.validate();
  return t;
}

json template_to_json(const VertexTemplate& t) {
  if (t == VertexTemplate::tetrahedral()) return json("tetrahedral");
  json out;
  out["leg_order"] = t.leg_order;
  out["slot_order"] = t.slot_targets;
  out["corner_order"] = t.corner_legs;
  return out;
}

}  // namespace

StrandedGraph parse_graph(const json& doc) {
  if (!doc.is_object()) throw ParseError("graph file must be a JSON object");
  reject_unknown_fields(doc, {"template", "vertices", "edges", "flags", "passive"}, "graph file");

  VertexTemplate tmpl =
      doc.contains("template") ? parse_template(doc["template"]) : VertexTemplate::tetrahedral();

  if (!doc.contains("vertices") || !doc["vertices"].is_number_integer())
    throw ParseError("\"vertices\" must be an integer");
  int vertices = doc["vertices"].get<int>();

  std::vector<StrandedGraph::Edge> edges;
  std::set<std::string> ids;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw ParseError("\"edges\" must be an array");
    for (const json& je : doc["edges"]) {
      if (!je.is_object()) throw ParseError("edge entries must be objects");
      reject_unknown_fields(je, {"id", "ends"}, "edge");
      if (!je.contains("id") || !je["id"].is_string())
        throw ParseError("edge entries need a string \"id\"");
      std::string id = je["id"].get<std::string>();
      if (!ids.insert(id).second) throw ParseError("duplicate edge id " + id);
      if (!je.contains("ends") || !je["ends"].is_array() || je["ends"].size() != 2)
        throw ParseError("edge " + id + " needs \"ends\": [[v,leg],[v,leg]]");
      edges.push_back({id, parse_end(je["ends"][0], "edge " + id + " end"),
                       parse_end(je["ends"][1], "edge " + id + " end")});
    }
  }

  std::vector<StrandedGraph::Flag> flags;
  if (doc.contains("flags")) {
    if (!doc["flags"].is_array()) throw ParseError("\"flags\" must be an array");
    int n = 0;
    for (const json& jf : doc["flags"])
      flags.push_back({"f" + std::to_string(n++), parse_end(jf, "flag")});
  }

  std::set<std::string> passive;
  if (doc.contains("passive")) {
    if (!doc["passive"].is_array()) throw ParseError("\"passive\" must be an array");
    for (const json& jp : doc["passive"]) {
      if (!jp.is_string()) throw ParseError("\"passive\" entries must be edge ids");
      if (!ids.count(jp.get<std::string>()))
        throw ParseError("passive set names unknown edge " + jp.get<std::string>());
      passive.insert(jp.get<std::string>());
    }
  }

  try {
    return StrandedGraph(tmpl, vertices, std::move(edges), std::move(flags), std::move(passive));
  } catch (const StructureError& err) {
    throw ParseError(std::string("invalid graph: ") + err.what());
  }
}

StrandedGraph parse_graph_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(std::string("malformed JSON: ") + err.what());
  }
  return parse_graph(doc);
}

StrandedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_graph_text(buffer.str());
}

json serialize_graph(const StrandedGraph& g) {
  json out;
  out["template"] = template_to_json(g.tmpl());
  out["vertices"] = g.vertex_count();

  std::vector<StrandedGraph::Edge> edges = g.edges();
  for (StrandedGraph::Edge& e : edges)
    if (std::pair{e.b.vertex, e.b.leg} < std::pair{e.a.vertex, e.a.leg}) std::swap(e.a, e.b);
  std::sort(edges.begin(), edges.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  out["edges"] = json::array();
  for (const StrandedGraph::Edge& e : edges) {
    json je;
    je["id"] = e.id;
    je["ends"] = {{e.a.vertex, e.a.leg}, {e.b.vertex, e.b.leg}};
    out["edges"].push_back(je);
  }

  std::vector<std::pair<int, int>> flags;
  for (const StrandedGraph::Flag& f : g.flags()) flags.push_back({f.at.vertex, f.at.leg});
  std::sort(flags.begin(), flags.end());
  out["flags"] = flags;

  out["passive"] = std::vector<std::string>(g.passive().begin(), g.passive().end());
  return out;
}

json poly_to_json(const MultiPoly& p) {
  json out = json::array();
  const auto& terms = p.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    json term;
    term["coeff"] = it->second.get_str();
    term["exponents"] = json::object();
    for (const auto& [name, e] : it->first.exponents()) term["exponents"][name] = e;
    out.push_back(term);
  }
  return out;
}

Report build_report(const StrandedGraph& g) {
  Report r;
  r.vertices = g.vertex_count();
  r.edges_passive = static_cast<int>(g.passive().size());
  r.edges_active = static_cast<int>(g.edges().size()) - r.edges_passive;
  r.flags = static_cast<int>(g.flags().size());

  Multigraph underlying = g.underlying_multigraph();
  r.components = components(underlying);
  r.rank = rank(underlying);
  r.nullity = nullity(underlying);

  GenusReport jr = euler_genus(g.jacket());
  r.jacket_faces = trace_boundaries(g.jacket()).faces;
  for (const ComponentTopology& c : jr.components) r.jacket_genus += c.genus;

  BubbleSet bs = g.bubbles();
  for (const Bubble& b : bs.bubbles)
    r.bubbles.push_back({b.vertices, b.edges, b.faces, b.genus});
  r.bubble_genus_sum = bs.genus_sum;

  r.colorable = g.find_coloring().has_value();
  r.verdict = g.is_manifold_dual();
  return r;
}

json report_to_json(const Report& r) {
  json out;
  out["vertices"] = r.vertices;
  out["edges"] = {{"active", r.edges_active}, {"passive", r.edges_passive}};
  out["flags"] = r.flags;
  out["components"] = r.components;
  out["rank"] = r.rank;
  out["nullity"] = r.nullity;
  out["jacket"] = {{"faces", r.jacket_faces}, {"genus", r.jacket_genus}};
  json bubbles = json::array();
  for (const BubbleSummary& b : r.bubbles)
    bubbles.push_back({{"vertices", b.vertices}, {"edges", b.edges}, {"faces", b.faces},
                       {"genus", b.genus}});
  out["bubbles"] = {{"count", r.bubbles.size()}, {"list", bubbles},
                    {"genus_sum", r.bubble_genus_sum}};
  out["colorable"] = r.colorable;
  out["manifold"] = r.verdict == ManifoldVerdict::Manifold ? "manifold" : "pseudo_manifold";
  return out;
}

std::string report_to_text(const Report& r) {
  std::ostringstream os;
  os << "vertices:        " << r.vertices << "\n";
  os << "edges:           " << r.edges_active << " active, " << r.edges_passive << " passive\n";
  os << "flags:           " << r.flags << "\n";
  os << "components:      " << r.components << "\n";
  os << "rank:            " << r.rank << "\n";
  os << "nullity:         " << r.nullity << "\n";
  os << "jacket faces:    " << r.jacket_faces << "\n";
  os << "jacket genus:    " << r.jacket_genus << "\n";
  os << "bubbles:         " << r.bubbles.size() << "\n";
  for (const BubbleSummary& b : r.bubbles)
    os << "  (V=" << b.vertices << ", E=" << b.edges << ", F=" << b.faces << ", g=" << b.genus
       << ")\n";
  os << "bubble genus sum: " << r.bubble_genus_sum << "\n";
  os << "colorable:       " << (r.colorable ? "yes" : "no") << "\n";
  os << "manifold:        "
     << (r.verdict == ManifoldVerdict::Manifold ? "manifold" : "pseudo_manifold") << "\n";
  return os.str();
}

}  // namespace tensorpoly
