#include "tensorpoly/ribbon.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "tensorpoly/errors.hpp"

namespace tensorpoly {

RibbonGraph::RibbonGraph(std::vector<std::vector<int>> rotations, std::vector<Edge> edges)
    : rotations_(std::move(rotations)), edges_(std::move(edges)) {
  int n_halves = 0;
  for (const auto& rot : rotations_) n_halves += static_cast<int>(rot.size());
  partner_.assign(n_halves, -1);
  half_vertex_.assign(n_halves, -1);

  for (int v = 0; v < static_cast<int>(rotations_.size()); ++v) {
    for (int h : rotations_[v]) {
      if (h < 0 || h >= n_halves) throw StructureError("half-edge id out of range");
      if (half_vertex_[h] != -1) throw StructureError("half-edge appears twice in rotations");
      half_vertex_[h] = v;
    }
  }
  for (int h = 0; h < n_halves; ++h)
    if (half_vertex_[h] == -1) throw StructureError("half-edge missing from rotations");

  std::set<std::string> ids;
  for (const Edge& e : edges_) {
    if (!ids.insert(e.id).second) throw StructureError("duplicate ribbon edge id " + e.id);
    if (e.h1 == e.h2) throw StructureError("edge " + e.id + " pairs a half-edge with itself");
    for (int h : {e.h1, e.h2}) {
      if (h < 0 || h >= n_halves) throw StructureError("edge " + e.id + " references a missing half-edge");
      if (partner_[h] != -1) throw StructureError("half-edge matched twice (edge " + e.id + ")");
    }
    partner_[e.h1] = e.h2;
    partner_[e.h2] = e.h1;
  }
}

int RibbonGraph::edge_index(const std::string& id) const {
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i)
    if (edges_[i].id == id) return i;
  throw InputError("unknown edge id " + id);
}

const RibbonGraph::Edge& RibbonGraph::edge(const std::string& id) const {
  return edges_[edge_index(id)];
}

Multigraph RibbonGraph::underlying_multigraph() const {
  std::vector<Multigraph::Edge> edges;
  for (const Edge& e : edges_)
    edges.push_back({e.id, half_vertex_[e.h1], half_vertex_[e.h2]});
  std::vector<Multigraph::Flag> flags;
  int n = 0;
  for (int h = 0; h < half_edge_count(); ++h)
    if (partner_[h] < 0) flags.push_back({"f" + std::to_string(n++), half_vertex_[h]});
  return Multigraph(vertex_count(), std::move(edges), std::move(flags));
}

namespace {

// Face tracing with flags skipped. The per-vertex effective rotation
// keeps matched half-edges only; next(h) = successor of partner(h).
struct Tracer {
  const RibbonGraph& g;
  std::vector<int> next_matched;  // successor among matched halves, -1 if none
  explicit Tracer(const RibbonGraph& g_) : g(g_), next_matched(g.half_edge_count(), -1) {
    for (const auto& rot : g.rotations()) {
      std::vector<int> matched;
      for (int h : rot)
        if (!g.is_flag(h)) matched.push_back(h);
      for (std::size_t i = 0; i < matched.size(); ++i)
        next_matched[matched[i]] = matched[(i + 1) % matched.size()];
    }
  }
};

}  // namespace

BoundaryReport trace_boundaries(const RibbonGraph& g) {
  Tracer tracer(g);
  BoundaryReport report;
  std::vector<bool> visited(g.half_edge_count(), false);
  for (int start = 0; start < g.half_edge_count(); ++start) {
    if (g.is_flag(start) || visited[start]) continue;
    std::vector<int> walk;
    int h = start;
    do {
      visited[h] = true;
      walk.push_back(h);
      h = tracer.next_matched[g.partner(h)];
    } while (h != start);
    report.walks.push_back(std::move(walk));
  }
  // A vertex with no matched half-edge is a bare disk: one boundary circle.
  for (const auto& rot : g.rotations()) {
    bool has_matched = false;
    for (int h : rot)
      if (!g.is_flag(h)) has_matched = true;
    if (!has_matched) report.walks.push_back({});
  }
  report.faces = static_cast<int>(report.walks.size());
  return report;
}

namespace {

std::vector<int> vertex_component_labels(const RibbonGraph& g) {
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const RibbonGraph::Edge& e : g.edges())
    parent[find(g.vertex_of(e.h1))] = find(g.vertex_of(e.h2));
  std::vector<int> label(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) label[v] = find(v);
  return label;
}

}  // namespace

GenusReport euler_genus(const RibbonGraph& g) {
  std::vector<int> label = vertex_component_labels(g);
  std::map<int, ComponentTopology> comps;
  for (int v = 0; v < g.vertex_count(); ++v) comps[label[v]].vertices += 1;
  for (const RibbonGraph::Edge& e : g.edges()) comps[label[g.vertex_of(e.h1)]].edges += 1;

  BoundaryReport boundaries = trace_boundaries(g);
  for (const auto& walk : boundaries.walks)
    if (!walk.empty()) comps[label[g.vertex_of(walk.front())]].faces += 1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    bool has_matched = false;
    for (int h : g.rotations()[v])
      if (!g.is_flag(h)) has_matched = true;
    if (!has_matched) comps[label[v]].faces += 1;
  }

  GenusReport report;
  for (auto& [root, c] : comps) {
    c.chi = c.vertices - c.edges + c.faces;
    if ((2 - c.chi) % 2 != 0)
      throw StructureError("odd Euler characteristic: non-orientable rotation data");
    c.genus = (2 - c.chi) / 2;
    if (c.genus < 0) throw StructureError("negative genus: corrupted rotation data");
    report.total_genus += c.genus;
    report.components.push_back(c);
  }
  return report;
}

namespace {

RibbonGraph restrict_to(const RibbonGraph& g, std::uint64_t edge_mask) {
  // Keeps flags; drops half-edges of excluded edges entirely.
  std::vector<bool> keep_half(g.half_edge_count(), true);
  for (int i = 0; i < g.edge_count(); ++i) {
    if (!(edge_mask >> i & 1ull)) {
      keep_half[g.edges()[i].h1] = false;
      keep_half[g.edges()[i].h2] = false;
    }
  }
  std::vector<int> new_id(g.half_edge_count(), -1);
  int next = 0;
  for (int h = 0; h < g.half_edge_count(); ++h)
    if (keep_half[h]) new_id[h] = next++;
  std::vector<std::vector<int>> rotations(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int h : g.rotations()[v])
      if (keep_half[h]) rotations[v].push_back(new_id[h]);
  std::vector<RibbonGraph::Edge> edges;
  for (int i = 0; i < g.edge_count(); ++i)
    if (edge_mask >> i & 1ull)
      edges.push_back({g.edges()[i].id, new_id[g.edges()[i].h1], new_id[g.edges()[i].h2]});
  return RibbonGraph(std::move(rotations), std::move(edges));
}

}  // namespace

MultiPoly br_polynomial(const RibbonGraph& g) {
  const int n_edges = g.edge_count();
  if (n_edges > 30) throw InputError("subset sum limited to 30 edges");
  const Multigraph underlying = g.underlying_multigraph();
  const int rg = rank(underlying);

  std::vector<MultiPoly> pow_x(rg + 1);
  const MultiPoly xm1 = MultiPoly::variable("x") - MultiPoly(1);
  for (int i = 0; i <= rg; ++i) pow_x[i] = xm1.pow(i);

  MultiPoly total;
  for (std::uint64_t mask = 0; mask < (1ull << n_edges); ++mask) {
    RibbonGraph sub = restrict_to(g, mask);
    Multigraph sub_underlying = sub.underlying_multigraph();
    int k = components(sub_underlying);
    int r = g.vertex_count() - k;
    int n = sub.edge_count() - r;
    int f = trace_boundaries(sub).faces;
    int zexp = k - f + n;
    if (zexp < 0) throw StructureError("negative z-exponent: corrupted rotation data");
    Monomial m;
    m.set("y", n);
    m.set("z", zexp);
    total.add_shifted(pow_x[rg - r], m);
  }
  return total;
}

MultiPoly multivariate_br(const RibbonGraph& g) {
  const int n_edges = g.edge_count();
  if (n_edges > 30) throw InputError("subset sum limited to 30 edges");
  MultiPoly total;
  for (std::uint64_t mask = 0; mask < (1ull << n_edges); ++mask) {
    RibbonGraph sub = restrict_to(g, mask);
    Monomial m;
    for (int i = 0; i < n_edges; ++i)
      if (mask >> i & 1ull) m.set("beta:" + g.edges()[i].id, 1);
    m.set("x", components(sub.underlying_multigraph()));
    m.set("z", trace_boundaries(sub).faces);
    total.add_term(m, 1);
  }
  return total;
}

RibbonGraph ribbon_delete(const RibbonGraph& g, const std::string& id) {
  int idx = g.edge_index(id);
  std::uint64_t mask = 0;
  for (int i = 0; i < g.edge_count(); ++i)
    if (i != idx) mask |= 1ull << i;
  return restrict_to(g, mask);
}

RibbonGraph ribbon_contract(const RibbonGraph& g, const std::string& id) {
  const RibbonGraph::Edge& e = g.edge(id);
  int u = g.vertex_of(e.h1), v = g.vertex_of(e.h2);
  if (u == v) throw OperationError("ribbon contraction of self-loop " + id + " is unsupported");

  // Splice: rotation of the merged vertex is (after h1 around u) followed
  // by (after h2 around v).
  auto linear_after = [&](int vertex, int skip) {
    const auto& rot = g.rotations()[vertex];
    std::size_t pos = 0;
    while (rot[pos] != skip) ++pos;
    std::vector<int> out;
    for (std::size_t i = 1; i < rot.size(); ++i) out.push_back(rot[(pos + i) % rot.size()]);
    return out;
  };
  std::vector<int> merged = linear_after(u, e.h1);
  std::vector<int> tail = linear_after(v, e.h2);
  merged.insert(merged.end(), tail.begin(), tail.end());

  std::vector<std::vector<int>> rotations;
  for (int w = 0; w < g.vertex_count(); ++w) {
    if (w == u)
      rotations.push_back(merged);
    else if (w != v)
      rotations.push_back(g.rotations()[w]);
  }

  // Renumber halves compactly (h1, h2 disappear).
  std::vector<int> new_id(g.half_edge_count(), -1);
  int next = 0;
  for (auto& rot : rotations)
    for (int& h : rot) {
      new_id[h] = next++;
      h = new_id[h];
    }
  std::vector<RibbonGraph::Edge> edges;
  for (const RibbonGraph::Edge& other : g.edges()) {
    if (other.id == id) continue;
    edges.push_back({other.id, new_id[other.h1], new_id[other.h2]});
  }
  return RibbonGraph(std::move(rotations), std::move(edges));
}

}  // namespace tensorpoly
