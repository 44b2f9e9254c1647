#include "tensorpoly/stranded.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "stranded_index.hpp"
#include "tensorpoly/errors.hpp"

namespace tensorpoly {

namespace {

bool is_perm_of_complement(const std::array<int, 3>& entries, int excluded) {
  std::array<bool, 4> seen{};
  for (int x : entries) {
    if (x < 0 || x > 3 || x == excluded || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

}  // namespace

const VertexTemplate& VertexTemplate::tetrahedral() {
  static const VertexTemplate t = [] {
    VertexTemplate t;
    t.leg_order = {0, 1, 2, 3};
    for (int f = 0; f < 4; ++f)
      t.slot_targets[f] = {(f + 3) % 4, (f + 2) % 4, (f + 1) % 4};
    t.corner_legs = {{{2, 1, 3}, {0, 2, 3}, {0, 3, 1}, {0, 1, 2}}};
    t.validate();
    return t;
  }();
  return t;
}

void VertexTemplate::validate() const {
  std::array<bool, 4> seen{};
  for (int x : leg_order) {
    if (x < 0 || x > 3 || seen[x])
      throw StructureError("template violation: leg_order is not a permutation of 0..3");
    seen[x] = true;
  }
  for (int f = 0; f < 4; ++f)
    if (!is_perm_of_complement(slot_targets[f], f))
      throw StructureError("template violation: slot_targets[" + std::to_string(f) +
                           "] must order the three legs other than " + std::to_string(f));
  for (int c = 0; c < 4; ++c)
    if (!is_perm_of_complement(corner_legs[c], c))
      throw StructureError("template violation: corner_legs[" + std::to_string(c) +
                           "] must order the three legs other than " + std::to_string(c));
}

int VertexTemplate::band_index(int leg, int target) const {
  for (int i = 0; i < 3; ++i)
    if (slot_targets[leg][i] == target) return i;
  throw InputError("no strand on leg " + std::to_string(leg) + " toward " + std::to_string(target));
}

std::array<int, 2> VertexTemplate::slot_label(int leg, int band) const {
  int target = slot_targets[leg][band];
  std::array<int, 2> label{};
  int j = 0;
  for (int x = 0; x < 4; ++x)
    if (x != leg && x != target) label[j++] = x;
  return label;
}

int VertexTemplate::leg_position(int leg) const {
  for (int i = 0; i < 4; ++i)
    if (leg_order[i] == leg) return i;
  throw InputError("leg out of range");
}

StrandedGraph::StrandedGraph(VertexTemplate tmpl, int vertex_count, std::vector<Edge> edges,
                             std::vector<Flag> flags, std::set<std::string> passive)
    : tmpl_(tmpl),
      vertex_count_(vertex_count),
      edges_(std::move(edges)),
      flags_(std::move(flags)),
      passive_(std::move(passive)) {
  validate();
}

EdgeSet StrandedGraph::all_edges() const {
  EdgeSet out;
  for (const Edge& e : edges_) out.insert(e.id);
  return out;
}

EdgeSet StrandedGraph::active_edges() const {
  EdgeSet out;
  for (const Edge& e : edges_)
    if (!passive_.count(e.id)) out.insert(e.id);
  return out;
}

int StrandedGraph::edge_index(const std::string& id) const {
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i)
    if (edges_[i].id == id) return i;
  throw InputError("unknown edge id " + id);
}

const StrandedGraph::Edge& StrandedGraph::edge(const std::string& id) const {
  return edges_[edge_index(id)];
}

void StrandedGraph::validate() const {
  tmpl_.validate();
  if (vertex_count_ < 0) throw StructureError("negative vertex count");

  std::vector<int> leg_use(4 * vertex_count_, 0);
  auto use = [&](const End& end, const std::string& what) {
    if (end.vertex < 0 || end.vertex >= vertex_count_)
      throw StructureError(what + " references a missing vertex");
    if (end.leg < 0 || end.leg > 3) throw StructureError(what + " references a leg outside 0..3");
    if (++leg_use[4 * end.vertex + end.leg] > 1)
      throw StructureError(what + " reuses leg " + std::to_string(end.leg) + " of vertex " +
                           std::to_string(end.vertex));
  };

  std::set<std::string> ids;
  for (const Edge& e : edges_) {
    if (!ids.insert(e.id).second) throw StructureError("duplicate edge id " + e.id);
    use(e.a, "edge " + e.id);
    use(e.b, "edge " + e.id);
  }
  std::set<std::string> flag_ids;
  for (const Flag& f : flags_) {
    if (!flag_ids.insert(f.id).second) throw StructureError("duplicate flag id " + f.id);
    use(f.at, "flag " + f.id);
  }
  for (int v = 0; v < vertex_count_; ++v)
    for (int leg = 0; leg < 4; ++leg)
      if (leg_use[4 * v + leg] == 0)
        throw StructureError("dangling leg " + std::to_string(leg) + " of vertex " +
                             std::to_string(v));
  for (const std::string& id : passive_)
    if (!ids.count(id)) throw StructureError("passive set names unknown edge " + id);

  // Strand closure: walk every strand through internal segments and edge
  // bands; each walk must either return to its start or end on flags.
  std::map<std::pair<int, int>, const Edge*> at_leg;  // (vertex, leg) -> edge
  for (const Edge& e : edges_) {
    at_leg[{e.a.vertex, e.a.leg}] = &e;
    at_leg[{e.b.vertex, e.b.leg}] = &e;
  }
  auto cross = [&](int v, int leg, int band) -> std::array<int, 3> {
    auto it = at_leg.find({v, leg});
    if (it == at_leg.end()) return {-1, -1, -1};  // flag: strand leaves the graph
    const Edge& e = *it->second;
    const End& other = (e.a.vertex == v && e.a.leg == leg) ? e.b : e.a;
    return {other.vertex, other.leg, 2 - band};
  };
  std::vector<int> visited(12 * vertex_count_, 0);
  const int step_limit = 24 * vertex_count_ + 8;
  for (int start = 0; start < 12 * vertex_count_; ++start) {
    if (visited[start]) continue;
    int v = start / 12, leg = (start % 12) / 3, band = start % 3;
    int steps = 0;
    while (true) {
      visited[12 * v + 3 * leg + band] = 1;
      // internal segment to the target leg
      int target = tmpl_.slot_targets[leg][band];
      int tband = tmpl_.band_index(target, leg);
      visited[12 * v + 3 * target + tband] = 1;
      std::array<int, 3> next = cross(v, target, tband);
      if (next[0] < 0) break;  // ends at a flag
      v = next[0];
      leg = next[1];
      band = next[2];
      if (12 * v + 3 * leg + band == start) break;  // closed
      if (++steps > step_limit) throw StructureError("strand walk does not close");
    }
  }
}

Multigraph StrandedGraph::underlying_multigraph() const {
  std::vector<Multigraph::Edge> edges;
  for (const Edge& e : edges_) edges.push_back({e.id, e.a.vertex, e.b.vertex});
  std::vector<Multigraph::Flag> flags;
  for (const Flag& f : flags_) flags.push_back({f.id, f.at.vertex});
  return Multigraph(vertex_count_, std::move(edges), std::move(flags));
}

namespace {

std::vector<bool> edge_mask(const StrandedGraph& g, const EdgeSet& subset) {
  std::vector<bool> mask(g.edges().size(), false);
  std::size_t found = 0;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (subset.count(g.edges()[i].id)) {
      mask[i] = true;
      ++found;
    }
  }
  if (found != subset.size())
    for (const std::string& id : subset) g.edge_index(id);
  return mask;
}

}  // namespace

RibbonGraph StrandedGraph::jacket(const EdgeSet& subset) const {
  std::vector<bool> mask = edge_mask(*this, subset);

  int next_half = 0;
  std::map<std::pair<int, int>, int> half_at;  // (vertex, leg) -> half id
  std::vector<RibbonGraph::Edge> redges;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (!mask[i]) continue;
    const Edge& e = edges_[i];
    int h1 = next_half++, h2 = next_half++;
    half_at[{e.a.vertex, e.a.leg}] = h1;
    half_at[{e.b.vertex, e.b.leg}] = h2;
    redges.push_back({e.id, h1, h2});
  }
  for (const Flag& f : flags_) half_at[{f.at.vertex, f.at.leg}] = next_half++;

  std::vector<std::vector<int>> rotations(vertex_count_);
  for (int v = 0; v < vertex_count_; ++v) {
    for (int i = 0; i < 4; ++i) {
      auto it = half_at.find({v, tmpl_.leg_order[i]});
      if (it != half_at.end()) rotations[v].push_back(it->second);
    }
  }
  return RibbonGraph(std::move(rotations), std::move(redges));
}

RibbonGraph StrandedGraph::jacket() const { return jacket(all_edges()); }

namespace {

std::string corner_signature(const std::vector<std::pair<int, int>>& corners) {
  std::ostringstream os;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    if (i) os << "_";
    os << corners[i].first << "." << corners[i].second;
  }
  return os.str();
}

}  // namespace

BubbleSet StrandedGraph::bubbles(const EdgeSet& subset) const {
  std::vector<bool> mask = edge_mask(*this, subset);
  const int n_corners = 4 * vertex_count_;

  // Gluings: (position at end a, position at end b) per strand of each
  // subset edge; positions are 12*v + 3*leg + band.
  struct Gluing {
    std::string id;
    int p1, p2;
  };
  std::vector<Gluing> gluings;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (!mask[i]) continue;
    const Edge& e = edges_[i];
    for (int band = 0; band < 3; ++band) {
      gluings.push_back({e.id + "." + std::to_string(band),
                         12 * e.a.vertex + 3 * e.a.leg + band,
                         12 * e.b.vertex + 3 * e.b.leg + (2 - band)});
    }
  }

  auto corner_of_pos = [&](int p) {
    int v = p / 12, leg = (p % 12) / 3, band = p % 3;
    return 4 * v + tmpl_.corner_of(leg, band);
  };

  std::vector<int> parent(n_corners);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Gluing& gl : gluings) parent[find(corner_of_pos(gl.p1))] = find(corner_of_pos(gl.p2));

  std::map<int, std::vector<int>> comp_corners;
  for (int c = 0; c < n_corners; ++c) comp_corners[find(c)].push_back(c);

  std::set<std::pair<int, int>> flag_legs;
  for (const Flag& f : flags_) flag_legs.insert({f.at.vertex, f.at.leg});
  std::map<int, int> glued_half;  // position -> ribbon half id (per component, rebuilt)

  BubbleSet out;
  for (auto& [root, corners] : comp_corners) {
    // Ribbon halves: two per gluing inside this component, one per flag slot.
    glued_half.clear();
    int next_half = 0;
    std::vector<RibbonGraph::Edge> redges;
    for (const Gluing& gl : gluings) {
      if (find(corner_of_pos(gl.p1)) != root) continue;
      glued_half[gl.p1] = next_half++;
      glued_half[gl.p2] = next_half++;
      redges.push_back({gl.id, glued_half[gl.p1], glued_half[gl.p2]});
    }

    std::vector<std::vector<int>> rotations;
    std::vector<std::pair<int, int>> corner_list;
    for (int c : corners) {
      int v = c / 4, corner = c % 4;
      corner_list.push_back({v, corner});
      std::vector<int> rot;
      for (int i = 0; i < 3; ++i) {
        int leg = tmpl_.corner_legs[corner][i];
        int band = tmpl_.band_index(leg, corner);
        int p = 12 * v + 3 * leg + band;
        auto it = glued_half.find(p);
        if (it != glued_half.end())
          rot.push_back(it->second);
        else if (flag_legs.count({v, leg}))
          rot.push_back(next_half++);  // open corner slot on a flag leg
      }
      rotations.push_back(std::move(rot));
    }

    Bubble b;
    b.corners = corner_list;
    b.ribbon = RibbonGraph(std::move(rotations), std::move(redges));
    GenusReport genus = euler_genus(b.ribbon);
    if (genus.components.size() != 1)
      throw StructureError("bubble component split during materialization");
    b.vertices = genus.components[0].vertices;
    b.edges = genus.components[0].edges;
    b.faces = genus.components[0].faces;
    b.genus = genus.components[0].genus;
    b.signature = corner_signature(b.corners);
    out.genus_sum += b.genus;
    out.bubbles.push_back(std::move(b));
  }
  std::sort(out.bubbles.begin(), out.bubbles.end(),
            [](const Bubble& a, const Bubble& b) { return a.signature < b.signature; });
  return out;
}

BubbleSet StrandedGraph::bubbles() const { return bubbles(all_edges()); }

int StrandedGraph::bubble_genus_sum(const EdgeSet& subset) const {
  detail::StrandedIndex index(*this);
  auto scratch = index.make_scratch();
  std::uint64_t mask = 0;
  std::vector<bool> bmask = edge_mask(*this, subset);
  for (std::size_t i = 0; i < bmask.size(); ++i)
    if (bmask[i]) mask |= 1ull << i;
  return index.bubble_genus(mask, scratch, nullptr);
}

int StrandedGraph::bubble_genus_sum() const { return bubble_genus_sum(all_edges()); }

ManifoldVerdict StrandedGraph::is_manifold_dual() const {
  return bubble_genus_sum() == 0 ? ManifoldVerdict::Manifold : ManifoldVerdict::PseudoManifold;
}

std::optional<Coloring> StrandedGraph::find_coloring() const {
  // Candidate per vertex: sign and shift; the edge at leg-order position p
  // gets color (p + shift) mod 4 at white vertices, (shift - p) mod 4 at
  // black ones.
  auto color_at = [&](VertexSign sign, int shift, int leg) {
    int p = tmpl_.leg_position(leg);
    return sign == VertexSign::White ? (p + shift) % 4 : ((shift - p) % 4 + 4) % 4;
  };

  for (const Edge& e : edges_)
    if (e.a.vertex == e.b.vertex) return std::nullopt;  // loop repeats its color

  const int n = vertex_count_;
  std::vector<int> choice(n, -1);  // 0..7 = (sign, shift)
  auto sign_of = [](int ch) { return ch < 4 ? VertexSign::White : VertexSign::Black; };
  auto shift_of = [](int ch) { return ch % 4; };

  // Edges grouped by vertex for propagation.
  std::vector<std::vector<const Edge*>> incident(n);
  for (const Edge& e : edges_) {
    incident[e.a.vertex].push_back(&e);
    incident[e.b.vertex].push_back(&e);
  }

  auto consistent = [&](int v) {
    for (const Edge* e : incident[v]) {
      int w = e->a.vertex == v ? e->b.vertex : e->a.vertex;
      if (choice[w] < 0) continue;
      if (sign_of(choice[v]) == sign_of(choice[w])) return false;
      int cv = color_at(sign_of(choice[v]), shift_of(choice[v]),
                        e->a.vertex == v ? e->a.leg : e->b.leg);
      int cw = color_at(sign_of(choice[w]), shift_of(choice[w]),
                        e->a.vertex == v ? e->b.leg : e->a.leg);
      if (cv != cw) return false;
    }
    return true;
  };

  std::function<bool(int)> assign = [&](int v) -> bool {
    if (v == n) return true;
    for (int ch = 0; ch < 8; ++ch) {
      choice[v] = ch;
      if (consistent(v) && assign(v + 1)) return true;
    }
    choice[v] = -1;
    return false;
  };
  if (!assign(0)) return std::nullopt;

  Coloring coloring;
  coloring.vertex_signs.resize(n, VertexSign::White);
  for (int v = 0; v < n; ++v) coloring.vertex_signs[v] = sign_of(choice[v]);
  for (const Edge& e : edges_) {
    coloring.edge_colors[e.id] =
        color_at(sign_of(choice[e.a.vertex]), shift_of(choice[e.a.vertex]), e.a.leg);
  }
  return coloring;
}

BubbleSet StrandedGraph::bubbles_by_color(const Coloring& coloring) const {
  if (static_cast<int>(coloring.vertex_signs.size()) != vertex_count_)
    throw InputError("coloring does not match the graph");
  for (const Edge& e : edges_) {
    auto it = coloring.edge_colors.find(e.id);
    if (it == coloring.edge_colors.end() || it->second < 0 || it->second > 3)
      throw InputError("coloring does not assign edge " + e.id);
  }

  // Leg carrying color c at vertex v; its index names the corner that
  // stays fully glued when color c is dropped.
  auto leg_of_color = [&](int v, int c) {
    for (const Edge& e : edges_) {
      if (e.a.vertex == v && coloring.edge_colors.at(e.id) == c) return e.a.leg;
      if (e.b.vertex == v && coloring.edge_colors.at(e.id) == c) return e.b.leg;
    }
    return -1;  // color missing at this vertex (flags)
  };

  std::set<std::pair<int, int>> flag_legs;
  for (const Flag& f : flags_) flag_legs.insert({f.at.vertex, f.at.leg});

  BubbleSet out;
  for (int dropped = 0; dropped < 4; ++dropped) {
    std::vector<int> parent(vertex_count_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<const Edge*> kept;
    for (const Edge& e : edges_) {
      if (coloring.edge_colors.at(e.id) == dropped) continue;
      kept.push_back(&e);
      parent[find(e.a.vertex)] = find(e.b.vertex);
    }

    std::map<int, std::vector<int>> comps;
    for (int v = 0; v < vertex_count_; ++v) comps[find(v)].push_back(v);

    for (auto& [root, verts] : comps) {
      std::map<std::pair<int, int>, int> half_at;  // (vertex, leg) -> half
      int next_half = 0;
      std::vector<RibbonGraph::Edge> redges;
      for (const Edge* e : kept) {
        if (find(e->a.vertex) != root) continue;
        int h1 = next_half++, h2 = next_half++;
        half_at[{e->a.vertex, e->a.leg}] = h1;
        half_at[{e->b.vertex, e->b.leg}] = h2;
        redges.push_back({e->id, h1, h2});
      }

      std::vector<std::vector<int>> rotations;
      std::vector<std::pair<int, int>> corner_list;
      for (int v : verts) {
        int corner = leg_of_color(v, dropped);
        if (corner < 0) corner = dropped;  // flagged vertex: color absent
        corner_list.push_back({v, corner});
        std::vector<int> rot;
        for (int i = 0; i < 3; ++i) {
          int leg = tmpl_.corner_legs[corner][i];
          auto it = half_at.find({v, leg});
          if (it != half_at.end())
            rot.push_back(it->second);
          else if (flag_legs.count({v, leg}))
            rot.push_back(next_half++);
        }
        rotations.push_back(std::move(rot));
      }

      Bubble b;
      b.corners = corner_list;
      std::sort(b.corners.begin(), b.corners.end());
      b.ribbon = RibbonGraph(std::move(rotations), std::move(redges));
      GenusReport genus = euler_genus(b.ribbon);
      if (genus.components.size() != 1)
        throw StructureError("color bubble split during materialization");
      b.vertices = genus.components[0].vertices;
      b.edges = genus.components[0].edges;
      b.faces = genus.components[0].faces;
      b.genus = genus.components[0].genus;
      b.signature = corner_signature(b.corners);
      out.genus_sum += b.genus;
      out.bubbles.push_back(std::move(b));
    }
  }
  std::sort(out.bubbles.begin(), out.bubbles.end(),
            [](const Bubble& a, const Bubble& b) { return a.signature < b.signature; });
  return out;
}

StrandedGraph StrandedGraph::delete_edge(const std::string& id) const {
  const Edge& e = edge(id);
  if (passive_.count(id)) throw OperationError("cannot delete passive edge " + id);
  std::vector<Edge> edges;
  for (const Edge& other : edges_)
    if (other.id != id) edges.push_back(other);
  std::vector<Flag> flags = flags_;
  flags.push_back({"flag:" + id + ":a", e.a});
  flags.push_back({"flag:" + id + ":b", e.b});
  return StrandedGraph(tmpl_, vertex_count_, std::move(edges), std::move(flags), passive_);
}

StrandedGraph StrandedGraph::contract_edge(const std::string& id) const {
  edge(id);  // raises on unknown id
  if (passive_.count(id)) throw OperationError("cannot contract passive edge " + id);
  std::set<std::string> passive = passive_;
  passive.insert(id);
  return StrandedGraph(tmpl_, vertex_count_, edges_, flags_, std::move(passive));
}

StrandedGraph generate_stranded(int vertices, std::uint64_t seed, int flag_count) {
  if (vertices < 0) throw InputError("negative vertex count");
  if (flag_count < 0 || flag_count > 4 * vertices) throw InputError("flag count out of range");
  if ((4 * vertices - flag_count) % 2 != 0)
    throw InputError("4*vertices - flags must be even to pair all legs");

  std::mt19937_64 rng(seed);
  std::vector<int> legs(4 * vertices);
  std::iota(legs.begin(), legs.end(), 0);
  for (int i = static_cast<int>(legs.size()) - 1; i > 0; --i) {
    int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(legs[i], legs[j]);
  }

  std::vector<StrandedGraph::Flag> flags;
  for (int i = 0; i < flag_count; ++i)
    flags.push_back({"f" + std::to_string(i), {legs[i] / 4, legs[i] % 4}});
  std::vector<StrandedGraph::Edge> edges;
  int count = 0;
  for (int i = flag_count; i + 1 < static_cast<int>(legs.size()); i += 2) {
    edges.push_back({"e" + std::to_string(count++),
                     {legs[i] / 4, legs[i] % 4},
                     {legs[i + 1] / 4, legs[i + 1] % 4}});
  }
  return StrandedGraph(VertexTemplate::tetrahedral(), vertices, std::move(edges),
                       std::move(flags));
}

}  // namespace tensorpoly
