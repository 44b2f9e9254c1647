#pragma once

// Internal flat index over a StrandedGraph for per-subset evaluation.
// Positions, corners and half-edges are dense ints so the subset-sum hot
// loop runs without maps or allocation (scratch buffers are reused).

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "tensorpoly/errors.hpp"
#include "tensorpoly/stranded.hpp"

namespace tensorpoly::detail {

// position id = 12*vertex + 3*leg + band
// corner id   = 4*vertex + corner
// half id     = 2*edge + side
struct StrandedIndex {
  const VertexTemplate* tmpl = nullptr;
  int V = 0;
  int E = 0;
  std::vector<int> eu, ev;
  std::vector<std::array<int, 2>> elegs;
  std::uint64_t passive_mask = 0;
  std::vector<int> active;  // active edge indices in edge order

  std::vector<std::array<int, 4>> vslot;  // [v][leg-order pos] -> half or -1
  std::vector<int> half_vertex;
  std::vector<int> half_vpos;  // index in vslot row

  std::vector<int> pos_edge;     // owning edge or -1
  std::vector<int> pos_partner;  // glued partner position or -1
  std::vector<int> pos_corner;
  std::vector<std::array<int, 3>> corner_pos;  // cyclic

  struct Scratch {
    std::vector<int> parent_v, parent_c;
    std::vector<int> vdeg;
    std::vector<int> visit_half, visit_pos;
    std::vector<int> comp_edges, comp_faces, comp_corners, comp_stamp;
    int epoch = 0;
  };

  struct SubsetStats {
    int size = 0;
    int k = 0;
    int r = 0;
    int n = 0;
    int faces = 0;
    int genus_sum = 0;
  };

  explicit StrandedIndex(const StrandedGraph& g) {
    tmpl = &g.tmpl();
    V = g.vertex_count();
    E = static_cast<int>(g.edges().size());
    if (E > 62) throw InputError("subset evaluation limited to 62 edges");

    vslot.assign(V, {-1, -1, -1, -1});
    half_vertex.assign(2 * E, -1);
    half_vpos.assign(2 * E, -1);
    pos_edge.assign(12 * V, -1);
    pos_partner.assign(12 * V, -1);
    pos_corner.assign(12 * V, -1);
    corner_pos.assign(4 * V, {-1, -1, -1});

    for (int e = 0; e < E; ++e) {
      const auto& edge = g.edges()[e];
      eu.push_back(edge.a.vertex);
      ev.push_back(edge.b.vertex);
      elegs.push_back({edge.a.leg, edge.b.leg});
      if (!g.is_active(edge.id)) passive_mask |= 1ull << e;
      for (int side = 0; side < 2; ++side) {
        const StrandedGraph::End& end = side == 0 ? edge.a : edge.b;
        int h = 2 * e + side;
        half_vertex[h] = end.vertex;
        half_vpos[h] = tmpl->leg_position(end.leg);
        vslot[end.vertex][half_vpos[h]] = h;
      }
      for (int band = 0; band < 3; ++band) {
        int p1 = 12 * edge.a.vertex + 3 * edge.a.leg + band;
        int p2 = 12 * edge.b.vertex + 3 * edge.b.leg + (2 - band);
        pos_edge[p1] = e;
        pos_edge[p2] = e;
        pos_partner[p1] = p2;
        pos_partner[p2] = p1;
      }
    }
    for (int e = 0; e < E; ++e)
      if (!(passive_mask >> e & 1ull)) active.push_back(e);

    for (int v = 0; v < V; ++v) {
      for (int c = 0; c < 4; ++c) {
        for (int i = 0; i < 3; ++i) {
          int leg = tmpl->corner_legs[c][i];
          int band = tmpl->band_index(leg, c);
          int p = 12 * v + 3 * leg + band;
          corner_pos[4 * v + c][i] = p;
          pos_corner[p] = 4 * v + c;
        }
      }
    }
  }

  Scratch make_scratch() const {
    Scratch s;
    s.parent_v.resize(V);
    s.parent_c.resize(4 * V);
    s.vdeg.resize(V);
    s.visit_half.assign(2 * E, -1);
    s.visit_pos.assign(12 * V, -1);
    s.comp_edges.assign(4 * V, 0);
    s.comp_faces.assign(4 * V, 0);
    s.comp_corners.assign(4 * V, 0);
    s.comp_stamp.assign(4 * V, -1);
    return s;
  }

  static int find(std::vector<int>& parent, int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  bool in_mask(std::uint64_t mask, int edge) const { return (mask >> edge & 1ull) != 0; }

  // Successor of a half-edge around its vertex among subset halves.
  int next_half(std::uint64_t mask, int h) const {
    int v = half_vertex[h];
    int p = half_vpos[h];
    for (int d = 1; d <= 4; ++d) {
      int cand = vslot[v][(p + d) % 4];
      if (cand >= 0 && in_mask(mask, cand / 2)) return cand;
    }
    return h;  // unreachable for matched halves
  }

  // Successor of a glued position around its corner among subset gluings.
  int next_pos(std::uint64_t mask, int p) const {
    const std::array<int, 3>& rot = corner_pos[pos_corner[p]];
    int idx = rot[0] == p ? 0 : rot[1] == p ? 1 : 2;
    for (int d = 1; d <= 3; ++d) {
      int cand = rot[(idx + d) % 3];
      if (pos_edge[cand] >= 0 && in_mask(mask, pos_edge[cand])) return cand;
    }
    return p;  // unreachable for glued positions
  }

  // k, r, n of the spanning subgraph plus jacket face count.
  void underlying_and_faces(std::uint64_t mask, Scratch& s, SubsetStats& out) const {
    std::iota(s.parent_v.begin(), s.parent_v.end(), 0);
    std::fill(s.vdeg.begin(), s.vdeg.end(), 0);
    int size = 0;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
      int e = std::countr_zero(rest);
      s.parent_v[find(s.parent_v, eu[e])] = find(s.parent_v, ev[e]);
      s.vdeg[eu[e]] += 1;
      s.vdeg[ev[e]] += 1;
      ++size;
    }
    int k = 0;
    for (int v = 0; v < V; ++v)
      if (find(s.parent_v, v) == v) ++k;
    out.size = size;
    out.k = k;
    out.r = V - k;
    out.n = size - out.r;

    ++s.epoch;
    int faces = 0;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
      int e = std::countr_zero(rest);
      for (int side = 0; side < 2; ++side) {
        int start = 2 * e + side;
        if (s.visit_half[start] == s.epoch) continue;
        int h = start;
        do {
          s.visit_half[h] = s.epoch;
          h = next_half(mask, h ^ 1);
        } while (h != start);
        ++faces;
      }
    }
    for (int v = 0; v < V; ++v)
      if (s.vdeg[v] == 0) ++faces;
    out.faces = faces;
  }

  // Bubble genus sum; optionally per-component (sorted corner ids, genus).
  // detail holds positive-genus components only unless detail_all, which
  // also lists genus-0 components and isolated corners.
  int bubble_genus(std::uint64_t mask, Scratch& s,
                   std::vector<std::pair<std::vector<int>, int>>* detail,
                   bool detail_all = false) const {
    std::iota(s.parent_c.begin(), s.parent_c.end(), 0);
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
      int e = std::countr_zero(rest);
      for (int band = 0; band < 3; ++band) {
        int p1 = 12 * eu[e] + 3 * elegs[e][0] + band;
        int p2 = pos_partner[p1];
        s.parent_c[find(s.parent_c, pos_corner[p1])] = find(s.parent_c, pos_corner[p2]);
      }
    }

    ++s.epoch;
    auto touch = [&](int root) {
      if (s.comp_stamp[root] != s.epoch) {
        s.comp_stamp[root] = s.epoch;
        s.comp_edges[root] = 0;
        s.comp_faces[root] = 0;
        s.comp_corners[root] = 0;
      }
    };

    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
      int e = std::countr_zero(rest);
      for (int band = 0; band < 3; ++band) {
        int p1 = 12 * eu[e] + 3 * elegs[e][0] + band;
        int root = find(s.parent_c, pos_corner[p1]);
        touch(root);
        s.comp_edges[root] += 1;
        for (int p : {p1, pos_partner[p1]}) {
          if (s.visit_pos[p] == s.epoch) continue;
          int q = p;
          do {
            s.visit_pos[q] = s.epoch;
            q = next_pos(mask, pos_partner[q]);
          } while (q != p);
          s.comp_faces[root] += 1;
        }
      }
    }

    for (int c = 0; c < 4 * V; ++c) {
      int root = find(s.parent_c, c);
      if (s.comp_stamp[root] == s.epoch) {
        touch(root);
        s.comp_corners[root] += 1;
      }
    }

    int total = 0;
    for (int root = 0; root < 4 * V; ++root) {
      if (s.comp_stamp[root] != s.epoch || s.comp_edges[root] == 0) continue;
      int chi = s.comp_corners[root] - s.comp_edges[root] + s.comp_faces[root];
      if ((2 - chi) % 2 != 0 || chi > 2)
        throw StructureError("odd or oversized Euler characteristic in bubble");
      int genus = (2 - chi) / 2;
      total += genus;
      if (detail && (genus > 0 || detail_all)) {
        std::vector<int> corners;
        for (int c = 0; c < 4 * V; ++c)
          if (find(s.parent_c, c) == root) corners.push_back(c);
        detail->push_back({std::move(corners), genus});
      }
    }
    if (detail && detail_all) {
      for (int c = 0; c < 4 * V; ++c) {
        int root = find(s.parent_c, c);
        if (s.comp_stamp[root] != s.epoch || s.comp_edges[root] == 0)
          if (root == c) detail->push_back({{c}, 0});
      }
    }
    return total;
  }

  SubsetStats stats(std::uint64_t mask, Scratch& s,
                    std::vector<std::pair<std::vector<int>, int>>* detail = nullptr) const {
    SubsetStats out;
    underlying_and_faces(mask, s, out);
    out.genus_sum = bubble_genus(mask, s, detail);
    return out;
  }
};

}  // namespace tensorpoly::detail
