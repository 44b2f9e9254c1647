#pragma once

#include <string>
#include <vector>

#include "tensorpoly/multigraph.hpp"
#include "tensorpoly/multipoly.hpp"

namespace tensorpoly {

// Orientable ribbon graph as a rotation system. Half-edges are dense ids;
// each appears exactly once in some vertex rotation. Edges pair two half
// edges; unpaired half-edges are flags. No twist marks: every surface
// built from these rotations is orientable, so odd Euler characteristic
// can only mean corrupted data.
class RibbonGraph {
 public:
  struct Edge {
    std::string id;
    int h1 = 0;
    int h2 = 0;
  };

  RibbonGraph() = default;
  RibbonGraph(std::vector<std::vector<int>> rotations, std::vector<Edge> edges);

  int vertex_count() const { return static_cast<int>(rotations_.size()); }
  int half_edge_count() const { return static_cast<int>(partner_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<std::vector<int>>& rotations() const { return rotations_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(const std::string& id) const;
  int edge_index(const std::string& id) const;

  int partner(int half) const { return partner_[half]; }  // -1 for flags
  bool is_flag(int half) const { return partner_[half] < 0; }
  int vertex_of(int half) const { return half_vertex_[half]; }

  Multigraph underlying_multigraph() const;

 private:
  std::vector<std::vector<int>> rotations_;
  std::vector<Edge> edges_;
  std::vector<int> partner_;
  std::vector<int> half_vertex_;
};

// Closed boundary components of the rotation system. Flags are invisible
// to the walk: a flag half-edge neither carries a face of its own nor
// interrupts the circuit around its vertex, so F counts closed strand
// circuits only. A vertex whose rotation holds no matched half-edge
// contributes one boundary circle.
struct BoundaryReport {
  int faces = 0;
  // One entry per closed component: the half-edges departed from, in
  // walk order. Isolated vertices contribute empty walks.
  std::vector<std::vector<int>> walks;
};

BoundaryReport trace_boundaries(const RibbonGraph& g);

struct ComponentTopology {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int chi = 0;
  int genus = 0;
};

struct GenusReport {
  std::vector<ComponentTopology> components;
  int total_genus = 0;
};

// chi = V - E + F and g = (2 - chi)/2 per connected component.
// Odd chi raises StructureError (orientability violation).
GenusReport euler_genus(const RibbonGraph& g);

// R_G(x, y, z) = sum over spanning ribbon subgraphs H of
// (x-1)^(r(G)-r(H)) * y^n(H) * z^(k(H)-F(H)+n(H)).
MultiPoly br_polynomial(const RibbonGraph& g);

// V_G(x, {beta}, z) = sum over H of x^k(H) * prod_{e in H} beta:<id> * z^F(H).
MultiPoly multivariate_br(const RibbonGraph& g);

RibbonGraph ribbon_delete(const RibbonGraph& g, const std::string& id);

// Contracts a non-loop edge by splicing the endpoint rotations at the
// removed half-edges. Self-loops are out of scope for Theorem-style
// deletion/contraction and are rejected.
RibbonGraph ribbon_contract(const RibbonGraph& g, const std::string& id);

}  // namespace tensorpoly
