#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tensorpoly/multigraph.hpp"
#include "tensorpoly/multipoly.hpp"
#include "tensorpoly/ribbon.hpp"

namespace tensorpoly {

// Strand routing of the 4-valent vertex, combinatorially a tetrahedron:
// legs are the four triangular faces (leg f is the face opposite vertex f),
// the three strand slots of leg f are the edges of that triangle, and the
// four corners are the tetrahedron vertices.
//
// The slot on leg f routing to leg g carries the tetrahedron edge shared
// by faces f and g (label {0..3} \ {f,g}) and belongs to corner g: on the
// triangle of face f it is the side cutting off vertex g. These
// incidences are forced; the template's free data is
//   - leg_order: the cyclic order of the four legs around the vertex,
//   - slot_targets[f]: the order of leg f's three strands across its band,
//     written as the legs they route to,
//   - corner_legs[c]: the cyclic order of corner c's three sides, written
//     as the legs they lie on.
// Across an edge, bands join with no twist: band position i on one side
// meets band position 2-i on the other.
struct VertexTemplate {
  std::array<int, 4> leg_order{};
  std::array<std::array<int, 3>, 4> slot_targets{};
  std::array<std::array<int, 3>, 4> corner_legs{};

  static const VertexTemplate& tetrahedral();

  void validate() const;  // throws StructureError on broken identities

  bool operator==(const VertexTemplate& other) const = default;

  // Band index of the strand on `leg` routing to `target`.
  int band_index(int leg, int target) const;
  // Leg the strand at (leg, band) routes to; also the corner owning it.
  int corner_of(int leg, int band) const { return slot_targets[leg][band]; }
  // 2-subset slot label of (leg, band): {0..3} \ {leg, target}.
  std::array<int, 2> slot_label(int leg, int band) const;
  // Position of `leg` in the cyclic leg order.
  int leg_position(int leg) const;
};

enum class VertexSign { White, Black };

// Edge coloring witness: colors 0..3 on edges, signs on vertices. At a
// white vertex the four incident colors read (0,1,2,3) cyclically along
// the leg order; at a black vertex they read clockwise. Every edge joins
// a white to a black vertex.
struct Coloring {
  std::map<std::string, int> edge_colors;
  std::vector<VertexSign> vertex_signs;
};

struct Bubble {
  // Sorted (vertex, corner) pairs of the host graph covered by this bubble.
  std::vector<std::pair<int, int>> corners;
  RibbonGraph ribbon;
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int genus = 0;
  // Canonical identity: the sorted corner set rendered as "v.c_v.c_...".
  std::string signature;
};

struct BubbleSet {
  std::vector<Bubble> bubbles;  // sorted by signature
  int genus_sum = 0;
};

enum class ManifoldVerdict { Manifold, PseudoManifold };

// Three-dimensional stranded graph: every vertex uses the same fixed
// VertexTemplate, edges carry three strands, every leg holds exactly one
// edge end or flag. Passive edges are contracted-in-place: they persist
// in every spanning subset of the polynomial sums and can be neither
// deleted nor contracted again.
class StrandedGraph {
 public:
  struct End {
    int vertex = 0;
    int leg = 0;
    bool operator==(const End&) const = default;
    auto operator<=>(const End&) const = default;
  };
  struct Edge {
    std::string id;
    End a;
    End b;
  };
  struct Flag {
    std::string id;
    End at;
  };

  StrandedGraph() = default;
  StrandedGraph(VertexTemplate tmpl, int vertex_count, std::vector<Edge> edges,
                std::vector<Flag> flags = {}, std::set<std::string> passive = {});

  const VertexTemplate& tmpl() const { return tmpl_; }
  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Flag>& flags() const { return flags_; }
  const std::set<std::string>& passive() const { return passive_; }
  bool is_active(const std::string& id) const { return !passive_.count(id); }

  EdgeSet all_edges() const;
  EdgeSet active_edges() const;
  const Edge& edge(const std::string& id) const;
  int edge_index(const std::string& id) const;

  // Full structural check: valence four at every vertex, legs in range,
  // unique ids, passive set consistent, template identities, strand
  // closure. Construction already runs this; re-running is cheap.
  void validate() const;

  // Forgets strands and template; keeps vertices, edges and flags.
  Multigraph underlying_multigraph() const;

  // Ribbon projection of the spanning subgraph (V, subset): one ribbon
  // vertex per graph vertex with rotation given by the template leg
  // order. Flags are retained as ribbon flags.
  RibbonGraph jacket(const EdgeSet& subset) const;
  RibbonGraph jacket() const;

  // Corner construction: each vertex splits into its four 3-valent corner
  // vertices; every subset edge glues three corner pairs through its
  // strand matching. Bubbles are the connected components. Flag slots
  // stay open; isolated corners form genus-0 bubbles.
  BubbleSet bubbles(const EdgeSet& subset) const;
  BubbleSet bubbles() const;

  int bubble_genus_sum(const EdgeSet& subset) const;
  int bubble_genus_sum() const;

  ManifoldVerdict is_manifold_dual() const;

  // Backtracking search over vertex signs and color shifts.
  std::optional<Coloring> find_coloring() const;

  // Color route to the same bubbles: for each 3-subset of colors, the
  // connected components of the corresponding edge subgraph, realized on
  // the corners left fully glued when the dropped color is removed.
  // Independent of the strand matching, so it cross-checks bubbles().
  BubbleSet bubbles_by_color(const Coloring& coloring) const;

  // Deletion: the edge is removed and its legs become flags, keeping the
  // valence of both endpoint vertices at four. Active edges only.
  StrandedGraph delete_edge(const std::string& id) const;

  // Contraction: the edge just becomes passive. Active edges only.
  StrandedGraph contract_edge(const std::string& id) const;

 private:
  VertexTemplate tmpl_;
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<Flag> flags_;
  std::set<std::string> passive_;
};

// Deterministic random stranded graph: flag_count legs become flags, the
// remaining legs are paired uniformly at random. Always valid by
// construction; 4*vertices - flag_count must be even.
StrandedGraph generate_stranded(int vertices, std::uint64_t seed, int flag_count = 0);

}  // namespace tensorpoly
