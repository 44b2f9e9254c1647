#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tensorpoly/multipoly.hpp"

namespace tensorpoly {

// Edge subsets are always read as spanning subgraphs: the vertex set is
// retained in full, only edges are restricted.
using EdgeSet = std::set<std::string>;

enum class EdgeKind { Bridge, SelfLoop, Regular };

// Multigraph with loops and parallel edges. Flags are stored but never
// count toward components, rank, nullity or any polynomial.
class Multigraph {
 public:
  struct Edge {
    std::string id;
    int u = 0;
    int v = 0;
  };
  struct Flag {
    std::string id;
    int vertex = 0;
  };

  Multigraph() = default;
  Multigraph(int vertex_count, std::vector<Edge> edges, std::vector<Flag> flags = {});

  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Flag>& flags() const { return flags_; }

  EdgeSet all_edges() const;
  const Edge& edge(const std::string& id) const;
  int edge_index(const std::string& id) const;  // throws InputError if unknown

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<Flag> flags_;
};

// k(A): connected components of the spanning subgraph (V, A).
int components(const Multigraph& g, const EdgeSet& subset);
int components(const Multigraph& g);

// r(A) = V - k(A)
int rank(const Multigraph& g, const EdgeSet& subset);
int rank(const Multigraph& g);

// n(A) = |A| - r(A)
int nullity(const Multigraph& g, const EdgeSet& subset);
int nullity(const Multigraph& g);

EdgeKind classify_edge(const Multigraph& g, const std::string& id);

Multigraph delete_edge(const Multigraph& g, const std::string& id);

// Classical contraction: identifies the endpoints and removes the edge.
// Used only by the Tutte recursion; rejects self-loops.
Multigraph contract_edge_classical(const Multigraph& g, const std::string& id);

// T_G(x, y) = sum over spanning edge subsets A of
// (x-1)^(r(G)-r(A)) * (y-1)^(n(A)), expanded canonical form.
// Direct subset sum up to subset_cap edges, deletion/contraction with
// closed-form terminal graphs (bridges and self-loops only) above it.
MultiPoly tutte(const Multigraph& g, std::size_t subset_cap = 20);

// Z_G(q, {beta}) = sum over A of q^k(A) * prod_{e in A} beta:<edge-id>.
MultiPoly multivariate_tutte(const Multigraph& g);

}  // namespace tensorpoly
