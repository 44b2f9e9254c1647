#include "tensorpoly/multigraph.hpp"

#include <algorithm>
#include <numeric>

#include "tensorpoly/errors.hpp"

namespace tensorpoly {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  int groups() {
    int n = 0;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i)
      if (find(i) == i) ++n;
    return n;
  }
};

}  // namespace

Multigraph::Multigraph(int vertex_count, std::vector<Edge> edges, std::vector<Flag> flags)
    : vertex_count_(vertex_count), edges_(std::move(edges)), flags_(std::move(flags)) {
  if (vertex_count_ < 0) throw StructureError("negative vertex count");
  std::set<std::string> ids;
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= vertex_count_ || e.v < 0 || e.v >= vertex_count_)
      throw StructureError("edge " + e.id + " references a missing vertex");
    if (!ids.insert(e.id).second) throw StructureError("duplicate edge id " + e.id);
  }
  for (const Flag& f : flags_)
    if (f.vertex < 0 || f.vertex >= vertex_count_)
      throw StructureError("flag " + f.id + " references a missing vertex");
}

EdgeSet Multigraph::all_edges() const {
  EdgeSet out;
  for (const Edge& e : edges_) out.insert(e.id);
  return out;
}

int Multigraph::edge_index(const std::string& id) const {
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i)
    if (edges_[i].id == id) return i;
  throw InputError("unknown edge id " + id);
}

const Multigraph::Edge& Multigraph::edge(const std::string& id) const {
  return edges_[edge_index(id)];
}

namespace {

int components_impl(const Multigraph& g, const std::vector<bool>& in_subset) {
  Dsu dsu(g.vertex_count());
  for (std::size_t i = 0; i < g.edges().size(); ++i)
    if (in_subset[i]) dsu.unite(g.edges()[i].u, g.edges()[i].v);
  return dsu.groups();
}

std::vector<bool> subset_mask(const Multigraph& g, const EdgeSet& subset) {
  std::vector<bool> mask(g.edges().size(), false);
  std::size_t found = 0;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (subset.count(g.edges()[i].id)) {
      mask[i] = true;
      ++found;
    }
  }
  if (found != subset.size()) {
    for (const std::string& id : subset) g.edge_index(id);  // raises with the bad id
  }
  return mask;
}

}  // namespace

int components(const Multigraph& g, const EdgeSet& subset) {
  return components_impl(g, subset_mask(g, subset));
}

int components(const Multigraph& g) {
  return components_impl(g, std::vector<bool>(g.edges().size(), true));
}

int rank(const Multigraph& g, const EdgeSet& subset) {
  return g.vertex_count() - components(g, subset);
}

int rank(const Multigraph& g) { return g.vertex_count() - components(g); }

int nullity(const Multigraph& g, const EdgeSet& subset) {
  return static_cast<int>(subset.size()) - rank(g, subset);
}

int nullity(const Multigraph& g) {
  return static_cast<int>(g.edges().size()) - rank(g);
}

EdgeKind classify_edge(const Multigraph& g, const std::string& id) {
  const Multigraph::Edge& e = g.edge(id);
  if (e.u == e.v) return EdgeKind::SelfLoop;
  EdgeSet rest = g.all_edges();
  rest.erase(id);
  return components(g, rest) > components(g) ? EdgeKind::Bridge : EdgeKind::Regular;
}

Multigraph delete_edge(const Multigraph& g, const std::string& id) {
  int idx = g.edge_index(id);
  std::vector<Multigraph::Edge> edges = g.edges();
  edges.erase(edges.begin() + idx);
  return Multigraph(g.vertex_count(), std::move(edges), g.flags());
}

Multigraph contract_edge_classical(const Multigraph& g, const std::string& id) {
  const Multigraph::Edge& e = g.edge(id);
  if (e.u == e.v) throw OperationError("cannot contract self-loop " + id);
  int keep = std::min(e.u, e.v), drop = std::max(e.u, e.v);
  auto remap = [&](int v) {
    if (v == drop) return keep;
    return v > drop ? v - 1 : v;
  };
  std::vector<Multigraph::Edge> edges;
  for (const Multigraph::Edge& other : g.edges()) {
    if (other.id == id) continue;
    edges.push_back({other.id, remap(other.u), remap(other.v)});
  }
  std::vector<Multigraph::Flag> flags;
  for (const Multigraph::Flag& f : g.flags()) flags.push_back({f.id, remap(f.vertex)});
  return Multigraph(g.vertex_count() - 1, std::move(edges), std::move(flags));
}

namespace {

MultiPoly tutte_subset_sum(const Multigraph& g) {
  const int n_edges = static_cast<int>(g.edges().size());
  if (n_edges > 62) throw InputError("subset sum limited to 62 edges");
  const int rg = rank(g);

  std::vector<MultiPoly> pow_x(rg + 1), pow_y(n_edges + 1);
  const MultiPoly xm1 = MultiPoly::variable("x") - MultiPoly(1);
  const MultiPoly ym1 = MultiPoly::variable("y") - MultiPoly(1);
  for (int i = 0; i <= rg; ++i) pow_x[i] = xm1.pow(i);
  for (int i = 0; i <= n_edges; ++i) pow_y[i] = ym1.pow(i);

  MultiPoly total;
  const std::uint64_t n_subsets = 1ull << n_edges;
  Dsu dsu(g.vertex_count());
  for (std::uint64_t mask = 0; mask < n_subsets; ++mask) {
    std::iota(dsu.parent.begin(), dsu.parent.end(), 0);
    int size = 0;
    for (int i = 0; i < n_edges; ++i) {
      if (mask >> i & 1ull) {
        dsu.unite(g.edges()[i].u, g.edges()[i].v);
        ++size;
      }
    }
    int k = dsu.groups();
    int r = g.vertex_count() - k;
    int n = size - r;
    total += pow_x[rg - r] * pow_y[n];
  }
  return total;
}

}  // namespace

MultiPoly tutte(const Multigraph& g, std::size_t subset_cap) {
  if (g.edges().size() <= subset_cap) return tutte_subset_sum(g);
  for (const Multigraph::Edge& e : g.edges()) {
    if (classify_edge(g, e.id) == EdgeKind::Regular)
      return tutte(delete_edge(g, e.id), subset_cap) +
             tutte(contract_edge_classical(g, e.id), subset_cap);
  }
  // Terminal form: bridges and self-loops only.
  int bridges = 0, loops = 0;
  for (const Multigraph::Edge& e : g.edges())
    (e.u == e.v ? loops : bridges) += 1;
  return MultiPoly::variable("x").pow(bridges) * MultiPoly::variable("y").pow(loops);
}

MultiPoly multivariate_tutte(const Multigraph& g) {
  const int n_edges = static_cast<int>(g.edges().size());
  if (n_edges > 30) throw InputError("multivariate subset sum limited to 30 edges");
  MultiPoly total;
  Dsu dsu(g.vertex_count());
  for (std::uint64_t mask = 0; mask < (1ull << n_edges); ++mask) {
    std::iota(dsu.parent.begin(), dsu.parent.end(), 0);
    Monomial m;
    for (int i = 0; i < n_edges; ++i) {
      if (mask >> i & 1ull) {
        dsu.unite(g.edges()[i].u, g.edges()[i].v);
        m.set("beta:" + g.edges()[i].id, 1);
      }
    }
    m.set("q", dsu.groups());
    total.add_term(m, 1);
  }
  return total;
}

}  // namespace tensorpoly
