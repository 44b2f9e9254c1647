#pragma once

#include <string>
#include <vector>

#include "tensorpoly/multipoly.hpp"
#include "tensorpoly/stranded.hpp"

namespace tensorpoly {

struct TPolyOptions {
  // Worker threads for subset sums; 0 = TENSORPOLY_THREADS or hardware.
  int workers = 0;
  // Pivot preference for the deletion/contraction recursion: the first
  // listed edge that is active and regular is split on. Edges absent from
  // the list follow in id order. The result is pivot-independent; the
  // order only fixes the recursion shape.
  std::vector<std::string> pivot_order;
  bool memoize = true;
};

// T_G(x, y, z, t): sum over spanning subsets H = A u passive(G) with
// A ranging over the active edges, of
//   (x-1)^(r(G)-r(H)) * y^n(H) * z^(k(H)-F(H)+n(H)) * t^(2*genus sum of bubbles(H))
// where r, n, k come from the underlying multigraph, F from the jacket of
// H, and the genus sum from the corner-construction bubbles of H.
MultiPoly t_polynomial(const StrandedGraph& g, const TPolyOptions& opts = {});

// Same polynomial through the deletion/contraction recursion
//   T_G = T_{G-e} + T_{G/e}  on an active regular edge e,
// falling back to the direct subset sum when no such edge exists.
MultiPoly t_polynomial_delcontr(const StrandedGraph& g, const TPolyOptions& opts = {});

// T_G(x, {beta}, z, t) = sum over the same H of
//   x^k(H) * prod_{e in H} beta:<edge-id> * z^F(H) * t^(2*genus sum).
MultiPoly multivariate_t(const StrandedGraph& g, const TPolyOptions& opts = {});
MultiPoly multivariate_t_delcontr(const StrandedGraph& g, const TPolyOptions& opts = {});

// Hypervariate version: one variable per bubble instead of t. Bubbles are
// identified by their sorted corner set ("gamma:<signature>"). Default
// reading: each bubble's variable carries its own genus, gamma_b^(2*g_b).
// With literal_total_exponent every bubble variable of H carries the
// total genus sum of H instead.
MultiPoly hypervariate_t(const StrandedGraph& g, bool literal_total_exponent = false,
                         const TPolyOptions& opts = {});
MultiPoly hypervariate_t_delcontr(const StrandedGraph& g, bool literal_total_exponent = false,
                                  const TPolyOptions& opts = {});

struct DelContrCheck {
  std::string edge;
  bool passed = false;
  MultiPoly whole;          // T_G
  MultiPoly recombination;  // T_{G-e} + T_{G/e}
};

struct DelContrReport {
  std::vector<DelContrCheck> checks;  // one per active regular edge
  bool all_passed = true;
};

// Checks T_G = T_{G-e} + T_{G/e} by subset sum for every active regular
// edge. Failures become report entries, not errors.
DelContrReport verify_delcontr(const StrandedGraph& g, const TPolyOptions& opts = {});

}  // namespace tensorpoly
