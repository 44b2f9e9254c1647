#include "tensorpoly/tpoly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

#include "parallel.hpp"
#include "stranded_index.hpp"
#include "tensorpoly/errors.hpp"

namespace tensorpoly {

namespace {

enum class Variant { Plain, Multi, Hyper, HyperLiteral };

// "e2" before "e10": equal alphabetic prefixes compare by numeric suffix.
bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i] && !std::isdigit(static_cast<unsigned char>(a[i])))
    ++i;
  auto digits = [](const std::string& s, std::size_t from) {
    return from < s.size() &&
           std::all_of(s.begin() + from, s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  if (digits(a, i) && digits(b, i)) {
    if (a.size() != b.size()) return a.size() < b.size();
  }
  return a < b;
}

std::string corner_set_signature(const std::vector<int>& corners) {
  std::ostringstream os;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    if (i) os << "_";
    os << corners[i] / 4 << "." << corners[i] % 4;
  }
  return os.str();
}

MultiPoly subset_sum(const StrandedGraph& g, Variant variant, int workers_requested) {
  const detail::StrandedIndex index(g);
  const int m = static_cast<int>(index.active.size());
  if (m > 30) throw InputError("subset sum limited to 30 active edges");
  const std::uint64_t n_subsets = 1ull << m;

  std::uint64_t full_mask = index.passive_mask;
  for (int e : index.active) full_mask |= 1ull << e;
  detail::StrandedIndex::Scratch probe = index.make_scratch();
  detail::StrandedIndex::SubsetStats full;
  index.underlying_and_faces(full_mask, probe, full);
  const int rank_full = full.r;

  std::vector<MultiPoly> pow_xm1(rank_full + 1);
  const MultiPoly xm1 = MultiPoly::variable("x") - MultiPoly(1);
  for (int i = 0; i <= rank_full; ++i) pow_xm1[i] = xm1.pow(i);

  const bool want_detail = variant == Variant::Hyper || variant == Variant::HyperLiteral;
  const int workers =
      static_cast<int>(std::min<std::uint64_t>(detail::resolve_workers(workers_requested),
                                               std::max<std::uint64_t>(n_subsets / 16, 1)));

  std::vector<MultiPoly> partial(workers > 1 ? workers : 1);
  detail::parallel_ranges(n_subsets, workers, [&](int worker, std::uint64_t begin, std::uint64_t end) {
    detail::StrandedIndex::Scratch scratch = index.make_scratch();
    std::vector<std::pair<std::vector<int>, int>> detail_buf;
    MultiPoly& acc = partial[worker];
    for (std::uint64_t bits = begin; bits < end; ++bits) {
      std::uint64_t mask = index.passive_mask;
      for (std::uint64_t rest = bits; rest; rest &= rest - 1)
        mask |= 1ull << index.active[std::countr_zero(rest)];

      detail::StrandedIndex::SubsetStats st;
      index.underlying_and_faces(mask, scratch, st);
      detail_buf.clear();
      st.genus_sum = index.bubble_genus(mask, scratch,
                                        want_detail ? &detail_buf : nullptr,
                                        variant == Variant::HyperLiteral);

      if (variant == Variant::Plain) {
        int zexp = st.k - st.faces + st.n;
        if (zexp < 0 || zexp % 2 != 0)
          throw StructureError("z-exponent must be even and nonnegative");
        Monomial mono;
        mono.set("y", st.n);
        mono.set("z", zexp);
        mono.set("t", 2 * st.genus_sum);
        acc.add_shifted(pow_xm1[rank_full - st.r], mono);
      } else {
        Monomial mono;
        mono.set("x", st.k);
        mono.set("z", st.faces);
        for (std::uint64_t rest = mask; rest; rest &= rest - 1)
          mono.set("beta:" + g.edges()[std::countr_zero(rest)].id, 1);
        if (variant == Variant::Multi) {
          mono.set("t", 2 * st.genus_sum);
        } else if (variant == Variant::Hyper) {
          for (const auto& [corners, genus] : detail_buf)
            if (genus > 0) mono.set("gamma:" + corner_set_signature(corners), 2 * genus);
        } else {  // HyperLiteral: total genus sum on every bubble of H
          if (st.genus_sum > 0)
            for (const auto& [corners, genus] : detail_buf)
              mono.set("gamma:" + corner_set_signature(corners), 2 * st.genus_sum);
        }
        acc.add_term(mono, 1);
      }
    }
  });

  MultiPoly total;
  for (MultiPoly& p : partial) total += p;
  return total;
}

std::vector<std::string> ordered_active_edges(const StrandedGraph& g, const TPolyOptions& opts) {
  std::vector<std::string> order;
  EdgeSet active = g.active_edges();
  for (const std::string& id : opts.pivot_order) {
    if (active.count(id) && std::find(order.begin(), order.end(), id) == order.end())
      order.push_back(id);
  }
  std::vector<std::string> rest(active.begin(), active.end());
  std::sort(rest.begin(), rest.end(), natural_less);
  for (const std::string& id : rest)
    if (std::find(order.begin(), order.end(), id) == order.end()) order.push_back(id);
  return order;
}

// Canonical key under exhaustive vertex relabeling; edge ids are dropped,
// so this is only sound for the id-independent plain polynomial.
std::string canonical_key(const StrandedGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::vector<std::array<int, 5>> edges;
    for (const auto& e : g.edges()) {
      std::array<int, 2> a{perm[e.a.vertex], e.a.leg};
      std::array<int, 2> b{perm[e.b.vertex], e.b.leg};
      if (b < a) std::swap(a, b);
      edges.push_back({a[0], a[1], b[0], b[1], g.is_active(e.id) ? 0 : 1});
    }
    std::sort(edges.begin(), edges.end());
    std::vector<std::array<int, 2>> flags;
    for (const auto& f : g.flags()) flags.push_back({perm[f.at.vertex], f.at.leg});
    std::sort(flags.begin(), flags.end());
    std::ostringstream os;
    os << n << ";";
    for (const auto& e : edges)
      os << e[0] << "," << e[1] << "," << e[2] << "," << e[3] << "," << e[4] << ";";
    os << "|";
    for (const auto& f : flags) os << f[0] << "," << f[1] << ";";
    std::string key = os.str();
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::optional<std::string> pick_pivot(const StrandedGraph& g, const TPolyOptions& opts) {
  Multigraph underlying = g.underlying_multigraph();
  for (const std::string& id : ordered_active_edges(g, opts))
    if (classify_edge(underlying, id) == EdgeKind::Regular) return id;
  return std::nullopt;
}

MultiPoly delcontr(const StrandedGraph& g, Variant variant, const TPolyOptions& opts,
                   std::map<std::string, MultiPoly>* memo) {
  std::string key;
  if (memo) {
    key = canonical_key(g);
    auto it = memo->find(key);
    if (it != memo->end()) return it->second;
  }
  MultiPoly result;
  std::optional<std::string> pivot = pick_pivot(g, opts);
  if (!pivot) {
    result = subset_sum(g, variant, opts.workers);
  } else {
    result = delcontr(g.delete_edge(*pivot), variant, opts, memo) +
             delcontr(g.contract_edge(*pivot), variant, opts, memo);
  }
  if (memo) (*memo)[key] = result;
  return result;
}

MultiPoly delcontr_entry(const StrandedGraph& g, Variant variant, const TPolyOptions& opts) {
  // Canonical relabeling ignores edge ids, so memoization applies to the
  // plain polynomial only, and only at relabeling-friendly sizes.
  const bool use_memo = opts.memoize && variant == Variant::Plain && g.vertex_count() <= 6;
  std::map<std::string, MultiPoly> memo;
  return delcontr(g, variant, opts, use_memo ? &memo : nullptr);
}

}  // namespace

MultiPoly t_polynomial(const StrandedGraph& g, const TPolyOptions& opts) {
  return subset_sum(g, Variant::Plain, opts.workers);
}

MultiPoly t_polynomial_delcontr(const StrandedGraph& g, const TPolyOptions& opts) {
  return delcontr_entry(g, Variant::Plain, opts);
}

MultiPoly multivariate_t(const StrandedGraph& g, const TPolyOptions& opts) {
  return subset_sum(g, Variant::Multi, opts.workers);
}

MultiPoly multivariate_t_delcontr(const StrandedGraph& g, const TPolyOptions& opts) {
  return delcontr_entry(g, Variant::Multi, opts);
}

MultiPoly hypervariate_t(const StrandedGraph& g, bool literal_total_exponent,
                         const TPolyOptions& opts) {
  return subset_sum(g, literal_total_exponent ? Variant::HyperLiteral : Variant::Hyper,
                    opts.workers);
}

MultiPoly hypervariate_t_delcontr(const StrandedGraph& g, bool literal_total_exponent,
                                  const TPolyOptions& opts) {
  return delcontr_entry(g, literal_total_exponent ? Variant::HyperLiteral : Variant::Hyper, opts);
}

DelContrReport verify_delcontr(const StrandedGraph& g, const TPolyOptions& opts) {
  DelContrReport report;
  Multigraph underlying = g.underlying_multigraph();
  MultiPoly whole = subset_sum(g, Variant::Plain, opts.workers);
  for (const std::string& id : ordered_active_edges(g, opts)) {
    if (classify_edge(underlying, id) != EdgeKind::Regular) continue;
    DelContrCheck check;
    check.edge = id;
    check.whole = whole;
    check.recombination = subset_sum(g.delete_edge(id), Variant::Plain, opts.workers) +
                          subset_sum(g.contract_edge(id), Variant::Plain, opts.workers);
    check.passed = check.whole == check.recombination;
    report.all_passed = report.all_passed && check.passed;
    report.checks.push_back(std::move(check));
  }
  return report;
}

}  // namespace tensorpoly
