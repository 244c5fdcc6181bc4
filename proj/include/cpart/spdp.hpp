#pragma once

#include "cpart/bigint.hpp"
#include "cpart/multigraph.hpp"
#include "cpart/poly.hpp"
#include "cpart/sp.hpp"

#include <compare>
#include <map>
#include <vector>

namespace cpart {

// Weight of a block together with an emptiness flag, so that a nonempty block
// of total weight zero stays distinct from an absent block. Addition adds
// totals and ORs the flags.
struct MonoidWeight {
    long long total = 0;
    bool nonempty = false;

    friend MonoidWeight operator+(MonoidWeight a, MonoidWeight b) {
        return {a.total + b.total, a.nonempty || b.nonempty};
    }
    auto operator<=>(const MonoidWeight&) const = default;
};

// Key of the three-block table of a two-terminal subgraph with terminals
// (s, t). Block 1 contains s and is always nonempty; block 3, when nonempty,
// contains t (otherwise t lies in block 1); block 2 avoids both terminals.
// Every block induces a connected subgraph. `link` records whether some
// already-processed edge joins block 1 and block 3; parallel merges refuse to
// rejoin a pair of blocks that is already adjacent, because the joined
// version of that partition is produced separately and would be counted
// twice.
struct XKey {
    MonoidWeight a1, a2, a3;
    bool link = false;
    auto operator<=>(const XKey&) const = default;
};

// Sparse table mapping each reachable key to its number of partitions.
using DPTableX = std::map<XKey, BigInt>;

// Restriction applied at a single edge of the dynamic program: the edge may
// be forced to lie inside a block (forced_uncut) or across the block
// boundary (forced_cut).
enum class LeafRule { free_edge, forced_cut, forced_uncut };

// Table of a single edge (s, t) with endpoint weights wu at s and wv at t.
DPTableX leaf_table(long long wu, long long wv, LeafRule rule = LeafRule::free_edge);

// Table of the series composition gluing left's t to right's s.
DPTableX series_table(const DPTableX& left, const DPTableX& right);

// Table of the parallel composition identifying both terminal pairs.
DPTableX parallel_table(const DPTableX& left, const DPTableX& right);

// Table of the same subgraph with its terminals swapped.
DPTableX reverse_table(const DPTableX& x);

// Table of the whole tree. `w` holds one weight per base-graph node; a node's
// weight is charged at its first leaf in traversal order and re-enters later
// leaves as zero, so shared terminals are not double-counted. `rules`, when
// given, is indexed by base edge id.
DPTableX eval_balanced_table(const SPTree& tree, const std::vector<long long>& w,
                             const std::vector<LeafRule>* rules = nullptr);

// Cycle mass and terminal-path mass of the tree, with one polynomial weight
// per base edge. A single edge has (0, w(e)); series composition gives
// (c1 + c2, p1 * p2); parallel composition gives (c1 + c2 + p1 * p2, p1 + p2).
// The cycle mass sums prod_{e in C} w(e) over simple cycles C, the path mass
// over simple s-t paths.
struct CyclePathPolys {
    UniPoly cycles, paths;
};
CyclePathPolys eval_cycle_path_polys(const SPTree& tree,
                                     const std::vector<UniPoly>& edge_weight);

// Number of unordered partitions of the nodes into two nonempty connected
// blocks of equal total weight. Self-loops are ignored. Works whenever every
// biconnected block is two-terminal series-parallel and throws
// not_series_parallel_error otherwise; requires a connected graph.
BigInt count_balanced(const MultiGraph& g, const std::vector<long long>& w);

// Same count restricted to partitions whose cut contains every edge of
// forced_cut and none of forced_uncut. The cut of any such partition lies in
// a single biconnected block, so a forced_cut set spanning two blocks gives 0.
BigInt count_balanced_constrained(const MultiGraph& g, const std::vector<long long>& w,
                                  const EdgeSet& forced_cut, const EdgeSet& forced_uncut);

// Total mass prod_{e in C} c(e) over simple cycles C containing every edge of
// j and none of j2. Internally j-edges weigh x * c(e) and j2-edges weigh 0,
// and the answer is the coefficient of x^|j| of the cycle mass summed over
// biconnected blocks. Same graph-class requirement as count_balanced.
BigRat sc_marginal_mass(const MultiGraph& g, const std::vector<BigRat>& c,
                        const EdgeSet& j, const EdgeSet& j2);

// Number of simple cycles, via the per-block route with unit weights.
BigInt sc_count(const MultiGraph& g);

// Default gadget depth for cycle-count extraction, wide enough for any
// constraint pattern on a graph with n nodes.
int default_cycle_depth(int n);

// Default gadget depth for balanced-count extraction.
inline int default_balanced_depth(int n) { return n * n + 1; }

// Number of simple cycles containing every edge of j and none of j2,
// recovered as the high bits of the plain cycle count of the bigon-chain
// marginal graph. A guard computed from the unconstrained cycle count proves
// the low-order remainder fits below the extracted bits; if the depth is too
// small the call throws insufficient_depth_error instead of returning a wrong
// value. depth <= 0 selects default_cycle_depth.
BigInt sc_count_remainder(const MultiGraph& g, const EdgeSet& j, const EdgeSet& j2,
                          int depth = -1);

// Number of balanced 2-partitions of g with every edge of j2 contracted and
// every edge of j cut, recovered as the high bits of the balanced count of
// the star marginal graph. Guarded like sc_count_remainder; depth <= 0
// selects default_balanced_depth.
BigInt balanced_count_remainder(const MultiGraph& g, const std::vector<long long>& w,
                                const EdgeSet& j, const EdgeSet& j2, int depth = -1);

}  // namespace cpart
