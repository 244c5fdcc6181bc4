#pragma once

#include "cpart/bigint.hpp"
#include "cpart/multigraph.hpp"
#include "cpart/partition.hpp"
#include "cpart/rng.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace cpart {

// Exactly uniform integer in [0, n) for arbitrary-precision n > 0. Draws just
// enough 64-bit words, masks down to the bit length of n - 1, and rejects
// values >= n, so no rounding ever enters.
BigInt uniform_bigint(SeededRng& rng, const BigInt& n);

// Exact Bernoulli draw for a rational p in [0, 1]: true with probability
// exactly p. Throws precondition_error outside [0, 1].
bool bernoulli_rational(SeededRng& rng, const BigRat& p);

// Conditional-inclusion oracle over a finite ordered universe of element ids.
// query(i, chosen) must return the exact probability that universe[i] belongs
// to the sampled set, given that the set's intersection with
// universe[0..i-1] is exactly `chosen` (a subset of those earlier ids).
struct MarginalOracle {
    std::vector<int> universe;
    std::function<BigRat(int, const std::vector<int>&)> query;
};

// Draws one set from the law the oracle describes by deciding elements in
// universe order with exact Bernoulli draws on the conditional probabilities.
// Returns the chosen element ids in universe order. Throws precondition_error
// if a query falls outside [0, 1].
std::vector<int> inductive_sample(const MarginalOracle& oracle, SeededRng& rng);

// Exact sampler for simple cycles of a graph whose biconnected blocks are
// all two-terminal series-parallel: draws cycle C with probability
// proportional to prod_{e in C} c(e). Edges are decided in id order, with
// conditionals formed as ratios of constrained cycle masses; the block
// decomposition is built once and conditionals are memoized across draws, so
// batches cost little beyond the first draw. One object serves one thread;
// give parallel batches one object and one rng stream each. The constructor
// throws precondition_error when no cycle has positive mass (in particular
// on acyclic graphs).
class CycleSampler {
  public:
    CycleSampler(const MultiGraph& g, std::vector<BigRat> c);
    CycleSampler(CycleSampler&&) noexcept;
    CycleSampler& operator=(CycleSampler&&) noexcept;
    ~CycleSampler();

    EdgeSet draw(SeededRng& rng);
    // Total mass of all simple cycles; the normalizing constant.
    const BigRat& total_mass() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Exact uniform sampler over connected 2-partitions with equal block weight,
// for connected graphs whose blocks are all series-parallel. The cut is
// grown edge by edge with constrained balanced counts as conditionals, then
// the partition is read off as the components left by removing the cut.
// Caching and threading behave as in CycleSampler. The constructor throws
// precondition_error when no balanced partition exists (including odd total
// weight).
class BalancedSampler {
  public:
    BalancedSampler(const MultiGraph& g, std::vector<long long> w);
    BalancedSampler(BalancedSampler&&) noexcept;
    BalancedSampler& operator=(BalancedSampler&&) noexcept;
    ~BalancedSampler();

    Partition draw(SeededRng& rng);
    // Number of balanced partitions; the support size.
    const BigInt& total_count() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One-shot convenience wrappers over the samplers above.
EdgeSet sample_sc_uniform(const MultiGraph& g, SeededRng& rng);
EdgeSet sample_sc_nu_c(const MultiGraph& g, const std::vector<BigRat>& c, SeededRng& rng);
Partition sample_balanced_uniform(const MultiGraph& g, const std::vector<long long>& w,
                                  SeededRng& rng);

// Exactly uniform spanning tree via loop-erased random walks (Wilson's
// algorithm). Requires a connected graph.
EdgeSet wilson_ust(const MultiGraph& g, SeededRng& rng);

// Minimum spanning tree under iid uniform edge weights drawn from rng, ties
// broken by smaller edge id. Requires a connected graph.
EdgeSet random_mst(const MultiGraph& g, SeededRng& rng);

enum class TreeKind { ust, mst };

// How a tree draw is turned into a split. uniform_valid_edge: keep the tree
// only if some tree edge yields an eps-balanced split, then pick uniformly
// among the valid edges. rejection_single_edge: pick one uniform tree edge
// and redraw the whole tree when its split is out of balance.
enum class TreePartitionVariant { uniform_valid_edge, rejection_single_edge };

// Random tree-based 2-partition: draw a spanning tree of the requested kind,
// remove one tree edge, and return the two components. Balance is judged by
// is_eps_balanced on w. Each failed tree counts as one retry; throws
// retries_exhausted_error after max_retries trees.
Partition tree_partition(const MultiGraph& g, const std::vector<long long>& w, double eps,
                         TreeKind kind, SeededRng& rng, int max_retries = 1000,
                         TreePartitionVariant variant = TreePartitionVariant::uniform_valid_edge);

}  // namespace cpart
