#pragma once

#include "cpart/bigint.hpp"
#include "cpart/multigraph.hpp"
#include "cpart/partition.hpp"

#include <optional>
#include <vector>

namespace cpart {

// Brute-force enumeration oracles. Everything here is exponential-time and
// guarded; the guards exist so that a desk-scale test can never silently turn
// into an unbounded scan.

struct EnumOptions {
    bool ordered = false;       // emit ordered partitions instead of canonical unordered ones
    bool allow_empty = false;   // admit one empty block (2-partitions only)
    std::optional<double> eps;  // keep only eps-balanced partitions (2-partitions only)
    const std::vector<long long>* weights = nullptr;  // balance on these instead of node counts
    long long guard = 40'000'000;                     // assignment-scan budget
    int threads = 1;  // >1 parallelizes the 2-partition scan; output is order-canonical either way
};

// Every inclusion-minimal cyclic edge set: each covered node has degree exactly
// 2 within the set. A parallel pair forms a 2-cycle; self-loops never count.
std::vector<EdgeSet> enum_simple_cycles(const MultiGraph& g, int max_edges = 30,
                                        bool override_guard = false);

// All connected k-partitions, canonically ordered for deterministic output.
std::vector<Partition> enum_connected_partitions(const MultiGraph& g, int k,
                                                 const EnumOptions& opts = {});

// Node-simple s-t paths counted as edge sequences (parallel edges count separately).
BigInt count_simple_paths(const MultiGraph& g, int s, int t);

std::vector<EdgeSet> enum_spanning_trees(const MultiGraph& g, long long guard = 40'000'000);

// Edge subsets that are bridgeless with first homology k-1 (the cut images of
// connected k-partitions under planar duality).
std::vector<EdgeSet> enum_dual_k_partitions(const MultiGraph& g, int k, int max_edges = 24,
                                            bool override_guard = false);

// Mass lambda^{|J|} summed over a family of edge sets, and its normalization.
BigRat size_weighted_mass(const std::vector<EdgeSet>& sets, const BigRat& lambda);
std::vector<BigRat> size_weighted_distribution(const std::vector<EdgeSet>& sets,
                                               const BigRat& lambda);

BigRat tv_distance(const std::vector<BigRat>& p, const std::vector<BigRat>& q);
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace cpart
