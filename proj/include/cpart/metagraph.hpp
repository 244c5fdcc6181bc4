#pragma once

#include "cpart/bigint.hpp"
#include "cpart/multigraph.hpp"
#include "cpart/partition.hpp"
#include "cpart/plane.hpp"

#include <map>
#include <optional>
#include <vector>

namespace cpart {

// Which connected 2-partitions count as states of the flip walk.
struct StateConstraints {
    bool ordered = true;     // labeled blocks (A,B); false quotients by the block swap
    bool allow_empty = false;            // admit the one-block states (everything | nothing)
    std::optional<double> eps;           // keep only eps-balanced states
    std::optional<double> apd_percent;   // keep only states inside this percent window
                                         // around the ideal block weight
    const std::vector<long long>* weights = nullptr;  // balance on these instead of node counts
};

// True when p is a connected 2-partition satisfying every active constraint.
// Throws for a partition with the wrong k or node count.
bool is_admissible_partition(const MultiGraph& g, const Partition& p, const StateConstraints& c);

// The flip walk as an explicit graph: one node per admissible partition, and
// for every state and every node x of the underlying graph one adjacency
// entry, the state reached by moving x into the other block (the state itself
// when that move is rejected). Every state therefore has total degree exactly
// |V(G)| counting self-loops once each.
struct MetaGraph {
    std::vector<Partition> states;
    // adjacency[s][x] = index of the state that flipping node x leads to.
    std::vector<std::vector<int>> adjacency;
    int degree = 0;        // node count of the underlying graph
    bool ordered = true;   // mirrors the constraints the graph was built with
    std::map<std::vector<int>, int> index;  // assignment vector -> state id

    // State id of p (canonicalized first when the states are unordered);
    // -1 when p is not a state.
    int state_index(const Partition& p) const;
};

// Enumerates the admissible states and fills in every flip transition.
// threads > 1 parallelizes the transition scan; the result is identical to the
// serial one. The guard bounds the assignment scan of the state enumeration.
MetaGraph build_flip_metagraph(const MultiGraph& g, const StateConstraints& c = {},
                               long long guard = 40'000'000, int threads = 1);

// |edges leaving the subset| / (2 * degree * |subset|), exact. Each adjacency
// entry pointing from inside to outside counts once; self-loops never cross.
// The subset must be a nonempty proper subset of the states.
BigRat bottleneck_ratio(const MetaGraph& mg, const std::vector<int>& subset);

struct ConductanceResult {
    BigRat value;
    bool exact = true;         // false when only metagraph-connected subsets were scanned
    std::vector<int> witness;  // a subset attaining value, sorted
};

// Minimum bottleneck ratio over subsets of at most half the states. Up to
// exact_limit states every subset is scanned; beyond that only subsets that
// are connected in the metagraph are scanned (within connected_budget many)
// and the result is flagged as an upper bound. Throws when even that scan is
// out of reach; bottleneck_ratio on a hand-picked subset still works then.
ConductanceResult exact_conductance(const MetaGraph& mg, int exact_limit = 20,
                                    long long connected_budget = 2'000'000);

// Lower bound 1/(4*phi) on the number of steps the walk needs to get within
// total variation 1/4 of stationarity.
BigRat mixing_lower_bound(const BigRat& phi);

// Face-label structure of the flip walk over a plane graph. A face is mixed
// in a state when its boundary meets both blocks. A directed transition
// (P, Q) between distinct states is purifying when some face is mixed in P
// but not in Q; dropping those edges leaves dpc_out, and reach[s] is the set
// of states reachable from s along the remaining directed edges.
struct PurificationResult {
    std::vector<std::vector<int>> mixed_faces;  // state -> sorted mixed face ids
    std::vector<std::vector<int>> dpc_out;      // state -> sorted distinct surviving out-neighbors
    std::vector<std::vector<int>> reach;        // state -> sorted reachable set, includes the state
};

// The reachability pass is quadratic in the state count, hence the guard.
PurificationResult purification_structure(const MetaGraph& mg, const PlaneGraph& pg,
                                          int max_states = 20'000);

}  // namespace cpart
