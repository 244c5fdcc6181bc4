#pragma once

#include "cpart/bigint.hpp"
#include "cpart/multigraph.hpp"
#include "cpart/partition.hpp"
#include "cpart/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cpart {

// Metropolis flip walk over connected k-partitions: a lazy chain that moves
// one node at a time between blocks and targets the stationary weight
// lambda^|cut| over the admissible states.
struct ChainConfig {
    BigRat lambda = BigRat(1);          // cut fugacity; must be positive
    std::optional<double> apd_percent;  // population window around the ideal block weight
    long long steps = 0;
    std::uint64_t seed = 0;
    double laziness = 0.5;              // probability of holding still before proposing
    int k = 2;                          // block count; values above 2 are experimental
    bool allow_empty_blocks = false;    // admit one empty block (k = 2 only)
    const std::vector<long long>* weights = nullptr;  // node weights; unit when null
    long long trace_stride = 0;            // record |cut| every this many steps (0: off)
    long long validate_every = 1'000'000;  // caches rechecked from scratch this often (0: off)
};

struct ChainState {
    Partition partition;
    int cut_size = 0;                     // cached |cut(partition)|
    std::vector<long long> block_weights;  // cached per-block weight totals
};

// Builds the cached state for a partition after validating it against the
// configuration (connectivity, emptiness, population window). Throws
// precondition_error when the partition is inadmissible.
ChainState make_chain_state(const MultiGraph& g, const Partition& p, const ChainConfig& cfg);

struct Proposal {
    bool hold = true;   // the lazy coin held, or no target block was available
    int node = -1;
    int from_block = -1;
    int to_block = -1;
    bool admissible = false;  // move keeps connectivity, emptiness and window constraints
    int new_cut = 0;          // cut size after the move (valid when admissible)
    long long node_weight = 0;
};

// Deterministic core of a proposal: what happens when `node` moves to
// `to_block`. Never holds; admissible reports whether the move is legal. The
// reference connectivity check is a full search over the shrinking block.
Proposal evaluate_flip(const MultiGraph& g, const ChainState& s, int node, int to_block,
                       const ChainConfig& cfg);

// Random proposal: one lazy coin, then a uniform node moving to the other
// block (k = 2) or to a uniformly chosen adjacent block (k > 2, experimental;
// holds when the chosen node has no adjacent block).
Proposal flip_propose(const MultiGraph& g, const ChainState& s, const ChainConfig& cfg,
                      SeededRng& rng);

// Exact Metropolis acceptance probability min(1, lambda^(new_cut - old_cut)).
BigRat acceptance_probability(int old_cut, int new_cut, const BigRat& lambda);

// Applies the Metropolis filter for the stationary weight lambda^|cut| and
// returns the next state. Held or inadmissible proposals return the state
// unchanged. The exact coin consumes randomness only when the acceptance
// probability is strictly between zero and one.
ChainState metropolis_accept(const ChainState& s, const Proposal& p, const BigRat& lambda,
                             SeededRng& rng);

struct FlipStats {
    std::vector<long long> flips;      // node -> accepted moves of that node
    std::vector<long long> occupancy;  // node -> steps spent outside block 0
    std::vector<long long> cut_steps;  // edge -> steps spent inside the cut
    std::vector<int> cut_trace;        // |cut| after every trace_stride-th step
    long long steps = 0;
    long long accepted = 0;
};

// Runs the chain for cfg.steps steps from the given start. Deterministic in
// (cfg, initial). Occupancy and cut exposure count the states at the end of
// each of the cfg.steps steps. Incremental caches are re-derived from scratch
// and compared every validate_every steps; a mismatch throws.
std::pair<ChainState, FlipStats> run_chain(const MultiGraph& g, const ChainConfig& cfg,
                                           const Partition& initial);

// One chain per configuration, all from the same start; configurations run in
// parallel when threads > 1 and results are identical to serial runs.
std::vector<std::pair<ChainState, FlipStats>> run_chains(const MultiGraph& g,
                                                         const std::vector<ChainConfig>& cfgs,
                                                         const Partition& initial,
                                                         int threads = 1);

// Writes <prefix>.csv with a node,flips,occupancy row per node. With a layout
// of one coordinate pair per node also writes <prefix>_flips.pgm and
// <prefix>_occupancy.pgm, rastered over the grid spanned by the distinct
// layout coordinates and scaled to the field maximum. Returns the paths
// written; output depends only on the arguments, byte for byte. A null or
// wrong-length layout yields the CSV alone.
std::vector<std::string> heatmap_export(const FlipStats& stats,
                                        const std::vector<std::pair<double, double>>* layout,
                                        const std::string& out_prefix);

}  // namespace cpart
