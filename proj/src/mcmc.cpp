#include "cpart/mcmc.hpp"

#include "cpart/errors.hpp"
#include "cpart/samplers.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <string>

#ifdef CPART_HAVE_OPENMP
#include <omp.h>
#endif

namespace cpart {

namespace {

struct ApdBounds {
    bool active = false;
    BigRat lo, hi;  // allowed block-weight window

    bool ok(long long w) const {
        if (!active) return true;
        BigRat v(w);
        return lo <= v && v <= hi;
    }
};

void validate_config(const MultiGraph& g, const ChainConfig& cfg) {
    if (cfg.lambda <= 0) throw precondition_error("chain fugacity must be positive");
    if (!(cfg.laziness >= 0.0 && cfg.laziness < 1.0))
        throw precondition_error("laziness must lie in [0, 1)");
    if (cfg.steps < 0) throw precondition_error("step count must be nonnegative");
    if (cfg.k < 2) throw precondition_error("chain needs at least two blocks");
    if (cfg.allow_empty_blocks && cfg.k != 2)
        throw precondition_error("empty blocks are only supported for k = 2");
    if (cfg.apd_percent && *cfg.apd_percent < 0)
        throw precondition_error("population window percentage must be nonnegative");
    if (cfg.weights && static_cast<int>(cfg.weights->size()) != g.n)
        throw precondition_error("node weight vector has wrong length");
    if (cfg.trace_stride < 0 || cfg.validate_every < 0)
        throw precondition_error("stride settings must be nonnegative");
}

std::vector<long long> resolve_weights(const MultiGraph& g, const ChainConfig& cfg) {
    return cfg.weights ? *cfg.weights : std::vector<long long>(g.n, 1);
}

ApdBounds make_bounds(const std::vector<long long>& w, const ChainConfig& cfg) {
    ApdBounds b;
    if (!cfg.apd_percent) return b;
    b.active = true;
    long long total = 0;
    for (long long x : w) total += x;
    BigRat ideal = BigRat(total) / cfg.k;
    BigRat x = rat_from_double(*cfg.apd_percent) / 100;
    b.lo = ideal * (BigRat(1) - x);
    b.hi = ideal * (BigRat(1) + x);
    return b;
}

// Shared per-chain machinery: adjacency, block sizes, and scratch buffers for
// the connectivity search, kept in sync with the current state.
struct Runner {
    const MultiGraph& g;
    const ChainConfig& cfg;
    std::vector<long long> w;
    ApdBounds bounds;
    std::vector<std::vector<std::pair<int, int>>> adj;  // node -> (neighbor, edge)
    std::vector<int> sizes;                             // block -> node count
    std::vector<int> stamp, queue, blk_scratch;
    int generation = 0;

    Runner(const MultiGraph& graph, const ChainConfig& config)
        : g(graph),
          cfg(config),
          w(resolve_weights(graph, config)),
          bounds(make_bounds(w, config)),
          adj(graph.adjacency()),
          stamp(graph.n, 0),
          blk_scratch(config.k, 0) {
        queue.reserve(graph.n);
    }

    void bind(const Partition& p) {
        sizes = p.block_sizes();
    }

    // True when the block of `node` stays connected after removing it.
    bool shrink_connected(const Partition& p, int node, int block_size) {
        if (block_size <= 1) return true;
        const int a = p.assign[node];
        int seed = -1;
        for (const auto& [u, e] : adj[node])
            if (u != node && p.assign[u] == a) {
                seed = u;
                break;
            }
        if (seed < 0) return false;  // cannot happen for a connected block of size >= 2
        generation++;
        stamp[node] = generation;  // removed
        stamp[seed] = generation;
        queue.clear();
        queue.push_back(seed);
        int reached = 1;
        for (size_t head = 0; head < queue.size(); head++) {
            for (const auto& [u, e] : adj[queue[head]]) {
                if (stamp[u] == generation || p.assign[u] != a) continue;
                stamp[u] = generation;
                queue.push_back(u);
                reached++;
            }
        }
        return reached == block_size - 1;
    }

    Proposal evaluate(const ChainState& s, int node, int to_block) {
        Proposal out;
        out.hold = false;
        out.node = node;
        out.from_block = s.partition.assign[node];
        out.to_block = to_block;
        out.node_weight = w[node];
        const int a = out.from_block;
        if (to_block < 0 || to_block >= cfg.k || to_block == a) return out;

        if (sizes[a] == 1 && !(cfg.allow_empty_blocks && cfg.k == 2)) return out;
        if (sizes[to_block] > 0) {
            bool touches = false;
            for (const auto& [u, e] : adj[node])
                if (u != node && s.partition.assign[u] == to_block) {
                    touches = true;
                    break;
                }
            if (!touches) return out;
        }
        if (!bounds.ok(s.block_weights[a] - w[node]) ||
            !bounds.ok(s.block_weights[to_block] + w[node]))
            return out;
        if (!shrink_connected(s.partition, node, sizes[a])) return out;

        int delta = 0;
        for (const auto& [u, e] : adj[node]) {
            if (u == node) continue;
            delta += (s.partition.assign[u] != to_block) - (s.partition.assign[u] != a);
        }
        out.admissible = true;
        out.new_cut = s.cut_size + delta;
        return out;
    }

    Proposal propose(const ChainState& s, SeededRng& rng) {
        if (rng.uniform_real() < cfg.laziness) return Proposal{};
        return propose_nonlazy(s, rng);
    }

    Proposal propose_nonlazy(const ChainState& s, SeededRng& rng) {
        int node = static_cast<int>(rng.uniform_int(g.n));
        int target;
        if (cfg.k == 2) {
            target = 1 - s.partition.assign[node];
        } else {
            // Experimental k > 2 move: a uniformly chosen adjacent block.
            const int a = s.partition.assign[node];
            generation++;
            std::vector<int> options;
            for (const auto& [u, e] : adj[node]) {
                int b = s.partition.assign[u];
                if (u == node || b == a || stamp[b] == generation) continue;
                // stamp indices are node ids elsewhere; block ids are < k <= n.
                stamp[b] = generation;
                options.push_back(b);
            }
            if (options.empty()) return Proposal{};
            std::sort(options.begin(), options.end());
            target = options[rng.uniform_int(options.size())];
        }
        return evaluate(s, node, target);
    }

    void apply(ChainState& s, const Proposal& p) {
        s.partition.assign[p.node] = p.to_block;
        s.cut_size = p.new_cut;
        s.block_weights[p.from_block] -= p.node_weight;
        s.block_weights[p.to_block] += p.node_weight;
        sizes[p.from_block]--;
        sizes[p.to_block]++;
    }
};

void check_admissible(const MultiGraph& g, const Partition& p, const ChainConfig& cfg,
                      const ApdBounds& bounds, const std::vector<long long>& w) {
    if (p.k != cfg.k) throw precondition_error("partition block count does not match the chain");
    if (static_cast<int>(p.assign.size()) != g.n)
        throw precondition_error("partition lives on the wrong node set");
    for (int v = 0; v < g.n; v++)
        if (p.assign[v] < 0 || p.assign[v] >= p.k)
            throw precondition_error("partition has an out-of-range block id");
    if (!is_connected_partition(g, p)) throw precondition_error("initial blocks must be connected");
    auto sz = p.block_sizes();
    int empties = static_cast<int>(std::count(sz.begin(), sz.end(), 0));
    if (empties > (cfg.allow_empty_blocks ? 1 : 0))
        throw precondition_error("initial partition has a forbidden empty block");
    for (long long bw : p.block_weights(w))
        if (!bounds.ok(bw))
            throw precondition_error("initial partition violates the population window");
}

}  // namespace

ChainState make_chain_state(const MultiGraph& g, const Partition& p, const ChainConfig& cfg) {
    g.check_valid();
    validate_config(g, cfg);
    auto w = resolve_weights(g, cfg);
    check_admissible(g, p, cfg, make_bounds(w, cfg), w);
    ChainState s;
    s.partition = p;
    s.cut_size = cut(g, p).count();
    s.block_weights = p.block_weights(w);
    return s;
}

Proposal evaluate_flip(const MultiGraph& g, const ChainState& s, int node, int to_block,
                       const ChainConfig& cfg) {
    validate_config(g, cfg);
    if (node < 0 || node >= g.n) throw precondition_error("flip node out of range");
    Runner r(g, cfg);
    r.bind(s.partition);
    return r.evaluate(s, node, to_block);
}

Proposal flip_propose(const MultiGraph& g, const ChainState& s, const ChainConfig& cfg,
                      SeededRng& rng) {
    validate_config(g, cfg);
    if (rng.uniform_real() < cfg.laziness) return Proposal{};
    Runner r(g, cfg);
    r.bind(s.partition);
    return r.propose_nonlazy(s, rng);
}

BigRat acceptance_probability(int old_cut, int new_cut, const BigRat& lambda) {
    if (lambda <= 0) throw precondition_error("chain fugacity must be positive");
    int delta = new_cut - old_cut;
    BigRat r = 1;
    for (int i = 0; i < std::abs(delta); i++) r *= lambda;
    if (delta < 0) r = BigRat(1) / r;
    return r < 1 ? r : BigRat(1);
}

ChainState metropolis_accept(const ChainState& s, const Proposal& p, const BigRat& lambda,
                             SeededRng& rng) {
    if (p.hold || !p.admissible) return s;
    BigRat pa = acceptance_probability(s.cut_size, p.new_cut, lambda);
    if (!bernoulli_rational(rng, pa)) return s;
    ChainState next = s;
    next.partition.assign[p.node] = p.to_block;
    next.cut_size = p.new_cut;
    next.block_weights[p.from_block] -= p.node_weight;
    next.block_weights[p.to_block] += p.node_weight;
    return next;
}

std::pair<ChainState, FlipStats> run_chain(const MultiGraph& g, const ChainConfig& cfg,
                                           const Partition& initial) {
    ChainState st = make_chain_state(g, initial, cfg);
    Runner r(g, cfg);
    r.bind(st.partition);
    SeededRng rng(cfg.seed);

    const int m = g.edge_count();
    FlipStats stats;
    stats.flips.assign(g.n, 0);
    stats.occupancy.assign(g.n, 0);
    stats.cut_steps.assign(m, 0);
    stats.steps = cfg.steps;

    // Exposure bookkeeping: a node (edge) accrues one unit for every step
    // whose end state has it outside block 0 (inside the cut). `since` holds
    // the first step of the current streak.
    std::vector<long long> occ_since(g.n, 1), cut_since(m, 1);
    std::vector<char> in_cut(m, 0);
    {
        EdgeSet c = cut(g, st.partition);
        for (int e = 0; e < m; e++) in_cut[e] = c.test(e) ? 1 : 0;
    }

    std::map<int, BigRat> accept_cache;  // cut delta -> acceptance probability
    for (long long t = 1; t <= cfg.steps; t++) {
        Proposal pr = r.propose(st, rng);
        if (!pr.hold && pr.admissible) {
            auto it = accept_cache.find(pr.new_cut - st.cut_size);
            if (it == accept_cache.end())
                it = accept_cache
                         .emplace(pr.new_cut - st.cut_size,
                                  acceptance_probability(st.cut_size, pr.new_cut, cfg.lambda))
                         .first;
            const BigRat& pa = it->second;
            if (bernoulli_rational(rng, pa)) {
                const int v = pr.node;
                bool was_out = st.partition.assign[v] != 0;
                r.apply(st, pr);
                bool now_out = st.partition.assign[v] != 0;
                if (was_out && !now_out) stats.occupancy[v] += t - occ_since[v];
                if (!was_out && now_out) occ_since[v] = t;
                for (const auto& [u, e] : r.adj[v]) {
                    if (u == v) continue;
                    bool now_cut = st.partition.assign[u] != st.partition.assign[v];
                    if (in_cut[e] && !now_cut) {
                        stats.cut_steps[e] += t - cut_since[e];
                        in_cut[e] = 0;
                    } else if (!in_cut[e] && now_cut) {
                        cut_since[e] = t;
                        in_cut[e] = 1;
                    }
                }
                stats.flips[v]++;
                stats.accepted++;
            }
        }
        if (cfg.trace_stride > 0 && t % cfg.trace_stride == 0)
            stats.cut_trace.push_back(st.cut_size);
        if (cfg.validate_every > 0 && t % cfg.validate_every == 0) {
            EdgeSet c = cut(g, st.partition);
            bool edges_ok = true;
            for (int e = 0; e < m; e++)
                if (in_cut[e] != (c.test(e) ? 1 : 0)) edges_ok = false;
            auto w = resolve_weights(g, cfg);
            if (!edges_ok || static_cast<int>(c.count()) != st.cut_size ||
                st.block_weights != st.partition.block_weights(w) ||
                !is_connected_partition(g, st.partition))
                throw error("internal: chain caches diverged from recomputation at step " +
                            std::to_string(t));
            for (long long bw : st.block_weights)
                if (!r.bounds.ok(bw))
                    throw error("internal: chain left the population window at step " +
                                std::to_string(t));
        }
    }

    for (int v = 0; v < g.n; v++)
        if (st.partition.assign[v] != 0) stats.occupancy[v] += cfg.steps - occ_since[v] + 1;
    for (int e = 0; e < m; e++)
        if (in_cut[e]) stats.cut_steps[e] += cfg.steps - cut_since[e] + 1;
    return {std::move(st), std::move(stats)};
}

std::vector<std::pair<ChainState, FlipStats>> run_chains(const MultiGraph& g,
                                                         const std::vector<ChainConfig>& cfgs,
                                                         const Partition& initial, int threads) {
    std::vector<std::pair<ChainState, FlipStats>> out(cfgs.size());
    if (threads <= 1) {
        for (size_t i = 0; i < cfgs.size(); i++) out[i] = run_chain(g, cfgs[i], initial);
        return out;
    }
#ifdef CPART_HAVE_OPENMP
    std::string failure;
    const int jobs = static_cast<int>(cfgs.size());
#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (int i = 0; i < jobs; i++) {
        try {
            out[i] = run_chain(g, cfgs[i], initial);
        } catch (const std::exception& e) {
#pragma omp critical
            failure = e.what();
        }
    }
    if (!failure.empty()) throw error(failure);
#else
    for (size_t i = 0; i < cfgs.size(); i++) out[i] = run_chain(g, cfgs[i], initial);
#endif
    return out;
}

namespace {

// Raster a per-node field onto the grid spanned by the distinct layout
// coordinates: columns by ascending x, rows by descending y (top row first),
// coinciding nodes summed, values scaled to the field maximum.
void write_pgm(const std::string& path, const std::vector<long long>& field,
               const std::vector<std::pair<double, double>>& layout) {
    std::set<double> xs, ys;
    for (const auto& [x, y] : layout) {
        xs.insert(x);
        ys.insert(y);
    }
    std::vector<double> cols(xs.begin(), xs.end());
    std::vector<double> rows(ys.rbegin(), ys.rend());
    std::map<double, int> col_of, row_of;
    for (size_t i = 0; i < cols.size(); i++) col_of[cols[i]] = static_cast<int>(i);
    for (size_t i = 0; i < rows.size(); i++) row_of[rows[i]] = static_cast<int>(i);

    std::vector<long long> cell(rows.size() * cols.size(), 0);
    for (size_t v = 0; v < layout.size(); v++)
        cell[row_of[layout[v].second] * cols.size() + col_of[layout[v].first]] += field[v];
    long long peak = 0;
    for (long long c : cell) peak = std::max(peak, c);

    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    out << "P2\n" << cols.size() << " " << rows.size() << "\n255\n";
    for (size_t rix = 0; rix < rows.size(); rix++) {
        for (size_t cix = 0; cix < cols.size(); cix++) {
            long long value = peak == 0 ? 0 : cell[rix * cols.size() + cix] * 255 / peak;
            out << value << (cix + 1 == cols.size() ? "\n" : " ");
        }
    }
}

}  // namespace

std::vector<std::string> heatmap_export(const FlipStats& stats,
                                        const std::vector<std::pair<double, double>>* layout,
                                        const std::string& out_prefix) {
    std::vector<std::string> written;
    const std::string csv_path = out_prefix + ".csv";
    std::ofstream csv(csv_path);
    if (!csv) throw error("cannot write " + csv_path);
    csv << "node,flips,occupancy\n";
    for (size_t v = 0; v < stats.flips.size(); v++)
        csv << v << "," << stats.flips[v] << "," << stats.occupancy[v] << "\n";
    csv.close();
    written.push_back(csv_path);

    if (layout && layout->size() == stats.flips.size() && !layout->empty()) {
        const std::string flips_path = out_prefix + "_flips.pgm";
        write_pgm(flips_path, stats.flips, *layout);
        written.push_back(flips_path);
        const std::string occ_path = out_prefix + "_occupancy.pgm";
        write_pgm(occ_path, stats.occupancy, *layout);
        written.push_back(occ_path);
    }
    return written;
}

}  // namespace cpart
