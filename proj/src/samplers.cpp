#include "cpart/samplers.hpp"

#include "cpart/errors.hpp"
#include "cpart/spdp.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cpart {

BigInt uniform_bigint(SeededRng& rng, const BigInt& n) {
    if (n <= 0) throw precondition_error("uniform_bigint: n must be positive");
    if (n == 1) return 0;
    unsigned bits = boost::multiprecision::msb(BigInt(n - 1)) + 1;
    unsigned words = (bits + 63) / 64;
    unsigned shift = words * 64 - bits;
    while (true) {
        BigInt r = 0;
        for (unsigned k = 0; k < words; ++k) {
            r <<= 64;
            r += rng.next_u64();
        }
        r >>= shift;
        if (r < n) return r;
    }
}

bool bernoulli_rational(SeededRng& rng, const BigRat& p) {
    if (p < 0 || p > 1)
        throw precondition_error("bernoulli_rational: probability outside [0, 1]");
    if (p == 0) return false;
    if (p == 1) return true;
    return uniform_bigint(rng, boost::multiprecision::denominator(p)) <
           boost::multiprecision::numerator(p);
}

std::vector<int> inductive_sample(const MarginalOracle& oracle, SeededRng& rng) {
    if (!oracle.query) throw precondition_error("inductive_sample: oracle has no query function");
    std::vector<int> chosen;
    for (int i = 0; i < static_cast<int>(oracle.universe.size()); ++i) {
        BigRat p = oracle.query(i, chosen);
        if (p < 0 || p > 1)
            throw precondition_error("inductive_sample: conditional probability outside [0, 1]");
        if (bernoulli_rational(rng, p)) chosen.push_back(oracle.universe[i]);
    }
    return chosen;
}

namespace {

// State hoisted out of the per-edge conditionals of one sampling run: the
// biconnected blocks and their recognition trees depend only on the graph,
// so each query only re-evaluates a dynamic program with fresh leaf weights.
// The values agree with sc_marginal_mass / count_balanced_constrained calls.
struct CycleMassCache {
    struct Block {
        MultiGraph bg;
        SPTree tree;
        std::vector<int> base_edge;  // block edge id -> edge id in g
    };
    std::vector<Block> blocks;
};

CycleMassCache build_cycle_cache(const MultiGraph& g) {
    CycleMassCache cache;
    for (const auto& blk : biconnected_components(g)) {
        if (blk.size() == 1) continue;  // bridges and self-loops carry no cycles
        CycleMassCache::Block b;
        std::vector<int> node_new(g.n, -1);
        for (int e : blk) {
            for (int side : {0, 1}) {
                int v = g.edges[e][side];
                if (node_new[v] == -1) node_new[v] = b.bg.add_node();
            }
            b.bg.add_edge(node_new[g.edges[e][0]], node_new[g.edges[e][1]]);
            b.base_edge.push_back(e);
        }
        b.tree = recognize_sp(b.bg, b.bg.edges[0][0], b.bg.edges[0][1]);
        cache.blocks.push_back(std::move(b));
    }
    return cache;
}

BigRat cached_cycle_mass(const CycleMassCache& cache, const std::vector<BigRat>& c,
                         const EdgeSet& j, const EdgeSet& j2) {
    UniPoly total;
    for (const auto& b : cache.blocks) {
        std::vector<UniPoly> wts;
        wts.reserve(b.base_edge.size());
        for (int e : b.base_edge) {
            if (j.test(e))
                wts.push_back(UniPoly::monomial(c[e], 1));
            else if (j2.test(e))
                wts.push_back(UniPoly::zero());
            else
                wts.push_back(UniPoly::constant(c[e]));
        }
        total += eval_cycle_path_polys(b.tree, wts).cycles;
    }
    // An edge of j outside every block (bridge or self-loop) lies on no
    // cycle; its x factor is missing, so this coefficient is zero as it
    // should be.
    return total.coeff(j.count());
}

struct BalancedCache {
    struct Block {
        MultiGraph bg;
        SPTree tree;
        std::vector<long long> bw;
        std::vector<int> base_edge;
    };
    std::vector<Block> blocks;
    std::vector<int> edge_block;  // g edge -> block index, -1 for self-loops
    long long half = 0;
    bool feasible = false;  // false: odd total or too few nodes, all counts 0
};

BalancedCache build_balanced_cache(const MultiGraph& g, const std::vector<long long>& w) {
    BalancedCache cache;
    cache.edge_block.assign(g.edge_count(), -1);
    if (g.n < 2) return cache;
    long long total = std::accumulate(w.begin(), w.end(), 0LL);
    if (total % 2 != 0) return cache;
    cache.half = total / 2;
    cache.feasible = true;
    for (const auto& blk : biconnected_components(g)) {
        if (blk.size() == 1 && g.edges[blk[0]][0] == g.edges[blk[0]][1]) continue;
        BalancedCache::Block b;
        EdgeSet in_block(g.edge_count());
        for (int e : blk) in_block.set(e);
        EdgeSet outside = in_block.complement();
        auto [comp_id, ncomp] = components(g, &outside);
        std::vector<long long> comp_weight(ncomp, 0);
        for (int v = 0; v < g.n; ++v) comp_weight[comp_id[v]] += w[v];
        std::vector<int> node_new(g.n, -1);
        for (int e : blk) {
            for (int side : {0, 1}) {
                int v = g.edges[e][side];
                if (node_new[v] == -1) {
                    node_new[v] = b.bg.add_node();
                    b.bw.push_back(comp_weight[comp_id[v]]);
                }
            }
            b.bg.add_edge(node_new[g.edges[e][0]], node_new[g.edges[e][1]]);
            b.base_edge.push_back(e);
            cache.edge_block[e] = static_cast<int>(cache.blocks.size());
        }
        b.tree = recognize_sp(b.bg, b.bg.edges[0][0], b.bg.edges[0][1]);
        cache.blocks.push_back(std::move(b));
    }
    return cache;
}

BigInt cached_balanced_count(const BalancedCache& cache, long long half, const EdgeSet& j,
                             const EdgeSet& j2) {
    if (!cache.feasible) return 0;
    int cut_block = -1;
    for (int e : j.to_vector()) {
        int b = cache.edge_block[e];
        if (b == -1) return 0;  // self-loops are never cut
        if (cut_block == -1)
            cut_block = b;
        else if (cut_block != b)
            return 0;  // the cut lies inside a single block
    }
    BigInt result = 0;
    for (int bi = 0; bi < static_cast<int>(cache.blocks.size()); ++bi) {
        if (cut_block != -1 && bi != cut_block) continue;
        const auto& b = cache.blocks[bi];
        std::vector<LeafRule> rules;
        rules.reserve(b.base_edge.size());
        for (int e : b.base_edge) {
            rules.push_back(j.test(e)    ? LeafRule::forced_cut
                            : j2.test(e) ? LeafRule::forced_uncut
                                         : LeafRule::free_edge);
        }
        DPTableX table = eval_balanced_table(b.tree, b.bw, &rules);
        for (const auto& [k, cnt] : table) {
            if (k.a1.total != half) continue;
            bool with_middle = k.a2.nonempty && k.a2.total == half && !k.a3.nonempty;
            bool with_split = !k.a2.nonempty && k.a3.nonempty && k.a3.total == half;
            if (with_middle || with_split) result += cnt;
        }
    }
    return result;
}

// Both samplers walk the edges left to right, so the conditioning mass at
// step i was already computed at step i - 1: it is the numerator when edge
// i - 1 was taken and denominator minus numerator when it was skipped.
template <class Mass>
struct Carry {
    int prev_i = -1;
    std::vector<int> prev_chosen;
    Mass prev_num{}, prev_den{};

    // Returns the remembered denominator for (i, chosen) or nullptr.
    const Mass* lookup(int i, const std::vector<int>& chosen, Mass& skipped_out) {
        if (prev_i != i - 1) return nullptr;
        if (chosen == prev_chosen) {
            skipped_out = prev_den - prev_num;
            return &skipped_out;
        }
        bool took = chosen.size() == prev_chosen.size() + 1 && !chosen.empty() &&
                    chosen.back() == prev_i &&
                    std::equal(prev_chosen.begin(), prev_chosen.end(), chosen.begin());
        if (took) return &prev_num;
        return nullptr;
    }

    void store(int i, const std::vector<int>& chosen, Mass num, Mass den) {
        prev_i = i;
        prev_chosen = chosen;
        prev_num = std::move(num);
        prev_den = std::move(den);
    }
};

void split_forced_sets(int m, int i, const std::vector<int>& chosen, EdgeSet& j, EdgeSet& j2) {
    j = EdgeSet(m);
    j2 = EdgeSet(m);
    for (int e : chosen) j.set(e);
    for (int e = 0; e < i; ++e)
        if (!j.test(e)) j2.set(e);
}

// The conditional at step i depends only on (i, chosen), so across many
// draws each reachable prefix state is evaluated once and then replayed.
template <class Mass>
struct StepMemo {
    struct Entry {
        Mass num, den;
        BigRat p;
    };
    std::vector<std::unordered_map<EdgeSet, Entry, EdgeSetHash>> steps;
};

// Shared decision loop of both samplers: answers query (i, chosen) using the
// memo, the carried denominator, or a fresh mass evaluation via mass_of.
template <class Mass, class MassFn>
BigRat conditional_query(int i, const std::vector<int>& chosen, int m, const Mass& total,
                         StepMemo<Mass>& memo, Carry<Mass>& carry, MassFn&& mass_of) {
    EdgeSet j, j2;
    split_forced_sets(m, i, chosen, j, j2);
    auto it = memo.steps[i].find(j);
    if (it != memo.steps[i].end()) {
        carry.store(i, chosen, it->second.num, it->second.den);
        return it->second.p;
    }
    Mass den, skipped;
    if (i == 0)
        den = total;
    else if (const Mass* hit = carry.lookup(i, chosen, skipped))
        den = *hit;
    else
        den = mass_of(j, j2);
    EdgeSet ji = j;
    ji.set(i);
    Mass num = mass_of(ji, j2);
    BigRat p = BigRat(num) / BigRat(den);
    memo.steps[i].emplace(std::move(j), typename StepMemo<Mass>::Entry{num, den, p});
    carry.store(i, chosen, std::move(num), std::move(den));
    return p;
}

MarginalOracle edge_order_oracle(int m, std::function<BigRat(int, const std::vector<int>&)> q) {
    MarginalOracle oracle;
    oracle.universe.resize(m);
    std::iota(oracle.universe.begin(), oracle.universe.end(), 0);
    oracle.query = std::move(q);
    return oracle;
}

}  // namespace

struct CycleSampler::Impl {
    int m = 0;
    std::vector<BigRat> c;
    CycleMassCache cache;
    BigRat total;
    StepMemo<BigRat> memo;
    Carry<BigRat> carry;
    MarginalOracle oracle;
};

CycleSampler::CycleSampler(const MultiGraph& g, std::vector<BigRat> c)
    : impl_(std::make_unique<Impl>()) {
    g.check_valid();
    if (static_cast<int>(c.size()) != g.edge_count())
        throw precondition_error("cycle sampler: one weight per edge required");
    for (const BigRat& x : c)
        if (x < 0) throw precondition_error("cycle sampler: edge weights must be nonnegative");

    Impl* imp = impl_.get();
    imp->m = g.edge_count();
    imp->c = std::move(c);
    imp->cache = build_cycle_cache(g);
    imp->total = cached_cycle_mass(imp->cache, imp->c, EdgeSet(imp->m), EdgeSet(imp->m));
    if (imp->total == 0)
        throw precondition_error("cycle sampler: no simple cycle has positive mass");
    imp->memo.steps.resize(imp->m);
    imp->oracle = edge_order_oracle(imp->m, [imp](int i, const std::vector<int>& chosen) {
        return conditional_query(i, chosen, imp->m, imp->total, imp->memo, imp->carry,
                                 [imp](const EdgeSet& j, const EdgeSet& j2) {
                                     return cached_cycle_mass(imp->cache, imp->c, j, j2);
                                 });
    });
}

CycleSampler::CycleSampler(CycleSampler&&) noexcept = default;
CycleSampler& CycleSampler::operator=(CycleSampler&&) noexcept = default;
CycleSampler::~CycleSampler() = default;

EdgeSet CycleSampler::draw(SeededRng& rng) {
    return EdgeSet::from_vector(impl_->m, inductive_sample(impl_->oracle, rng));
}

const BigRat& CycleSampler::total_mass() const { return impl_->total; }

struct BalancedSampler::Impl {
    MultiGraph g;
    int m = 0;
    BalancedCache cache;
    BigInt total;
    StepMemo<BigInt> memo;
    Carry<BigInt> carry;
    MarginalOracle oracle;
};

BalancedSampler::BalancedSampler(const MultiGraph& g, std::vector<long long> w)
    : impl_(std::make_unique<Impl>()) {
    g.check_valid();
    if (static_cast<int>(w.size()) != g.n)
        throw precondition_error("balanced sampler: one weight per node required");
    if (!is_connected(g))
        throw precondition_error("balanced sampler: graph must be connected");

    Impl* imp = impl_.get();
    imp->g = g;
    imp->m = g.edge_count();
    imp->cache = build_balanced_cache(g, w);
    imp->total = cached_balanced_count(imp->cache, imp->cache.half, EdgeSet(imp->m),
                                       EdgeSet(imp->m));
    if (imp->total == 0)
        throw precondition_error("balanced sampler: no balanced partition exists");
    imp->memo.steps.resize(imp->m);
    imp->oracle = edge_order_oracle(imp->m, [imp](int i, const std::vector<int>& chosen) {
        return conditional_query(i, chosen, imp->m, imp->total, imp->memo, imp->carry,
                                 [imp](const EdgeSet& j, const EdgeSet& j2) {
                                     return cached_balanced_count(imp->cache, imp->cache.half,
                                                                  j, j2);
                                 });
    });
}

BalancedSampler::BalancedSampler(BalancedSampler&&) noexcept = default;
BalancedSampler& BalancedSampler::operator=(BalancedSampler&&) noexcept = default;
BalancedSampler::~BalancedSampler() = default;

Partition BalancedSampler::draw(SeededRng& rng) {
    EdgeSet cutset = EdgeSet::from_vector(impl_->m, inductive_sample(impl_->oracle, rng));
    return comp(impl_->g, cutset);
}

const BigInt& BalancedSampler::total_count() const { return impl_->total; }

EdgeSet sample_sc_nu_c(const MultiGraph& g, const std::vector<BigRat>& c, SeededRng& rng) {
    return CycleSampler(g, c).draw(rng);
}

EdgeSet sample_sc_uniform(const MultiGraph& g, SeededRng& rng) {
    return sample_sc_nu_c(g, std::vector<BigRat>(g.edge_count(), 1), rng);
}

Partition sample_balanced_uniform(const MultiGraph& g, const std::vector<long long>& w,
                                  SeededRng& rng) {
    return BalancedSampler(g, w).draw(rng);
}

EdgeSet wilson_ust(const MultiGraph& g, SeededRng& rng) {
    g.check_valid();
    EdgeSet tree(g.edge_count());
    if (g.n <= 1) return tree;
    if (!is_connected(g)) throw precondition_error("wilson_ust: graph must be connected");

    // Self-loops are left out of the walk: the loop erasure would drop a
    // loop step immediately, so the erased walk's law is unchanged.
    std::vector<std::vector<std::pair<int, int>>> adj(g.n);
    for (int e = 0; e < g.edge_count(); ++e) {
        int u = g.edges[e][0], v = g.edges[e][1];
        if (u == v) continue;
        adj[u].push_back({v, e});
        adj[v].push_back({u, e});
    }

    std::vector<char> in_tree(g.n, 0);
    std::vector<int> next_node(g.n, -1), next_edge(g.n, -1);
    in_tree[0] = 1;
    for (int start = 0; start < g.n; ++start) {
        int u = start;
        while (!in_tree[u]) {
            auto [nbr, e] = adj[u][rng.uniform_int(adj[u].size())];
            next_node[u] = nbr;
            next_edge[u] = e;
            u = nbr;
        }
        for (u = start; !in_tree[u]; u = next_node[u]) {
            in_tree[u] = 1;
            tree.set(next_edge[u]);
        }
    }
    return tree;
}

EdgeSet random_mst(const MultiGraph& g, SeededRng& rng) {
    g.check_valid();
    EdgeSet tree(g.edge_count());
    if (g.n <= 1) return tree;

    std::vector<double> wt(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) wt[e] = rng.uniform_real();
    std::vector<int> order(g.edge_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&wt](int a, int b) {
        if (wt[a] != wt[b]) return wt[a] < wt[b];
        return a < b;
    });

    DisjointSets dsu(g.n);
    int picked = 0;
    for (int e : order)
        if (dsu.unite(g.edges[e][0], g.edges[e][1])) {
            tree.set(e);
            ++picked;
        }
    if (picked != g.n - 1) throw precondition_error("random_mst: graph must be connected");
    return tree;
}

Partition tree_partition(const MultiGraph& g, const std::vector<long long>& w, double eps,
                         TreeKind kind, SeededRng& rng, int max_retries,
                         TreePartitionVariant variant) {
    g.check_valid();
    if (static_cast<int>(w.size()) != g.n)
        throw precondition_error("tree_partition: one weight per node required");
    if (eps < 0) throw precondition_error("tree_partition: eps must be >= 0");
    if (max_retries <= 0) throw precondition_error("tree_partition: max_retries must be positive");
    if (g.n < 2) throw precondition_error("tree_partition: need at least two nodes");

    auto split_at = [&g](const EdgeSet& tree, int e) {
        EdgeSet sub = tree;
        sub.reset(e);
        auto [comp_id, ncomp] = components(g, &sub);
        (void)ncomp;
        return Partition(2, comp_id);
    };

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        EdgeSet tree = kind == TreeKind::ust ? wilson_ust(g, rng) : random_mst(g, rng);
        std::vector<int> tree_edges = tree.to_vector();
        if (variant == TreePartitionVariant::uniform_valid_edge) {
            std::vector<Partition> valid;
            for (int e : tree_edges) {
                Partition p = split_at(tree, e);
                if (is_eps_balanced(g, p, eps, &w)) valid.push_back(std::move(p));
            }
            if (!valid.empty()) return valid[rng.uniform_int(valid.size())];
        } else {
            int e = tree_edges[rng.uniform_int(tree_edges.size())];
            Partition p = split_at(tree, e);
            if (is_eps_balanced(g, p, eps, &w)) return p;
        }
    }
    throw retries_exhausted_error("tree_partition: no eps-balanced tree split found",
                                  max_retries);
}

}  // namespace cpart
