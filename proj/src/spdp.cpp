#include "cpart/spdp.hpp"

#include "cpart/errors.hpp"
#include "cpart/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace cpart {

DPTableX leaf_table(long long wu, long long wv, LeafRule rule) {
    DPTableX t;
    if (rule != LeafRule::forced_cut)
        t[XKey{{wu + wv, true}, {}, {}, false}] += 1;
    if (rule != LeafRule::forced_uncut)
        t[XKey{{wu, true}, {}, {wv, true}, true}] += 1;
    return t;
}

DPTableX series_table(const DPTableX& left, const DPTableX& right) {
    DPTableX out;
    for (const auto& [a, ma] : left) {
        for (const auto& [b, mb] : right) {
            if (!a.a3.nonempty || !b.a3.nonempty) {
                // The glued node joins block 1 of the right side to a block of
                // the left side, so the two old middles must fit in one block.
                if (a.a2.nonempty && b.a2.nonempty) continue;
            } else {
                // Left block 3 and right block 1 merge into the new middle,
                // which leaves no room for either old middle.
                if (a.a2.nonempty || b.a2.nonempty) continue;
            }
            BigInt m = ma * mb;
            if (!a.a3.nonempty && !b.a3.nonempty)
                out[XKey{a.a1 + b.a1, a.a2 + b.a2, {}, false}] += m;
            else if (!a.a3.nonempty && b.a3.nonempty)
                out[XKey{a.a1 + b.a1, a.a2 + b.a2, b.a3, b.link}] += m;
            else if (a.a3.nonempty && !b.a3.nonempty)
                out[XKey{a.a1, a.a2 + b.a2, a.a3 + b.a1, a.link}] += m;
            else
                out[XKey{a.a1, a.a3 + b.a1, b.a3, false}] += m;
        }
    }
    return out;
}

DPTableX parallel_table(const DPTableX& left, const DPTableX& right) {
    DPTableX out;
    for (const auto& [a, ma] : left) {
        for (const auto& [b, mb] : right) {
            // Middles of the two sides cannot touch, so at most one exists.
            if (a.a2.nonempty && b.a2.nonempty) continue;
            BigInt m = ma * mb;
            MonoidWeight mid = a.a2 + b.a2;
            if (!a.a3.nonempty && !b.a3.nonempty) {
                out[XKey{a.a1 + b.a1, mid, {}, false}] += m;
            } else if (!a.a3.nonempty && b.a3.nonempty) {
                // Rejoining is only new when the right side's two blocks are
                // not already adjacent; otherwise the joined entry of the
                // right side produces the same partition.
                if (!b.link) out[XKey{a.a1 + b.a1 + b.a3, mid, {}, false}] += m;
            } else if (a.a3.nonempty && !b.a3.nonempty) {
                if (!a.link) out[XKey{a.a1 + b.a1 + a.a3, mid, {}, false}] += m;
            } else {
                out[XKey{a.a1 + b.a1, mid, a.a3 + b.a3, a.link || b.link}] += m;
            }
        }
    }
    return out;
}

DPTableX reverse_table(const DPTableX& x) {
    DPTableX out;
    for (const auto& [k, m] : x) {
        if (k.a3.nonempty)
            out[XKey{k.a3, k.a2, k.a1, k.link}] += m;
        else
            out[k] += m;
    }
    return out;
}

DPTableX eval_balanced_table(const SPTree& tree, const std::vector<long long>& w,
                             const std::vector<LeafRule>* rules) {
    // Charge each node's weight at its first leaf; later leaves see zero.
    std::vector<std::pair<long long, long long>> leaf_weight(tree.nodes.size(), {0, 0});
    std::vector<char> seen(w.size(), 0);
    for (int li : tree.leaves_in_order()) {
        const SPTree::Node& nd = tree.at(li);
        long long wu = 0, wv = 0;
        if (!seen[nd.s]) {
            wu = w[nd.s];
            seen[nd.s] = 1;
        }
        if (!seen[nd.t]) {
            wv = w[nd.t];
            seen[nd.t] = 1;
        }
        leaf_weight[li] = {wu, wv};
    }

    std::vector<DPTableX> val(tree.nodes.size());
    std::vector<std::pair<int, int>> stack{{tree.root, 0}};
    while (!stack.empty()) {
        auto [i, stage] = stack.back();
        const SPTree::Node& nd = tree.at(i);
        if (nd.kind == SPTree::Kind::leaf) {
            LeafRule rule = rules ? (*rules)[nd.edge] : LeafRule::free_edge;
            val[i] = leaf_table(leaf_weight[i].first, leaf_weight[i].second, rule);
            stack.pop_back();
        } else if (stage == 0) {
            stack.back().second = 1;
            stack.push_back({nd.left, 0});
        } else if (stage == 1) {
            stack.back().second = 2;
            stack.push_back({nd.right, 0});
        } else {
            DPTableX l = nd.flip_left ? reverse_table(val[nd.left]) : std::move(val[nd.left]);
            DPTableX r = nd.flip_right ? reverse_table(val[nd.right]) : std::move(val[nd.right]);
            val[i] = nd.kind == SPTree::Kind::series ? series_table(l, r)
                                                     : parallel_table(l, r);
            val[nd.left].clear();
            val[nd.right].clear();
            stack.pop_back();
        }
    }
    return val[tree.root];
}

CyclePathPolys eval_cycle_path_polys(const SPTree& tree,
                                     const std::vector<UniPoly>& edge_weight) {
    std::vector<CyclePathPolys> val(tree.nodes.size());
    std::vector<std::pair<int, int>> stack{{tree.root, 0}};
    while (!stack.empty()) {
        auto [i, stage] = stack.back();
        const SPTree::Node& nd = tree.at(i);
        if (nd.kind == SPTree::Kind::leaf) {
            val[i] = {UniPoly::zero(), edge_weight[nd.edge]};
            stack.pop_back();
        } else if (stage == 0) {
            stack.back().second = 1;
            stack.push_back({nd.left, 0});
        } else if (stage == 1) {
            stack.back().second = 2;
            stack.push_back({nd.right, 0});
        } else {
            // Swapping a child's terminals changes neither of its masses.
            const CyclePathPolys& l = val[nd.left];
            const CyclePathPolys& r = val[nd.right];
            if (nd.kind == SPTree::Kind::series)
                val[i] = {l.cycles + r.cycles, l.paths * r.paths};
            else
                val[i] = {l.cycles + r.cycles + l.paths * r.paths, l.paths + r.paths};
            val[nd.left] = {};
            val[nd.right] = {};
            stack.pop_back();
        }
    }
    return val[tree.root];
}

namespace {

EdgeSet sized_to(const EdgeSet& s, int m, const char* who) {
    if (s.m == m) return s;
    if (s.m == 0) return EdgeSet(m);
    throw precondition_error(std::string(who) + ": edge set universe mismatch");
}

}  // namespace

BigInt count_balanced_constrained(const MultiGraph& g, const std::vector<long long>& w,
                                  const EdgeSet& forced_cut, const EdgeSet& forced_uncut) {
    g.check_valid();
    if (static_cast<int>(w.size()) != g.n)
        throw precondition_error("count_balanced: one weight per node required");
    if (!is_connected(g)) throw precondition_error("count_balanced: graph must be connected");
    EdgeSet fcut = sized_to(forced_cut, g.edge_count(), "count_balanced");
    EdgeSet func = sized_to(forced_uncut, g.edge_count(), "count_balanced");
    if (g.n < 2) return 0;
    long long total = std::accumulate(w.begin(), w.end(), 0LL);
    if (total % 2 != 0) return 0;
    long long half = total / 2;

    // A self-loop is never cut; drop them, failing a forced-cut one early.
    EdgeSet loops(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        if (g.edges[e][0] != g.edges[e][1]) continue;
        if (fcut.test(e)) return 0;
        loops.set(e);
    }

    auto blocks = biconnected_components(g);
    std::vector<int> edge_block(g.edge_count(), -1);
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
        for (int e : blocks[b]) edge_block[e] = b;

    // The cut of a connected 2-partition lies inside a single biconnected
    // block, so all forced-cut edges must agree on one block.
    int cut_block = -1;
    for (int e : fcut.to_vector()) {
        if (cut_block == -1)
            cut_block = edge_block[e];
        else if (cut_block != edge_block[e])
            return 0;
    }

    BigInt result = 0;
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
        if (cut_block != -1 && b != cut_block) continue;
        if (blocks[b].size() == 1 && loops.test(blocks[b][0])) continue;

        // Everything hanging off a block node follows that node, so it is
        // absorbed into the node's effective weight.
        EdgeSet in_block(g.edge_count());
        for (int e : blocks[b]) in_block.set(e);
        EdgeSet outside = in_block.complement();
        auto [comp, ncomp] = components(g, &outside);
        std::vector<long long> comp_weight(ncomp, 0);
        for (int v = 0; v < g.n; ++v) comp_weight[comp[v]] += w[v];

        MultiGraph bg;
        std::vector<long long> bw;
        std::vector<LeafRule> rules;
        std::vector<int> node_new(g.n, -1);
        for (int e : blocks[b]) {
            for (int side : {0, 1}) {
                int v = g.edges[e][side];
                if (node_new[v] == -1) {
                    node_new[v] = bg.add_node();
                    bw.push_back(comp_weight[comp[v]]);
                }
            }
            bg.add_edge(node_new[g.edges[e][0]], node_new[g.edges[e][1]]);
            rules.push_back(fcut.test(e)   ? LeafRule::forced_cut
                            : func.test(e) ? LeafRule::forced_uncut
                                           : LeafRule::free_edge);
        }

        SPTree tree = recognize_sp(bg, bg.edges[0][0], bg.edges[0][1]);
        DPTableX table = eval_balanced_table(tree, bw, &rules);
        for (const auto& [k, m] : table) {
            if (k.a1.total != half) continue;
            bool with_middle = k.a2.nonempty && k.a2.total == half && !k.a3.nonempty;
            bool with_split = !k.a2.nonempty && k.a3.nonempty && k.a3.total == half;
            if (with_middle || with_split) result += m;
        }
    }
    return result;
}

BigInt count_balanced(const MultiGraph& g, const std::vector<long long>& w) {
    return count_balanced_constrained(g, w, EdgeSet(g.edge_count()), EdgeSet(g.edge_count()));
}

BigRat sc_marginal_mass(const MultiGraph& g, const std::vector<BigRat>& c,
                        const EdgeSet& j, const EdgeSet& j2) {
    g.check_valid();
    if (static_cast<int>(c.size()) != g.edge_count())
        throw precondition_error("sc_marginal_mass: one weight per edge required");
    EdgeSet ju = sized_to(j, g.edge_count(), "sc_marginal_mass");
    EdgeSet j2u = sized_to(j2, g.edge_count(), "sc_marginal_mass");
    if (!(ju & j2u).empty())
        throw precondition_error("sc_marginal_mass: j and j2 must be disjoint");
    for (int e : ju.to_vector())
        if (g.edges[e][0] == g.edges[e][1]) return 0;  // never on a simple cycle

    auto blocks = biconnected_components(g);
    UniPoly total;
    for (const auto& blk : blocks) {
        // Bridges and self-loops carry no cycles.
        if (blk.size() == 1) continue;
        MultiGraph bg;
        std::vector<UniPoly> wts;
        std::vector<int> node_new(g.n, -1);
        for (int e : blk) {
            for (int side : {0, 1}) {
                int v = g.edges[e][side];
                if (node_new[v] == -1) node_new[v] = bg.add_node();
            }
            bg.add_edge(node_new[g.edges[e][0]], node_new[g.edges[e][1]]);
            if (ju.test(e))
                wts.push_back(UniPoly::monomial(c[e], 1));
            else if (j2u.test(e))
                wts.push_back(UniPoly::zero());
            else
                wts.push_back(UniPoly::constant(c[e]));
        }
        SPTree tree = recognize_sp(bg, bg.edges[0][0], bg.edges[0][1]);
        total += eval_cycle_path_polys(tree, wts).cycles;
    }
    return total.coeff(ju.count());
}

BigInt sc_count(const MultiGraph& g) {
    std::vector<BigRat> ones(g.edge_count(), BigRat(1));
    BigRat mass = sc_marginal_mass(g, ones, EdgeSet(g.edge_count()), EdgeSet(g.edge_count()));
    return BigInt(boost::multiprecision::numerator(mass));
}

int default_cycle_depth(int n) {
    double nn = std::max(1, n * n);
    double b = nn + std::log2(nn) + 1;
    return 4 * static_cast<int>(std::ceil(b * b));
}

BigInt sc_count_remainder(const MultiGraph& g, const EdgeSet& j, const EdgeSet& j2,
                          int depth) {
    g.check_valid();
    EdgeSet ju = sized_to(j, g.edge_count(), "sc_count_remainder");
    EdgeSet j2u = sized_to(j2, g.edge_count(), "sc_count_remainder");
    if (!(ju & j2u).empty())
        throw precondition_error("sc_count_remainder: j and j2 must be disjoint");
    for (int e : ju.to_vector())
        if (g.edges[e][0] == g.edges[e][1]) return 0;

    BigInt unconstrained = sc_count(delete_edges(g, j2u).graph);
    int jn = ju.count();
    if (jn == 0) return unconstrained;

    int d = depth > 0 ? depth : default_cycle_depth(g.n);
    unsigned long shift = static_cast<unsigned long>(d) * jn;
    // Cycles missing part of j contribute at most 2^(d(|j|-1)) each, and each
    // chain adds d stray bigon cycles; everything must stay below 2^(d|j|).
    BigInt slack = pow2(static_cast<unsigned long>(d) * (jn - 1)) * unconstrained +
                   BigInt(d) * jn;
    if (slack >= pow2(shift))
        throw insufficient_depth_error("sc_count_remainder: depth " + std::to_string(d) +
                                       " is too small for this graph");
    GadgetMap m = marginal_graph(g, ju, j2u, d);
    return sc_count(m.derived) >> shift;
}

BigInt balanced_count_remainder(const MultiGraph& g, const std::vector<long long>& w,
                                const EdgeSet& j, const EdgeSet& j2, int depth) {
    g.check_valid();
    if (static_cast<int>(w.size()) != g.n)
        throw precondition_error("balanced_count_remainder: one weight per node required");
    EdgeSet ju = sized_to(j, g.edge_count(), "balanced_count_remainder");
    EdgeSet j2u = sized_to(j2, g.edge_count(), "balanced_count_remainder");
    if (!(ju & j2u).empty())
        throw precondition_error("balanced_count_remainder: j and j2 must be disjoint");
    for (int e : ju.to_vector())
        if (g.edges[e][0] == g.edges[e][1]) return 0;  // a self-loop is never cut

    MultiGraph wg = g;
    wg.node_weight = w;
    GraphRewrite contracted = contract_edges(wg, j2u);
    // A j-edge collapsed by the contraction can never be cut downstairs.
    for (int e : ju.to_vector())
        if (contracted.edge_map[e] == -1) return 0;

    BigInt downstairs = count_balanced(contracted.graph, contracted.graph.node_weight);
    int jn = ju.count();
    if (jn == 0) return downstairs;

    int d = depth > 0 ? depth : default_balanced_depth(g.n);
    // Partitions cutting only part of j contribute at most 2^(d(|j|-1)) each.
    if (downstairs >= pow2(static_cast<unsigned long>(d)))
        throw insufficient_depth_error("balanced_count_remainder: depth " +
                                       std::to_string(d) + " is too small for this graph");
    GadgetMap m = w_marginal_graph(wg, ju, j2u, d);
    BigInt upstairs = count_balanced(m.derived, m.derived.node_weight);
    return upstairs >> (static_cast<unsigned long>(d) * jn);
}

}  // namespace cpart
