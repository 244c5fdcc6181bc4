#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpart/enumerate.hpp"
#include "cpart/errors.hpp"
#include "cpart/rng.hpp"
#include "cpart/sp.hpp"
#include "cpart/spdp.hpp"

#include "test_support.hpp"

#include <array>
#include <functional>
#include <numeric>
#include <set>
#include <utility>

using namespace cpart;
using namespace cpart::testsupport;

namespace {

// Two hubs joined by three length-2 paths through nodes 2, 3, 4.
MultiGraph theta_graph() {
    MultiGraph g;
    g.n = 5;
    for (int mid : {2, 3, 4}) {
        g.add_edge(0, mid);
        g.add_edge(mid, 1);
    }
    return g;
}

// Two triangles sharing node 2.
MultiGraph bowtie_graph() {
    MultiGraph g;
    g.n = 5;
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(4, 2);
    return g;
}

// Two triangles joined by a bridge between nodes 2 and 3.
MultiGraph bridged_triangles() {
    MultiGraph g;
    g.n = 6;
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(5, 3);
    return g;
}

// Random two-terminal series-parallel graph grown from a single (s, t) edge
// by repeatedly duplicating or subdividing a random edge.
MultiGraph random_sp_graph(SeededRng& rng, int ops, int& s, int& t) {
    MultiGraph g;
    g.n = 2;
    g.add_edge(0, 1);
    s = 0;
    t = 1;
    for (int i = 0; i < ops; ++i) {
        int e = static_cast<int>(rng.uniform_int(g.edge_count()));
        if (rng.uniform_int(2)) {
            g.add_edge(g.edges[e][0], g.edges[e][1]);
        } else {
            int mid = g.add_node();
            int v = g.edges[e][1];
            g.edges[e][1] = mid;
            g.add_edge(mid, v);
        }
    }
    return g;
}

// Random connected graph whose biconnected blocks are all series-parallel:
// several series-parallel pieces glued at shared nodes, plus pendant edges.
MultiGraph random_sp_block_graph(SeededRng& rng) {
    int s, t;
    MultiGraph g = random_sp_graph(rng, static_cast<int>(rng.uniform_int(6)), s, t);
    int extra = static_cast<int>(rng.uniform_int(3));
    for (int i = 0; i < extra; ++i) {
        int s2, t2;
        MultiGraph h = random_sp_graph(rng, static_cast<int>(rng.uniform_int(4)), s2, t2);
        int attach = static_cast<int>(rng.uniform_int(g.n));
        std::vector<int> map(h.n, -1);
        map[s2] = attach;
        for (int v = 0; v < h.n; ++v)
            if (map[v] == -1) map[v] = g.add_node();
        for (const auto& e : h.edges) g.add_edge(map[e[0]], map[e[1]]);
    }
    int pendants = static_cast<int>(rng.uniform_int(3));
    for (int i = 0; i < pendants; ++i) {
        int at = static_cast<int>(rng.uniform_int(g.n));
        g.add_edge(at, g.add_node());
    }
    return g;
}

std::vector<long long> random_weights(SeededRng& rng, int n, int lo, int hi) {
    std::vector<long long> w(n);
    for (auto& x : w) x = lo + static_cast<long long>(rng.uniform_int(hi - lo + 1));
    return w;
}

// Validate an SPTree against its base graph: every edge appears in exactly
// one leaf, series children share the glued terminal, parallel children share
// both, and each node's stored terminals match its children's.
void check_sp_tree(const MultiGraph& g, const SPTree& tree) {
    std::vector<char> used(g.edge_count(), 0);
    std::function<std::pair<int, int>(int)> walk = [&](int i) -> std::pair<int, int> {
        const SPTree::Node& nd = tree.at(i);
        if (nd.kind == SPTree::Kind::leaf) {
            REQUIRE(nd.edge >= 0);
            REQUIRE(nd.edge < g.edge_count());
            REQUIRE(!used[nd.edge]);
            used[nd.edge] = 1;
            bool fwd = nd.s == g.edges[nd.edge][0] && nd.t == g.edges[nd.edge][1];
            bool rev = nd.s == g.edges[nd.edge][1] && nd.t == g.edges[nd.edge][0];
            REQUIRE((fwd || rev));
            return {nd.s, nd.t};
        }
        auto [ls, lt] = walk(nd.left);
        if (nd.flip_left) std::swap(ls, lt);
        auto [rs, rt] = walk(nd.right);
        if (nd.flip_right) std::swap(rs, rt);
        if (nd.kind == SPTree::Kind::series) {
            REQUIRE(lt == rs);
            REQUIRE(nd.s == ls);
            REQUIRE(nd.t == rt);
        } else {
            REQUIRE(ls == rs);
            REQUIRE(lt == rt);
            REQUIRE(nd.s == ls);
            REQUIRE(nd.t == lt);
        }
        return {nd.s, nd.t};
    };
    auto [s, t] = walk(tree.root);
    CHECK(s == tree.sigma());
    CHECK(t == tree.tau());
    for (char u : used) CHECK(u == 1);
}

// Brute-force three-block table: scan all 3^n assignments.
DPTableX brute_x_table(const MultiGraph& g, int s, int t, const std::vector<long long>& w) {
    DPTableX out;
    auto adj = g.adjacency();
    std::vector<int> assign(g.n, 0);
    while (true) {
        if (assign[s] == 0) {
            std::array<std::vector<int>, 3> blocks;
            for (int v = 0; v < g.n; ++v) blocks[assign[v]].push_back(v);
            bool t_ok = blocks[2].empty() ? assign[t] == 0 : assign[t] == 2;
            if (t_ok) {
                bool conn = true;
                for (int b = 0; b < 3 && conn; ++b) {
                    std::vector<char> in(g.n, 0);
                    for (int v : blocks[b]) in[v] = 1;
                    conn = is_connected_node_subset(g, adj, in,
                                                    static_cast<int>(blocks[b].size()));
                }
                if (conn) {
                    bool link = false;
                    for (const auto& e : g.edges) {
                        int x = assign[e[0]], y = assign[e[1]];
                        if ((x == 0 && y == 2) || (x == 2 && y == 0)) link = true;
                    }
                    auto wsum = [&](int b) {
                        long long v = 0;
                        for (int u : blocks[b]) v += w[u];
                        return v;
                    };
                    out[XKey{{wsum(0), true},
                             {wsum(1), !blocks[1].empty()},
                             {wsum(2), !blocks[2].empty()},
                             link}] += 1;
                }
            }
        }
        int i = 0;
        while (i < g.n && assign[i] == 2) assign[i++] = 0;
        if (i == g.n) break;
        ++assign[i];
    }
    return out;
}

// Brute-force count of unordered balanced connected 2-partitions, optionally
// restricted by the cut status of given edges.
BigInt brute_balanced(const MultiGraph& g, const std::vector<long long>& w,
                      const EdgeSet* must_cut = nullptr,
                      const EdgeSet* must_not_cut = nullptr) {
    auto adj = g.adjacency();
    BigInt count = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (g.n - 1)); ++mask) {
        std::vector<char> a(g.n, 0), b(g.n, 0);
        int na = 1, nb = 0;
        long long wa = w[0], wb = 0;
        a[0] = 1;
        for (int v = 1; v < g.n; ++v) {
            if ((mask >> (v - 1)) & 1) {
                b[v] = 1;
                ++nb;
                wb += w[v];
            } else {
                a[v] = 1;
                ++na;
                wa += w[v];
            }
        }
        if (wa != wb) continue;
        if (!is_connected_node_subset(g, adj, a, na)) continue;
        if (!is_connected_node_subset(g, adj, b, nb)) continue;
        bool ok = true;
        for (int e = 0; e < g.edge_count() && ok; ++e) {
            bool cut_e = a[g.edges[e][0]] != a[g.edges[e][1]];
            if (must_cut && must_cut->test(e) && !cut_e) ok = false;
            if (must_not_cut && must_not_cut->test(e) && cut_e) ok = false;
        }
        if (ok) ++count;
    }
    return count;
}

// Brute-force mass of simple cycles containing j and avoiding j2.
BigRat brute_cycle_mass(const MultiGraph& g, const std::vector<BigRat>& c,
                        const EdgeSet& j, const EdgeSet& j2) {
    BigRat total = 0;
    for (const auto& cyc : enum_simple_cycles(g)) {
        bool ok = true;
        for (int e : j.to_vector())
            if (!cyc.test(e)) ok = false;
        for (int e : j2.to_vector())
            if (cyc.test(e)) ok = false;
        if (!ok) continue;
        BigRat prod = 1;
        for (int e : cyc.to_vector()) prod *= c[e];
        total += prod;
    }
    return total;
}

// Smallest depth accepted by the remainder guard for the cycle route.
int min_cycle_depth(const BigInt& unconstrained, int jn) {
    int d = 1;
    while (pow2(static_cast<unsigned long>(d) * (jn - 1)) * unconstrained + BigInt(d) * jn >=
           pow2(static_cast<unsigned long>(d) * jn))
        ++d;
    return d;
}

// Two random disjoint edge subsets of bounded size.
std::pair<EdgeSet, EdgeSet> random_disjoint_edge_sets(SeededRng& rng, int m, int max_j,
                                                      int max_j2) {
    EdgeSet j(m), j2(m);
    int nj = static_cast<int>(rng.uniform_int(max_j + 1));
    int nj2 = static_cast<int>(rng.uniform_int(max_j2 + 1));
    for (int i = 0; i < nj; ++i) j.set(static_cast<int>(rng.uniform_int(m)));
    for (int i = 0; i < nj2; ++i) {
        int e = static_cast<int>(rng.uniform_int(m));
        if (!j.test(e)) j2.set(e);
    }
    return {j, j2};
}

}  // namespace

TEST_CASE("biconnected components partition edges into cycle classes") {
    CHECK(biconnected_components(path_graph(4)).size() == 3);
    CHECK(biconnected_components(cycle_graph(3)).size() == 1);
    CHECK(biconnected_components(theta_graph()).size() == 1);

    auto bow = biconnected_components(bowtie_graph());
    REQUIRE(bow.size() == 2);
    CHECK(bow[0].size() == 3);
    CHECK(bow[1].size() == 3);

    auto bt = biconnected_components(bridged_triangles());
    CHECK(bt.size() == 3);  // two triangles and the bridge

    MultiGraph loopy;
    loopy.n = 2;
    loopy.add_edge(0, 1);
    loopy.add_edge(1, 1);
    auto lb = biconnected_components(loopy);
    REQUIRE(lb.size() == 2);

    // Two distinct edges share a component exactly when they lie on a common
    // simple cycle.
    SeededRng rng(20240817);
    for (int trial = 0; trial < 20; ++trial) {
        MultiGraph g = random_connected_multigraph(rng, 3 + static_cast<int>(rng.uniform_int(5)),
                                                   static_cast<int>(rng.uniform_int(6)), true);
        auto blocks = biconnected_components(g);
        std::vector<int> block_of(g.edge_count(), -1);
        int covered = 0;
        for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
            for (int e : blocks[b]) {
                REQUIRE(block_of[e] == -1);
                block_of[e] = b;
                ++covered;
            }
        REQUIRE(covered == g.edge_count());

        std::set<std::pair<int, int>> on_common_cycle;
        for (const auto& cyc : enum_simple_cycles(g)) {
            auto ids = cyc.to_vector();
            for (std::size_t i = 0; i < ids.size(); ++i)
                for (std::size_t k = i + 1; k < ids.size(); ++k)
                    on_common_cycle.insert({ids[i], ids[k]});
        }
        for (int e = 0; e < g.edge_count(); ++e)
            for (int f = e + 1; f < g.edge_count(); ++f) {
                bool same = block_of[e] == block_of[f];
                bool cyc = on_common_cycle.count({e, f}) > 0;
                CHECK(same == cyc);
            }
    }
}

TEST_CASE("series-parallel recognition") {
    MultiGraph k2;
    k2.n = 2;
    k2.add_edge(0, 1);
    SPTree t2 = recognize_sp(k2, 0, 1);
    CHECK(t2.at(t2.root).kind == SPTree::Kind::leaf);
    CHECK(t2.sigma() == 0);
    CHECK(t2.tau() == 1);
    check_sp_tree(k2, t2);

    SPTree tb = recognize_sp(dipole_graph(2), 0, 1);
    CHECK(tb.at(tb.root).kind == SPTree::Kind::parallel);
    check_sp_tree(dipole_graph(2), tb);

    MultiGraph theta = theta_graph();
    SPTree tt = recognize_sp(theta, 0, 1);
    CHECK(tt.at(tt.root).kind == SPTree::Kind::parallel);
    CHECK(tt.leaves_in_order().size() == 6);
    check_sp_tree(theta, tt);

    MultiGraph tri = cycle_graph(3);
    for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t)
            if (s != t) check_sp_tree(tri, recognize_sp(tri, s, t));

    // A path is series-parallel only between its endpoints.
    MultiGraph p3 = path_graph(3);
    CHECK_THROWS_AS(recognize_sp(p3, 0, 1), not_series_parallel_error);
    check_sp_tree(p3, recognize_sp(p3, 0, 2));
    SPTree ta = recognize_sp_any(p3);
    CHECK(ta.sigma() == 0);
    CHECK(ta.tau() == 2);

    CHECK_THROWS_AS(recognize_sp(complete_graph(4), 0, 1), not_series_parallel_error);
    CHECK_THROWS_AS(recognize_sp_any(complete_graph(4)), not_series_parallel_error);

    // The bowtie is series-parallel only across the pinch: two terminals in
    // one triangle leave the other triangle dangling.
    CHECK_THROWS_AS(recognize_sp(bowtie_graph(), 0, 1), not_series_parallel_error);
    CHECK_THROWS_AS(recognize_sp(bowtie_graph(), 0, 2), not_series_parallel_error);
    SPTree bow = recognize_sp_any(bowtie_graph());
    CHECK(bow.sigma() == 0);
    CHECK(bow.tau() == 3);
    check_sp_tree(bowtie_graph(), bow);

    // Three triangles sharing a node always leave one triangle dangling.
    MultiGraph tri3;
    tri3.n = 7;
    for (int i : {1, 3, 5}) {
        tri3.add_edge(0, i);
        tri3.add_edge(i, i + 1);
        tri3.add_edge(i + 1, 0);
    }
    CHECK_THROWS_AS(recognize_sp_any(tri3), not_series_parallel_error);

    MultiGraph loopy = cycle_graph(3);
    loopy.add_edge(1, 1);
    CHECK_THROWS_AS(recognize_sp(loopy, 0, 1), not_series_parallel_error);

    MultiGraph split;
    split.n = 4;
    split.add_edge(0, 1);
    split.add_edge(2, 3);
    CHECK_THROWS_AS(recognize_sp(split, 0, 1), precondition_error);
    CHECK_THROWS_AS(recognize_sp(k2, 0, 0), precondition_error);

    SeededRng rng(991);
    for (int trial = 0; trial < 30; ++trial) {
        int s, t;
        MultiGraph g = random_sp_graph(rng, static_cast<int>(rng.uniform_int(10)), s, t);
        SPTree tr = recognize_sp(g, s, t);
        CHECK(static_cast<int>(tr.leaves_in_order().size()) == g.edge_count());
        check_sp_tree(g, tr);
    }
}

TEST_CASE("cycle and path masses from the tree") {
    MultiGraph k2;
    k2.n = 2;
    k2.add_edge(0, 1);
    auto unit = [](const MultiGraph& g) {
        return std::vector<UniPoly>(g.edge_count(), UniPoly::constant(BigRat(1)));
    };
    CyclePathPolys single = eval_cycle_path_polys(recognize_sp(k2, 0, 1), unit(k2));
    CHECK(single.cycles.is_zero());
    CHECK(single.paths == UniPoly::constant(BigRat(1)));

    CyclePathPolys big = eval_cycle_path_polys(recognize_sp(dipole_graph(2), 0, 1),
                                               unit(dipole_graph(2)));
    CHECK(big.cycles == UniPoly::constant(BigRat(1)));
    CHECK(big.paths == UniPoly::constant(BigRat(2)));

    MultiGraph theta = theta_graph();
    CyclePathPolys th = eval_cycle_path_polys(recognize_sp(theta, 0, 1), unit(theta));
    CHECK(th.cycles == UniPoly::constant(BigRat(3)));
    CHECK(th.paths == UniPoly::constant(BigRat(3)));

    SeededRng rng(775);
    for (int trial = 0; trial < 25; ++trial) {
        int s, t;
        MultiGraph g = random_sp_graph(rng, 1 + static_cast<int>(rng.uniform_int(9)), s, t);
        SPTree tree = recognize_sp(g, s, t);

        CyclePathPolys u = eval_cycle_path_polys(tree, unit(g));
        CHECK(u.cycles == UniPoly::constant(BigRat(enum_simple_cycles(g).size())));
        CHECK(u.paths == UniPoly::constant(BigRat(count_simple_paths(g, s, t))));

        std::vector<BigRat> c(g.edge_count());
        std::vector<UniPoly> cw(g.edge_count());
        for (int e = 0; e < g.edge_count(); ++e) {
            c[e] = BigRat(rng.uniform_int(5), 1 + rng.uniform_int(3));
            cw[e] = UniPoly::constant(c[e]);
        }
        CyclePathPolys wgt = eval_cycle_path_polys(tree, cw);
        EdgeSet none(g.edge_count());
        CHECK(wgt.cycles.coeff(0) == brute_cycle_mass(g, c, none, none));
    }
}

TEST_CASE("marginal cycle masses via the x marker") {
    MultiGraph theta = theta_graph();
    std::vector<BigRat> ones(theta.edge_count(), BigRat(1));
    EdgeSet none(theta.edge_count());
    CHECK(sc_marginal_mass(theta, ones, none, none) == 3);
    CHECK(sc_count(theta) == 3);

    EdgeSet one_edge(theta.edge_count());
    one_edge.set(0);  // first edge of the path through node 2
    CHECK(sc_marginal_mass(theta, ones, one_edge, none) == 2);

    EdgeSet both_edges(theta.edge_count());
    both_edges.set(0);
    both_edges.set(1);  // both edges of the same path
    CHECK(sc_marginal_mass(theta, ones, both_edges, none) == 2);

    EdgeSet two_paths(theta.edge_count());
    two_paths.set(0);
    two_paths.set(2);  // one edge of each of two different paths
    CHECK(sc_marginal_mass(theta, ones, two_paths, none) == 1);

    EdgeSet avoid(theta.edge_count());
    avoid.set(4);  // an edge of the third path
    CHECK(sc_marginal_mass(theta, ones, one_edge, avoid) == 1);
    CHECK(sc_marginal_mass(theta, ones, none, avoid) == 1);

    CHECK_THROWS_AS(sc_marginal_mass(theta, ones, avoid, avoid), precondition_error);

    // Graphs that are not two-terminal overall still work via their blocks.
    CHECK(sc_count(bowtie_graph()) == 2);
    CHECK(sc_count(bridged_triangles()) == 2);
    CHECK(sc_count(dipole_graph(3)) == 3);

    MultiGraph loopy = cycle_graph(3);
    loopy.add_edge(0, 0);
    CHECK(sc_count(loopy) == 1);
    EdgeSet the_loop(loopy.edge_count());
    the_loop.set(3);
    std::vector<BigRat> lw(loopy.edge_count(), BigRat(1));
    CHECK(sc_marginal_mass(loopy, lw, the_loop, EdgeSet(loopy.edge_count())) == 0);

    std::vector<BigRat> k4w(6, BigRat(1));
    CHECK_THROWS_AS(sc_marginal_mass(complete_graph(4), k4w, EdgeSet(6), EdgeSet(6)),
                    not_series_parallel_error);

    SeededRng rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        int s, t;
        MultiGraph g = random_sp_graph(rng, 1 + static_cast<int>(rng.uniform_int(9)), s, t);
        std::vector<BigRat> c(g.edge_count());
        for (auto& x : c) x = BigRat(rng.uniform_int(5), 1 + rng.uniform_int(3));
        auto [j, j2] = random_disjoint_edge_sets(rng, g.edge_count(), 2, 2);
        CHECK(sc_marginal_mass(g, c, j, j2) == brute_cycle_mass(g, c, j, j2));
    }
}

TEST_CASE("three-block tables match exhaustive enumeration") {
    MultiGraph k2;
    k2.n = 2;
    k2.add_edge(0, 1);
    CHECK(leaf_table(1, 1) == brute_x_table(k2, 0, 1, {1, 1}));
    CHECK(leaf_table(1, 1, LeafRule::forced_cut).size() == 1);
    CHECK(leaf_table(1, 1, LeafRule::forced_uncut).size() == 1);
    CHECK(leaf_table(1, 1, LeafRule::forced_cut).begin()->first.a3.nonempty);
    CHECK(!leaf_table(1, 1, LeafRule::forced_uncut).begin()->first.a3.nonempty);

    // Parallel composition must not rejoin the two blocks of a split entry
    // that are already adjacent: the two edges of a bigon admit exactly one
    // joined partition, not three.
    DPTableX bigon = parallel_table(leaf_table(1, 1), leaf_table(0, 0));
    REQUIRE(bigon.size() == 2);
    CHECK(bigon[XKey{{2, true}, {}, {}, false}] == 1);
    CHECK(bigon[XKey{{1, true}, {}, {1, true}, true}] == 1);
    CHECK(bigon == brute_x_table(dipole_graph(2), 0, 1, {1, 1}));

    MultiGraph p3 = path_graph(3);
    SPTree p3t = recognize_sp(p3, 0, 2);
    CHECK(eval_balanced_table(p3t, {1, 1, 1}) == brute_x_table(p3, 0, 2, {1, 1, 1}));

    SeededRng rng(33001);
    for (int trial = 0; trial < 30; ++trial) {
        int s, t;
        MultiGraph g = random_sp_graph(rng, static_cast<int>(rng.uniform_int(9)), s, t);
        std::vector<long long> w = random_weights(rng, g.n, 0, 4);
        SPTree tree = recognize_sp(g, s, t);
        DPTableX table = eval_balanced_table(tree, w);
        CHECK(table == brute_x_table(g, s, t, w));
        CHECK(reverse_table(table) == brute_x_table(g, t, s, w));

        long long total = std::accumulate(w.begin(), w.end(), 0LL);
        for (const auto& [k, m] : table) {
            CHECK(k.a1.nonempty);
            CHECK(k.a1.total + k.a2.total + k.a3.total == total);
            CHECK(m > 0);
        }
    }
}

TEST_CASE("balanced partition counts") {
    CHECK(count_balanced(path_graph(4), {1, 1, 1, 1}) == 1);
    CHECK(count_balanced(path_graph(5), {1, 1, 1, 1, 1}) == 0);  // odd total
    CHECK(count_balanced(cycle_graph(4), {1, 1, 1, 1}) == 2);
    CHECK(count_balanced(cycle_graph(6), {1, 1, 1, 1, 1, 1}) == 3);

    // A star has no balanced split: one side would be disconnected.
    MultiGraph star;
    star.n = 4;
    for (int leaf : {1, 2, 3}) star.add_edge(0, leaf);
    CHECK(count_balanced(star, {1, 1, 1, 1}) == 0);

    // Self-loops change nothing.
    MultiGraph loopy = cycle_graph(4);
    loopy.add_edge(0, 0);
    CHECK(count_balanced(loopy, {1, 1, 1, 1}) == 2);

    // All-zero weights make every proper connected split balanced.
    CHECK(count_balanced(cycle_graph(4), {0, 0, 0, 0}) == 6);
    CHECK(count_balanced(cycle_graph(4), {0, 0, 0, 0}) ==
          brute_balanced(cycle_graph(4), {0, 0, 0, 0}));

    // Graphs with cut vertices work through their blocks.
    std::vector<long long> bw = {1, 1, 2, 1, 1};
    CHECK(count_balanced(bowtie_graph(), bw) == brute_balanced(bowtie_graph(), bw));
    std::vector<long long> unit6(6, 1);
    CHECK(count_balanced(bridged_triangles(), unit6) ==
          brute_balanced(bridged_triangles(), unit6));

    CHECK_THROWS_AS(count_balanced(complete_graph(4), {1, 1, 1, 1}),
                    not_series_parallel_error);
    MultiGraph split;
    split.n = 4;
    split.add_edge(0, 1);
    split.add_edge(2, 3);
    CHECK_THROWS_AS(count_balanced(split, {1, 1, 1, 1}), precondition_error);
    CHECK_THROWS_AS(count_balanced(cycle_graph(3), {1, 1}), precondition_error);

    SeededRng rng(570211);
    for (int trial = 0; trial < 30; ++trial) {
        MultiGraph g = random_sp_block_graph(rng);
        if (g.n > 14) continue;
        std::vector<long long> w = random_weights(rng, g.n, 0, 3);
        CHECK(count_balanced(g, w) == brute_balanced(g, w));
    }
}

TEST_CASE("constrained balanced partition counts") {
    MultiGraph c6 = cycle_graph(6);
    std::vector<long long> u6(6, 1);
    EdgeSet e0(6), e03(6), e01(6);
    e0.set(0);
    e03.set(0);
    e03.set(3);
    e01.set(0);
    e01.set(1);
    EdgeSet none6(6);
    // The three balanced splits of a six-cycle cut the edge pairs {0,3},
    // {1,4}, {2,5}.
    CHECK(count_balanced_constrained(c6, u6, e0, none6) == 1);
    CHECK(count_balanced_constrained(c6, u6, e03, none6) == 1);
    CHECK(count_balanced_constrained(c6, u6, e01, none6) == 0);
    CHECK(count_balanced_constrained(c6, u6, none6, e0) == 2);
    CHECK(count_balanced_constrained(c6, u6, none6, e0.complement()) == 0);

    // Forced cut edges in two different blocks are unsatisfiable.
    MultiGraph bt = bridged_triangles();
    EdgeSet both(bt.edge_count());
    both.set(0);  // inside the first triangle
    both.set(4);  // inside the second triangle
    std::vector<long long> u(bt.n, 1);
    CHECK(count_balanced_constrained(bt, u, both, EdgeSet(bt.edge_count())) == 0);

    // A forced-cut self-loop is unsatisfiable.
    MultiGraph loopy = cycle_graph(4);
    loopy.add_edge(0, 0);
    EdgeSet the_loop(5);
    the_loop.set(4);
    CHECK(count_balanced_constrained(loopy, {1, 1, 1, 1}, the_loop, EdgeSet(5)) == 0);
    CHECK(count_balanced_constrained(loopy, {1, 1, 1, 1}, EdgeSet(5), the_loop) == 2);

    SeededRng rng(880031);
    for (int trial = 0; trial < 30; ++trial) {
        MultiGraph g = random_sp_block_graph(rng);
        if (g.n > 14) continue;
        std::vector<long long> w = random_weights(rng, g.n, 0, 3);
        auto [fc, fu] = random_disjoint_edge_sets(rng, g.edge_count(), 2, 2);
        CHECK(count_balanced_constrained(g, w, fc, fu) == brute_balanced(g, w, &fc, &fu));
    }
}

TEST_CASE("cycle count extraction from the bigon-chain gadget") {
    MultiGraph theta = theta_graph();
    EdgeSet none(theta.edge_count());
    EdgeSet j1(theta.edge_count());
    j1.set(0);
    EdgeSet j2set(theta.edge_count());
    j2set.set(4);

    CHECK(sc_count_remainder(theta, none, none) == 3);
    CHECK(sc_count_remainder(theta, j1, none, 5) == 2);
    CHECK(sc_count_remainder(theta, j1, j2set, 5) == 1);

    EdgeSet jpair(theta.edge_count());
    jpair.set(0);
    jpair.set(2);
    CHECK(sc_count_remainder(theta, jpair, none, 4) == 1);

    // Depth 2 cannot separate three cycles: 2^0 * 3 + 2 >= 2^2.
    CHECK_THROWS_AS(sc_count_remainder(theta, j1, none, 2), insufficient_depth_error);

    // The default depth is huge but still runs on a small graph.
    CHECK(sc_count_remainder(theta, j1, none) == 2);

    MultiGraph loopy = cycle_graph(3);
    loopy.add_edge(0, 0);
    EdgeSet jloop(loopy.edge_count());
    jloop.set(3);
    CHECK(sc_count_remainder(loopy, jloop, EdgeSet(loopy.edge_count()), 6) == 0);

    CHECK_THROWS_AS(sc_count_remainder(theta, j1, j1, 6), precondition_error);

    // Gadget route, direct marginal mass, and brute force must agree.
    SeededRng rng(11807);
    for (int trial = 0; trial < 12; ++trial) {
        int s, t;
        MultiGraph g = random_sp_graph(rng, 1 + static_cast<int>(rng.uniform_int(8)), s, t);
        auto [j, jj2] = random_disjoint_edge_sets(rng, g.edge_count(), 2, 1);
        BigInt unconstrained = sc_count(delete_edges(g, jj2).graph);
        int d = min_cycle_depth(unconstrained, std::max(1, j.count()));
        BigInt via_gadget = sc_count_remainder(g, j, jj2, d);
        std::vector<BigRat> ones(g.edge_count(), BigRat(1));
        BigRat via_mass = sc_marginal_mass(g, ones, j, jj2);
        BigRat via_brute = brute_cycle_mass(g, ones, j, jj2);
        CHECK(BigRat(via_gadget) == via_mass);
        CHECK(via_mass == via_brute);
    }
}

TEST_CASE("balanced count extraction from the star gadget") {
    MultiGraph c5 = cycle_graph(5);
    std::vector<long long> w5 = {1, 1, 1, 1, 2};
    EdgeSet none5(5), j01(5);
    j01.set(0);
    CHECK(balanced_count_remainder(c5, w5, none5, none5) == 2);
    CHECK(balanced_count_remainder(c5, w5, j01, none5, 3) == 1);
    CHECK(balanced_count_remainder(c5, w5, j01, none5) == 1);  // default depth
    CHECK(count_balanced_constrained(c5, w5, j01, none5) == 1);

    // Contracting one edge of a six-cycle leaves a weighted five-cycle.
    MultiGraph c6 = cycle_graph(6);
    std::vector<long long> u6(6, 1);
    EdgeSet e5(6), e0(6);
    e5.set(5);
    e0.set(0);
    CHECK(balanced_count_remainder(c6, u6, EdgeSet(6), e5) == 2);
    CHECK(balanced_count_remainder(c6, u6, e0, e5, 4) == 1);

    // Depth 1 cannot separate three downstairs partitions.
    CHECK_THROWS_AS(balanced_count_remainder(c6, u6, e0, EdgeSet(6), 1),
                    insufficient_depth_error);

    // Contracting everything else collapses the marked edge: nothing to cut.
    MultiGraph c4 = cycle_graph(4);
    EdgeSet rest(4);
    rest.set(1);
    rest.set(2);
    rest.set(3);
    EdgeSet first(4);
    first.set(0);
    CHECK(balanced_count_remainder(c4, {1, 1, 1, 1}, first, rest) == 0);

    CHECK_THROWS_AS(balanced_count_remainder(c4, {1, 1, 1, 1}, first, first, 6),
                    precondition_error);

    // Gadget route, constrained dynamic program, and brute force must agree.
    SeededRng rng(660217);
    for (int trial = 0; trial < 15; ++trial) {
        int s, t;
        MultiGraph g = random_sp_graph(rng, 1 + static_cast<int>(rng.uniform_int(7)), s, t);
        std::vector<long long> w = random_weights(rng, g.n, 0, 3);
        auto [j, jj2] = random_disjoint_edge_sets(rng, g.edge_count(), 2, 1);

        MultiGraph wg = g;
        wg.node_weight = w;
        GraphRewrite contracted = contract_edges(wg, jj2);
        bool collapsed = false;
        EdgeSet jc(contracted.graph.edge_count());
        for (int e : j.to_vector()) {
            if (contracted.edge_map[e] == -1)
                collapsed = true;
            else
                jc.set(contracted.edge_map[e]);
        }

        BigInt downstairs = count_balanced(contracted.graph,
                                           effective_node_weights(contracted.graph));
        int d = 1;
        while (downstairs >= pow2(static_cast<unsigned long>(d))) ++d;

        BigInt via_gadget = balanced_count_remainder(g, w, j, jj2, d);
        BigInt via_dp = collapsed ? BigInt(0)
                                  : count_balanced_constrained(
                                        contracted.graph,
                                        effective_node_weights(contracted.graph), jc,
                                        EdgeSet(contracted.graph.edge_count()));
        BigInt via_brute = collapsed ? BigInt(0)
                                     : brute_balanced(contracted.graph,
                                                      effective_node_weights(contracted.graph),
                                                      &jc, nullptr);
        CHECK(via_gadget == via_dp);
        CHECK(via_dp == via_brute);
    }
}
