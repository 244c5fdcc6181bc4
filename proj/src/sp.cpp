#include "cpart/sp.hpp"

#include "cpart/errors.hpp"

#include <algorithm>
#include <map>

namespace cpart {

std::vector<int> SPTree::leaves_in_order() const {
    std::vector<int> order, stack{root};
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        const Node& nd = nodes[i];
        if (nd.kind == Kind::leaf) {
            order.push_back(i);
        } else {
            stack.push_back(nd.right);
            stack.push_back(nd.left);
        }
    }
    return order;
}

namespace {

// Reverse the terminal orientation of a single tree node in place. Children
// are untouched: the flip bits absorb the reversal.
void reverse_node(SPTree::Node& nd) {
    std::swap(nd.s, nd.t);
    if (nd.kind == SPTree::Kind::series) {
        std::swap(nd.left, nd.right);
        std::swap(nd.flip_left, nd.flip_right);
    }
    if (nd.kind != SPTree::Kind::leaf) {
        nd.flip_left = !nd.flip_left;
        nd.flip_right = !nd.flip_right;
    }
}

}  // namespace

SPTree recognize_sp(const MultiGraph& g, int s, int t) {
    g.check_valid();
    if (s < 0 || s >= g.n || t < 0 || t >= g.n || s == t)
        throw precondition_error("recognize_sp: terminals must be two distinct nodes");
    if (!is_connected(g)) throw precondition_error("recognize_sp: graph must be connected");
    for (const auto& e : g.edges)
        if (e[0] == e[1])
            throw not_series_parallel_error("recognize_sp: self-loops are never series-parallel");

    SPTree tree;
    struct Super {
        int u, v, node;
        bool alive;
    };
    std::vector<Super> sup;
    std::vector<std::vector<int>> inc(g.n);
    auto add_super = [&](int u, int v, int node) {
        sup.push_back({u, v, node, true});
        int i = static_cast<int>(sup.size()) - 1;
        inc[u].push_back(i);
        inc[v].push_back(i);
    };
    for (int e = 0; e < g.edge_count(); ++e) {
        SPTree::Node leaf;
        leaf.kind = SPTree::Kind::leaf;
        leaf.edge = e;
        leaf.s = g.edges[e][0];
        leaf.t = g.edges[e][1];
        tree.nodes.push_back(leaf);
        add_super(leaf.s, leaf.t, e);
    }

    auto refresh = [&](int x) {
        auto& v = inc[x];
        v.erase(std::remove_if(v.begin(), v.end(), [&](int i) { return !sup[i].alive; }),
                v.end());
    };

    std::vector<int> work;
    std::vector<char> queued(g.n, 1);
    for (int x = g.n - 1; x >= 0; --x) work.push_back(x);
    auto push_node = [&](int x) {
        if (!queued[x]) {
            queued[x] = 1;
            work.push_back(x);
        }
    };

    while (!work.empty()) {
        int x = work.back();
        work.pop_back();
        queued[x] = 0;
        bool merged = true;
        while (merged) {
            merged = false;
            refresh(x);
            // Merge one parallel pair incident to x, if any.
            std::map<int, int> by_other;
            for (int i : inc[x]) {
                int other = sup[i].u == x ? sup[i].v : sup[i].u;
                auto [it, fresh] = by_other.try_emplace(other, i);
                if (fresh) continue;
                int j = it->second;
                SPTree::Node p;
                p.kind = SPTree::Kind::parallel;
                p.left = sup[j].node;
                p.right = sup[i].node;
                p.flip_right = sup[i].u != sup[j].u;
                p.s = sup[j].u;
                p.t = sup[j].v;
                tree.nodes.push_back(p);
                sup[i].alive = sup[j].alive = false;
                add_super(p.s, p.t, static_cast<int>(tree.nodes.size()) - 1);
                push_node(other);
                merged = true;
                break;
            }
            if (merged) continue;
            // Series-merge the two edges at a degree-2 non-terminal.
            if (x != s && x != t && inc[x].size() == 2) {
                int i = inc[x][0], j = inc[x][1];
                int a = sup[i].u == x ? sup[i].v : sup[i].u;
                int b = sup[j].u == x ? sup[j].v : sup[j].u;
                if (a != b) {  // a == b would be a parallel pair, handled above
                    SPTree::Node sn;
                    sn.kind = SPTree::Kind::series;
                    sn.left = sup[i].node;
                    sn.flip_left = sup[i].u != a;
                    sn.right = sup[j].node;
                    sn.flip_right = sup[j].u != x;
                    sn.s = a;
                    sn.t = b;
                    tree.nodes.push_back(sn);
                    sup[i].alive = sup[j].alive = false;
                    add_super(a, b, static_cast<int>(tree.nodes.size()) - 1);
                    push_node(a);
                    push_node(b);
                    merged = true;
                }
            }
        }
    }

    std::vector<int> alive;
    for (int i = 0; i < static_cast<int>(sup.size()); ++i)
        if (sup[i].alive) alive.push_back(i);
    if (alive.size() != 1)
        throw not_series_parallel_error("recognize_sp: graph does not reduce to a single " +
                                        std::to_string(s) + "-" + std::to_string(t) +
                                        " edge (" + std::to_string(alive.size()) +
                                        " edges remain)");
    const Super& last = sup[alive[0]];
    tree.root = last.node;
    if (last.u == t && last.v == s) reverse_node(tree.nodes[tree.root]);
    if (tree.sigma() != s || tree.tau() != t)
        throw not_series_parallel_error("recognize_sp: reduction ended at the wrong terminals");
    return tree;
}

SPTree recognize_sp_any(const MultiGraph& g) {
    for (int s = 0; s < g.n; ++s) {
        for (int t = s + 1; t < g.n; ++t) {
            try {
                return recognize_sp(g, s, t);
            } catch (const not_series_parallel_error&) {
            }
        }
    }
    throw not_series_parallel_error(
        "recognize_sp_any: no terminal pair admits a series-parallel decomposition");
}

}  // namespace cpart
