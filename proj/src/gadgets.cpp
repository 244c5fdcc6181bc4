#include "cpart/gadgets.hpp"

#include "cpart/errors.hpp"

#include <algorithm>
#include <string>

namespace cpart {

namespace {

// Shared scaffolding: walk the base edges in id order and let `replace` build
// the derived realization of each edge (or skip it). Base nodes keep their
// ids; gadget-internal nodes are appended behind them.
struct GadgetBuilder {
    GadgetMap m;

    explicit GadgetBuilder(const MultiGraph& g) {
        m.base = g;
        m.derived.n = g.n;
        m.derived.node_weight = g.node_weight;
        m.per_base_edge.assign(g.edge_count(), {});
        m.original_nodes.resize(g.n);
        for (int v = 0; v < g.n; v++) m.original_nodes[v] = v;
    }

    int new_internal_node() {
        // Internal nodes always carry explicit weight zero; an unweighted
        // base graph becomes explicitly unit-weighted the first time one
        // is added, so balance computations on the derived graph see the
        // internal nodes as weightless.
        if (!m.derived.weighted()) m.derived.node_weight.assign(m.derived.n, 1);
        int w = m.derived.add_node();
        m.derived.node_weight.push_back(0);
        return w;
    }

    int add_owned_edge(int base_edge, int u, int v) {
        int id = m.derived.add_edge(u, v);
        m.per_base_edge[base_edge].push_back(id);
        m.derived_edge_owner.push_back(base_edge);
        return id;
    }

    void copy_edge(int e) { add_owned_edge(e, m.base.edges[e][0], m.base.edges[e][1]); }

    // Chain of d segments with r parallel edges per segment.
    void dipole_chain_edge(int e, int r, int d) {
        int u = m.base.edges[e][0], v = m.base.edges[e][1];
        if (u == v)
            throw precondition_error("cannot build a chain gadget over self-loop edge " +
                                     std::to_string(e));
        int prev = u;
        for (int seg = 0; seg < d; seg++) {
            int next = (seg + 1 == d) ? v : new_internal_node();
            for (int copy = 0; copy < r; copy++) add_owned_edge(e, prev, next);
            prev = next;
        }
    }

    // d parallel two-edge paths through fresh nodes.
    void star_edge(int e, int d) {
        int u = m.base.edges[e][0], v = m.base.edges[e][1];
        if (u == v)
            throw precondition_error("cannot build a star gadget over self-loop edge " +
                                     std::to_string(e));
        for (int i = 0; i < d; i++) {
            int x = new_internal_node();
            add_owned_edge(e, u, x);
            add_owned_edge(e, x, v);
        }
    }
};

}  // namespace

void validate_gadget_map(const GadgetMap& m) {
    m.base.check_valid();
    m.derived.check_valid();
    if (static_cast<int>(m.per_base_edge.size()) != m.base.edge_count())
        throw error("gadget map: per-edge table size mismatch");
    if (static_cast<int>(m.derived_edge_owner.size()) != m.derived.edge_count())
        throw error("gadget map: owner table size mismatch");
    std::vector<int> seen(m.derived.edge_count(), -1);
    for (int e = 0; e < m.base.edge_count(); e++) {
        for (int id : m.per_base_edge[e]) {
            if (id < 0 || id >= m.derived.edge_count())
                throw error("gadget map: derived edge id out of range");
            if (seen[id] != -1) throw error("gadget map: derived edge owned twice");
            seen[id] = e;
        }
    }
    for (int id = 0; id < m.derived.edge_count(); id++)
        if (seen[id] != m.derived_edge_owner[id])
            throw error("gadget map: owner table disagrees with per-edge sets");
    for (int v = 0; v < m.base.n; v++) {
        int w = m.original_nodes[v];
        if (w < -1 || w >= m.derived.n) throw error("gadget map: node image out of range");
    }
}

GadgetMap chain_of_bigons(const MultiGraph& g, int d) {
    g.check_valid();
    if (d < 0) throw precondition_error("chain depth must be nonnegative");
    GadgetBuilder b(g);
    for (int e = 0; e < g.edge_count(); e++) {
        if (d == 0)
            b.copy_edge(e);
        else
            b.dipole_chain_edge(e, 2, d);
    }
    return std::move(b.m);
}

GadgetMap chain_of_dipoles(const MultiGraph& g, int r, int d) {
    g.check_valid();
    if (r < 2) throw precondition_error("dipole order must be at least 2");
    if (d < 1) throw precondition_error("chain depth must be at least 1");
    GadgetBuilder b(g);
    for (int e = 0; e < g.edge_count(); e++) b.dipole_chain_edge(e, r, d);
    return std::move(b.m);
}

EdgeSet project_touched(const GadgetMap& m, const EdgeSet& c) {
    if (c.m != m.derived.edge_count())
        throw precondition_error("projection input lives on the wrong edge universe");
    EdgeSet out(m.base.edge_count());
    for (int e = 0; e < m.base.edge_count(); e++)
        for (int id : m.per_base_edge[e])
            if (c.test(id)) {
                out.set(e);
                break;
            }
    return out;
}

LiftResult lift_through_chain(const GadgetMap& m, const EdgeSet& y) {
    if (y.m != m.base.edge_count())
        throw precondition_error("lift input lives on the wrong edge universe");
    if (!is_bridgeless_subset(m.base, y))
        throw precondition_error("lift input must be a bridgeless edge subset");
    LiftResult r;
    r.edges = EdgeSet(m.derived.edge_count());
    r.count = 1;
    for (int e : y.to_vector()) {
        const auto& ids = m.per_base_edge[e];
        if (ids.empty()) throw precondition_error("lift over an edge with no derived copy");
        // Derived edges are emitted segment-major, parallel copies of one
        // segment adjacent; recover the segmentation from endpoint changes.
        int seg_start = 0;
        while (seg_start < static_cast<int>(ids.size())) {
            int seg_end = seg_start;
            while (seg_end < static_cast<int>(ids.size()) &&
                   m.derived.edges[ids[seg_end]] == m.derived.edges[ids[seg_start]])
                seg_end++;
            r.edges.set(ids[seg_start]);
            r.count *= (seg_end - seg_start);
            seg_start = seg_end;
        }
    }
    return r;
}

GadgetMap doubled_star(const MultiGraph& g, int d) {
    g.check_valid();
    if (d < 1) throw precondition_error("star width must be at least 1");
    GadgetBuilder b(g);
    for (int e = 0; e < g.edge_count(); e++) b.star_edge(e, d);
    return std::move(b.m);
}

Partition restrict_doubled_star(const GadgetMap& m, const Partition& p) {
    if (p.k != 2) throw precondition_error("restriction needs a 2-partition");
    if (static_cast<int>(p.assign.size()) != m.derived.n)
        throw precondition_error("partition lives on the wrong node set");
    if (!is_connected_partition(m.derived, p))
        throw precondition_error("restriction needs a connected partition");
    Partition out;
    out.k = 2;
    out.assign.resize(m.base.n);
    for (int v = 0; v < m.base.n; v++) out.assign[v] = p.assign[m.original_nodes[v]];
    return out;
}

GadgetMap marginal_graph(const MultiGraph& g, const EdgeSet& j, const EdgeSet& j2, int d) {
    g.check_valid();
    if (d < 0) throw precondition_error("chain depth must be nonnegative");
    if (!(j & j2).empty()) throw precondition_error("kept and deleted edge sets must be disjoint");
    GadgetBuilder b(g);
    for (int e = 0; e < g.edge_count(); e++) {
        if (j2.test(e)) continue;  // deleted
        if (j.test(e) && d > 0)
            b.dipole_chain_edge(e, 2, d);
        else
            b.copy_edge(e);
    }
    return std::move(b.m);
}

GadgetMap w_marginal_graph(const MultiGraph& g, const EdgeSet& j, const EdgeSet& j2, int d) {
    g.check_valid();
    if (d < 1) throw precondition_error("star width must be at least 1");
    if (!(j & j2).empty())
        throw precondition_error("replaced and contracted edge sets must be disjoint");
    // Contract with explicit weights so merged nodes accumulate the weight of
    // their class and the internal star nodes below can carry explicit zeros.
    MultiGraph base = g;
    if (!base.weighted()) base.node_weight.assign(base.n, 1);
    GraphRewrite contracted = contract_edges(base, j2);

    GadgetMap m;
    m.base = g;
    m.derived.n = contracted.graph.n;
    m.derived.node_weight = contracted.graph.node_weight;
    m.per_base_edge.assign(g.edge_count(), {});
    m.original_nodes.resize(g.n);
    for (int v = 0; v < g.n; v++) m.original_nodes[v] = contracted.node_map[v];

    auto new_internal_node = [&]() {
        int w = m.derived.add_node();
        m.derived.node_weight.push_back(0);
        return w;
    };
    auto add_owned = [&](int base_edge, int u, int v) {
        m.derived.add_edge(u, v);
        m.per_base_edge[base_edge].push_back(m.derived.edge_count() - 1);
        m.derived_edge_owner.push_back(base_edge);
    };

    for (int e = 0; e < g.edge_count(); e++) {
        int ce = contracted.edge_map[e];
        if (ce == -1) {
            // Contracted away, or dropped because its endpoints merged. The
            // latter is fatal for a replaced edge: its star has no endpoints.
            if (j.test(e))
                throw precondition_error("edge " + std::to_string(e) +
                                         " collapsed to a self-loop under contraction");
            continue;
        }
        int u = contracted.graph.edges[ce][0], v = contracted.graph.edges[ce][1];
        if (j.test(e)) {
            for (int i = 0; i < d; i++) {
                int x = new_internal_node();
                add_owned(e, u, x);
                add_owned(e, x, v);
            }
        } else {
            add_owned(e, u, v);
        }
    }
    return m;
}

}  // namespace cpart
