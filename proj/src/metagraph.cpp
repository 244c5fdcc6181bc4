#include "cpart/metagraph.hpp"

#include "cpart/enumerate.hpp"
#include "cpart/errors.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <string>
#include <utility>

namespace cpart {

bool is_admissible_partition(const MultiGraph& g, const Partition& p, const StateConstraints& c) {
    if (p.k != 2) throw precondition_error("flip states are 2-partitions");
    if (static_cast<int>(p.assign.size()) != g.n)
        throw precondition_error("partition lives on the wrong node set");
    if (!is_connected_partition(g, p)) return false;
    if (!c.allow_empty) {
        auto sizes = p.block_sizes();
        if (sizes[0] == 0 || sizes[1] == 0) return false;
    }
    if (c.eps && !is_eps_balanced(g, p, *c.eps, c.weights)) return false;
    if (c.apd_percent) {
        std::vector<long long> unit;
        const std::vector<long long>* w = c.weights;
        if (!w) {
            unit.assign(g.n, 1);
            w = &unit;
        }
        if (!is_within_apd(p, *w, *c.apd_percent)) return false;
    }
    return true;
}

int MetaGraph::state_index(const Partition& p) const {
    if (p.k != 2 || static_cast<int>(p.assign.size()) != degree) return -1;
    const std::vector<int>* key = &p.assign;
    Partition canon;
    if (!ordered) {
        canon = canonical_unordered(p);
        key = &canon.assign;
    }
    auto it = index.find(*key);
    return it == index.end() ? -1 : it->second;
}

MetaGraph build_flip_metagraph(const MultiGraph& g, const StateConstraints& c, long long guard,
                               int threads) {
    g.check_valid();
    EnumOptions eo;
    eo.ordered = c.ordered;
    eo.allow_empty = c.allow_empty;
    eo.eps = c.eps;
    eo.weights = c.weights;
    eo.guard = guard;
    eo.threads = threads;

    MetaGraph mg;
    mg.degree = g.n;
    mg.ordered = c.ordered;
    mg.states = enum_connected_partitions(g, 2, eo);
    if (c.apd_percent) {
        std::vector<long long> w = c.weights ? *c.weights : std::vector<long long>(g.n, 1);
        std::erase_if(mg.states,
                      [&](const Partition& p) { return !is_within_apd(p, w, *c.apd_percent); });
    }
    const int nst = static_cast<int>(mg.states.size());
    for (int s = 0; s < nst; s++) mg.index.emplace(mg.states[s].assign, s);

    mg.adjacency.assign(nst, {});
    auto fill_row = [&](int s) {
        std::vector<int> row(g.n);
        Partition cand = mg.states[s];
        for (int x = 0; x < g.n; x++) {
            cand.assign[x] = 1 - cand.assign[x];
            int t = s;
            if (is_admissible_partition(g, cand, c)) {
                const std::vector<int>* key = &cand.assign;
                Partition canon;
                if (!c.ordered) {
                    canon = canonical_unordered(cand);
                    key = &canon.assign;
                }
                auto it = mg.index.find(*key);
                if (it == mg.index.end())
                    throw error("internal: flip target missing from the state table");
                t = it->second;
            }
            row[x] = t;
            cand.assign[x] = 1 - cand.assign[x];
        }
        mg.adjacency[s] = std::move(row);
    };

    if (threads <= 1) {
        for (int s = 0; s < nst; s++) fill_row(s);
    } else {
#ifdef CPART_HAVE_OPENMP
        bool failed = false;
#pragma omp parallel for num_threads(threads) schedule(dynamic, 64)
        for (int s = 0; s < nst; s++) {
            try {
                fill_row(s);
            } catch (...) {
#pragma omp critical
                failed = true;
            }
        }
        if (failed) throw error("internal: flip target missing from the state table");
#else
        for (int s = 0; s < nst; s++) fill_row(s);
#endif
    }
    return mg;
}

BigRat bottleneck_ratio(const MetaGraph& mg, const std::vector<int>& subset) {
    const int nst = static_cast<int>(mg.states.size());
    if (subset.empty()) throw precondition_error("bottleneck ratio needs a nonempty subset");
    std::vector<char> in(nst, 0);
    for (int s : subset) {
        if (s < 0 || s >= nst) throw precondition_error("bottleneck ratio: state index out of range");
        if (in[s]) throw precondition_error("bottleneck ratio: repeated state in subset");
        in[s] = 1;
    }
    if (static_cast<int>(subset.size()) == nst)
        throw precondition_error("bottleneck ratio needs a proper subset");
    long long boundary = 0;
    for (int s : subset)
        for (int t : mg.adjacency[s])
            if (!in[t]) boundary++;
    return BigRat(boundary, 2LL * mg.degree * static_cast<long long>(subset.size()));
}

namespace {

// Neighbor lists of the metagraph: distinct states adjacent to s, no self.
std::vector<std::vector<int>> state_neighbors(const MetaGraph& mg) {
    std::vector<std::vector<int>> nbr(mg.states.size());
    for (size_t s = 0; s < mg.states.size(); s++) {
        auto row = mg.adjacency[s];
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        std::erase(row, static_cast<int>(s));
        nbr[s] = std::move(row);
    }
    return nbr;
}

}  // namespace

ConductanceResult exact_conductance(const MetaGraph& mg, int exact_limit, long long connected_budget) {
    const int nst = static_cast<int>(mg.states.size());
    if (nst < 2) throw precondition_error("conductance needs at least two states");

    ConductanceResult out;
    bool have = false;
    auto consider = [&](const std::vector<int>& u, const std::vector<char>& in) {
        long long boundary = 0;
        for (int s : u)
            for (int t : mg.adjacency[s])
                if (!in[t]) boundary++;
        BigRat r(boundary, 2LL * mg.degree * static_cast<long long>(u.size()));
        if (!have || r < out.value) {
            have = true;
            out.value = r;
            out.witness = u;
            std::sort(out.witness.begin(), out.witness.end());
        }
    };

    if (nst <= exact_limit) {
        if (nst > 62)
            throw precondition_error("exact conductance: subset scan is limited to 62 states");
        out.exact = true;
        std::vector<int> u;
        std::vector<char> in(nst, 0);
        for (uint64_t mask = 1; mask < (uint64_t{1} << nst); mask++) {
            if (2 * std::popcount(mask) > nst) continue;
            u.clear();
            std::fill(in.begin(), in.end(), 0);
            for (int s = 0; s < nst; s++)
                if ((mask >> s) & 1) {
                    u.push_back(s);
                    in[s] = 1;
                }
            consider(u, in);
        }
        return out;
    }

    // Too many states for the full scan: walk only subsets that are connected
    // in the metagraph. A minimizing subset can be assumed connected (any
    // disconnected one has a component doing at least as well), so the value
    // is still a sound upper bound for the true conductance.
    out.exact = false;
    auto nbr = state_neighbors(mg);
    const int cap = nst / 2;
    long long left = connected_budget;
    std::vector<int> u;
    std::vector<char> in(nst, 0), forbidden(nst, 0);
    auto eval = [&]() {
        if (left-- <= 0)
            throw precondition_error(
                "exact conductance: connected-subset budget exhausted; "
                "use bottleneck_ratio on chosen subsets instead");
        consider(u, in);
    };
    int root = 0;
    std::function<void()> grow = [&]() {
        if (static_cast<int>(u.size()) >= cap) return;
        int v = -1;
        for (int s : u)
            for (int w : nbr[s])
                if (w > root && !in[w] && !forbidden[w] && (v < 0 || w < v)) v = w;
        if (v < 0) return;
        in[v] = 1;
        u.push_back(v);
        eval();
        grow();
        u.pop_back();
        in[v] = 0;
        forbidden[v] = 1;
        grow();
        forbidden[v] = 0;
    };
    for (root = 0; root < nst; root++) {
        u.assign(1, root);
        in[root] = 1;
        eval();
        grow();
        in[root] = 0;
    }
    return out;
}

BigRat mixing_lower_bound(const BigRat& phi) {
    if (phi <= 0) throw precondition_error("mixing lower bound needs a positive conductance");
    return BigRat(1) / (BigRat(4) * phi);
}

PurificationResult purification_structure(const MetaGraph& mg, const PlaneGraph& pg,
                                          int max_states) {
    const int nst = static_cast<int>(mg.states.size());
    if (nst == 0) throw precondition_error("purification needs a nonempty metagraph");
    if (mg.degree != pg.g.n)
        throw precondition_error("plane graph does not match the metagraph's node set");
    if (nst > max_states)
        throw precondition_error("purification: state count " + std::to_string(nst) +
                                 " exceeds the guard (raise max_states)");

    const int nf = pg.face_count();
    const int words = (nf + 63) / 64;
    PurificationResult out;
    out.mixed_faces.resize(nst);
    std::vector<uint64_t> mixed(static_cast<size_t>(nst) * words, 0);
    for (int s = 0; s < nst; s++) {
        const auto& a = mg.states[s].assign;
        for (int f = 0; f < nf; f++) {
            bool seen[2] = {false, false};
            for (int h : pg.faces[f]) seen[a[pg.dart_node(h)]] = true;
            if (seen[0] && seen[1]) {
                mixed[static_cast<size_t>(s) * words + f / 64] |= uint64_t{1} << (f % 64);
                out.mixed_faces[s].push_back(f);
            }
        }
    }

    auto purifying = [&](int p, int q) {
        const uint64_t* mp = &mixed[static_cast<size_t>(p) * words];
        const uint64_t* mq = &mixed[static_cast<size_t>(q) * words];
        for (int w = 0; w < words; w++)
            if (mp[w] & ~mq[w]) return true;
        return false;
    };

    auto nbr = state_neighbors(mg);
    out.dpc_out.resize(nst);
    for (int s = 0; s < nst; s++)
        for (int t : nbr[s])
            if (!purifying(s, t)) out.dpc_out[s].push_back(t);

    out.reach.resize(nst);
    std::vector<char> seen(nst);
    for (int s = 0; s < nst; s++) {
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<int> queue{s};
        seen[s] = 1;
        for (size_t head = 0; head < queue.size(); head++)
            for (int t : out.dpc_out[queue[head]])
                if (!seen[t]) {
                    seen[t] = 1;
                    queue.push_back(t);
                }
        std::sort(queue.begin(), queue.end());
        out.reach[s] = std::move(queue);
    }
    return out;
}

}  // namespace cpart
