#include "cpart/enumerate.hpp"

#include "cpart/errors.hpp"
#include "cpart/plane.hpp"

#include <algorithm>
#include <string>

#ifdef CPART_HAVE_OPENMP
#include <omp.h>
#endif

namespace cpart {

namespace {

// Backtracking cycle search. Cycles are rooted at their minimum edge id e0 with
// a fixed orientation, so each cycle is emitted exactly once.
struct CycleSearch {
    const MultiGraph& g;
    const std::vector<std::vector<std::pair<int, int>>> adj;
    std::vector<char> visited;
    std::vector<int> path_edges;
    std::vector<EdgeSet>& out;
    int e0 = 0, home = 0;

    CycleSearch(const MultiGraph& graph, std::vector<EdgeSet>& sink)
        : g(graph), adj(graph.adjacency()), visited(graph.n, 0), out(sink) {}

    void extend(int cur) {
        for (const auto& [nb, e] : adj[cur]) {
            if (e <= e0) continue;
            if (nb == home) {
                path_edges.push_back(e);
                EdgeSet c(g.edge_count());
                c.set(e0);
                for (int pe : path_edges) c.set(pe);
                out.push_back(c);
                path_edges.pop_back();
                continue;
            }
            if (visited[nb]) continue;
            visited[nb] = 1;
            path_edges.push_back(e);
            extend(nb);
            path_edges.pop_back();
            visited[nb] = 0;
        }
    }

    void run() {
        for (e0 = 0; e0 < g.edge_count(); e0++) {
            auto [a, b] = std::pair(g.edges[e0][0], g.edges[e0][1]);
            if (a == b) continue;  // self-loops form no simple cycle
            home = a;
            std::fill(visited.begin(), visited.end(), 0);
            visited[a] = visited[b] = 1;
            path_edges.clear();
            extend(b);
        }
    }
};

}  // namespace

std::vector<EdgeSet> enum_simple_cycles(const MultiGraph& g, int max_edges, bool override_guard) {
    g.check_valid();
    if (g.edge_count() > max_edges && !override_guard)
        throw precondition_error("cycle enumeration guard: " + std::to_string(g.edge_count()) +
                                 " edges exceeds limit " + std::to_string(max_edges) +
                                 " (pass override to proceed)");
    std::vector<EdgeSet> out;
    CycleSearch search(g, out);
    search.run();
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Scan all 2-partitions {S, V\S} with node 0 in S. Returns canonical unordered
// partitions; ordering/empty expansion happens in the caller.
std::vector<Partition> scan_two_partitions(const MultiGraph& g, const EnumOptions& opts) {
    const int n = g.n;
    const auto adj = g.adjacency();
    const uint64_t total = uint64_t{1} << (n - 1);

    auto scan_range = [&](uint64_t lo, uint64_t hi, std::vector<Partition>& local) {
        std::vector<char> side(n, 0);
        for (uint64_t mask = lo; mask < hi; mask++) {
            side[0] = 1;
            int size0 = 1;
            for (int v = 1; v < n; v++) {
                side[v] = (mask >> (v - 1)) & 1;
                size0 += side[v];
            }
            if (size0 == n && !opts.allow_empty) continue;
            if (!is_connected_node_subset(g, adj, side, size0)) continue;
            std::vector<char> other(n);
            for (int v = 0; v < n; v++) other[v] = !side[v];
            if (size0 < n && !is_connected_node_subset(g, adj, other, n - size0)) continue;
            Partition p;
            p.k = 2;
            p.assign.resize(n);
            for (int v = 0; v < n; v++) p.assign[v] = side[v] ? 0 : 1;
            local.push_back(std::move(p));
        }
    };

    std::vector<Partition> result;
    if (opts.threads <= 1) {
        scan_range(0, total, result);
    } else {
#ifdef CPART_HAVE_OPENMP
        const int nthreads = opts.threads;
        std::vector<std::vector<Partition>> buckets(nthreads);
#pragma omp parallel for num_threads(nthreads) schedule(static)
        for (int t = 0; t < nthreads; t++) {
            uint64_t lo = total * t / nthreads, hi = total * (t + 1) / nthreads;
            scan_range(lo, hi, buckets[t]);
        }
        for (auto& b : buckets)
            result.insert(result.end(), std::make_move_iterator(b.begin()),
                          std::make_move_iterator(b.end()));
#else
        scan_range(0, total, result);
#endif
    }
    return result;
}

void scan_k_partitions(const MultiGraph& g, int k, std::vector<Partition>& out) {
    const int n = g.n;
    std::vector<int> assign(n, -1);
    // Depth-first over assignments in restricted-growth form: block b may be
    // opened only after blocks 0..b-1 are in use, so every unordered partition
    // appears under exactly one labeling.
    auto rec = [&](auto&& self, int v, int used) -> void {
        if (v == n) {
            if (used < k) return;
            Partition p{k, assign};
            if (!is_connected_partition(g, p)) return;
            out.push_back(std::move(p));
            return;
        }
        if (k - used > n - v) return;  // not enough nodes left to open all blocks
        int limit = std::min(k - 1, used);
        for (int b = 0; b <= limit; b++) {
            assign[v] = b;
            self(self, v + 1, std::max(used, b + 1));
        }
        assign[v] = -1;
    };
    rec(rec, 0, 0);
}

}  // namespace

std::vector<Partition> enum_connected_partitions(const MultiGraph& g, int k,
                                                 const EnumOptions& opts) {
    g.check_valid();
    if (k < 1) throw precondition_error("partition enumeration needs k >= 1");
    if (g.n == 0) throw precondition_error("partition enumeration needs a nonempty graph");
    if (opts.allow_empty && k != 2)
        throw precondition_error("empty blocks are only supported for 2-partitions");
    if (opts.eps && k != 2) throw precondition_error("balance filtering needs k = 2");
    if (opts.weights && static_cast<int>(opts.weights->size()) != g.n)
        throw precondition_error("balance weight vector has wrong length");

    std::vector<Partition> result;
    if (k == 2 && g.n >= 2) {
        if (g.n > 62 || (uint64_t{1} << (g.n - 1)) > static_cast<uint64_t>(opts.guard))
            throw precondition_error("2-partition scan guard exceeded: 2^" +
                                     std::to_string(g.n - 1) + " states (raise opts.guard)");
        result = scan_two_partitions(g, opts);
    } else {
        double work = 1;
        for (int v = 0; v < g.n; v++) work *= k;
        if (work > static_cast<double>(opts.guard))
            throw precondition_error("partition scan guard exceeded: " + std::to_string(k) + "^" +
                                     std::to_string(g.n) + " assignments (raise opts.guard)");
        scan_k_partitions(g, k, result);
        if (k == 2 && opts.allow_empty) {
            Partition whole{2, std::vector<int>(g.n, 0)};
            if (is_connected_partition(g, whole)) result.push_back(std::move(whole));
        }
    }

    if (opts.eps) {
        std::vector<Partition> kept;
        for (auto& p : result) {
            bool has_empty = false;
            std::vector<int> sizes = p.block_sizes();
            for (int s : sizes) has_empty |= (s == 0);
            // An empty block is never balanced against a nonempty one.
            if (has_empty) continue;
            if (is_eps_balanced(g, p, *opts.eps, opts.weights)) kept.push_back(std::move(p));
        }
        result = std::move(kept);
    }

    if (opts.ordered) {
        std::vector<Partition> ordered;
        std::vector<int> perm(k);
        for (int i = 0; i < k; i++) perm[i] = i;
        for (const auto& p : result) {
            std::vector<int> pp = perm;
            std::sort(pp.begin(), pp.end());
            do {
                Partition q{k, std::vector<int>(g.n)};
                for (int v = 0; v < g.n; v++) q.assign[v] = pp[p.assign[v]];
                // Relabelings that map distinct used blocks to the same pattern
                // cannot collide because relabeling is a bijection on labels;
                // partitions with an empty block still produce duplicates, so
                // dedupe below.
                ordered.push_back(std::move(q));
            } while (std::next_permutation(pp.begin(), pp.end()));
        }
        std::sort(ordered.begin(), ordered.end());
        ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
        result = std::move(ordered);
    } else {
        std::sort(result.begin(), result.end());
        result.erase(std::unique(result.begin(), result.end()), result.end());
    }
    return result;
}

BigInt count_simple_paths(const MultiGraph& g, int s, int t) {
    g.check_valid();
    if (s < 0 || s >= g.n || t < 0 || t >= g.n || s == t)
        throw precondition_error("path counting needs distinct valid endpoints");
    const auto adj = g.adjacency();
    std::vector<char> visited(g.n, 0);
    BigInt count = 0;
    auto rec = [&](auto&& self, int cur) -> void {
        for (const auto& [nb, e] : adj[cur]) {
            if (nb == t) {
                count += 1;
                continue;
            }
            if (visited[nb] || nb == cur) continue;
            visited[nb] = 1;
            self(self, nb);
            visited[nb] = 0;
        }
    };
    visited[s] = 1;
    rec(rec, s);
    return count;
}

std::vector<EdgeSet> enum_spanning_trees(const MultiGraph& g, long long guard) {
    g.check_valid();
    if (!is_connected(g)) throw precondition_error("spanning trees need a connected graph");
    const int m = g.edge_count(), need = g.n - 1;
    // Walk all need-subsets of edges in lexicographic order.
    double combos = 1;
    for (int i = 0; i < need; i++) combos = combos * (m - i) / (i + 1);
    if (combos > static_cast<double>(guard))
        throw precondition_error("spanning tree scan guard exceeded");
    std::vector<EdgeSet> out;
    std::vector<int> pick(need);
    for (int i = 0; i < need; i++) pick[i] = i;
    if (need > m) return out;
    while (true) {
        EdgeSet t(m);
        for (int e : pick) t.set(e);
        if (components(g, &t).second == 1) out.push_back(t);
        int i = need - 1;
        while (i >= 0 && pick[i] == m - need + i) i--;
        if (i < 0) break;
        pick[i]++;
        for (int j = i + 1; j < need; j++) pick[j] = pick[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<EdgeSet> enum_dual_k_partitions(const MultiGraph& g, int k, int max_edges,
                                            bool override_guard) {
    g.check_valid();
    const int m = g.edge_count();
    if (m > max_edges && !override_guard)
        throw precondition_error("edge subset scan guard: " + std::to_string(m) +
                                 " edges exceeds limit " + std::to_string(max_edges));
    std::vector<EdgeSet> out;
    for (uint64_t mask = 0; mask < (uint64_t{1} << m); mask++) {
        EdgeSet j(m);
        for (int e = 0; e < m; e++)
            if ((mask >> e) & 1) j.set(e);
        if (is_dual_k_partition(g, j, k)) out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

BigRat rat_pow(const BigRat& base, int e) {
    BigRat r = 1;
    for (int i = 0; i < e; i++) r *= base;
    return r;
}

}  // namespace

BigRat size_weighted_mass(const std::vector<EdgeSet>& sets, const BigRat& lambda) {
    if (lambda <= 0) throw precondition_error("size weight must be positive");
    BigRat mass = 0;
    for (const auto& s : sets) mass += rat_pow(lambda, s.count());
    return mass;
}

std::vector<BigRat> size_weighted_distribution(const std::vector<EdgeSet>& sets,
                                               const BigRat& lambda) {
    if (sets.empty()) throw precondition_error("cannot normalize over an empty family");
    if (lambda <= 0) throw precondition_error("size weight must be positive");
    BigRat total = size_weighted_mass(sets, lambda);
    std::vector<BigRat> nu;
    nu.reserve(sets.size());
    for (const auto& s : sets) nu.push_back(rat_pow(lambda, s.count()) / total);
    return nu;
}

BigRat tv_distance(const std::vector<BigRat>& p, const std::vector<BigRat>& q) {
    if (p.size() != q.size()) throw precondition_error("tv distance needs a common support");
    BigRat acc = 0;
    for (size_t i = 0; i < p.size(); i++) acc += boost::multiprecision::abs(p[i] - q[i]);
    return acc / 2;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw precondition_error("tv distance needs a common support");
    double acc = 0;
    for (size_t i = 0; i < p.size(); i++) acc += std::abs(p[i] - q[i]);
    return acc / 2;
}

}  // namespace cpart
