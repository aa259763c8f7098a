#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <string>
#include <thread>
#include <vector>

#include "chambers/errors.hpp"
#include "chambers/graph.hpp"

namespace chambers {

/// A family of u-v paths together with enough data to re-check it.
/// Paths are vertex-id sequences including both endpoints.
struct PathFamily {
    int source = 0;
    int target = 0;
    std::vector<std::vector<int>> paths;
    std::string provenance = "generic";

    std::vector<int> edge_lengths() const {
        std::vector<int> out;
        out.reserve(paths.size());
        for (const auto& p : paths) out.push_back(static_cast<int>(p.size()) - 1);
        std::sort(out.begin(), out.end());
        return out;
    }
};

/// Outcome of verify_disjoint_family. A violation is a value, not an error.
struct FamilyCertificate {
    bool ok = true;
    std::string violation;      // empty when ok
    int path_a = -1, path_b = -1;
    int shared_vertex = -1;

    explicit operator bool() const { return ok; }
};

/// Checks that every path is a simple walk from source to target in G and
/// that interior vertex sets are pairwise disjoint and avoid the endpoints.
inline FamilyCertificate verify_disjoint_family(const ChamberGraph& g, const PathFamily& f) {
    FamilyCertificate cert;
    auto reject = [&](std::string why, int pa = -1, int pb = -1, int v = -1) {
        cert.ok = false;
        cert.violation = std::move(why);
        cert.path_a = pa;
        cert.path_b = pb;
        cert.shared_vertex = v;
        return cert;
    };

    std::vector<char> interior_owner_set(static_cast<size_t>(g.vertex_count()), 0);
    std::vector<int> interior_owner(static_cast<size_t>(g.vertex_count()), -1);
    for (size_t i = 0; i < f.paths.size(); ++i) {
        const auto& p = f.paths[i];
        if (p.empty()) return reject("empty path", static_cast<int>(i));
        if (p.front() != f.source)
            return reject("path does not start at source", static_cast<int>(i));
        if (p.back() != f.target)
            return reject("path does not end at target", static_cast<int>(i));
        std::vector<int> sorted = p;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            return reject("repeated vertex within a path", static_cast<int>(i));
        for (size_t k = 0; k + 1 < p.size(); ++k)
            if (!g.has_edge(p[k], p[k + 1]))
                return reject("non-edge step", static_cast<int>(i), -1, p[k]);
        for (size_t k = 1; k + 1 < p.size(); ++k) {
            int v = p[k];
            if (v == f.source || v == f.target)
                return reject("interior vertex equals an endpoint", static_cast<int>(i), -1, v);
            if (interior_owner_set[static_cast<size_t>(v)])
                return reject("shared interior vertex", interior_owner[static_cast<size_t>(v)],
                              static_cast<int>(i), v);
            interior_owner_set[static_cast<size_t>(v)] = 1;
            interior_owner[static_cast<size_t>(v)] = static_cast<int>(i);
        }
    }
    return cert;
}

struct LocalConnectivityOptions {
    bool allow_incomplete = false;
    int boundary_margin = 1;  // required clearance from ball boundary
};

struct LocalConnectivityResult {
    int value = 0;
    PathFamily family;
    std::vector<int> min_cut;   // interior vertices of a minimum u-v separator
    bool lower_bound_only = false;
};

namespace detail {

/// Unit-capacity max flow on the vertex-split digraph. Every vertex except
/// s, t is split into in/out nodes joined by a capacity-1 arc; each graph
/// edge {a,b} becomes arcs a_out->b_in and b_out->a_in. BFS augmentation in
/// vertex-id order keeps the extremal family deterministic.
class VertexSplitFlow {
public:
    VertexSplitFlow(const ChamberGraph& g, int s, int t) : g_(g), s_(s), t_(t) {
        n_ = g.vertex_count();
        // node ids: in(v) = 2v, out(v) = 2v+1
        head_.assign(static_cast<size_t>(2 * n_), {});
        for (int v = 0; v < n_; ++v)
            if (v != s_ && v != t_) add_arc(node_in(v), node_out(v), 1);
        for (const auto& e : g.edges()) {
            // Edge arcs get slack capacity so that minimum cuts consist of
            // split arcs; a direct s-t edge stays at 1 (it is one path).
            int cap_ab = (e.a == s_ && e.b == t_) || (e.a == t_ && e.b == s_) ? 1 : 2;
            add_arc(node_out(e.a), node_in(e.b), cap_ab);
            add_arc(node_out(e.b), node_in(e.a), cap_ab);
        }
    }

    int run() {
        int flow = 0;
        while (augment()) ++flow;
        return flow;
    }

    /// Decomposes the integral flow into vertex-disjoint s-t paths.
    std::vector<std::vector<int>> extract_paths() const {
        std::vector<std::vector<int>> paths;
        std::vector<char> used_arc(arcs_.size(), 0);
        while (true) {
            std::vector<int> path{s_};
            int cur = node_out(s_);
            while (path.back() != t_) {
                int next_arc = -1;
                for (int a : head_[static_cast<size_t>(cur)]) {
                    const auto& arc = arcs_[static_cast<size_t>(a)];
                    if (!arc.is_reverse && !used_arc[static_cast<size_t>(a)] && arc.flow == 1) {
                        next_arc = a;
                        break;
                    }
                }
                if (next_arc < 0) break;
                used_arc[static_cast<size_t>(next_arc)] = 1;
                int v = arcs_[static_cast<size_t>(next_arc)].to / 2;
                if (v == t_) {
                    path.push_back(t_);
                    break;
                }
                // cross the split arc in(v) -> out(v)
                bool crossed = false;
                for (int a : head_[static_cast<size_t>(node_in(v))]) {
                    const auto& arc = arcs_[static_cast<size_t>(a)];
                    if (!arc.is_reverse && !used_arc[static_cast<size_t>(a)] && arc.flow == 1 &&
                        arc.to == node_out(v)) {
                        used_arc[static_cast<size_t>(a)] = 1;
                        crossed = true;
                        break;
                    }
                }
                if (!crossed) break;
                path.push_back(v);
                cur = node_out(v);
            }
            if (path.back() != t_) break;
            paths.push_back(path);
        }
        return paths;
    }

    /// Minimum vertex cut from the final residual graph: vertices whose
    /// split arc crosses the reachable set.
    std::vector<int> extract_cut() const {
        std::vector<char> reach(head_.size(), 0);
        std::queue<int> q;
        reach[static_cast<size_t>(node_out(s_))] = 1;
        q.push(node_out(s_));
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int a : head_[static_cast<size_t>(x)]) {
                const auto& arc = arcs_[static_cast<size_t>(a)];
                int residual = arc.is_reverse ? arcs_[static_cast<size_t>(a ^ 1)].flow
                                              : arc.cap - arc.flow;
                if (residual > 0 && !reach[static_cast<size_t>(arc.to)]) {
                    reach[static_cast<size_t>(arc.to)] = 1;
                    q.push(arc.to);
                }
            }
        }
        std::vector<int> cut;
        for (int v = 0; v < n_; ++v) {
            if (v == s_ || v == t_) continue;
            if (reach[static_cast<size_t>(node_in(v))] && !reach[static_cast<size_t>(node_out(v))])
                cut.push_back(v);
        }
        return cut;
    }

private:
    struct Arc {
        int to = 0;
        int cap = 0;       // forward arcs only
        int flow = 0;
        bool is_reverse = false;
    };

    int node_in(int v) const { return 2 * v; }
    int node_out(int v) const { return 2 * v + 1; }

    void add_arc(int from, int to, int cap) {
        head_[static_cast<size_t>(from)].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back(Arc{to, cap, 0, false});
        head_[static_cast<size_t>(to)].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back(Arc{from, 0, 0, true});
    }

    bool augment() {
        std::vector<int> pred_arc(head_.size(), -1);
        std::vector<char> visited(head_.size(), 0);
        std::queue<int> q;
        int src = node_out(s_), dst = node_in(t_);
        visited[static_cast<size_t>(src)] = 1;
        q.push(src);
        while (!q.empty() && !visited[static_cast<size_t>(dst)]) {
            int x = q.front();
            q.pop();
            for (int a : head_[static_cast<size_t>(x)]) {
                const auto& arc = arcs_[static_cast<size_t>(a)];
                int residual = arc.is_reverse ? arcs_[static_cast<size_t>(a ^ 1)].flow
                                              : arc.cap - arc.flow;
                if (residual > 0 && !visited[static_cast<size_t>(arc.to)]) {
                    visited[static_cast<size_t>(arc.to)] = 1;
                    pred_arc[static_cast<size_t>(arc.to)] = a;
                    q.push(arc.to);
                }
            }
        }
        if (!visited[static_cast<size_t>(dst)]) return false;
        for (int x = dst; x != src;) {
            int a = pred_arc[static_cast<size_t>(x)];
            auto& arc = arcs_[static_cast<size_t>(a)];
            if (arc.is_reverse)
                arcs_[static_cast<size_t>(a ^ 1)].flow -= 1;
            else
                arc.flow += 1;
            x = arcs_[static_cast<size_t>(a ^ 1)].to;
        }
        return true;
    }

    const ChamberGraph& g_;
    int s_, t_, n_;
    std::vector<std::vector<int>> head_;
    std::vector<Arc> arcs_;
};

inline void require_interior(const ChamberGraph& g, int v, int margin) {
    std::vector<int> dist = g.distances_from(v);
    for (int w = 0; w < g.vertex_count(); ++w)
        if (dist[static_cast<size_t>(w)] >= 0 && dist[static_cast<size_t>(w)] <= margin &&
            g.is_boundary(w))
            fail(ErrorCode::IncompleteGraph,
                 "vertex " + std::to_string(v) + " is within the truncation margin");
}

} // namespace detail

/// Maximum number of internally disjoint u-v paths, plus an extremal family
/// and a matching minimum separator, via unit-capacity max flow.
inline LocalConnectivityResult local_connectivity(const ChamberGraph& g, int u, int v,
                                                  const LocalConnectivityOptions& opts = {}) {
    if (u == v) fail(ErrorCode::SameVertex, "local connectivity needs distinct endpoints");
    if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count())
        fail(ErrorCode::BadInput, "vertex out of range");
    LocalConnectivityResult res;
    if (!g.complete()) {
        if (!opts.allow_incomplete)
            fail(ErrorCode::IncompleteGraph,
                 "graph is a truncated ball; pass allow_incomplete to accept lower bounds");
        detail::require_interior(g, u, opts.boundary_margin);
        detail::require_interior(g, v, opts.boundary_margin);
        res.lower_bound_only = true;
    }
    detail::VertexSplitFlow flow(g, u, v);
    res.value = flow.run();
    res.family.source = u;
    res.family.target = v;
    res.family.paths = flow.extract_paths();
    res.family.provenance = "flow";
    res.min_cut = flow.extract_cut();
    return res;
}

/// Connectivity report: either an exact kappa or a lower/upper bound pair.
struct ConnectivityReport {
    int lower = 0;
    int upper = 0;
    std::string method;             // "liu" | "exact" | "local"
    bool passed = true;             // for liu: criterion satisfied
    std::optional<std::pair<int, int>> witness_pair;  // failing pair for liu
    std::vector<int> separating_set;                  // minimal cut when kappa < n-1

    int kappa() const { return lower; }
};

struct LiuOptions {
    bool allow_incomplete = false;
    int boundary_margin = 1;
    int jobs = 1;
};

/// Liu's criterion: if every distance-2 pair has k disjoint paths, the graph
/// is k-connected. On truncated balls only pairs clear of the boundary are
/// examined and the verdict is a lower-bound statement.
inline ConnectivityReport liu_check(const ChamberGraph& g, int k, const LiuOptions& opts = {}) {
    if (g.vertex_count() <= k)
        fail(ErrorCode::TooFewVertices, "need more than k vertices");
    if (!g.connected()) fail(ErrorCode::Disconnected, "graph is disconnected");
    if (!g.complete() && !opts.allow_incomplete)
        fail(ErrorCode::IncompleteGraph, "truncated ball; pass allow_incomplete");

    auto pairs = g.distance_two_pairs();
    if (!g.complete()) {
        std::vector<std::pair<int, int>> interior;
        for (auto [u, v] : pairs) {
            try {
                detail::require_interior(g, u, opts.boundary_margin);
                detail::require_interior(g, v, opts.boundary_margin);
                interior.emplace_back(u, v);
            } catch (const Error&) {
            }
        }
        pairs = std::move(interior);
    }

    LocalConnectivityOptions lopts;
    lopts.allow_incomplete = opts.allow_incomplete;
    lopts.boundary_margin = opts.boundary_margin;

    std::vector<int> values(pairs.size(), -1);
    int jobs = std::max(1, opts.jobs);
    if (jobs == 1 || pairs.size() < 2) {
        for (size_t i = 0; i < pairs.size(); ++i)
            values[i] = local_connectivity(g, pairs[i].first, pairs[i].second, lopts).value;
    } else {
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w) {
            workers.emplace_back([&, w]() {
                for (size_t i = static_cast<size_t>(w); i < pairs.size();
                     i += static_cast<size_t>(jobs))
                    values[i] = local_connectivity(g, pairs[i].first, pairs[i].second, lopts).value;
            });
        }
        for (auto& t : workers) t.join();
    }

    ConnectivityReport report;
    report.method = "liu";
    report.lower = k;
    report.upper = g.vertex_count() - 1;
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (values[i] < k) {
            report.passed = false;
            report.lower = values[i];
            report.witness_pair = pairs[i];
            break;
        }
    }
    return report;
}

/// Exact vertex connectivity. Complete graphs give n-1; otherwise the
/// minimum runs over a minimum-degree vertex and its neighbors against all
/// their non-neighbors, which meets every minimum separator.
inline ConnectivityReport vertex_connectivity(const ChamberGraph& g) {
    int n = g.vertex_count();
    if (n < 2) fail(ErrorCode::TooFewVertices, "need at least two vertices");
    if (!g.complete()) fail(ErrorCode::IncompleteGraph, "exact kappa needs a complete graph");

    ConnectivityReport report;
    report.method = "exact";

    if (!g.connected()) {
        report.lower = report.upper = 0;
        return report;
    }

    int v0 = 0;
    for (int v = 1; v < n; ++v)
        if (g.degree(v) < g.degree(v0)) v0 = v;

    bool is_clique = true;
    for (int v = 0; v < n && is_clique; ++v)
        if (g.degree(v) != n - 1) is_clique = false;
    if (is_clique) {
        report.lower = report.upper = n - 1;
        return report;
    }

    int best = n - 1;
    std::vector<int> best_cut;
    std::vector<int> candidates{v0};
    for (int w : g.neighbors(v0)) candidates.push_back(w);
    for (int c : candidates) {
        std::vector<char> adjacent(static_cast<size_t>(n), 0);
        for (int w : g.neighbors(c)) adjacent[static_cast<size_t>(w)] = 1;
        for (int w = 0; w < n; ++w) {
            if (w == c || adjacent[static_cast<size_t>(w)]) continue;
            auto local = local_connectivity(g, c, w);
            if (local.value < best) {
                best = local.value;
                best_cut = local.min_cut;
            }
        }
    }
    report.lower = report.upper = best;
    report.separating_set = best_cut;
    return report;
}

} // namespace chambers
