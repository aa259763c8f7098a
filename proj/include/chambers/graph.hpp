#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "chambers/errors.hpp"

namespace chambers {

/// Labeled edge of a chamber graph. Endpoints are stored with a < b.
struct Edge {
    int a = 0;
    int b = 0;
    std::optional<int> label;

    friend bool operator==(const Edge& x, const Edge& y) {
        return x.a == y.a && x.b == y.b && x.label == y.label;
    }
    friend bool operator<(const Edge& x, const Edge& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.label < y.label;
    }
};

/// Dual graph of a pure complex: vertices are chamber ids 0..n-1, edges join
/// adjacent chambers. Edge labels carry the wall type (generator index,
/// building type, or lattice rank, depending on provenance).
class ChamberGraph {
public:
    ChamberGraph() = default;

    explicit ChamberGraph(int vertex_count, std::string provenance = "generic")
        : adjacency_(static_cast<size_t>(vertex_count)), provenance_(std::move(provenance)) {
        if (vertex_count < 0) fail(ErrorCode::BadInput, "negative vertex count");
    }

    int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::string& provenance() const { return provenance_; }
    bool complete() const { return complete_; }

    void set_complete(bool value) { complete_ = value; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }

    /// Marks a vertex as sitting on the truncation boundary of a ball.
    void mark_boundary(int v) {
        boundary_.resize(adjacency_.size(), false);
        boundary_.at(static_cast<size_t>(v)) = true;
    }

    bool is_boundary(int v) const {
        return !boundary_.empty() && boundary_.at(static_cast<size_t>(v));
    }

    bool has_edge(int a, int b) const {
        const auto& nbrs = adjacency_.at(static_cast<size_t>(a));
        return std::find(nbrs.begin(), nbrs.end(), b) != nbrs.end();
    }

    void add_edge(int a, int b, std::optional<int> label = std::nullopt) {
        if (a == b) fail(ErrorCode::BadInput, "loop edge rejected");
        if (a < 0 || b < 0 || a >= vertex_count() || b >= vertex_count())
            fail(ErrorCode::BadInput, "edge endpoint out of range");
        if (has_edge(a, b)) fail(ErrorCode::BadInput, "duplicate edge rejected");
        if (a > b) std::swap(a, b);
        edges_.push_back(Edge{a, b, label});
        adjacency_[static_cast<size_t>(a)].push_back(b);
        adjacency_[static_cast<size_t>(b)].push_back(a);
    }

    /// Sorts adjacency lists and the edge list; call once after construction.
    void finalize() {
        for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
        std::sort(edges_.begin(), edges_.end());
    }

    const std::vector<int>& neighbors(int v) const {
        return adjacency_.at(static_cast<size_t>(v));
    }

    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    std::optional<int> edge_label(int a, int b) const {
        if (a > b) std::swap(a, b);
        for (const auto& e : edges_)
            if (e.a == a && e.b == b) return e.label;
        fail(ErrorCode::BadInput, "edge_label queried on non-edge");
    }

    bool is_regular(int k) const {
        for (int v = 0; v < vertex_count(); ++v)
            if (degree(v) != k) return false;
        return true;
    }

    /// BFS distances from src; unreachable vertices get -1.
    std::vector<int> distances_from(int src) const {
        std::vector<int> dist(adjacency_.size(), -1);
        std::queue<int> q;
        dist.at(static_cast<size_t>(src)) = 0;
        q.push(src);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : neighbors(v)) {
                if (dist[static_cast<size_t>(w)] < 0) {
                    dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
                    q.push(w);
                }
            }
        }
        return dist;
    }

    int distance(int u, int v) const { return distances_from(u).at(static_cast<size_t>(v)); }

    bool connected() const {
        if (vertex_count() == 0) return true;
        auto dist = distances_from(0);
        return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
    }

    /// All unordered pairs {u,v} with d(u,v) = 2, found by 2-step expansion.
    std::vector<std::pair<int, int>> distance_two_pairs() const {
        std::vector<std::pair<int, int>> pairs;
        std::vector<char> seen(adjacency_.size(), 0);
        for (int u = 0; u < vertex_count(); ++u) {
            std::vector<int> touched;
            for (int w : neighbors(u)) {
                seen[static_cast<size_t>(w)] = 1;
                touched.push_back(w);
            }
            seen[static_cast<size_t>(u)] = 1;
            touched.push_back(u);
            std::vector<int> found;
            for (int w : neighbors(u)) {
                for (int x : neighbors(w)) {
                    if (x > u && !seen[static_cast<size_t>(x)]) {
                        seen[static_cast<size_t>(x)] = 1;
                        touched.push_back(x);
                        found.push_back(x);
                    }
                }
            }
            for (int x : found) pairs.emplace_back(u, x);
            for (int t : touched) seen[static_cast<size_t>(t)] = 0;
        }
        std::sort(pairs.begin(), pairs.end());
        return pairs;
    }

    /// Common neighbors of u and v, ascending.
    std::vector<int> common_neighbors(int u, int v) const {
        std::vector<int> out;
        const auto& nu = neighbors(u);
        const auto& nv = neighbors(v);
        std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                              std::back_inserter(out));
        return out;
    }

private:
    std::vector<std::vector<int>> adjacency_;
    std::vector<Edge> edges_;
    std::vector<bool> boundary_;
    std::string provenance_ = "generic";
    bool complete_ = true;
};

} // namespace chambers
