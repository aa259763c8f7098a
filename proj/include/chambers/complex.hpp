#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "chambers/errors.hpp"
#include "chambers/graph.hpp"

namespace chambers {

/// Pure d-dimensional simplicial complex given by its facets. Chambers are
/// canonicalized as sorted vertex tuples; chamber ids are their ranks in
/// lexicographic order.
class PureComplex {
public:
    PureComplex(int dimension, std::vector<std::vector<int>> chambers)
        : dimension_(dimension) {
        if (dimension < 0) fail(ErrorCode::BadInput, "negative dimension");
        std::set<std::vector<int>> canon;
        for (auto& c : chambers) {
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
            if (static_cast<int>(c.size()) != dimension + 1)
                fail(ErrorCode::NotPure, "facet with wrong cardinality");
            canon.insert(c);
        }
        chambers_.assign(canon.begin(), canon.end());
    }

    int dimension() const { return dimension_; }
    const std::vector<std::vector<int>>& chambers() const { return chambers_; }
    int chamber_count() const { return static_cast<int>(chambers_.size()); }

    std::vector<int> vertex_ids() const {
        std::set<int> verts;
        for (const auto& c : chambers_) verts.insert(c.begin(), c.end());
        return {verts.begin(), verts.end()};
    }

private:
    int dimension_;
    std::vector<std::vector<int>> chambers_;
};

/// Proper coloring of the vertices with colors 1..d+1 such that every
/// chamber sees each color once.
struct TypeLabeling {
    std::map<int, int> vertex_colors;
};

/// Chamber graph of a pure complex: edge iff the chambers share a wall.
/// Adjacency is found by hashing walls rather than by pairwise scans.
/// With a labeling, each edge is labeled by the color missing from the
/// shared wall, i.e. the color of the vertex the two chambers disagree on.
inline ChamberGraph chamber_graph_from_complex(const PureComplex& k,
                                               const TypeLabeling* labeling = nullptr) {
    ChamberGraph g(k.chamber_count(), "generic");
    std::map<std::vector<int>, std::vector<int>> wall_index;
    for (int id = 0; id < k.chamber_count(); ++id) {
        const auto& c = k.chambers()[static_cast<size_t>(id)];
        for (size_t drop = 0; drop < c.size(); ++drop) {
            std::vector<int> wall;
            wall.reserve(c.size() - 1);
            for (size_t j = 0; j < c.size(); ++j)
                if (j != drop) wall.push_back(c[j]);
            wall_index[wall].push_back(id);
        }
    }
    for (const auto& [wall, incident] : wall_index) {
        for (size_t i = 0; i < incident.size(); ++i) {
            for (size_t j = i + 1; j < incident.size(); ++j) {
                std::optional<int> label;
                if (labeling) {
                    const auto& ca = k.chambers()[static_cast<size_t>(incident[i])];
                    std::vector<int> diff;
                    std::set_difference(ca.begin(), ca.end(), wall.begin(), wall.end(),
                                        std::back_inserter(diff));
                    label = labeling->vertex_colors.at(diff.at(0));
                }
                if (!g.has_edge(incident[i], incident[j]))
                    g.add_edge(incident[i], incident[j], label);
            }
        }
    }
    g.finalize();
    return g;
}

/// Searches for a balanced (d+1)-coloring by backtracking with least-index
/// branching over the vertices in increasing id order. Returns nullopt when
/// the complex is not balanced.
inline std::optional<TypeLabeling> balanced_type_labeling(const PureComplex& k) {
    auto verts = k.vertex_ids();
    int colors = k.dimension() + 1;
    std::map<int, int> index_of;
    for (size_t i = 0; i < verts.size(); ++i) index_of[verts[i]] = static_cast<int>(i);

    // conflict graph: vertices sharing a chamber must differ
    std::vector<std::set<int>> conflicts(verts.size());
    for (const auto& c : k.chambers())
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = i + 1; j < c.size(); ++j) {
                conflicts[static_cast<size_t>(index_of[c[i]])].insert(index_of[c[j]]);
                conflicts[static_cast<size_t>(index_of[c[j]])].insert(index_of[c[i]]);
            }

    std::vector<int> color(verts.size(), 0);
    auto assign = [&](auto&& self, size_t i) -> bool {
        if (i == verts.size()) return true;
        for (int c = 1; c <= colors; ++c) {
            bool clash = false;
            for (int nb : conflicts[i])
                if (static_cast<size_t>(nb) < i && color[static_cast<size_t>(nb)] == c) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            color[i] = c;
            if (self(self, i + 1)) return true;
            color[i] = 0;
        }
        return false;
    };
    if (!assign(assign, 0)) return std::nullopt;

    TypeLabeling labeling;
    for (size_t i = 0; i < verts.size(); ++i) labeling.vertex_colors[verts[i]] = color[i];
    return labeling;
}

} // namespace chambers
