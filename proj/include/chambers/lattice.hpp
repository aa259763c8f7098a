#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chambers/connectivity.hpp"
#include "chambers/errors.hpp"
#include "chambers/fp_linalg.hpp"
#include "chambers/graph.hpp"

namespace chambers {

/// Finite graded lattice with designated bottom (id 0) and top (id N-1).
/// Construction precomputes order, covers and join/meet tables; geometric
/// axioms are checked separately by validate_geometric.
class GeometricLattice {
public:
    GeometricLattice(std::vector<int> ranks, const std::vector<std::pair<int, int>>& covers,
                     std::string description = "custom")
        : ranks_(std::move(ranks)), description_(std::move(description)) {
        int n = size();
        if (n < 2) fail(ErrorCode::BadInput, "lattice needs at least bottom and top");
        leq_.assign(static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(n), 0));
        for (int i = 0; i < n; ++i) leq_[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
        up_covers_.assign(static_cast<size_t>(n), {});
        down_covers_.assign(static_cast<size_t>(n), {});
        for (auto [a, b] : covers) {
            if (a < 0 || b < 0 || a >= n || b >= n)
                fail(ErrorCode::BadInput, "cover endpoint out of range");
            up_covers_[static_cast<size_t>(a)].push_back(b);
            down_covers_[static_cast<size_t>(b)].push_back(a);
            leq_[static_cast<size_t>(a)][static_cast<size_t>(b)] = 1;
        }
        for (auto& v : up_covers_) std::sort(v.begin(), v.end());
        for (auto& v : down_covers_) std::sort(v.begin(), v.end());
        // transitive closure in rank order
        std::vector<int> order(static_cast<size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return ranks_[static_cast<size_t>(a)] < ranks_[static_cast<size_t>(b)];
        });
        for (int b : order)
            for (int a : down_covers_[static_cast<size_t>(b)])
                for (int x = 0; x < n; ++x)
                    if (leq_[static_cast<size_t>(x)][static_cast<size_t>(a)])
                        leq_[static_cast<size_t>(x)][static_cast<size_t>(b)] = 1;
        compute_tables();
    }

    int size() const { return static_cast<int>(ranks_.size()); }
    int bottom() const { return 0; }
    int top() const { return size() - 1; }
    int rank(int x) const { return ranks_.at(static_cast<size_t>(x)); }
    int height() const { return rank(top()); }
    const std::string& description() const { return description_; }

    bool leq(int x, int y) const { return leq_[static_cast<size_t>(x)][static_cast<size_t>(y)]; }
    bool lt(int x, int y) const { return x != y && leq(x, y); }
    bool covers(int y, int x) const {  // y covers x
        const auto& ups = up_covers_[static_cast<size_t>(x)];
        return std::binary_search(ups.begin(), ups.end(), y);
    }
    const std::vector<int>& up_covers(int x) const { return up_covers_[static_cast<size_t>(x)]; }
    const std::vector<int>& down_covers(int x) const {
        return down_covers_[static_cast<size_t>(x)];
    }

    /// Join/meet; -1 when the pair has no unique least upper / greatest
    /// lower bound (possible for invalid inputs; validate_geometric reports).
    int join(int x, int y) const { return join_[static_cast<size_t>(x)][static_cast<size_t>(y)]; }
    int meet(int x, int y) const { return meet_[static_cast<size_t>(x)][static_cast<size_t>(y)]; }

    std::vector<int> atoms() const {
        std::vector<int> out;
        for (int x = 0; x < size(); ++x)
            if (rank(x) == 1) out.push_back(x);
        return out;
    }

    /// Open interval (a, b), ascending ids.
    std::vector<int> open_interval(int a, int b) const {
        std::vector<int> out;
        for (int z = 0; z < size(); ++z)
            if (lt(a, z) && lt(z, b)) out.push_back(z);
        return out;
    }

private:
    void compute_tables() {
        int n = size();
        join_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
        meet_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
        for (int x = 0; x < n; ++x) {
            for (int y = x; y < n; ++y) {
                // join: unique minimal common upper bound (the bound set is
                // up-closed, so a unique minimal element is the least one)
                std::vector<int> uppers, minima;
                for (int z = 0; z < n; ++z)
                    if (leq(x, z) && leq(y, z)) uppers.push_back(z);
                for (int z : uppers) {
                    bool minimal = true;
                    for (int w : uppers)
                        if (w != z && leq(w, z)) minimal = false;
                    if (minimal) minima.push_back(z);
                }
                int j = minima.size() == 1 ? minima.front() : -1;
                join_[static_cast<size_t>(x)][static_cast<size_t>(y)] =
                    join_[static_cast<size_t>(y)][static_cast<size_t>(x)] = j;

                std::vector<int> lowers, maxima;
                for (int z = 0; z < n; ++z)
                    if (leq(z, x) && leq(z, y)) lowers.push_back(z);
                for (int z : lowers) {
                    bool maximal = true;
                    for (int w : lowers)
                        if (w != z && leq(z, w)) maximal = false;
                    if (maximal) maxima.push_back(z);
                }
                int m = maxima.size() == 1 ? maxima.front() : -1;
                meet_[static_cast<size_t>(x)][static_cast<size_t>(y)] =
                    meet_[static_cast<size_t>(y)][static_cast<size_t>(x)] = m;
            }
        }
    }

    std::vector<int> ranks_;
    std::vector<std::vector<char>> leq_;
    std::vector<std::vector<int>> up_covers_, down_covers_;
    std::vector<std::vector<int>> join_, meet_;
    std::string description_;
};

// --- constructors ------------------------------------------------------------

namespace detail {

template <typename Key>
GeometricLattice lattice_from_elements(std::vector<std::pair<int, Key>> elements,
                                       bool (*below)(const Key&, const Key&),
                                       const std::string& description, long long cap) {
    if (static_cast<long long>(elements.size()) > cap)
        fail(ErrorCode::ResourceLimit, "lattice element count exceeds the cap");
    std::sort(elements.begin(), elements.end());
    int n = static_cast<int>(elements.size());
    std::vector<int> ranks;
    ranks.reserve(elements.size());
    for (const auto& [r, k] : elements) ranks.push_back(r);
    std::vector<std::pair<int, int>> covers;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (ranks[static_cast<size_t>(b)] == ranks[static_cast<size_t>(a)] + 1 &&
                below(elements[static_cast<size_t>(a)].second,
                      elements[static_cast<size_t>(b)].second))
                covers.emplace_back(a, b);
    return GeometricLattice(std::move(ranks), covers, description);
}

inline bool subset_below(const unsigned& a, const unsigned& b) { return (a & ~b) == 0; }

inline bool partition_below(const std::vector<int>& fine, const std::vector<int>& coarse) {
    // fine <= coarse in refinement order
    std::map<int, int> image;
    for (size_t i = 0; i < fine.size(); ++i) {
        auto it = image.find(fine[i]);
        if (it == image.end())
            image[fine[i]] = coarse[i];
        else if (it->second != coarse[i])
            return false;
    }
    return true;
}

} // namespace detail

inline GeometricLattice boolean_lattice(int n, long long cap = 100000) {
    if (n < 1 || n > 20) fail(ErrorCode::BadInput, "boolean lattice size out of range");
    std::vector<std::pair<int, unsigned>> elements;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
        elements.emplace_back(__builtin_popcount(mask), mask);
    return detail::lattice_from_elements<unsigned>(std::move(elements), detail::subset_below,
                                                   "boolean(" + std::to_string(n) + ")", cap);
}

/// Partition lattice of [n], ordered by refinement; rank = n - #blocks.
/// Partitions are canonical block-id sequences (first occurrence order).
inline GeometricLattice partition_lattice(int n, long long cap = 100000) {
    if (n < 1 || n > 9) fail(ErrorCode::BadInput, "partition lattice size out of range");
    std::vector<std::pair<int, std::vector<int>>> elements;
    std::vector<int> blocks(static_cast<size_t>(n), 0);
    auto gen = [&](auto&& self, int i, int used) -> void {
        if (i == n) {
            elements.emplace_back(n - used, blocks);
            return;
        }
        for (int b = 0; b <= used; ++b) {
            blocks[static_cast<size_t>(i)] = b;
            self(self, i + 1, b == used ? used + 1 : used);
        }
    };
    gen(gen, 0, 0);
    return detail::lattice_from_elements<std::vector<int>>(
        std::move(elements), detail::partition_below, "partition(" + std::to_string(n) + ")",
        cap);
}

/// Lattice of all subspaces of F_p^n ordered by inclusion.
inline GeometricLattice subspace_lattice(int n, int p, long long cap = 100000) {
    PrimeField f(p);
    std::vector<std::pair<int, std::vector<FpVector>>> elements;
    for (int k = 0; k <= n; ++k)
        for (const auto& s : enumerate_subspaces(f, n, k)) elements.emplace_back(k, s.basis());
    if (static_cast<long long>(elements.size()) > cap)
        fail(ErrorCode::ResourceLimit, "subspace lattice exceeds the cap");
    std::sort(elements.begin(), elements.end());
    int count = static_cast<int>(elements.size());
    std::vector<int> ranks;
    for (const auto& [r, k] : elements) ranks.push_back(r);
    std::vector<std::pair<int, int>> covers;
    std::vector<Subspace> spaces;
    for (const auto& [r, basis] : elements) spaces.push_back(Subspace(n, f, basis));
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b)
            if (ranks[static_cast<size_t>(b)] == ranks[static_cast<size_t>(a)] + 1 &&
                spaces[static_cast<size_t>(b)].contains_subspace(f, spaces[static_cast<size_t>(a)]))
                covers.emplace_back(a, b);
    return GeometricLattice(std::move(ranks), covers,
                            "subspace(" + std::to_string(n) + "," + std::to_string(p) + ")");
}

/// Lattice of flats of the column matroid of a matrix over F_p.
inline GeometricLattice flats_lattice(const PrimeField& f, const FpMatrix& columns_as_rows,
                                      long long cap = 100000) {
    // input rows are the ground-set vectors (columns of the paper matrix)
    int m = static_cast<int>(columns_as_rows.size());
    if (m == 0) fail(ErrorCode::BadInput, "empty ground set");
    int n = static_cast<int>(columns_as_rows[0].size());

    auto span_of = [&](const std::set<int>& s) {
        FpMatrix rows;
        for (int j : s) rows.push_back(columns_as_rows[static_cast<size_t>(j)]);
        return Subspace(n, f, rows);
    };
    auto closure = [&](std::set<int> s) {
        Subspace sp = span_of(s);
        std::set<int> out;
        for (int j = 0; j < m; ++j)
            if (sp.contains(f, columns_as_rows[static_cast<size_t>(j)])) out.insert(j);
        return out;
    };

    std::set<std::set<int>> flats;
    std::vector<std::set<int>> frontier{closure({})};
    flats.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<std::set<int>> next;
        for (const auto& flat : frontier) {
            for (int j = 0; j < m; ++j) {
                if (flat.count(j)) continue;
                std::set<int> bigger = flat;
                bigger.insert(j);
                auto closed = closure(bigger);
                if (flats.insert(closed).second) next.push_back(closed);
                if (static_cast<long long>(flats.size()) > cap)
                    fail(ErrorCode::ResourceLimit, "flat count exceeds the cap");
            }
        }
        frontier = std::move(next);
    }

    std::vector<std::pair<int, std::vector<int>>> elements;
    for (const auto& flat : flats) {
        std::set<int> s = flat;
        elements.emplace_back(span_of(s).dim(), std::vector<int>(flat.begin(), flat.end()));
    }
    std::sort(elements.begin(), elements.end());
    int count = static_cast<int>(elements.size());
    std::vector<int> ranks;
    for (const auto& [r, k] : elements) ranks.push_back(r);
    std::vector<std::pair<int, int>> covers;
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b)
            if (ranks[static_cast<size_t>(b)] == ranks[static_cast<size_t>(a)] + 1 &&
                std::includes(elements[static_cast<size_t>(b)].second.begin(),
                              elements[static_cast<size_t>(b)].second.end(),
                              elements[static_cast<size_t>(a)].second.begin(),
                              elements[static_cast<size_t>(a)].second.end()))
                covers.emplace_back(a, b);
    return GeometricLattice(std::move(ranks), covers, "flats");
}

// --- validation ---------------------------------------------------------------

struct ValidationReport {
    bool bounded = true;
    bool graded = true;
    bool lattice = true;
    bool semimodular = true;
    bool atomistic = true;
    std::string first_counterexample;

    bool ok() const { return bounded && graded && lattice && semimodular && atomistic; }
};

/// Exhaustive check of the geometric-lattice axioms at desk scale.
inline ValidationReport validate_geometric(const GeometricLattice& p) {
    ValidationReport rep;
    int n = p.size();
    auto note = [&](const std::string& s) {
        if (rep.first_counterexample.empty()) rep.first_counterexample = s;
    };

    for (int x = 0; x < n; ++x) {
        if (!p.leq(p.bottom(), x) || !p.leq(x, p.top())) {
            rep.bounded = false;
            note("element " + std::to_string(x) + " not between bottom and top");
        }
    }
    if (p.rank(p.bottom()) != 0) {
        rep.graded = false;
        note("bottom has nonzero rank");
    }
    for (int x = 0; x < n; ++x) {
        for (int y : p.up_covers(x))
            if (p.rank(y) != p.rank(x) + 1) {
                rep.graded = false;
                note("cover " + std::to_string(x) + " < " + std::to_string(y) +
                     " jumps rank by " + std::to_string(p.rank(y) - p.rank(x)));
            }
        if (x != p.top() && p.up_covers(x).empty()) {
            rep.graded = false;
            note("element " + std::to_string(x) + " has no upper cover");
        }
        if (x != p.bottom() && p.down_covers(x).empty()) {
            rep.graded = false;
            note("element " + std::to_string(x) + " has no lower cover");
        }
    }
    for (int x = 0; x < n && rep.lattice; ++x)
        for (int y = 0; y < n; ++y)
            if (p.join(x, y) < 0 || p.meet(x, y) < 0) {
                rep.lattice = false;
                note("pair (" + std::to_string(x) + "," + std::to_string(y) +
                     ") lacks a unique join or meet");
                break;
            }
    if (rep.lattice && rep.graded) {
        for (int a : p.atoms())
            for (int x = 0; x < n; ++x) {
                if (p.leq(a, x)) continue;
                int j = p.join(x, a);
                if (j < 0 || !p.covers(j, x)) {
                    rep.semimodular = false;
                    note("x = " + std::to_string(x) + ", atom " + std::to_string(a) +
                         ": x v a does not cover x");
                }
            }
        for (int x = 0; x < n; ++x) {
            int acc = p.bottom();
            for (int a : p.atoms())
                if (p.leq(a, x)) {
                    acc = p.join(acc, a);
                    if (acc < 0) break;
                }
            if (acc != x) {
                rep.atomistic = false;
                note("element " + std::to_string(x) + " is not a join of atoms");
            }
        }
    }
    return rep;
}

// --- local width --------------------------------------------------------------

struct LocalWidthReport {
    int q = 0;
    int witness = -1;   // rank-2 element attaining the minimum
    int full_min = 0;   // minimum of |(x,y)| over all length-2 intervals
};

/// q(P): every open length-2 interval has at least q+1 elements. The rank-2
/// computation and the full sweep must agree (the reduction lemma).
inline LocalWidthReport q_of_lattice(const GeometricLattice& p) {
    if (p.height() < 2) fail(ErrorCode::RankTooSmall, "lattice rank must be >= 2");
    LocalWidthReport rep;
    int min_rank2 = -1;
    for (int x = 0; x < p.size(); ++x) {
        if (p.rank(x) != 2) continue;
        int count = static_cast<int>(p.open_interval(p.bottom(), x).size());
        if (min_rank2 < 0 || count < min_rank2) {
            min_rank2 = count;
            rep.witness = x;
        }
    }
    if (min_rank2 < 0) fail(ErrorCode::RankTooSmall, "no rank-2 elements");
    int full = -1;
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y)
            if (p.lt(x, y) && p.rank(y) == p.rank(x) + 2) {
                int count = static_cast<int>(p.open_interval(x, y).size());
                if (full < 0 || count < full) full = count;
            }
    rep.full_min = full;
    rep.q = min_rank2 - 1;
    if (full != min_rank2)
        fail(ErrorCode::NonGeometric,
             "length-2 interval minimum disagrees with the rank-2 computation");
    return rep;
}

// --- maximal chains and their chamber graph -----------------------------------

/// Chain through the proper part: element ids at ranks 1..n-1.
using Chain = std::vector<int>;

/// Chamber graph of the order complex of the proper part, plus the chain
/// table needed to map between chains and vertex ids.
struct ChainComplex {
    ChamberGraph graph;
    std::vector<Chain> chains;
    std::map<Chain, int> id_of;

    int id(const Chain& c) const {
        auto it = id_of.find(c);
        if (it == id_of.end()) fail(ErrorCode::BadInput, "not a maximal chain");
        return it->second;
    }
};

inline ChainComplex lattice_chamber_graph(const GeometricLattice& p,
                                          long long chain_cap = 2000000) {
    int n = p.height();
    ChainComplex cc;
    Chain cur;
    auto extend = [&](auto&& self, int elem, int r) -> void {
        if (r == n) {
            if (!p.covers(p.top(), elem)) return;
            cc.chains.push_back(cur);
            if (static_cast<long long>(cc.chains.size()) > chain_cap)
                fail(ErrorCode::ResourceLimit, "chain count exceeds the cap");
            return;
        }
        for (int nxt : p.up_covers(elem)) {
            if (p.rank(nxt) != r) continue;
            cur.push_back(nxt);
            self(self, nxt, r + 1);
            cur.pop_back();
        }
    };
    extend(extend, p.bottom(), 1);
    std::sort(cc.chains.begin(), cc.chains.end());
    for (size_t i = 0; i < cc.chains.size(); ++i)
        cc.id_of[cc.chains[i]] = static_cast<int>(i);

    cc.graph = ChamberGraph(static_cast<int>(cc.chains.size()), "lattice");
    // wall index keyed by the chain with one rank removed
    for (int r = 1; r <= n - 1; ++r) {
        std::map<Chain, std::vector<int>> wall;
        for (size_t i = 0; i < cc.chains.size(); ++i) {
            Chain key = cc.chains[i];
            key.erase(key.begin() + (r - 1));
            wall[key].push_back(static_cast<int>(i));
        }
        for (const auto& [key, incident] : wall)
            for (size_t i = 0; i < incident.size(); ++i)
                for (size_t j = i + 1; j < incident.size(); ++j)
                    cc.graph.add_edge(incident[i], incident[j], r);
    }
    cc.graph.finalize();
    return cc;
}

// --- distance-2 witness --------------------------------------------------------

struct DistanceTwoWitness {
    int i1 = 0, i2 = 0;   // differing ranks, i1 < i2
    Chain common;          // the common-neighbor chain B
    bool swapped = false;  // true when C and D exchanged roles
};

namespace detail {

inline int chain_elem(const GeometricLattice& p, const Chain& c, int k) {
    if (k <= 0) return p.bottom();
    if (k > static_cast<int>(c.size())) return p.top();
    return c[static_cast<size_t>(k - 1)];
}

inline Chain chain_subst(const Chain& c, int k, int value) {
    Chain out = c;
    out[static_cast<size_t>(k - 1)] = value;
    return out;
}

inline bool chain_valid(const GeometricLattice& p, const Chain& c) {
    for (int k = 1; k <= static_cast<int>(c.size()) + 1; ++k)
        if (!p.covers(chain_elem(p, c, k), chain_elem(p, c, k - 1))) return false;
    return true;
}

} // namespace detail

/// Orientation-normalized witness for a distance-2 chain pair: B is adjacent
/// to C across rank i1 and to D across rank i2; when only the opposite
/// replacement is a valid chain the roles of C and D are exchanged.
inline DistanceTwoWitness distance2_witness(const GeometricLattice& p, const Chain& c,
                                            const Chain& d) {
    if (c.size() != d.size() || static_cast<int>(c.size()) != p.height() - 1)
        fail(ErrorCode::BadInput, "chains have the wrong length");
    if (c == d) fail(ErrorCode::NotDistanceTwo, "chains coincide");
    if (!detail::chain_valid(p, c) || !detail::chain_valid(p, d))
        fail(ErrorCode::BadInput, "input is not a maximal chain");

    std::vector<int> diffs;
    for (size_t k = 0; k < c.size(); ++k)
        if (c[k] != d[k]) diffs.push_back(static_cast<int>(k) + 1);
    if (diffs.size() == 1) fail(ErrorCode::NotDistanceTwo, "chains are adjacent");
    if (diffs.size() != 2) fail(ErrorCode::NotDistanceTwo, "chains differ at too many ranks");

    DistanceTwoWitness w;
    w.i1 = diffs[0];
    w.i2 = diffs[1];
    Chain b1 = detail::chain_subst(c, w.i1, d[static_cast<size_t>(w.i1 - 1)]);
    if (detail::chain_valid(p, b1)) {
        w.common = b1;
        w.swapped = false;
        return w;
    }
    Chain b2 = detail::chain_subst(d, w.i1, c[static_cast<size_t>(w.i1 - 1)]);
    if (detail::chain_valid(p, b2)) {
        w.common = b2;
        w.swapped = true;
        return w;
    }
    fail(ErrorCode::NotDistanceTwo, "no common neighbor exists");
}

// --- Theorem 5.3 construction ---------------------------------------------------

/// Disjoint path family between two maximal chains, grouped by the rank of
/// the first element changed.
struct LatticePathFamily {
    Chain source, target;
    int i1 = 0, i2 = 0;
    bool swapped = false;
    struct Group {
        int rank = 0;
        std::vector<std::vector<Chain>> paths;
    };
    std::vector<Group> groups;

    std::vector<std::vector<Chain>> all_paths() const {
        std::vector<std::vector<Chain>> out;
        for (const auto& g : groups) out.insert(out.end(), g.paths.begin(), g.paths.end());
        return out;
    }

    int path_count() const {
        int c = 0;
        for (const auto& g : groups) c += static_cast<int>(g.paths.size());
        return c;
    }
};

namespace detail {

/// Construction context in the orientation-normalized frame: C and D differ
/// at ranks i1 < i2 and B = C[i1 := y_i1] is a valid chain, so y_i1 is
/// covered by x_i2 whenever i2 = i1 + 1.
struct Theorem53Context {
    const GeometricLattice& p;
    Chain c, d;
    int i1, i2, q, n;

    int x(int k) const { return chain_elem(p, c, k); }
    int y(int k) const { return chain_elem(p, d, k); }

    /// First `count` elements of the open interval (a, b) outside `excluded`.
    std::vector<int> pick(int a, int b, std::vector<int> excluded, int count) const {
        std::vector<int> out;
        if (count <= 0) return out;
        for (int z : p.open_interval(a, b)) {
            if (std::find(excluded.begin(), excluded.end(), z) != excluded.end()) continue;
            out.push_back(z);
            if (static_cast<int>(out.size()) == count) return out;
        }
        fail(ErrorCode::InternalOverlap, "interval too small for the required choices");
    }

    int join_checked(int a, int b, int expected_rank) const {
        int j = p.join(a, b);
        if (j < 0 || p.rank(j) != expected_rank)
            fail(ErrorCode::InternalOverlap, "join has unexpected rank");
        return j;
    }

    int meet_checked(int a, int b, int expected_rank) const {
        int m = p.meet(a, b);
        if (m < 0 || p.rank(m) != expected_rank)
            fail(ErrorCode::InternalOverlap, "meet has unexpected rank");
        return m;
    }

    /// Path through the listed (rank, element) substitutions applied to C in
    /// order; the final substitutions must land on D.
    std::vector<Chain> walk(const std::vector<std::pair<int, int>>& steps) const {
        std::vector<Chain> path{c};
        Chain cur = c;
        for (auto [rk, val] : steps) {
            cur = chain_subst(cur, rk, val);
            if (!chain_valid(p, cur))
                fail(ErrorCode::InternalOverlap, "template produced an invalid chain");
            if (cur == path.back())
                fail(ErrorCode::InternalOverlap, "template produced a degenerate step");
            path.push_back(cur);
        }
        if (path.back() != d)
            fail(ErrorCode::InternalOverlap, "template did not terminate at D");
        return path;
    }

    // Case 1: r at distance >= 2 from both i1 and i2.
    std::vector<std::vector<Chain>> far_case(int r) const {
        std::vector<std::vector<Chain>> paths;
        for (int z : pick(x(r - 1), x(r + 1), {x(r)}, q))
            paths.push_back(
                walk({{r, z}, {i1, y(i1)}, {i2, y(i2)}, {r, x(r)}}));
        return paths;
    }

    // Case 2 shape (r adjacent-below a differing rank j, other rank j2 far):
    // lift over the join of the two rank-r intermediates.
    std::vector<std::vector<Chain>> below_case(int r, int j, int j2) const {
        auto zs = pick(x(r - 1), x(j), {x(r)}, q);
        auto ws = pick(x(r - 1), y(j), {x(r)}, q);
        std::vector<std::vector<Chain>> paths;
        for (int k = 0; k < q; ++k) {
            int z = zs[static_cast<size_t>(k)], w = ws[static_cast<size_t>(k)];
            int m = join_checked(z, w, p.rank(x(j)));
            paths.push_back(
                walk({{r, z}, {j, m}, {r, w}, {j, y(j)}, {j2, y(j2)}, {r, x(r)}}));
        }
        return paths;
    }

    // Case 7-style duals (r adjacent-above a differing rank j): meet instead
    // of join.
    std::vector<std::vector<Chain>> above_i1_case(int r) const {
        auto zs = pick(x(i1), x(r + 1), {x(r)}, q);
        auto ws = pick(y(i1), x(r + 1), {x(r)}, q);
        std::vector<std::vector<Chain>> paths;
        for (int k = 0; k < q; ++k) {
            int z = zs[static_cast<size_t>(k)], w = ws[static_cast<size_t>(k)];
            int m = meet_checked(z, w, p.rank(x(i1)));
            paths.push_back(
                walk({{r, z}, {i1, m}, {r, w}, {i1, y(i1)}, {i2, y(i2)}, {r, x(r)}}));
        }
        return paths;
    }

    // Case 9: r = i2 + 1; switch i1 early, then route the i2 intermediates
    // through the meet.
    std::vector<std::vector<Chain>> above_i2_case(int r) const {
        auto zs = pick(x(i2), x(r + 1), {x(r)}, q);
        auto ws = pick(y(i2), x(r + 1), {x(r)}, q);
        std::vector<std::vector<Chain>> paths;
        for (int k = 0; k < q; ++k) {
            int z = zs[static_cast<size_t>(k)], w = ws[static_cast<size_t>(k)];
            int m = meet_checked(z, w, p.rank(x(i2)));
            paths.push_back(walk(
                {{r, z}, {i1, y(i1)}, {i2, m}, {r, w}, {i2, y(i2)}, {r, x(r)}}));
        }
        return paths;
    }

    // Case 3 / Case 10: r equals a differing rank, the other rank is far.
    std::vector<std::vector<Chain>> equal_far_case(int r, int other) const {
        std::vector<std::vector<Chain>> paths;
        paths.push_back(walk({{r, y(r)}, {other, y(other)}}));
        for (int z : pick(x(r - 1), x(r + 1), {x(r), y(r)}, q - 1))
            paths.push_back(walk({{r, z}, {other, y(other)}, {r, y(r)}}));
        return paths;
    }

    // Case 4: r = i1 = i2 - 1. The two-step path through B plus q-1 paths
    // climbing over fresh rank-i2 elements above y_r.
    std::vector<std::vector<Chain>> equal_below_case(int r) const {
        std::vector<std::vector<Chain>> paths;
        paths.push_back(walk({{r, y(r)}, {i2, y(i2)}}));
        auto ms = pick(y(r), x(i2 + 1), {x(i2), y(i2)}, q - 1);
        auto zs = pick(x(r - 1), x(i2), {x(r), y(r)}, q - 1);
        std::vector<int> used_v;
        for (int k = 0; k + 1 < q; ++k) {
            int m = ms[static_cast<size_t>(k)];
            std::vector<int> excluded = used_v;
            excluded.push_back(y(r));
            excluded.push_back(x(r));
            int v = pick(x(r - 1), m, excluded, 1)[0];
            used_v.push_back(v);
            int z = zs[static_cast<size_t>(k)];
            int lift = join_checked(z, v, p.rank(x(i2)));
            paths.push_back(walk(
                {{r, z}, {i2, lift}, {r, v}, {i2, m}, {r, y(r)}, {i2, y(i2)}}));
        }
        return paths;
    }

    // Case 6: r = i2 = i1 + 1. Under the witness orientation x_i1 is never
    // below y_i2, so the four-step template applies to all q paths.
    std::vector<std::vector<Chain>> equal_above_case(int r) const {
        if (p.lt(x(i1), y(i2)))
            fail(ErrorCode::InternalOverlap,
                 "witness orientation violated: x_i1 below y_i2");
        std::vector<std::vector<Chain>> paths;
        for (int w : pick(x(i1 - 1), y(i2), {x(i1), y(i1)}, q)) {
            int lift = join_checked(x(i1), w, p.rank(x(i2)));
            paths.push_back(walk({{r, lift}, {i1, w}, {r, y(i2)}, {i1, y(i1)}}));
        }
        return paths;
    }

    // Case 5: i1 + 1 = r = i2 - 1. Tags z (above x_i1), t = y_i1 v u and,
    // when t is not below y_i2, a fresh w above y_i1 with b = t v w.
    std::vector<std::vector<Chain>> between_case(int r) const {
        auto zs = pick(x(i1), x(i2), {x(r)}, q);
        std::vector<int> used_t, used_w;
        std::vector<std::vector<Chain>> paths;
        for (int z : zs) {
            int u = -1, t = -1;
            for (int cand : p.open_interval(x(i1 - 1), z)) {
                if (cand == x(i1)) continue;
                int tt = join_checked(y(i1), cand, p.rank(x(r)));
                if (std::find(used_t.begin(), used_t.end(), tt) == used_t.end()) {
                    u = cand;
                    t = tt;
                    break;
                }
            }
            if (u < 0) fail(ErrorCode::InternalOverlap, "no fresh i1 intermediate");
            used_t.push_back(t);
            if (p.lt(t, y(i2))) {
                paths.push_back(walk(
                    {{r, z}, {i1, u}, {r, t}, {i1, y(i1)}, {i2, y(i2)}, {r, x(r)}}));
            } else {
                int w = -1;
                for (int cand : p.open_interval(y(i1), y(i2))) {
                    if (cand == x(r)) continue;
                    if (std::find(used_w.begin(), used_w.end(), cand) == used_w.end()) {
                        w = cand;
                        break;
                    }
                }
                if (w < 0) fail(ErrorCode::InternalOverlap, "no fresh rank-r tag above y_i1");
                used_w.push_back(w);
                int b = join_checked(t, w, p.rank(x(i2)));
                paths.push_back(walk({{r, z},
                                      {i1, u},
                                      {r, t},
                                      {i1, y(i1)},
                                      {i2, b},
                                      {r, w},
                                      {i2, y(i2)},
                                      {r, x(r)}}));
            }
        }
        return paths;
    }

    std::vector<std::vector<Chain>> group_for_rank(int r) const {
        bool far1 = std::abs(r - i1) >= 2;
        bool far2 = std::abs(r - i2) >= 2;
        if (far1 && far2) return far_case(r);
        if (r == i1 - 1) return below_case(r, i1, i2);
        if (r == i1 && i2 > i1 + 1) return equal_far_case(i1, i2);
        if (r == i1 && i2 == i1 + 1) return equal_below_case(r);
        if (r == i1 + 1 && r == i2 - 1) return between_case(r);
        if (r == i2 && i2 == i1 + 1) return equal_above_case(r);
        if (r == i1 + 1 && r < i2 - 1) return above_i1_case(r);
        if (r == i2 - 1 && r > i1 + 1) return below_case(r, i2, i1);
        if (r == i2 + 1) return above_i2_case(r);
        if (r == i2 && i2 > i1 + 1) return equal_far_case(i2, i1);
        fail(ErrorCode::InternalOverlap, "rank dispatch fell through");
    }
};

/// Structural certification at chain level: valid simple paths, pairwise
/// disjoint interiors, and interiors that differ from C only at the ranks
/// {group rank, i1, i2}.
inline void certify_chain_family(const GeometricLattice& p, const LatticePathFamily& fam) {
    std::set<Chain> interiors;
    for (const auto& group : fam.groups) {
        for (const auto& path : group.paths) {
            if (path.empty() || path.front() != fam.source || path.back() != fam.target)
                fail(ErrorCode::InternalOverlap, "path endpoints are wrong");
            std::set<Chain> on_path;
            for (size_t k = 0; k < path.size(); ++k) {
                if (!chain_valid(p, path[k]))
                    fail(ErrorCode::InternalOverlap, "invalid chain on a path");
                if (!on_path.insert(path[k]).second)
                    fail(ErrorCode::InternalOverlap, "path revisits a chain");
                if (k > 0) {
                    int diff = 0;
                    for (size_t t = 0; t < path[k].size(); ++t)
                        if (path[k][t] != path[k - 1][t]) ++diff;
                    if (diff != 1)
                        fail(ErrorCode::InternalOverlap, "step changes more than one rank");
                }
            }
            for (size_t k = 1; k + 1 < path.size(); ++k) {
                if (path[k] == fam.source || path[k] == fam.target)
                    fail(ErrorCode::InternalOverlap, "interior equals an endpoint");
                if (!interiors.insert(path[k]).second)
                    fail(ErrorCode::InternalOverlap, "families share an interior chain");
                for (size_t t = 0; t < path[k].size(); ++t) {
                    int rk = static_cast<int>(t) + 1;
                    if (path[k][t] != fam.source[t] && rk != group.rank && rk != fam.i1 &&
                        rk != fam.i2)
                        fail(ErrorCode::InternalOverlap,
                             "interior changes a rank outside {r, i1, i2}");
                }
            }
        }
    }
}

} // namespace detail

/// Theorem 5.3: q(P) * (n-1) internally disjoint C-D paths for a distance-2
/// pair of maximal chains, q paths per starting rank. The family is
/// certified structurally before being returned.
inline LatticePathFamily lattice_disjoint_paths(const GeometricLattice& p, const Chain& c,
                                                const Chain& d) {
    auto witness = distance2_witness(p, c, d);
    int q = q_of_lattice(p).q;
    int n = p.height();

    detail::Theorem53Context ctx{p,
                                 witness.swapped ? d : c,
                                 witness.swapped ? c : d,
                                 witness.i1,
                                 witness.i2,
                                 q,
                                 n};

    LatticePathFamily fam;
    fam.source = c;
    fam.target = d;
    fam.i1 = witness.i1;
    fam.i2 = witness.i2;
    fam.swapped = witness.swapped;
    for (int r = 1; r <= n - 1; ++r) {
        LatticePathFamily::Group group;
        group.rank = r;
        group.paths = ctx.group_for_rank(r);
        if (static_cast<int>(group.paths.size()) != q)
            fail(ErrorCode::InternalOverlap, "group does not contain exactly q paths");
        if (witness.swapped)
            for (auto& path : group.paths) std::reverse(path.begin(), path.end());
        fam.groups.push_back(std::move(group));
    }
    detail::certify_chain_family(p, fam);
    return fam;
}

/// Chain-level family mapped onto chamber-graph vertex ids.
inline PathFamily to_path_family(const ChainComplex& cc, const LatticePathFamily& fam) {
    PathFamily out;
    out.source = cc.id(fam.source);
    out.target = cc.id(fam.target);
    out.provenance = "lattice";
    for (const auto& group : fam.groups)
        for (const auto& path : group.paths) {
            std::vector<int> ids;
            ids.reserve(path.size());
            for (const auto& chain : path) ids.push_back(cc.id(chain));
            out.paths.push_back(std::move(ids));
        }
    return out;
}

} // namespace chambers
