#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "chambers/connectivity.hpp"
#include "chambers/errors.hpp"
#include "chambers/graph.hpp"

namespace chambers {

using Word = std::vector<int>;  // generator indices in [0, rank)

/// ShortLex order: first by length, then lexicographically by generator index.
inline bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

/// Coxeter matrix. Off-diagonal entries are >= 2 or 0, where 0 encodes an
/// infinite order of st; the diagonal is implicitly 1.
class CoxeterMatrix {
public:
    static constexpr int kInfinity = 0;

    explicit CoxeterMatrix(std::vector<std::vector<int>> m) : m_(std::move(m)) {
        int n = static_cast<int>(m_.size());
        if (n < 1) fail(ErrorCode::BadInput, "rank must be at least 1");
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(m_[static_cast<size_t>(i)].size()) != n)
                fail(ErrorCode::BadInput, "Coxeter matrix is not square");
            for (int j = 0; j < n; ++j) {
                int v = m_[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (i == j && v != 1) fail(ErrorCode::BadInput, "diagonal must be 1");
                if (i != j && v != kInfinity && v < 2)
                    fail(ErrorCode::BadInput, "off-diagonal entries must be >= 2 or 0");
                if (v != m_[static_cast<size_t>(j)][static_cast<size_t>(i)])
                    fail(ErrorCode::BadInput, "Coxeter matrix must be symmetric");
            }
        }
    }

    /// Type A_n matrix (symmetric group S_{n+1}).
    static CoxeterMatrix type_a(int n) {
        std::vector<std::vector<int>> m(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 2));
        for (int i = 0; i < n; ++i) {
            m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
            if (i + 1 < n) {
                m[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = 3;
                m[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = 3;
            }
        }
        return CoxeterMatrix(std::move(m));
    }

    /// Dihedral type I_2(k); k = 0 gives the infinite dihedral group.
    static CoxeterMatrix dihedral(int k) {
        return CoxeterMatrix({{1, k}, {k, 1}});
    }

    int rank() const { return static_cast<int>(m_.size()); }
    int order(int s, int t) const {
        return m_.at(static_cast<size_t>(s)).at(static_cast<size_t>(t));
    }
    bool finite_order(int s, int t) const { return order(s, t) != kInfinity; }

    bool two_finite() const {
        for (int s = 0; s < rank(); ++s)
            for (int t = s + 1; t < rank(); ++t)
                if (!finite_order(s, t)) return false;
        return true;
    }

    const std::vector<std::vector<int>>& entries() const { return m_; }

    void check_generator(int s) const {
        if (s < 0 || s >= rank()) fail(ErrorCode::BadInput, "generator index out of range");
    }

private:
    std::vector<std::vector<int>> m_;
};

namespace detail {

/// All words reachable from w by braid substitutions (Tits' moves).
inline std::set<Word> braid_closure(const CoxeterMatrix& cm, const Word& w) {
    std::set<Word> closure{w};
    std::queue<Word> frontier;
    frontier.push(w);
    while (!frontier.empty()) {
        Word cur = frontier.front();
        frontier.pop();
        for (size_t i = 0; i < cur.size(); ++i) {
            if (i + 1 >= cur.size()) continue;
            int s = cur[i], t = cur[i + 1];
            if (s == t) continue;
            int m = cm.order(s, t);
            if (m == CoxeterMatrix::kInfinity) continue;
            if (i + static_cast<size_t>(m) > cur.size()) continue;
            bool alternating = true;
            for (int k = 0; k < m; ++k)
                if (cur[i + static_cast<size_t>(k)] != (k % 2 == 0 ? s : t)) {
                    alternating = false;
                    break;
                }
            if (!alternating) continue;
            Word next = cur;
            for (int k = 0; k < m; ++k)
                next[i + static_cast<size_t>(k)] = (k % 2 == 0 ? t : s);
            if (closure.insert(next).second) frontier.push(next);
        }
    }
    return closure;
}

} // namespace detail

/// Canonical form of a word: the ShortLex-least reduced word of its group
/// element, computed by Tits' algorithm. A word is non-reduced iff some
/// braid-equivalent word has equal adjacent letters; such pairs are deleted
/// until the closure is clean.
inline Word normalize_word(const CoxeterMatrix& cm, Word word) {
    for (int g : word) cm.check_generator(g);
    while (true) {
        auto closure = detail::braid_closure(cm, word);
        std::optional<Word> reducible;
        for (const auto& u : closure) {
            bool has_pair = false;
            for (size_t i = 0; i + 1 < u.size(); ++i)
                if (u[i] == u[i + 1]) {
                    has_pair = true;
                    break;
                }
            if (has_pair && (!reducible || shortlex_less(u, *reducible))) reducible = u;
        }
        if (!reducible) {
            Word best = *closure.begin();
            for (const auto& u : closure)
                if (shortlex_less(u, best)) best = u;
            return best;
        }
        Word next;
        bool deleted = false;
        for (size_t i = 0; i < reducible->size(); ++i) {
            if (!deleted && i + 1 < reducible->size() &&
                (*reducible)[i] == (*reducible)[i + 1]) {
                ++i;  // drop the ss pair
                deleted = true;
                continue;
            }
            next.push_back((*reducible)[i]);
        }
        word = std::move(next);
    }
}

inline Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

/// Inverse of a word; generators are involutions so reversal suffices.
inline Word inverse(const Word& w) { return {w.rbegin(), w.rend()}; }

/// w * v normalized.
inline Word multiply(const CoxeterMatrix& cm, const Word& w, const Word& v) {
    return normalize_word(cm, concat(w, v));
}

/// The P_{s,t} path s - st - sts - ... - tst - ts - t in the Cayley graph;
/// 2k-1 vertices where k is the order of st.
struct DihedralPath {
    int s = 0;
    int t = 0;
    std::vector<Word> vertices;

    int edge_length() const { return static_cast<int>(vertices.size()) - 1; }
};

inline DihedralPath dihedral_path(const CoxeterMatrix& cm, int s, int t) {
    cm.check_generator(s);
    cm.check_generator(t);
    if (s == t) fail(ErrorCode::BadInput, "dihedral path needs distinct generators");
    int k = cm.order(s, t);
    if (k == CoxeterMatrix::kInfinity)
        fail(ErrorCode::InfiniteOrder, "order of st is infinite");
    DihedralPath path;
    path.s = s;
    path.t = t;
    for (int len = 1; len <= k; ++len) {
        Word w;
        for (int i = 0; i < len; ++i) w.push_back(i % 2 == 0 ? s : t);
        path.vertices.push_back(normalize_word(cm, w));
    }
    for (int len = k - 1; len >= 1; --len) {
        Word w;
        for (int i = 0; i < len; ++i) w.push_back(i % 2 == 0 ? t : s);
        path.vertices.push_back(normalize_word(cm, w));
    }
    return path;
}

/// Ball of the Cayley graph of (W,S): all elements of length <= radius with
/// edges {w, ws}. Vertex ids are ShortLex ranks.
class CayleyBall {
public:
    CayleyBall(const CoxeterMatrix& cm, int radius, int vertex_cap = 100000) : cm_(cm) {
        if (radius < 0) fail(ErrorCode::BadInput, "radius must be >= 0");
        std::set<Word, decltype(&shortlex_less)> elements(&shortlex_less);
        elements.insert(Word{});
        std::vector<Word> layer{Word{}};
        bool extends_beyond = false;
        for (int len = 1; len <= radius + 1 && !layer.empty(); ++len) {
            std::set<Word, decltype(&shortlex_less)> next(&shortlex_less);
            for (const auto& w : layer) {
                for (int s = 0; s < cm.rank(); ++s) {
                    Word u = normalize_word(cm_, concat(w, Word{s}));
                    if (static_cast<int>(u.size()) == len) next.insert(u);
                }
            }
            if (len == radius + 1) {
                extends_beyond = !next.empty();
                break;
            }
            for (const auto& u : next) {
                elements.insert(u);
                if (static_cast<int>(elements.size()) > vertex_cap)
                    fail(ErrorCode::ResourceLimit,
                         "cayley_ball exceeded the configured vertex cap");
            }
            layer.assign(next.begin(), next.end());
        }

        words_.assign(elements.begin(), elements.end());
        for (size_t i = 0; i < words_.size(); ++i) id_of_[words_[i]] = static_cast<int>(i);

        graph_ = ChamberGraph(static_cast<int>(words_.size()), "coxeter");
        for (size_t i = 0; i < words_.size(); ++i) {
            for (int s = 0; s < cm.rank(); ++s) {
                Word u = multiply(cm_, words_[i], Word{s});
                auto it = id_of_.find(u);
                if (it != id_of_.end() && it->second > static_cast<int>(i))
                    graph_.add_edge(static_cast<int>(i), it->second, s);
            }
        }
        graph_.set_complete(!extends_beyond);
        if (extends_beyond)
            for (size_t i = 0; i < words_.size(); ++i)
                if (static_cast<int>(words_[i].size()) == radius)
                    graph_.mark_boundary(static_cast<int>(i));
        graph_.finalize();
    }

    const ChamberGraph& graph() const { return graph_; }
    const std::vector<Word>& words() const { return words_; }
    const CoxeterMatrix& matrix() const { return cm_; }

    int id_of(const Word& canonical) const {
        auto it = id_of_.find(canonical);
        if (it == id_of_.end()) fail(ErrorCode::BadInput, "word outside the ball");
        return it->second;
    }

    bool contains(const Word& canonical) const { return id_of_.count(canonical) > 0; }

private:
    CoxeterMatrix cm_;
    std::vector<Word> words_;
    std::map<Word, int> id_of_;
    ChamberGraph graph_;
};

/// Disjoint w-w' fan of Theorem 3.2, as element sequences. After translating
/// the ShortLex-least common neighbor to the identity the endpoints are
/// generators s, t; the fan is s-e-t, P_{s,t}, and P_{s,s'} o P_{s',t} for
/// the remaining generators s', all translated back.
struct WordPathFamily {
    Word source;
    Word target;
    std::vector<std::vector<Word>> paths;

    std::vector<int> edge_lengths() const {
        std::vector<int> out;
        for (const auto& p : paths) out.push_back(static_cast<int>(p.size()) - 1);
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline WordPathFamily coxeter_disjoint_fan(const CoxeterMatrix& cm, const Word& w_raw,
                                           const Word& wp_raw) {
    if (!cm.two_finite()) fail(ErrorCode::NotTwoFinite, "some st has infinite order");
    Word w = normalize_word(cm, w_raw);
    Word wp = normalize_word(cm, wp_raw);
    if (w == wp) fail(ErrorCode::NotDistanceTwo, "endpoints coincide");

    // common neighbors: wa = w'b for generators a, b
    std::vector<Word> commons;
    for (int a = 0; a < cm.rank(); ++a) {
        Word u = multiply(cm, w, Word{a});
        if (u == wp) fail(ErrorCode::NotDistanceTwo, "endpoints are adjacent");
        for (int b = 0; b < cm.rank(); ++b)
            if (u == multiply(cm, wp, Word{b})) commons.push_back(u);
    }
    if (commons.empty()) fail(ErrorCode::NotDistanceTwo, "no common neighbor");
    Word mid = *std::min_element(commons.begin(), commons.end(), shortlex_less);

    Word mid_inv = inverse(mid);
    Word s_word = multiply(cm, mid_inv, w);
    Word t_word = multiply(cm, mid_inv, wp);
    if (s_word.size() != 1 || t_word.size() != 1)
        fail(ErrorCode::NotDistanceTwo, "translated endpoints are not generators");
    int s = s_word[0], t = t_word[0];

    auto translate = [&](const std::vector<Word>& path) {
        std::vector<Word> out;
        out.reserve(path.size());
        for (const auto& g : path) out.push_back(multiply(cm, mid, g));
        return out;
    };

    WordPathFamily fam;
    fam.source = w;
    fam.target = wp;
    fam.paths.push_back(translate({Word{s}, Word{}, Word{t}}));
    fam.paths.push_back(translate(dihedral_path(cm, s, t).vertices));
    for (int sp = 0; sp < cm.rank(); ++sp) {
        if (sp == s || sp == t) continue;
        auto first = dihedral_path(cm, s, sp).vertices;
        auto second = dihedral_path(cm, sp, t).vertices;
        std::vector<Word> joined = first;
        joined.insert(joined.end(), second.begin() + 1, second.end());
        fam.paths.push_back(translate(joined));
    }
    return fam;
}

/// Maps a word-level family into chamber-graph ids of a ball.
inline PathFamily to_path_family(const CayleyBall& ball, const WordPathFamily& fam) {
    PathFamily out;
    out.source = ball.id_of(fam.source);
    out.target = ball.id_of(fam.target);
    out.provenance = "coxeter";
    for (const auto& path : fam.paths) {
        std::vector<int> ids;
        ids.reserve(path.size());
        for (const auto& w : path) ids.push_back(ball.id_of(w));
        out.paths.push_back(std::move(ids));
    }
    return out;
}

} // namespace chambers
