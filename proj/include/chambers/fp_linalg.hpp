#pragma once

#include <algorithm>
#include <vector>

#include "chambers/errors.hpp"

namespace chambers {

/// Arithmetic mod a prime p; primality is checked by trial division.
class PrimeField {
public:
    explicit PrimeField(int p) : p_(p) {
        if (p < 2) fail(ErrorCode::NotPrime, "p must be a prime >= 2");
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) fail(ErrorCode::NotPrime, std::to_string(p) + " is composite");
    }

    int p() const { return p_; }
    int add(int a, int b) const { return (a + b) % p_; }
    int sub(int a, int b) const { return ((a - b) % p_ + p_) % p_; }
    int mul(int a, int b) const { return (a * b) % p_; }
    int neg(int a) const { return (p_ - a % p_) % p_; }

    int inv(int a) const {
        a %= p_;
        if (a == 0) fail(ErrorCode::BadInput, "division by zero");
        int r = 1;
        for (int e = p_ - 2; e > 0; e >>= 1) {
            // small p: exponentiation by squaring is plenty
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
        }
        return r;
    }

private:
    int p_;
};

using FpVector = std::vector<int>;
using FpMatrix = std::vector<FpVector>;

/// Reduced row echelon form over F_p; zero rows are dropped, so the result
/// is the canonical basis of the row space.
inline FpMatrix rref(const PrimeField& f, FpMatrix m) {
    size_t rows = m.size();
    size_t cols = rows == 0 ? 0 : m[0].size();
    size_t pivot_row = 0;
    for (size_t c = 0; c < cols && pivot_row < rows; ++c) {
        size_t sel = pivot_row;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[pivot_row], m[sel]);
        int scale = f.inv(m[pivot_row][c]);
        for (size_t j = 0; j < cols; ++j) m[pivot_row][j] = f.mul(m[pivot_row][j], scale);
        for (size_t r = 0; r < rows; ++r) {
            if (r == pivot_row || m[r][c] == 0) continue;
            int factor = m[r][c];
            for (size_t j = 0; j < cols; ++j)
                m[r][j] = f.sub(m[r][j], f.mul(factor, m[pivot_row][j]));
        }
        ++pivot_row;
    }
    m.resize(pivot_row);
    return m;
}

/// Subspace of F_p^n held by its canonical reduced row-echelon basis, so
/// equality of subspaces is equality of matrices.
class Subspace {
public:
    Subspace(int n, const PrimeField& f, const FpMatrix& spanning)
        : n_(n), p_(f.p()), basis_(rref(f, spanning)) {
        for (const auto& row : basis_)
            if (static_cast<int>(row.size()) != n)
                fail(ErrorCode::BadInput, "vector length mismatch");
    }

    static Subspace zero(int n, const PrimeField& f) { return Subspace(n, f, {}); }

    static Subspace full(int n, const PrimeField& f) {
        FpMatrix id(static_cast<size_t>(n), FpVector(static_cast<size_t>(n), 0));
        for (int i = 0; i < n; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
        return Subspace(n, f, id);
    }

    int dim() const { return static_cast<int>(basis_.size()); }
    int ambient() const { return n_; }
    const FpMatrix& basis() const { return basis_; }

    bool contains(const PrimeField& f, FpVector v) const {
        for (const auto& row : basis_) {
            size_t pivot = 0;
            while (pivot < row.size() && row[pivot] == 0) ++pivot;
            if (pivot == row.size()) continue;
            int coef = v[pivot];
            if (coef == 0) continue;
            for (size_t j = 0; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(coef, row[j]));
        }
        return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
    }

    bool contains_subspace(const PrimeField& f, const Subspace& other) const {
        for (const auto& row : other.basis_)
            if (!contains(f, row)) return false;
        return true;
    }

    /// All p^dim vectors of the subspace, the zero vector included.
    std::vector<FpVector> enumerate_vectors(const PrimeField& f) const {
        std::vector<FpVector> out{FpVector(static_cast<size_t>(n_), 0)};
        for (const auto& row : basis_) {
            std::vector<FpVector> next;
            next.reserve(out.size() * static_cast<size_t>(p_));
            for (const auto& v : out) {
                for (int c = 0; c < p_; ++c) {
                    FpVector w = v;
                    for (size_t j = 0; j < w.size(); ++j)
                        w[j] = f.add(w[j], f.mul(c, row[j]));
                    next.push_back(std::move(w));
                }
            }
            out = std::move(next);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    friend Subspace sum(const PrimeField& f, const Subspace& a, const Subspace& b) {
        FpMatrix stacked = a.basis_;
        stacked.insert(stacked.end(), b.basis_.begin(), b.basis_.end());
        return Subspace(a.n_, f, stacked);
    }

    friend Subspace intersect(const PrimeField& f, const Subspace& a, const Subspace& b) {
        const Subspace& small = a.dim() <= b.dim() ? a : b;
        const Subspace& large = a.dim() <= b.dim() ? b : a;
        FpMatrix common;
        for (const auto& v : small.enumerate_vectors(f))
            if (large.contains(f, v)) common.push_back(v);
        return Subspace(a.n_, f, common);
    }

    friend bool operator==(const Subspace& x, const Subspace& y) {
        return x.n_ == y.n_ && x.basis_ == y.basis_;
    }
    friend bool operator<(const Subspace& x, const Subspace& y) {
        if (x.basis_.size() != y.basis_.size()) return x.basis_.size() < y.basis_.size();
        return x.basis_ < y.basis_;
    }

private:
    int n_;
    int p_;
    FpMatrix basis_;
};

/// All k-dimensional subspaces of F_p^n, enumerated through their RREF
/// shapes: choose pivot columns, then fill the free entries.
inline std::vector<Subspace> enumerate_subspaces(const PrimeField& f, int n, int k) {
    std::vector<Subspace> out;
    if (k < 0 || k > n) return out;
    if (k == 0) {
        out.push_back(Subspace::zero(n, f));
        return out;
    }
    std::vector<int> pivots(static_cast<size_t>(k));
    auto choose = [&](auto&& self, int start, int idx) -> void {
        if (idx == k) {
            // free positions: row i, column c with c > pivots[i], c not a pivot
            std::vector<std::pair<int, int>> free_pos;
            std::vector<char> is_pivot(static_cast<size_t>(n), 0);
            for (int c : pivots) is_pivot[static_cast<size_t>(c)] = 1;
            for (int i = 0; i < k; ++i)
                for (int c = pivots[static_cast<size_t>(i)] + 1; c < n; ++c)
                    if (!is_pivot[static_cast<size_t>(c)]) free_pos.emplace_back(i, c);

            FpMatrix m(static_cast<size_t>(k), FpVector(static_cast<size_t>(n), 0));
            for (int i = 0; i < k; ++i)
                m[static_cast<size_t>(i)][static_cast<size_t>(pivots[static_cast<size_t>(i)])] = 1;
            auto fill = [&](auto&& fill_self, size_t pos) -> void {
                if (pos == free_pos.size()) {
                    out.push_back(Subspace(n, f, m));
                    return;
                }
                auto [row, col] = free_pos[pos];
                for (int val = 0; val < f.p(); ++val) {
                    m[static_cast<size_t>(row)][static_cast<size_t>(col)] = val;
                    fill_self(fill_self, pos + 1);
                }
                m[static_cast<size_t>(row)][static_cast<size_t>(col)] = 0;
            };
            fill(fill, 0);
            return;
        }
        for (int c = start; c <= n - (k - idx); ++c) {
            pivots[static_cast<size_t>(idx)] = c;
            self(self, c + 1, idx + 1);
        }
    };
    choose(choose, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace chambers
