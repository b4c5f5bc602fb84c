#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "extalg/fp.hpp"

namespace extalg {

/// Dense matrix over F_p.
class FpMat {
public:
    FpMat() : fp_{3}, rows_(0), cols_(0) {}
    FpMat(int p, int rows, int cols)
        : fp_{p}, rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}

    static FpMat identity(int p, int n) {
        FpMat m(p, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int p() const { return fp_.p; }
    const Fp& fp() const { return fp_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    int32_t& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    int32_t at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
    const std::vector<int32_t>& flat() const { return a_; }
    std::vector<int32_t>& flat() { return a_; }

    bool is_zero() const {
        for (int32_t v : a_)
            if (v != 0) return false;
        return true;
    }

    FpMat transposed() const {
        FpMat t(fp_.p, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend bool operator==(const FpMat& a, const FpMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    Fp fp_;
    int rows_, cols_;
    std::vector<int32_t> a_;
};

inline FpMat matmul(const FpMat& a, const FpMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    FpMat c(a.p(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            int64_t av = a.at(i, k);
            if (av == 0) continue;
            for (int j = 0; j < b.cols(); ++j)
                c.at(i, j) = c.fp().norm(c.at(i, j) + av * b.at(k, j));
        }
    return c;
}

inline FpMat matadd(const FpMat& a, const FpMat& b, int32_t bscale = 1) {
    FpMat c(a.p(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            c.at(i, j) = c.fp().norm(a.at(i, j) + int64_t(bscale) * b.at(i, j));
    return c;
}

/// In-place reduced row echelon form. Returns the rank; optionally reports
/// the pivot column of each nonzero row.
inline int rref(FpMat& m, std::vector<int>* pivots = nullptr) {
    const Fp& fp = m.fp();
    int rank = 0;
    if (pivots) pivots->clear();
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int piv = -1;
        for (int i = rank; i < m.rows(); ++i)
            if (m.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(rank, j));
        int32_t inv = fp.inv(m.at(rank, col));
        for (int j = 0; j < m.cols(); ++j) m.at(rank, j) = fp.mul(m.at(rank, j), inv);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == rank || m.at(i, col) == 0) continue;
            int32_t f = m.at(i, col);
            for (int j = 0; j < m.cols(); ++j)
                m.at(i, j) = fp.sub(m.at(i, j), fp.mul(f, m.at(rank, j)));
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

inline int rank_of(FpMat m) { return rref(m); }

/// Basis of {x : m x = 0}. Each basis row has a 1 in "its" free column and 0
/// in every other free column, so coordinates of a vector in this basis can
/// be read off the free columns directly (returned in `leads`).
struct Nullspace {
    FpMat basis; // rows are basis vectors of length m.cols()
    std::vector<int> leads;
};

inline Nullspace nullspace(FpMat m) {
    std::vector<int> pivots;
    int rank = rref(m, &pivots);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    FpMat basis(m.p(), int(free_cols.size()), m.cols());
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        basis.at(int(k), fc) = 1;
        for (int i = 0; i < rank; ++i)
            basis.at(int(k), pivots[i]) = m.fp().neg(m.at(i, fc));
    }
    return {std::move(basis), std::move(free_cols)};
}

/// Incrementally maintained row space in reduced echelon form; used for
/// rank bookkeeping, membership and quotient-complement choices.
class Echelon {
public:
    Echelon(int p, int cols) : fp_{p}, cols_(cols) {}

    int rank() const { return int(rows_.size()); }
    int cols() const { return cols_; }

    /// Reduces v against the current rows; inserts the residue if nonzero.
    /// Returns true when the rank grew.
    bool insert(std::vector<int32_t> v) {
        reduce(v);
        int lead = lead_of(v);
        if (lead < 0) return false;
        int32_t inv = fp_.inv(v[lead]);
        for (auto& x : v) x = fp_.mul(x, inv);
        // keep rows sorted by lead and fully reduced against each other
        size_t pos = 0;
        while (pos < rows_.size() && leads_[pos] < lead) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(v));
        leads_.insert(leads_.begin() + pos, lead);
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (i == pos) continue;
            int32_t f = rows_[i][lead];
            if (f == 0) continue;
            for (int j = 0; j < cols_; ++j)
                rows_[i][j] = fp_.sub(rows_[i][j], fp_.mul(f, rows_[pos][j]));
        }
        return true;
    }

    bool contains(std::vector<int32_t> v) const {
        reduce(v);
        return lead_of(v) < 0;
    }

private:
    Fp fp_;
    int cols_;
    std::vector<std::vector<int32_t>> rows_;
    std::vector<int> leads_;

    int lead_of(const std::vector<int32_t>& v) const {
        for (int j = 0; j < cols_; ++j)
            if (v[j] != 0) return j;
        return -1;
    }
    void reduce(std::vector<int32_t>& v) const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            int32_t f = v[leads_[i]];
            if (f == 0) continue;
            for (int j = 0; j < cols_; ++j) v[j] = fp_.sub(v[j], fp_.mul(f, rows_[i][j]));
        }
    }
};

} // namespace extalg
