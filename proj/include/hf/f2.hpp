#pragma once

// Exact linear algebra over F2 and F2[U]/U^2, plus rational canonical forms.
// Matrices are small (corpus sizes stay well under 100), so rows are plain
// bit vectors packed into uint64_t words.

#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hf {

class F2Vec {
  public:
    F2Vec() = default;
    explicit F2Vec(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }
    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }
    void flip(int i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }
    void operator^=(const F2Vec& o) {
        assert(n_ == o.n_);
        for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    }
    bool zero() const {
        for (uint64_t x : w_)
            if (x) return false;
        return true;
    }
    bool operator==(const F2Vec& o) const { return n_ == o.n_ && w_ == o.w_; }
    int popcount() const {
        int c = 0;
        for (uint64_t x : w_) c += __builtin_popcountll(x);
        return c;
    }
    // index of lowest set bit, or -1
    int lowest() const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return int(k) * 64 + __builtin_ctzll(w_[k]);
        return -1;
    }

  private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

class F2Mat {
  public:
    F2Mat() = default;
    F2Mat(int r, int c) : rows_(r), cols_(c), m_(r, F2Vec(c)) {}
    static F2Mat identity(int n) {
        F2Mat I(n, n);
        for (int i = 0; i < n; ++i) I.set(i, i, true);
        return I;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool get(int i, int j) const { return m_[i].get(j); }
    void set(int i, int j, bool v) { m_[i].set(j, v); }
    void flip(int i, int j) { m_[i].flip(j); }
    F2Vec& row(int i) { return m_[i]; }
    const F2Vec& row(int i) const { return m_[i]; }

    void add_row_to(int src, int dst) { m_[dst] ^= m_[src]; }
    void add_col_to(int src, int dst) {
        for (int i = 0; i < rows_; ++i)
            if (get(i, src)) flip(i, dst);
    }

    bool zero() const {
        for (auto& r : m_)
            if (!r.zero()) return false;
        return true;
    }
    bool operator==(const F2Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && m_ == o.m_; }

    F2Mat operator*(const F2Mat& o) const {
        assert(cols_ == o.rows_);
        F2Mat out(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k)
                if (get(i, k)) out.m_[i] ^= o.m_[k];
        return out;
    }
    F2Mat operator+(const F2Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        F2Mat out = *this;
        for (int i = 0; i < rows_; ++i) out.m_[i] ^= o.m_[i];
        return out;
    }
    F2Mat transpose() const {
        F2Mat out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (get(i, j)) out.set(j, i, true);
        return out;
    }

    int rank() const {
        F2Mat a = *this;
        int r = 0;
        for (int j = 0; j < a.cols_ && r < a.rows_; ++j) {
            int piv = -1;
            for (int i = r; i < a.rows_; ++i)
                if (a.get(i, j)) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            std::swap(a.m_[piv], a.m_[r]);
            for (int i = 0; i < a.rows_; ++i)
                if (i != r && a.get(i, j)) a.m_[i] ^= a.m_[r];
            ++r;
        }
        return r;
    }

    bool invertible() const { return rows_ == cols_ && rank() == rows_; }

    std::optional<F2Mat> inverse() const {
        if (rows_ != cols_) return std::nullopt;
        F2Mat a = *this, inv = identity(rows_);
        for (int j = 0; j < cols_; ++j) {
            int piv = -1;
            for (int i = j; i < rows_; ++i)
                if (a.get(i, j)) {
                    piv = i;
                    break;
                }
            if (piv < 0) return std::nullopt;
            std::swap(a.m_[piv], a.m_[j]);
            std::swap(inv.m_[piv], inv.m_[j]);
            for (int i = 0; i < rows_; ++i)
                if (i != j && a.get(i, j)) {
                    a.m_[i] ^= a.m_[j];
                    inv.m_[i] ^= inv.m_[j];
                }
        }
        return inv;
    }

    // Kronecker product.
    F2Mat kron(const F2Mat& o) const {
        F2Mat out(rows_ * o.rows_, cols_ * o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (get(i, j))
                    for (int p = 0; p < o.rows_; ++p)
                        for (int q = 0; q < o.cols_; ++q)
                            if (o.get(p, q)) out.set(i * o.rows_ + p, j * o.cols_ + q, true);
        return out;
    }

    F2Mat direct_sum(const F2Mat& o) const {
        F2Mat out(rows_ + o.rows_, cols_ + o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (get(i, j)) out.set(i, j, true);
        for (int i = 0; i < o.rows_; ++i)
            for (int j = 0; j < o.cols_; ++j)
                if (o.get(i, j)) out.set(rows_ + i, cols_ + j, true);
        return out;
    }

    std::string str() const {
        std::string s;
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) s += get(i, j) ? '1' : '0';
            s += '\n';
        }
        return s;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<F2Vec> m_;
};

// Solve A x = b over F2. Returns the lexicographically least solution under
// the variable order x0 < x1 < ..., or nullopt if inconsistent.
std::optional<F2Vec> solve_lex_min(const F2Mat& A, const F2Vec& b);

// As above but with variables taken in the order perm[0], perm[1], ...;
// the returned vector is still indexed by original variable indices.
std::optional<F2Vec> solve_lex_min_order(const F2Mat& A, const F2Vec& b, const std::vector<int>& perm);

// Matrices over F2[U]/U^2, stored as one + U*u.
class UMat {
  public:
    UMat() = default;
    UMat(int r, int c) : one(r, c), u(r, c) {}
    UMat(F2Mat one_, F2Mat u_) : one(std::move(one_)), u(std::move(u_)) {}
    static UMat identity(int n) { return UMat(F2Mat::identity(n), F2Mat(n, n)); }
    static UMat u_identity(int n) { return UMat(F2Mat(n, n), F2Mat::identity(n)); }

    int rows() const { return one.rows(); }
    int cols() const { return one.cols(); }

    UMat operator*(const UMat& o) const { return UMat(one * o.one, one * o.u + u * o.one); }
    UMat operator+(const UMat& o) const { return UMat(one + o.one, u + o.u); }
    bool operator==(const UMat& o) const { return one == o.one && u == o.u; }

    F2Mat one, u;
};

// Polynomials over F2 as bitmasks, bit i = coefficient of x^i.
using F2Poly = uint64_t;
int poly_deg(F2Poly p);
F2Poly poly_mul(F2Poly a, F2Poly b);
// division with remainder: a = q*b + r
void poly_divmod(F2Poly a, F2Poly b, F2Poly& q, F2Poly& r);
F2Poly poly_gcd(F2Poly a, F2Poly b);

// Invariant factors of xI - A over F2[x] (nonconstant diagonal entries of the
// Smith form, each dividing the next). Characterizes similarity classes.
std::vector<F2Poly> invariant_factors(const F2Mat& A);

// Rational canonical form: block-diagonal companion matrices of the
// invariant factors.
F2Mat rational_canonical_form(const F2Mat& A);

bool similar(const F2Mat& A, const F2Mat& B);

F2Mat companion_matrix(F2Poly p);

// Decompose an invertible matrix into transvections I + e_{ij} (returned as
// (i,j) pairs) so that A equals their product in the returned order.
std::vector<std::pair<int, int>> transvection_factorization(const F2Mat& A);

// True if A is similar to a permutation matrix; if so, fills cycle lengths.
bool permutation_like(const F2Mat& A, std::vector<int>* cycles = nullptr);

}  // namespace hf
