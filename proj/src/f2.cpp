#include "hf/f2.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace hf {

std::optional<F2Vec> solve_lex_min(const F2Mat& A, const F2Vec& b) {
    std::vector<int> id(A.cols());
    for (int i = 0; i < A.cols(); ++i) id[i] = i;
    return solve_lex_min_order(A, b, id);
}

std::optional<F2Vec> solve_lex_min_order(const F2Mat& A, const F2Vec& b, const std::vector<int>& perm) {
    int n = A.cols();
    assert((int)perm.size() == n);
    // Augmented elimination over columns taken in perm order.
    F2Mat a = A;
    F2Vec rhs = b;
    int rows = a.rows();
    std::vector<int> pivot_row_of(n, -1);
    int r = 0;
    std::vector<F2Vec> mat(rows, F2Vec(0));
    // Work on copies of rows so we can swap cheaply.
    std::vector<F2Vec> rws;
    rws.reserve(rows);
    for (int i = 0; i < rows; ++i) rws.push_back(a.row(i));
    for (int cpos = 0; cpos < n && r < rows; ++cpos) {
        int j = perm[cpos];
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (rws[i].get(j)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rws[piv], rws[r]);
        bool bp = rhs.get(piv);
        rhs.set(piv, rhs.get(r));
        rhs.set(r, bp);
        for (int i = 0; i < rows; ++i)
            if (i != r && rws[i].get(j)) {
                rws[i] ^= rws[r];
                rhs.set(i, rhs.get(i) ^ rhs.get(r));
            }
        pivot_row_of[j] = r;
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (rhs.get(i)) return std::nullopt;
    // Free variables (in perm order) get 0; pivots forced.
    F2Vec x(n);
    for (int j = 0; j < n; ++j) {
        int pr = pivot_row_of[j];
        if (pr < 0) continue;
        // value = rhs[pr] + sum over later free vars, but frees are all 0
        bool v = rhs.get(pr);
        // subtract contributions of other variables already fixed to 0 -> none
        x.set(j, v);
    }
    // The above sets pivots assuming frees are zero; contributions of frees
    // are zero so row equations hold exactly.
    return x;
}

int poly_deg(F2Poly p) { return p == 0 ? -1 : 63 - __builtin_clzll(p); }

F2Poly poly_mul(F2Poly a, F2Poly b) {
    F2Poly r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

void poly_divmod(F2Poly a, F2Poly b, F2Poly& q, F2Poly& r) {
    assert(b != 0);
    q = 0;
    r = a;
    int db = poly_deg(b);
    while (poly_deg(r) >= db) {
        int sh = poly_deg(r) - db;
        q ^= F2Poly(1) << sh;
        r ^= b << sh;
    }
}

F2Poly poly_gcd(F2Poly a, F2Poly b) {
    while (b) {
        F2Poly q, r;
        poly_divmod(a, b, q, r);
        a = b;
        b = r;
    }
    return a;
}

namespace {

// Smith normal form over F2[x] for the matrix xI - A, returning diagonal
// entries. Entries are polynomials (bitmasks); matrix is small.
std::vector<F2Poly> smith_diagonal(std::vector<std::vector<F2Poly>> m) {
    int n = (int)m.size();
    std::vector<F2Poly> diag;
    int t = 0;
    while (t < n) {
        // find nonzero entry of minimal degree in the submatrix
        int bi = -1, bj = -1, bd = 1 << 30;
        for (int i = t; i < n; ++i)
            for (int j = t; j < n; ++j)
                if (m[i][j] != 0 && poly_deg(m[i][j]) < bd) {
                    bd = poly_deg(m[i][j]);
                    bi = i;
                    bj = j;
                }
        if (bi < 0) {
            for (int i = t; i < n; ++i) diag.push_back(0);
            break;
        }
        std::swap(m[bi], m[t]);
        for (int i = 0; i < n; ++i) std::swap(m[i][bj], m[i][t]);
        bool clean = true;
        for (int i = t + 1; i < n; ++i) {
            if (m[i][t] == 0) continue;
            F2Poly q, r;
            poly_divmod(m[i][t], m[t][t], q, r);
            for (int j = t; j < n; ++j) m[i][j] ^= poly_mul(q, m[t][j]);
            if (m[i][t] != 0) clean = false;
        }
        for (int j = t + 1; j < n; ++j) {
            if (m[t][j] == 0) continue;
            F2Poly q, r;
            poly_divmod(m[t][j], m[t][t], q, r);
            for (int i = t; i < n; ++i) m[i][j] ^= poly_mul(q, m[i][t]);
            if (m[t][j] != 0) clean = false;
        }
        if (!clean) continue;  // degrees dropped; redo this pivot
        bool divides_all = true;
        for (int i = t + 1; i < n && divides_all; ++i)
            for (int j = t + 1; j < n && divides_all; ++j) {
                if (m[i][j] == 0) continue;
                F2Poly q, r;
                poly_divmod(m[i][j], m[t][t], q, r);
                if (r != 0) divides_all = false;
            }
        if (!divides_all) {
            // add a violating row to row t and continue
            for (int i = t + 1; i < n; ++i) {
                bool viol = false;
                for (int j = t + 1; j < n; ++j) {
                    F2Poly q, r;
                    if (m[i][j] == 0) continue;
                    poly_divmod(m[i][j], m[t][t], q, r);
                    if (r != 0) viol = true;
                }
                if (viol) {
                    for (int j = t; j < n; ++j) m[t][j] ^= m[i][j];
                    break;
                }
            }
            continue;
        }
        diag.push_back(m[t][t]);
        ++t;
    }
    return diag;
}

}  // namespace

std::vector<F2Poly> invariant_factors(const F2Mat& A) {
    assert(A.rows() == A.cols());
    int n = A.rows();
    std::vector<std::vector<F2Poly>> m(n, std::vector<F2Poly>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            F2Poly p = A.get(i, j) ? 1 : 0;  // constant term
            if (i == j) p ^= 2;              // + x
            m[i][j] = p;
        }
    std::vector<F2Poly> diag = smith_diagonal(std::move(m));
    std::vector<F2Poly> inv;
    for (F2Poly d : diag)
        if (poly_deg(d) >= 1) inv.push_back(d);
    std::sort(inv.begin(), inv.end(), [](F2Poly a, F2Poly b) { return poly_deg(a) < poly_deg(b); });
    return inv;
}

F2Mat companion_matrix(F2Poly p) {
    int d = poly_deg(p);
    assert(d >= 1);
    F2Mat c(d, d);
    for (int i = 1; i < d; ++i) c.set(i, i - 1, true);
    for (int i = 0; i < d; ++i) c.set(i, d - 1, (p >> i) & 1);
    return c;
}

F2Mat rational_canonical_form(const F2Mat& A) {
    auto inv = invariant_factors(A);
    F2Mat out(0, 0);
    for (F2Poly p : inv) out = out.direct_sum(companion_matrix(p));
    return out;
}

bool similar(const F2Mat& A, const F2Mat& B) {
    if (A.rows() != B.rows()) return false;
    return invariant_factors(A) == invariant_factors(B);
}

std::vector<std::pair<int, int>> transvection_factorization(const F2Mat& A) {
    assert(A.invertible());
    int n = A.rows();
    // Reduce A to I by left-multiplications with I + e_{ij} (add row j to
    // row i); record them. Then A = product of the same factors in reverse.
    F2Mat a = A;
    std::vector<std::pair<int, int>> ops;  // applied ops, in order
    auto addrow = [&](int src, int dst) {
        a.add_row_to(src, dst);
        ops.push_back({dst, src});  // factor I + e_{dst,src}
    };
    for (int j = 0; j < n; ++j) {
        int piv = -1;
        for (int i = j; i < n; ++i)
            if (a.get(i, j)) {
                piv = i;
                break;
            }
        assert(piv >= 0);
        if (piv != j) {
            // swap rows j,piv via three additions
            addrow(piv, j);
            addrow(j, piv);
            addrow(piv, j);
            // rows j and piv are now swapped up to a sign irrelevant over F2
        }
        for (int i = 0; i < n; ++i)
            if (i != j && a.get(i, j)) addrow(j, i);
    }
    assert(a == F2Mat::identity(n));
    // a = E_k ... E_1 A = I, so A = E_1^{-1} ... E_k^{-1} = E_1 ... E_k.
    return ops;
}

bool permutation_like(const F2Mat& A, std::vector<int>* cycles) {
    auto inv = invariant_factors(A);
    // A is similar to a permutation matrix iff its invariant factors are
    // products of distinct-cycle structure polynomials x^c + 1. Equivalent
    // concrete test: A similar to some direct sum of companions of x^c+1.
    // We search small cycle types matching the characteristic polynomial.
    int n = A.rows();
    if (n == 0) return true;
    // enumerate partitions of n, test similarity against cycle-type matrices
    std::vector<int> part;
    std::vector<int> best;
    bool found = false;
    std::function<void(int, int)> rec = [&](int rem, int maxp) {
        if (found) return;
        if (rem == 0) {
            F2Mat P(0, 0);
            for (int c : part) P = P.direct_sum(companion_matrix((F2Poly(1) << c) | 1));
            if (similar(A, P)) {
                found = true;
                best = part;
            }
            return;
        }
        for (int c = std::min(rem, maxp); c >= 1; --c) {
            part.push_back(c);
            rec(rem - c, c);
            part.pop_back();
            if (found) return;
        }
    };
    rec(n, n);
    if (found && cycles) *cycles = best;
    return found;
}

}  // namespace hf
