#include "hf/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hf {

namespace {

void log_move(MoveLog* log, const std::string& kind, const std::string& detail) {
    if (log) log->push_back({kind, detail});
}

}  // namespace

BlockMatrix to_matrix(const ExtendedTypeDStructure& e) {
    GenOrder ord = make_gen_order(e.graph);
    BlockMatrix b;
    b.n = ord.n;
    b.k = ord.k;
    b.M = UMat(2 * ord.n, 2 * ord.n);
    for (int g = 0; g < ord.n; ++g) b.ids.push_back(e.graph.vertices[ord.gens[g]].id);
    for (auto& ed : e.graph.edges) {
        if (!ed.label) throw Error(Error::InvalidInput, "matrix model requires a reduced structure");
        const Chord& c = *ed.label;
        int gx = ord.pos_of_vertex[ed.from], gy = ord.pos_of_vertex[ed.to];
        int rs = row_side_of_first(c.first());
        int cs = col_side_of_last(c.last());
        int row = (rs == 0 || rs == 1) ? ord.near_point(gx) : ord.far_point(gx);
        int col = (cs == 0 || cs == 1) ? ord.near_point(gy) : ord.far_point(gy);
        if (ord.side(row) != rs || ord.side(col) != cs)
            throw Error(Error::IdempotentMismatch, "edge label incompatible with endpoint idempotents");
        if (c.zeros() == 0)
            b.M.one.flip(row, col);
        else
            b.M.u.flip(row, col);
    }
    // strictly block upper triangular mod U
    for (int i = 0; i < 2 * b.n; ++i)
        for (int j = 0; j < 2 * b.n; ++j)
            if (b.M.one.get(i, j)) {
                int bi = i < b.k ? 0 : i < b.n ? 1 : i < b.n + b.k ? 2 : 3;
                int bj = j < b.k ? 0 : j < b.n ? 1 : j < b.n + b.k ? 2 : 3;
                if (bi >= bj)
                    throw Error(Error::InvalidInput, "U-free part is not strictly block upper triangular");
            }
    if (!b.valid()) throw Error(Error::InvalidInput, "matrix does not satisfy M^2 = U*I");
    return b;
}

UMat elem_matrix(const ElemOp& op, int size) {
    UMat e = UMat::identity(size);
    if (op.with_u)
        e.u.flip(op.i, op.j);
    else
        e.one.flip(op.i, op.j);
    return e;
}

std::pair<BlockMatrix, std::vector<ElemOp>> matrix_normal_form(const BlockMatrix& bin) {
    if (!bin.valid()) throw Error(Error::InvalidInput, "normal form requires M^2 = U*I");
    BlockMatrix b = bin;
    int N = 2 * b.n;
    std::vector<ElemOp> ops;
    auto conj = [&](const ElemOp& op) {
        UMat e = elem_matrix(op, N);
        b.M = e * b.M * e;
        ops.push_back(op);
    };
    std::vector<char> paired(N, 0);
    for (;;) {
        int bi = -1, bj = -1;
        for (int d = 1; d < N && bi < 0; ++d)
            for (int i = 0; i + d < N; ++i) {
                int j = i + d;
                if (!paired[i] && !paired[j] && b.M.one.get(i, j)) {
                    bi = i;
                    bj = j;
                    break;
                }
            }
        if (bi < 0) break;
        int i = bi, j = bj;
        // clear 1-parts in row i to the right of j
        for (int t = j + 1; t < N; ++t)
            if (!paired[t] && b.M.one.get(i, t)) conj({false, j, t});
        // normalize (i, j) to exactly 1, then clear U-parts of row i
        if (b.M.u.get(i, j)) conj({true, j, j});
        for (int t = 0; t < N; ++t)
            if (!paired[t] && t != j && b.M.u.get(i, t)) conj({true, j, t});
        // clear 1-parts above (i, j) in column j
        for (int t = 0; t < i; ++t)
            if (!paired[t] && b.M.one.get(t, j)) conj({false, t, i});
        // clear U-parts of column j
        for (int t = 0; t < N; ++t)
            if (!paired[t] && t != i && b.M.u.get(t, j)) conj({true, t, i});
        paired[i] = paired[j] = 1;
        // rows j and columns i are forced by M^2 = U*I
        for (int t = 0; t < N; ++t) {
            bool row_ok = (b.M.one.get(i, t) == (t == j)) && !b.M.u.get(i, t);
            bool col_ok = (b.M.one.get(t, j) == (t == i)) && !b.M.u.get(t, j);
            bool urow_ok = !b.M.one.get(j, t) && (b.M.u.get(j, t) == (t == i));
            bool ucol_ok = !b.M.one.get(t, i) && (b.M.u.get(t, i) == (t == j));
            if (!row_ok || !col_ok || !urow_ok || !ucol_ok)
                throw Error(Error::InvalidInput, "normal form invariant failed");
        }
    }
    for (int t = 0; t < N; ++t)
        if (!paired[t]) throw Error(Error::InvalidInput, "normal form did not pair all indices");
    return {b, ops};
}

Configuration to_configuration(const BlockMatrix& mbar, const std::vector<ElemOp>& ops) {
    Configuration c;
    c.n = mbar.n;
    c.k = mbar.k;
    int N = 2 * c.n;
    c.mu.assign(N, -1);
    c.one_to.assign(N, -1);
    c.conn.assign(N, -1);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (mbar.M.one.get(i, j)) {
                c.mu[i] = j;
                c.mu[j] = i;
                c.one_to[i] = j;
            }
    for (int i = 0; i < N; ++i)
        if (c.mu[i] < 0) throw Error(Error::InvalidInput, "normal form pairing incomplete");
    for (int g = 0; g < c.n; ++g) {
        int a = g, b = g < c.k ? c.n + c.k - 1 - g : 2 * c.n + c.k - 1 - g;
        c.conn[a] = b;
        c.conn[b] = a;
    }
    // Arrows are added innermost first: the last-applied conjugation sits
    // closest to the corner box. Same-side plain arrows stay; everything
    // else passes a corner and is removed by (M1).
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const ElemOp& op = *it;
        if (!op.with_u && c.side(op.i) == c.side(op.j)) {
            c.boxes[c.side(op.i)].push_back({op.i, op.j});
        } else {
            log_move(&c.log, "M1",
                     std::string(op.with_u ? "AU" : "A") + "(" + std::to_string(op.i) + "," +
                         std::to_string(op.j) + ") dropped at a corner");
        }
    }
    return c;
}

UMat configuration_matrix(const Configuration& c) {
    int N = 2 * c.n;
    UMat W(N, N);
    for (int i = 0; i < N; ++i) {
        if (c.one_to[i] == c.mu[i])
            W.one.set(i, c.mu[i], true);
        else
            W.u.set(i, c.mu[i], true);
    }
    F2Mat E = F2Mat::identity(N), X = F2Mat::identity(N);
    for (int s = 0; s < 4; ++s) {
        for (auto it = c.boxes[s].rbegin(); it != c.boxes[s].rend(); ++it) {
            F2Mat t = F2Mat::identity(N);
            t.set(it->from, it->to, true);
            E = E * t;
        }
        for (auto& a : c.boxes[s]) {
            F2Mat t = F2Mat::identity(N);
            t.set(a.from, a.to, true);
            X = X * t;
        }
    }
    return UMat(E, F2Mat(N, N)) * W * UMat(X, F2Mat(N, N));
}

namespace {

int ccw_idx(int side) {
    switch (side) {
        case 0: return 0;  // right
        case 3: return 1;  // top
        case 2: return 2;  // left
        default: return 3; // bottom
    }
}

int exit_rank(int entry_side, int exit_side) {
    return ((ccw_idx(exit_side) - ccw_idx(entry_side)) & 3) - 1;  // 0..2
}

struct Tracker {
    const Configuration& c;
    explicit Tracker(const Configuration& cfg) : c(cfg) {}

    // one step toward the corner box: p enters, exits at mu[p], re-enters at
    // conn[mu[p]]
    int exit_of(int p) const { return c.mu[p]; }
    int next_toward(int p) const { return c.conn[c.mu[p]]; }
    // one step away: p leaves through its handle and enters the box at
    // conn[p]; the exit there is the first "away" letter
    int next_away_entry(int p) const { return c.conn[p]; }

    std::vector<int> color_toward(int p, int m) const {
        std::vector<int> out;
        int q = p;
        for (int t = 0; t < m; ++t) {
            int e = c.mu[q];
            out.push_back(exit_rank(c.side(q), c.side(e)));
            q = c.conn[e];
        }
        return out;
    }
    std::vector<int> color_away(int p, int m) const {
        std::vector<int> out;
        int q = p;
        for (int t = 0; t < m; ++t) {
            int q2 = c.conn[q];
            int e = c.mu[q2];
            out.push_back(exit_rank(c.side(q2), c.side(e)));
            q = e;
        }
        return out;
    }
};

std::optional<int> weight_dir(const Configuration& c, int a, int b, bool toward) {
    Tracker tr(c);
    int qa = a, qb = b;
    int limit = 4 * c.n * c.n * 4 + 8;
    for (int t = 1; t <= limit; ++t) {
        int ea, eb, entry_side;
        if (toward) {
            entry_side = c.side(qa);
            ea = c.mu[qa];
            eb = c.mu[qb];
        } else {
            int q2a = c.conn[qa], q2b = c.conn[qb];
            entry_side = c.side(q2a);
            ea = c.mu[q2a];
            eb = c.mu[q2b];
        }
        if (c.side(ea) != c.side(eb)) {
            bool clockwise = exit_rank(entry_side, c.side(ea)) > exit_rank(entry_side, c.side(eb));
            return clockwise ? t : -t;
        }
        if (toward) {
            qa = c.conn[ea];
            qb = c.conn[eb];
        } else {
            qa = ea;
            qb = eb;
        }
        if (qa == a && qb == b && t > 1) break;  // periodic: parallel
    }
    return std::nullopt;
}

}  // namespace

ArrowWeight arrow_weight(const Configuration& c, int box, const Arrow& a) {
    (void)box;
    ArrowWeight w;
    w.w_to = weight_dir(c, a.from, a.to, true);
    if (w.w_to) w.w_from = weight_dir(c, a.from, a.to, false);
    return w;
}

namespace {

std::vector<int> points_of_side(const Configuration& c, int s) {
    std::vector<int> out;
    for (int p = 0; p < 2 * c.n; ++p)
        if (c.side(p) == s) out.push_back(p);
    return out;
}

bool box_sorted(const Configuration& c, int s, int m) {
    Tracker tr(c);
    for (auto& a : c.boxes[s]) {
        auto ca = tr.color_toward(a.from, m);
        auto cb = tr.color_toward(a.to, m);
        if (ca < cb) return false;  // tail <_m head: not sorted
    }
    return true;
}

// LPU factorization on a block with allowed downward row ops and rightward
// column ops; returns the permutation and the two op lists (application
// order).
struct LPU {
    std::vector<std::pair<int, int>> row_ops;  // (dst, src): factor I + e_{dst,src}
    std::vector<std::pair<int, int>> col_ops;  // (src, dst): factor I + e_{src,dst}
    std::vector<int> perm;                     // perm[row] = col of the pivot
};

LPU lpu_factor(F2Mat X) {
    int r = X.rows();
    LPU out;
    out.perm.assign(r, -1);
    std::vector<char> used(r, 0);
    for (int j = 0; j < r; ++j) {
        int piv = -1;
        for (int i = 0; i < r; ++i)
            if (!used[i] && X.get(i, j)) {
                piv = i;
                break;
            }
        if (piv < 0) throw Error(Error::InvalidInput, "handle transfer matrix is singular");
        // clear row piv to the right (column ops, add col j into col t)
        for (int t = j + 1; t < r; ++t)
            if (X.get(piv, t)) {
                X.add_col_to(j, t);
                out.col_ops.push_back({j, t});
            }
        // clear column j below-and-above among unused rows (row ops add piv row)
        for (int i = 0; i < r; ++i)
            if (i != piv && !used[i] && X.get(i, j)) {
                if (i < piv) throw Error(Error::InvalidInput, "pivot order violated in LPU");
                X.add_row_to(piv, i);
                out.row_ops.push_back({i, piv});
            }
        used[piv] = 1;
        out.perm[piv] = j;
    }
    return out;
}

// Refactor the contents of a handle (or a box-plus-permutation region) into
// sorted arrow boxes. side0's box is keyed by colors of depth m0; the far
// data by depth m1; bundles are required to run parallel for (m0 - 1, m1 - 1).
void lemma1_refactor(Configuration& c, int side0, int m0, int m1, bool include_far_box,
                     MoveLog* log) {
    Tracker tr(c);
    int side1 = Configuration::opposite(side0);
    std::vector<int> pts0 = points_of_side(c, side0);
    std::vector<int> pts1 = points_of_side(c, side1);
    int nloc = (int)pts0.size();
    if (nloc == 0) return;
    std::map<int, int> loc0, loc1;
    for (int i = 0; i < nloc; ++i) loc0[pts0[i]] = i;
    for (int i = 0; i < nloc; ++i) loc1[pts1[i]] = i;

    // transfer matrix T = A0 * P (* A1rev)
    F2Mat T = F2Mat::identity(nloc);
    auto apply_arrow = [&](const std::map<int, int>& loc, const Arrow& a) {
        F2Mat e = F2Mat::identity(nloc);
        e.set(loc.at(a.from), loc.at(a.to), true);
        T = T * e;
    };
    for (auto& a : c.boxes[side0]) apply_arrow(loc0, a);
    F2Mat P(nloc, nloc);
    for (int i = 0; i < nloc; ++i) P.set(i, loc1.at(c.conn[pts0[i]]), true);
    T = T * P;
    if (include_far_box)
        for (auto it = c.boxes[side1].rbegin(); it != c.boxes[side1].rend(); ++it)
            apply_arrow(loc1, *it);

    // bundles: strands parallel for (m0 - 1) steps toward side0 and (m1 - 1)
    // steps toward side1
    std::vector<std::pair<std::vector<int>, std::vector<int>>> bkey(nloc);
    for (int i = 0; i < nloc; ++i)
        bkey[i] = {tr.color_toward(pts0[i], m0 - 1), tr.color_toward(c.conn[pts0[i]], m1 - 1)};
    auto bundle_of_col = [&](int j) { return bkey[loc0.at(c.conn[pts1[j]])]; };
    for (int i = 0; i < nloc; ++i)
        for (int j = 0; j < nloc; ++j)
            if (T.get(i, j) && !(bkey[i] == bundle_of_col(j)))
                throw Error(Error::InvalidInput, "transfer matrix mixes bundles");

    // group rows by bundle
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<int>> bundles;
    for (int i = 0; i < nloc; ++i) bundles[bkey[i]].push_back(i);

    std::vector<Arrow> new_box0, new_box1_appends;
    std::vector<int> new_conn_of(2 * c.n, -1);
    for (auto& [key, rows] : bundles) {
        std::vector<int> cols;
        for (int j = 0; j < nloc; ++j)
            if (bundle_of_col(j) == key) cols.push_back(j);
        if (rows.size() != cols.size())
            throw Error(Error::InvalidInput, "bundle row/column mismatch");
        int r = (int)rows.size();
        // sort rows ascending by depth-m0 color, columns descending by
        // depth-m1 color (ties by point id for determinism)
        std::vector<int> rs = rows, csort = cols;
        std::sort(rs.begin(), rs.end(), [&](int a, int b) {
            auto ca = tr.color_toward(pts0[a], m0), cb = tr.color_toward(pts0[b], m0);
            if (ca != cb) return ca < cb;
            return pts0[a] < pts0[b];
        });
        std::sort(csort.begin(), csort.end(), [&](int a, int b) {
            auto ca = tr.color_toward(pts1[a], m1), cb = tr.color_toward(pts1[b], m1);
            if (ca != cb) return ca > cb;
            return pts1[a] < pts1[b];
        });
        F2Mat X(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if (T.get(rs[i], csort[j])) X.set(i, j, true);
        LPU f = lpu_factor(X);
        for (auto& [dst, src] : f.row_ops) new_box0.push_back({pts0[rs[dst]], pts0[rs[src]]});
        for (auto& [src, dst] : f.col_ops)
            new_box1_appends.push_back({pts1[csort[src]], pts1[csort[dst]]});
        for (int i = 0; i < r; ++i) {
            int p = pts0[rs[i]];
            int q = pts1[csort[f.perm[i]]];
            new_conn_of[p] = q;
            new_conn_of[q] = p;
        }
    }
    c.boxes[side0] = new_box0;
    if (include_far_box)
        c.boxes[side1] = new_box1_appends;
    else
        c.boxes[side1].insert(c.boxes[side1].end(), new_box1_appends.begin(), new_box1_appends.end());
    for (int p : pts0) {
        c.conn[p] = new_conn_of[p];
        c.conn[new_conn_of[p]] = p;
    }
    log_move(log, "lemma1", "sorted side " + std::to_string(side0) + " at depth " + std::to_string(m0));
}

void delete_arrows_with_weight(Configuration& c, int s, int m, bool check_to, bool check_from,
                               MoveLog* log) {
    std::vector<Arrow> kept;
    for (auto& a : c.boxes[s]) {
        ArrowWeight w = arrow_weight(c, s, a);
        bool drop = false;
        if (!w.infinite()) {
            if (check_to && *w.w_to == m) drop = true;
            if (check_from && w.w_from && *w.w_from == m) drop = true;
        }
        if (drop)
            log_move(log, "M1", "removed arrow (" + std::to_string(a.from) + "," + std::to_string(a.to) +
                                    ") at weight " + std::to_string(m));
        else
            kept.push_back(a);
    }
    c.boxes[s] = kept;
}

void slide_out_box(Configuration& c, int s, MoveLog* log) {
    while (!c.boxes[s].empty()) {
        Arrow a = c.boxes[s].front();
        c.boxes[s].erase(c.boxes[s].begin());
        int ea = c.mu[a.from], eb = c.mu[a.to];
        if (c.side(ea) != c.side(eb))
            throw Error(Error::InvalidInput, "slide through corner box requires |w_to| >= 2");
        c.boxes[c.side(ea)].insert(c.boxes[c.side(ea)].begin(), {ea, eb});
        log_move(log, "slide", "arrow through corner box from side " + std::to_string(s) + " to side " +
                                   std::to_string(c.side(ea)));
    }
}

}  // namespace

void increase_depth(Configuration& c, int m) {
    MoveLog* log = &c.log;
    // Step 1: sort both boxes of each handle with respect to <=_m.
    for (int h = 0; h < 2; ++h) {
        int side0 = h == 0 ? 0 : 1;
        if (!box_sorted(c, side0, m) || !box_sorted(c, Configuration::opposite(side0), m))
            lemma1_refactor(c, side0, m, m, true, log);
    }
    // Step 2: arrows diverging clockwise at depth m toward the corner box
    // can be removed outright.
    for (int s = 0; s < 4; ++s) delete_arrows_with_weight(c, s, m, true, false, log);
    // Step 3: per arrow box, flush arrows whose away-weight is -m by sorting
    // the box-plus-permutation region at depth m+1 and sliding everything
    // through the corner box.
    for (int s = 0; s < 4; ++s) {
        bool needed = false;
        for (auto& a : c.boxes[s]) {
            ArrowWeight w = arrow_weight(c, s, a);
            if (!w.infinite() && w.w_from && *w.w_from == -m) needed = true;
        }
        if (!needed) continue;
        lemma1_refactor(c, s, m + 1, m, false, log);
        delete_arrows_with_weight(c, Configuration::opposite(s), m, true, false, log);
        slide_out_box(c, s, log);
    }
    // Step 4: remaining depth-m arrows diverge clockwise in one direction.
    for (int s = 0; s < 4; ++s) delete_arrows_with_weight(c, s, m, true, true, log);

    for (int s = 0; s < 4; ++s)
        for (auto& a : c.boxes[s]) {
            ArrowWeight w = arrow_weight(c, s, a);
            if (!w.infinite() && w.depth() <= m)
                throw Error(Error::InvalidInput, "increase_depth failed to raise the depth");
        }
}

void eliminate_finite_arrows(Configuration& c) {
    int guard = 4 * c.n * c.n * 4 + 8;
    for (int round = 0; round < guard; ++round) {
        int m = -1;
        for (int s = 0; s < 4; ++s)
            for (auto& a : c.boxes[s]) {
                ArrowWeight w = arrow_weight(c, s, a);
                if (!w.infinite() && (m < 0 || w.depth() < m)) m = w.depth();
            }
        if (m < 0) return;
        increase_depth(c, m);
    }
    throw Error(Error::InvalidInput, "arrow elimination did not terminate");
}

namespace {

char letter_of_exit_side(int s) {
    switch (s) {
        case 0: return 'b';  // east
        case 2: return 'B';  // west
        case 3: return 'a';  // north
        default: return 'A'; // south
    }
}

bool parallel_points(const Configuration& c, int p, int q) {
    if (p == q) return true;
    if (c.side(p) != c.side(q)) return false;
    Tracker tr(c);
    int limit = 4 * c.n * c.n * 4 + 8;
    int pa = p, pb = q;
    for (int t = 0; t < limit; ++t) {
        int ea = c.mu[pa], eb = c.mu[pb];
        if (c.side(ea) != c.side(eb)) return false;
        pa = c.conn[ea];
        pb = c.conn[eb];
        if (pa == p && pb == q) break;
    }
    // away direction
    pa = p;
    pb = q;
    for (int t = 0; t < limit; ++t) {
        int qa = c.conn[pa], qb = c.conn[pb];
        int ea = c.mu[qa], eb = c.mu[qb];
        if (c.side(ea) != c.side(eb)) return false;
        pa = ea;
        pb = eb;
        if (pa == p && pb == q) break;
    }
    return true;
}

}  // namespace

MultiCurve extract_curves(const Configuration& c) {
    for (int s = 0; s < 4; ++s)
        for (auto& a : c.boxes[s])
            if (!arrow_weight(c, s, a).infinite())
                throw Error(Error::InvalidInput, "extract_curves requires infinite-depth arrows only");
    std::vector<char> visited(2 * c.n, 0);
    std::vector<DecoratedCurve> raw;
    for (int p0 = 0; p0 < 2 * c.n; ++p0) {
        if (visited[p0]) continue;
        // cross-section: all points parallel to p0 on its side
        std::vector<int> Q;
        for (int q = 0; q < 2 * c.n; ++q)
            if (!visited[q] && parallel_points(c, p0, q)) Q.push_back(q);
        int kk = (int)Q.size();
        std::vector<int> cur = Q;
        F2Mat A = F2Mat::identity(kk);
        std::string word;
        auto idx_of = [&](int pt) {
            for (int i = 0; i < kk; ++i)
                if (cur[i] == pt) return i;
            return -1;
        };
        int limit = 8 * c.n * c.n + 8;
        bool closed_up = false;
        for (int step = 0; step < limit; ++step) {
            for (int i = 0; i < kk; ++i) visited[cur[i]] = 1;
            // corner box pass
            std::vector<int> exits(kk);
            for (int i = 0; i < kk; ++i) exits[i] = c.mu[cur[i]];
            int s1 = c.side(exits[0]);
            for (int i = 0; i < kk; ++i)
                if (c.side(exits[i]) != s1)
                    throw Error(Error::NonInvertibleSystem, "bundle strands diverged during extraction");
            for (int i = 0; i < kk; ++i) visited[exits[i]] = 1;
            word += letter_of_exit_side(s1);
            cur = exits;
            // near box, traversed away from the corner box (stored order)
            for (auto& ar : c.boxes[s1]) {
                int i = idx_of(ar.from), j = idx_of(ar.to);
                if ((i < 0) != (j < 0))
                    throw Error(Error::NonInvertibleSystem, "arrow connects different bundles");
                if (i >= 0) {
                    F2Mat e = F2Mat::identity(kk);
                    e.set(i, j, true);
                    A = A * e;
                }
            }
            // handle crossing
            for (int i = 0; i < kk; ++i) cur[i] = c.conn[cur[i]];
            // far box, traversed edge-to-corner (reverse stored order)
            int s2 = Configuration::opposite(s1);
            for (auto it = c.boxes[s2].rbegin(); it != c.boxes[s2].rend(); ++it) {
                int i = idx_of(it->from), j = idx_of(it->to);
                if ((i < 0) != (j < 0))
                    throw Error(Error::NonInvertibleSystem, "arrow connects different bundles");
                if (i >= 0) {
                    F2Mat e = F2Mat::identity(kk);
                    e.set(i, j, true);
                    A = A * e;
                }
            }
            // back to the cross-section?
            std::vector<int> sorted_cur = cur;
            std::sort(sorted_cur.begin(), sorted_cur.end());
            if (sorted_cur == Q) {
                closed_up = true;
                break;
            }
        }
        if (!closed_up) throw Error(Error::NonInvertibleSystem, "bundle traversal did not close up");
        // monodromy in the labels of Q
        F2Mat Pm(kk, kk);
        for (int i = 0; i < kk; ++i) {
            int j = -1;
            for (int t = 0; t < kk; ++t)
                if (Q[t] == cur[i]) j = t;
            Pm.set(i, j, true);
        }
        F2Mat M = A * Pm;
        if (!M.invertible()) throw Error(Error::NonInvertibleSystem, "singular local system");
        DecoratedCurve comp;
        comp.word = word;
        comp.k = kk;
        comp.system = M;
        raw.push_back(comp);
    }
    return normalize(raw);
}

MultiCurve curve_invariant(const TypeDStructure& d, const std::vector<int>* extension_order,
                           MoveLog* log) {
    TypeDStructure red = d.reduced ? d : reduce(d);
    if (red.graph.vertices.empty()) return MultiCurve{};
    ExtendedTypeDStructure ext = extend(red, extension_order);
    BlockMatrix b = to_matrix(ext);
    auto [mbar, ops] = matrix_normal_form(b);
    Configuration cfg = to_configuration(mbar, ops);
    eliminate_finite_arrows(cfg);
    MultiCurve mc = extract_curves(cfg);
    if (log) *log = cfg.log;
    return mc;
}

}  // namespace hf
