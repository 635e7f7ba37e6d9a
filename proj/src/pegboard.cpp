// Singular peg-board representatives: minimal-length lattice polygons with
// pegs at the lattice points. Corners carry the side on which the curve
// passes the peg; collinear touches are genuine homotopy data and survive
// tightening unless the whole component is a one-sided straight line.

#include <algorithm>
#include <functional>

#include "hf/curves.hpp"

namespace hf {

namespace {

struct P2 {
    long long x = 0, y = 0;
    P2 operator-(const P2& o) const { return {x - o.x, y - o.y}; }
    P2 operator+(const P2& o) const { return {x + o.x, y + o.y}; }
    bool operator==(const P2& o) const { return x == o.x && y == o.y; }
};

long long cross(const P2& a, const P2& b) { return a.x * b.y - a.y * b.x; }
long long dot(const P2& a, const P2& b) { return a.x * b.x + a.y * b.y; }

struct WorkCorner {
    P2 pos;
    int pass_side = 0;  // +1 peg left of travel, -1 right
};

P2 step_of(char c) {
    switch (c) {
        case 'b': return {1, 0};
        case 'B': return {-1, 0};
        case 'a': return {0, 1};
        default: return {0, -1};  // 'A'
    }
}

int straight_side(const P2& d) {
    // side on which the peg lies when the cell-centre path is snapped
    // down-left onto the lattice
    if (d.x > 0) return -1;  // east: peg right
    if (d.x < 0) return +1;  // west: peg left
    if (d.y > 0) return +1;  // north: peg left
    return -1;               // south: peg right
}

// lattice points strictly inside the triangle abc (positive or negative
// orientation), plus points on the open segment ab
std::vector<P2> blockers(const P2& a, const P2& p, const P2& b) {
    std::vector<P2> out;
    long long x0 = std::min({a.x, p.x, b.x}), x1 = std::max({a.x, p.x, b.x});
    long long y0 = std::min({a.y, p.y, b.y}), y1 = std::max({a.y, p.y, b.y});
    long long orient = cross(p - a, b - a);
    for (long long x = x0; x <= x1; ++x)
        for (long long y = y0; y <= y1; ++y) {
            P2 q{x, y};
            if (q == a || q == b || q == p) continue;
            long long c1 = cross(p - a, q - a);
            long long c2 = cross(b - p, q - p);
            long long c3 = cross(a - b, q - b);
            if (orient != 0) {
                long long s = orient > 0 ? 1 : -1;
                if (s * c1 > 0 && s * c2 > 0 && s * c3 > 0) {
                    out.push_back(q);
                    continue;
                }
            }
            // open segment ab
            if (cross(b - a, q - a) == 0 && dot(q - a, b - q) > 0) out.push_back(q);
        }
    return out;
}

// taut chain from a to b bulging toward the given side of the segment
// (side = sign of cross(b - a, apex - a)); keeps collinear touches
std::vector<P2> taut_chain(const P2& a, const P2& b, long long side, std::vector<P2> pts) {
    pts.push_back(a);
    pts.push_back(b);
    P2 d = b - a;
    std::sort(pts.begin(), pts.end(), [&](const P2& u, const P2& v) {
        long long tu = dot(u - a, d), tv = dot(v - a, d);
        if (tu != tv) return tu < tv;
        long long cu = cross(d, u - a) * side, cv = cross(d, v - a) * side;
        return cu < cv;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<P2> stack;
    for (auto& q : pts) {
        while (stack.size() >= 2) {
            P2 u = stack[stack.size() - 1] - stack[stack.size() - 2];
            P2 v = q - stack.back();
            long long c = cross(u, v);
            // pop vertices that turn away from the apex side (non-convex)
            if (c * side > 0)
                stack.pop_back();
            else
                break;
        }
        stack.push_back(q);
    }
    return stack;  // includes a and b
}

struct Polygon {
    std::vector<WorkCorner> cs;
    P2 period;
    bool closed = false;

    P2 pos(int i) const {
        int n = (int)cs.size();
        long long wrap = (long long)std::floor((double)i / n);
        int j = ((i % n) + n) % n;
        P2 p = cs[j].pos;
        p.x += wrap * period.x;
        p.y += wrap * period.y;
        return p;
    }
};

bool tighten_pass(Polygon& poly) {
    int n = (int)poly.cs.size();
    for (int i = 0; i < n; ++i) {
        if ((int)poly.cs.size() <= 1 && poly.closed) break;
        n = (int)poly.cs.size();
        P2 A = poly.pos(i - 1), P = poly.pos(i), B = poly.pos(i + 1);
        if (n == 1 && !poly.closed) {
            A = P - poly.period;
            B = P + poly.period;
        }
        if (A == P || B == P) continue;
        P2 u = P - A, v = B - P;
        long long turn = cross(u, v);
        if (turn == 0) {
            if (dot(u, v) > 0) continue;  // straight touch: pinned
            continue;                     // bounce: pinned
        }
        long long side = cross(B - A, P - A) > 0 ? 1 : -1;
        auto chain = taut_chain(A, B, side, blockers(A, P, B));
        // interior of the chain replaces the apex
        std::vector<P2> interior(chain.begin() + 1, chain.end() - 1);
        bool same = interior.size() == 1 && interior[0] == P;
        if (same) continue;
        std::vector<WorkCorner> next;
        for (int j = 0; j < (int)poly.cs.size(); ++j) {
            if (j == i) {
                for (auto& q : interior) {
                    WorkCorner w;
                    // map back into the base period representative
                    w.pos = q;
                    w.pass_side = side > 0 ? -1 : 1;  // curve bulges toward P; peg opposite
                    // pass_side: peg relative to travel = -(side of apex)
                    w.pass_side = -(int)side;
                    next.push_back(w);
                }
            } else
                next.push_back(poly.cs[j]);
        }
        poly.cs = std::move(next);
        return true;
    }
    return false;
}

PegboardPath finish(Polygon& poly) {
    PegboardPath out;
    out.period_x = poly.period.x;
    out.period_y = poly.period.y;
    out.closed = poly.closed;
    int n = (int)poly.cs.size();
    if (n == 0) return out;
    // drop zero-length edges
    for (int guard = 0; guard < 2 * n + 4; ++guard) {
        bool removed = false;
        for (int i = 0; i < (int)poly.cs.size() && poly.cs.size() > 1; ++i) {
            if (poly.pos(i) == poly.pos(i + 1)) {
                poly.cs.erase(poly.cs.begin() + (i + 1) % poly.cs.size());
                removed = true;
                break;
            }
        }
        if (!removed) break;
    }
    n = (int)poly.cs.size();
    bool all_straight = true;
    for (int i = 0; i < n; ++i) {
        PegCorner c;
        P2 A = poly.pos(i - 1), P = poly.pos(i), B = poly.pos(i + 1);
        c.x = P.x;
        c.y = P.y;
        c.ux = P.x - A.x;
        c.uy = P.y - A.y;
        c.vx = B.x - P.x;
        c.vy = B.y - P.y;
        long long turn = c.ux * c.vy - c.uy * c.vx;
        c.pass_side = turn != 0 ? (turn > 0 ? 1 : -1) : poly.cs[i].pass_side;
        if (turn != 0 || (c.ux * c.vx + c.uy * c.vy) < 0) all_straight = false;
        out.corners.push_back(c);
    }
    if (!poly.closed && all_straight && n > 0) {
        bool same_side = true;
        for (auto& c : out.corners)
            if (c.pass_side != out.corners[0].pass_side) same_side = false;
        if (same_side) out.corners.clear();  // slides off the pegs: plain line
    }
    return out;
}

Polygon initial_polygon(const std::string& word, bool closed) {
    Polygon poly;
    poly.closed = closed;
    P2 cur{0, 0};
    std::string w = word;
    int L = (int)w.size();
    for (int j = 0; j < L; ++j) {
        WorkCorner c;
        c.pos = cur;
        P2 in = step_of(w[(j - 1 + L) % L]);
        P2 ot = step_of(w[j]);
        c.pass_side = cross(in, ot) != 0 ? (cross(in, ot) > 0 ? 1 : -1) : straight_side(ot);
        poly.cs.push_back(c);
        cur = cur + ot;
    }
    poly.period = cur;
    return poly;
}

PegboardPath tighten_word(const std::string& word, bool closed) {
    std::string w = cyclic_reduce(word);
    if (w.empty()) throw Error(Error::NullhomotopicComponent, "empty word");
    auto [p, q] = homology_class(w);
    if (!closed && p == 0 && q == 0)
        throw Error(Error::ZeroHomologyClass, "zero homology class: not a peg-board periodic lift");
    if (closed && !(p == 0 && q == 0)) throw Error(Error::InvalidInput, "closed tightening needs class 0");
    Polygon poly = initial_polygon(w, closed);
    int guard = 0;
    while (tighten_pass(poly)) {
        if (++guard > 100000) throw Error(Error::InvalidInput, "tightening failed to terminate");
    }
    return finish(poly);
}

}  // namespace

PegboardPath pull_tight(const std::string& word) { return tighten_word(word, false); }

PegboardPath pull_tight_closed(const std::string& word) { return tighten_word(word, true); }

}  // namespace hf
