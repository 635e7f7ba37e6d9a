#include "hf/curves.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "json.hpp"

namespace hf {

using nlohmann::json;

namespace {

bool is_letter(char c) { return c == 'a' || c == 'A' || c == 'b' || c == 'B'; }
char inv(char c) { return std::islower(c) ? std::toupper(c) : std::tolower(c); }

void check_word(const std::string& w) {
    for (char c : w)
        if (!is_letter(c)) throw Error(Error::InvalidInput, "bad word letter '" + std::string(1, c) + "'");
}

}  // namespace

std::string word_inverse(const std::string& w) {
    std::string out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out += inv(*it);
    return out;
}

std::string cyclic_reduce(const std::string& win) {
    std::string w = win;
    check_word(w);
    bool changed = true;
    while (changed && !w.empty()) {
        changed = false;
        std::string out;
        for (char c : w) {
            if (!out.empty() && out.back() == inv(c)) {
                out.pop_back();
                changed = true;
            } else
                out += c;
        }
        // cyclic ends
        while (out.size() >= 2 && out.front() == inv(out.back())) {
            out = out.substr(1, out.size() - 2);
            changed = true;
        }
        w = out;
    }
    return w;
}

std::pair<std::string, int> primitive_root(const std::string& w) {
    int n = (int)w.size();
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            if (w[i] != w[i % d]) ok = false;
        if (ok) return {w.substr(0, d), n / d};
    }
    return {w, 1};
}

std::string canonical_rotation(const std::string& w) {
    std::string best = w;
    for (size_t i = 1; i < w.size(); ++i) {
        std::string r = w.substr(i) + w.substr(0, i);
        if (r < best) best = r;
    }
    return best;
}

std::pair<long long, long long> homology_class(const std::string& word) {
    long long p = 0, q = 0;
    for (char c : word) {
        if (c == 'b') ++p;
        if (c == 'B') --p;
        if (c == 'a') ++q;
        if (c == 'A') --q;
    }
    return {p, q};
}

namespace {

// companion block for the periodic rewrite (gamma^m, k, A) -> (gamma, mk, A')
F2Mat companion_block(const F2Mat& A, int m) {
    int k = A.rows();
    F2Mat out(m * k, m * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (A.get(i, j)) out.set(i, (m - 1) * k + j, true);
    for (int b = 1; b < m; ++b)
        for (int i = 0; i < k; ++i) out.set(b * k + i, (b - 1) * k + i, true);
    return out;
}

}  // namespace

MultiCurve normalize(const std::vector<DecoratedCurve>& raw) {
    std::vector<DecoratedCurve> comps;
    for (auto c : raw) {
        c.word = cyclic_reduce(c.word);
        if (c.word.empty())
            throw Error(Error::NullhomotopicComponent, "component is nullhomotopic in the torus");
        if (c.k < 1 || c.system.rows() != c.k || !c.system.invertible())
            throw Error(Error::InvalidInput, "local system must be an invertible k x k matrix");
        auto [root, m] = primitive_root(c.word);
        if (m > 1) {
            c.word = root;
            c.system = companion_block(c.system, m);
            c.k *= m;
        }
        std::string w1 = canonical_rotation(c.word);
        std::string w2 = canonical_rotation(word_inverse(c.word));
        if (w2 < w1) {
            c.word = w2;
            c.system = *c.system.inverse();
        } else
            c.word = w1;
        comps.push_back(c);
    }
    // merge equal words by direct sum
    std::sort(comps.begin(), comps.end(),
              [](const DecoratedCurve& a, const DecoratedCurve& b) { return a.word < b.word; });
    MultiCurve out;
    for (auto& c : comps) {
        if (!out.components.empty() && out.components.back().word == c.word) {
            auto& t = out.components.back();
            t.system = t.system.direct_sum(c.system);
            t.k += c.k;
            t.oriented = t.oriented && c.oriented;
            if (t.spinc != c.spinc) t.spinc.reset();
        } else
            out.components.push_back(c);
    }
    for (auto& c : out.components) c.system = rational_canonical_form(c.system);
    return out;
}

bool MultiCurve::operator==(const MultiCurve& o) const {
    if (components.size() != o.components.size()) return false;
    for (size_t i = 0; i < components.size(); ++i) {
        const auto& a = components[i];
        const auto& b = o.components[i];
        if (a.word != b.word || a.k != b.k || !(a.system == b.system)) return false;
    }
    return true;
}

std::string MultiCurve::to_json() const {
    json j;
    j["format"] = "hfcurves/1";
    j["kind"] = "curves";
    j["components"] = json::array();
    for (auto& c : components) {
        json jc;
        jc["word"] = c.word;
        jc["k"] = c.k;
        json rows = json::array();
        for (int i = 0; i < c.k; ++i) {
            json row = json::array();
            for (int jj = 0; jj < c.k; ++jj) row.push_back(c.system.get(i, jj) ? 1 : 0);
            rows.push_back(row);
        }
        jc["A"] = rows;
        if (c.spinc) jc["spinc"] = *c.spinc;
        if (c.oriented) jc["oriented"] = true;
        j["components"].push_back(jc);
    }
    return j.dump(2);
}

MultiCurve MultiCurve::from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.contains("kind") && j["kind"] != "curves") throw Error(Error::InvalidInput, "not a curves file");
    std::vector<DecoratedCurve> raw;
    for (auto& jc : j.at("components")) {
        DecoratedCurve c;
        c.word = jc.at("word").get<std::string>();
        c.k = jc.value("k", 1);
        c.system = F2Mat::identity(c.k);
        if (jc.contains("A")) {
            auto& rows = jc["A"];
            if ((int)rows.size() != c.k) throw Error(Error::InvalidInput, "A has wrong size");
            for (int i = 0; i < c.k; ++i)
                for (int jj = 0; jj < c.k; ++jj) c.system.set(i, jj, rows[i][jj].get<int>() & 1);
        }
        if (jc.contains("spinc")) c.spinc = jc["spinc"].get<std::string>();
        c.oriented = jc.value("oriented", false);
        raw.push_back(c);
    }
    return normalize(raw);
}

namespace {

// Sides of the corner box: 0 = right, 1 = bottom, 2 = left, 3 = top.
// A letter crosses one handle; these give the sides of the adjacent germs.
int exit_side(char c) {  // side through which the curve leaves the corner box
    switch (c) {
        case 'b': return 0;
        case 'B': return 2;
        case 'a': return 3;
        default: return 1;  // 'A'
    }
}
int entry_side(char c) {  // side through which it re-enters after the crossing
    switch (c) {
        case 'b': return 2;
        case 'B': return 0;
        case 'a': return 1;
        default: return 3;  // 'A'
    }
}

}  // namespace

TypeDStructure from_curves(const MultiCurve& m) {
    DecoratedGraph g;
    for (size_t ci = 0; ci < m.components.size(); ++ci) {
        const DecoratedCurve& comp = m.components[ci];
        const std::string& w = comp.word;
        int L = (int)w.size();
        int k = comp.k;
        std::string prefix = "c" + std::to_string(ci) + "_";
        for (int t = 0; t < L; ++t)
            for (int c = 0; c < k; ++c) {
                Idem idem = (w[t] == 'b' || w[t] == 'B') ? Idem::I0 : Idem::I1;
                Vertex v;
                v.id = prefix + std::to_string(t) + "_" + std::to_string(c);
                v.idem = idem;
                v.spinc = comp.spinc;
                g.vertices.push_back(v);
            }
        int base = (int)g.vertices.size() - L * k;
        auto vid = [&](int t, int c) { return base + t * k + c; };
        // crossover arrows for the local system sit at the junction between
        // letters L-1 and 0
        F2Mat T = F2Mat::identity(k);
        if (k > 1) {
            for (auto& [i, j] : transvection_factorization(comp.system)) {
                F2Mat E = F2Mat::identity(k);
                E.set(i, j, true);
                T = T * E;
            }
        } else if (comp.k == 1) {
            T = comp.system;  // [1]
        }
        for (int t = 0; t < L; ++t) {
            int u = t, v = (t + 1) % L;
            int s_entry = entry_side(w[u]);  // germ of generator u after its crossing
            int s_exit = exit_side(w[v]);    // germ of generator v before its crossing
            // the 0-free chord determines the edge direction
            Chord fw = chord_for_block(s_entry, s_exit, false);
            bool from_u = fw.zeros() == 0;
            Chord chord = fw;
            if (fw.zeros() != 0) {
                chord = chord_for_block(s_exit, s_entry, false);
                from_u = false;
            } else
                from_u = true;
            if (chord.zeros() != 0) throw Error(Error::InvalidInput, "no reduced chord for junction");
            bool junction = (u == L - 1);
            for (int c1 = 0; c1 < k; ++c1)
                for (int c2 = 0; c2 < k; ++c2) {
                    bool present = junction ? T.get(c1, c2) : (c1 == c2);
                    if (!present) continue;
                    GraphEdge e;
                    if (from_u) {
                        e.from = vid(u, c1);
                        e.to = vid(v, c2);
                    } else {
                        e.from = vid(v, c2);
                        e.to = vid(u, c1);
                    }
                    e.label = chord;
                    g.edges.push_back(e);
                }
        }
    }
    return validate(g);
}

namespace {

std::string apply_automorphism(const std::string& w, const std::map<char, std::string>& sub) {
    std::string out;
    for (char c : w) out += sub.at(c);
    return cyclic_reduce(out);
}

using Mat2 = std::array<std::array<long long, 2>, 2>;

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

// Factor an SL2(Z) matrix into the elementary twist matrices
// E_s = [[1,s],[0,1]] (twist along alpha) and F_t = [[1,0],[t,1]] (along
// beta), possibly times -I.
struct TwistWord {
    std::vector<std::pair<char, long long>> ops;  // ('E', s) or ('F', t), leftmost first
    bool negate = false;
};

TwistWord factor_sl2(Mat2 m) {
    long long det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det != 1) throw Error(Error::InvalidInput, "mapping class matrix must have determinant +1");
    std::vector<std::pair<char, long long>> inverse_ops;  // applied to m, in order
    // Euclid on the first column (m00, m10).
    while (m[1][0] != 0) {
        if (std::abs(m[0][0]) > std::abs(m[1][0]) || m[0][0] == 0) {
            long long q = m[0][0] == 0 ? 0 : m[0][0] / m[1][0];
            if (m[0][0] == 0) q = 0;
            // row0 -= q*row1  (left-multiply by E_{-q})
            m[0][0] -= q * m[1][0];
            m[0][1] -= q * m[1][1];
            inverse_ops.push_back({'E', -q});
        } else {
            long long q = m[1][0] / m[0][0];
            if (q == 0) q = m[1][0] > 0 == m[0][0] > 0 ? 1 : -1;
            m[1][0] -= q * m[0][0];
            m[1][1] -= q * m[0][1];
            inverse_ops.push_back({'F', -q});
        }
    }
    // now lower-left is 0 and det = 1, so diagonal is (1,1) or (-1,-1)
    TwistWord out;
    if (m[0][0] == -1) {
        out.negate = true;
        m[0][0] = 1;
        m[1][1] = 1;
        m[0][1] = -m[0][1];
    }
    if (m[0][1] != 0) inverse_ops.push_back({'E', -m[0][1]});
    // m reduced to I by the recorded left-multiplications, so the original is
    // the product of their inverses in reverse order.
    for (auto it = inverse_ops.rbegin(); it != inverse_ops.rend(); ++it)
        out.ops.push_back({it->first, -it->second});
    return out;
}

}  // namespace

MultiCurve apply_mapping_class(const MultiCurve& m, const Mat2& g) {
    TwistWord tw = factor_sl2(g);
    std::vector<DecoratedCurve> cur = m.components;
    // Apply rightmost twist first (function composition).
    for (auto it = tw.ops.rbegin(); it != tw.ops.rend(); ++it) {
        auto [kind, amt] = *it;
        std::map<char, std::string> sub;
        std::string as(std::abs(amt), amt > 0 ? 'a' : 'A');
        std::string bs(std::abs(amt), amt > 0 ? 'b' : 'B');
        std::string As(std::abs(amt), amt > 0 ? 'A' : 'a');
        std::string Bs(std::abs(amt), amt > 0 ? 'B' : 'b');
        if (kind == 'E') {  // E_s: alpha -> alpha, beta -> beta alpha^s
            sub['a'] = "a";
            sub['A'] = "A";
            sub['b'] = "b" + as;
            sub['B'] = As + "B";
        } else {  // F_t: beta -> beta, alpha -> alpha beta^t
            sub['b'] = "b";
            sub['B'] = "B";
            sub['a'] = "a" + bs;
            sub['A'] = Bs + "A";
        }
        for (auto& c : cur) c.word = apply_automorphism(c.word, sub);
    }
    if (tw.negate) {
        for (auto& c : cur) {
            std::string out;
            for (char ch : c.word) out += inv(ch);
            c.word = out;
        }
    }
    return normalize(cur);
}

MultiCurve reflect(const MultiCurve& m) {
    std::vector<DecoratedCurve> cur = m.components;
    for (auto& c : cur) {
        std::string out;
        for (char ch : c.word) {
            switch (ch) {
                case 'a': out += 'B'; break;
                case 'B': out += 'a'; break;
                case 'b': out += 'A'; break;
                default: out += 'b'; break;  // 'A'
            }
        }
        c.word = out;
        c.system = *c.system.inverse();
    }
    return normalize(cur);
}

bool is_loose(const DecoratedCurve& c) {
    auto [p, q] = homology_class(c.word);
    if (p == 0 && q == 0) return false;
    return pull_tight(c.word).corners.empty();
}

std::pair<long long, long long> rational_longitude(const MultiCurve& m) {
    long long gx = 0, gy = 0;
    bool any = false;
    for (auto& c : m.components) {
        auto [p, q] = homology_class(c.word);
        if (p == 0 && q == 0) continue;
        if (!any) {
            gx = p;
            gy = q;
            any = true;
        } else if (p * gy != q * gx)
            throw Error(Error::InconsistentClasses, "components are not parallel in homology");
    }
    if (!any) throw Error(Error::ZeroHomologyClass, "no component with nonzero class");
    long long g = std::gcd(std::abs(gx), std::abs(gy));
    gx /= g;
    gy /= g;
    if (gx < 0 || (gx == 0 && gy < 0)) {
        gx = -gx;
        gy = -gy;
    }
    return {gx, gy};
}

std::string line_word(long long p, long long q) {
    if (p == 0 && q == 0) throw Error(Error::InvalidInput, "line_word needs a nonzero class");
    if (std::gcd(std::abs(p), std::abs(q)) > 1)
        throw Error(Error::InvalidInput, "line_word needs a primitive class");
    char hb = p >= 0 ? 'b' : 'B';
    char va = q >= 0 ? 'a' : 'A';
    long long ap = std::abs(p), aq = std::abs(q);
    if (ap == 0) return std::string(aq, va);
    if (aq == 0) return std::string(ap, hb);
    std::string w;
    long long x = 0, y = 0;
    while (x < ap || y < aq) {
        if (y < aq && aq * (2 * x + 1) > ap * (2 * y + 1)) {
            w += va;
            ++y;
        } else {
            w += hb;
            ++x;
        }
    }
    return w;
}

}  // namespace hf
