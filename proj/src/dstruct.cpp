#include "hf/dstruct.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

namespace hf {

using nlohmann::json;

int DecoratedGraph::vertex_index(const std::string& id) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id == id) return (int)i;
    throw Error(Error::InvalidInput, "unknown vertex id '" + id + "'");
}

void DecoratedGraph::add_edge(const std::string& from, const std::string& to, const std::string& label) {
    GraphEdge e;
    e.from = vertex_index(from);
    e.to = vertex_index(to);
    if (label != "e") e.label = Chord::parse(label);
    edges.push_back(e);
}

void DecoratedGraph::cancel_mod2() {
    std::map<std::tuple<int, int, std::string>, int> count;
    for (auto& e : edges) count[{e.from, e.to, e.label ? e.label->str() : "e"}] ^= 1;
    std::vector<GraphEdge> out;
    std::set<std::tuple<int, int, std::string>> emitted;
    for (auto& e : edges) {
        auto key = std::make_tuple(e.from, e.to, e.label ? e.label->str() : "e");
        if (count[key] && !emitted.count(key)) {
            out.push_back(e);
            emitted.insert(key);
        }
    }
    edges = std::move(out);
}

std::vector<std::vector<int>> DecoratedGraph::out_edges() const {
    std::vector<std::vector<int>> out(vertices.size());
    for (size_t i = 0; i < edges.size(); ++i) out[edges[i].from].push_back((int)i);
    return out;
}

std::string DecoratedGraph::to_json() const {
    json j;
    j["format"] = "hfcurves/1";
    j["kind"] = "typeD";
    j["generators"] = json::array();
    for (auto& v : vertices) {
        json g;
        g["id"] = v.id;
        g["idem"] = v.idem == Idem::I0 ? 0 : 1;
        if (v.spinc) g["spinc"] = *v.spinc;
        if (v.gr) g["gr"] = *v.gr;
        j["generators"].push_back(g);
    }
    j["edges"] = json::array();
    for (auto& e : edges) {
        json je;
        je["from"] = vertices[e.from].id;
        je["to"] = vertices[e.to].id;
        je["label"] = e.label ? e.label->str() : "e";
        j["edges"].push_back(je);
    }
    return j.dump(2);
}

DecoratedGraph DecoratedGraph::from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.contains("kind") && j["kind"] != "typeD") throw Error(Error::InvalidInput, "not a typeD file");
    DecoratedGraph g;
    for (auto& jv : j.at("generators")) {
        Vertex v;
        v.id = jv.at("id").get<std::string>();
        int idem = jv.at("idem").get<int>();
        if (idem != 0 && idem != 1) throw Error(Error::InvalidInput, "idem must be 0 or 1");
        v.idem = idem == 0 ? Idem::I0 : Idem::I1;
        if (jv.contains("spinc")) v.spinc = jv["spinc"].get<std::string>();
        if (jv.contains("gr")) v.gr = jv["gr"].get<int>() & 1;
        for (auto& w : g.vertices)
            if (w.id == v.id) throw Error(Error::InvalidInput, "duplicate vertex id '" + v.id + "'");
        g.vertices.push_back(v);
    }
    for (auto& je : j.at("edges"))
        g.add_edge(je.at("from").get<std::string>(), je.at("to").get<std::string>(),
                   je.at("label").get<std::string>());
    return g;
}

GenOrder make_gen_order(const DecoratedGraph& g) {
    GenOrder ord;
    std::vector<int> i0, i1;
    for (size_t i = 0; i < g.vertices.size(); ++i)
        (g.vertices[i].idem == Idem::I0 ? i0 : i1).push_back((int)i);
    auto byid = [&](int a, int b) { return g.vertices[a].id < g.vertices[b].id; };
    std::sort(i0.begin(), i0.end(), byid);
    std::sort(i1.begin(), i1.end(), byid);
    ord.k = (int)i0.size();
    ord.n = (int)(i0.size() + i1.size());
    ord.gens = i0;
    ord.gens.insert(ord.gens.end(), i1.begin(), i1.end());
    ord.pos_of_vertex.assign(g.vertices.size(), -1);
    for (int p = 0; p < ord.n; ++p) ord.pos_of_vertex[ord.gens[p]] = p;
    return ord;
}

int row_side_of_first(int letter) {
    switch (letter) {
        case 1: return 0;
        case 2: return 1;
        case 3: return 2;
        default: return 3;
    }
}

int col_side_of_last(int letter) {
    switch (letter) {
        case 1: return 1;
        case 2: return 2;
        case 3: return 3;
        default: return 0;
    }
}

Chord chord_for_block(int row_side, int col_side, bool with_u) {
    static const int first_of_row[4] = {1, 2, 3, 0};
    static const int last_of_col[4] = {0, 1, 2, 3};
    int first = first_of_row[row_side];
    int last = last_of_col[col_side];
    int len = ((last - first) & 3) + 1;
    Chord c = Chord::make(first, len);
    if (!with_u && c.zeros() == 0) return c;
    if (with_u && c.zeros() == 1) return c;
    if (with_u && c.zeros() == 0) return Chord::make(first, len + 4);
    throw Error(Error::InvalidInput, "no chord for this block position");
}

namespace {

AlgElement label_element(const std::optional<Chord>& l, Idem src) {
    if (l) return AlgElement(*l);
    return AlgElement(Chord::idem(src));  // unit acting on this idempotent
}

const std::set<std::string> kSmallLabels = {"1", "2", "3", "12", "23", "123"};

}  // namespace

TypeDStructure validate(const DecoratedGraph& gin) {
    DecoratedGraph g = gin;
    g.cancel_mod2();
    for (auto& e : g.edges) {
        const Vertex& a = g.vertices[e.from];
        const Vertex& b = g.vertices[e.to];
        if (!e.label) {
            if (a.idem != b.idem)
                throw Error(Error::IdempotentMismatch,
                            "empty edge " + a.id + "->" + b.id + " joins different idempotents");
            continue;
        }
        if (e.label->is_idem() || !kSmallLabels.count(e.label->str()))
            throw Error(Error::InvalidInput, "edge label '" + e.label->str() + "' not in {e,1,2,3,12,23,123}");
        if (e.label->source() != a.idem || e.label->target() != b.idem)
            throw Error(Error::IdempotentMismatch, "edge " + a.id + "-" + e.label->str() + "->" + b.id +
                                                       " violates the compatibility table");
    }
    // d^2 = 0: for every vertex x, the F2 sum over 2-edge paths vanishes.
    auto out = g.out_edges();
    for (size_t x = 0; x < g.vertices.size(); ++x) {
        std::map<int, AlgElement> acc;
        for (int e1 : out[x]) {
            const auto& f = g.edges[e1];
            for (int e2 : out[f.to]) {
                const auto& h = g.edges[e2];
                AlgElement prod = chord_mul(label_element(f.label, g.vertices[f.from].idem),
                                            label_element(h.label, g.vertices[h.from].idem));
                acc[h.to] = acc[h.to] + prod;
            }
        }
        for (auto& [z, el] : acc)
            if (!el.is_zero())
                throw Error(Error::DSquaredNonzero, "d^2 != 0 from " + g.vertices[x].id + " to " +
                                                        g.vertices[z].id + " (coefficient " +
                                                        el.terms().begin()->str() + ")");
    }
    // optional Z/2 consistency: empty, rho_1 and rho_3 edges flip the grading
    for (auto& e : g.edges) {
        const Vertex& a = g.vertices[e.from];
        const Vertex& b = g.vertices[e.to];
        if (!a.gr || !b.gr) continue;
        int flip = 1;
        if (e.label && e.label->str() != "1" && e.label->str() != "3") flip = 0;
        if (((*a.gr + flip) & 1) != (*b.gr & 1))
            throw Error(Error::InvalidInput, "inconsistent Z/2 grading on edge " + a.id + "->" + b.id);
    }
    TypeDStructure d;
    d.graph = std::move(g);
    d.reduced = true;
    for (auto& e : d.graph.edges)
        if (!e.label) d.reduced = false;
    d.bounded = detect_cycles(d.graph).empty();
    return d;
}

std::vector<std::vector<int>> detect_cycles(const DecoratedGraph& g) {
    // Elementary directed cycles with smallest vertex first (Johnson-style
    // restriction: only vertices >= the start may appear).
    std::vector<std::vector<int>> cycles;
    auto out = g.out_edges();
    int nv = (int)g.vertices.size();
    for (int s = 0; s < nv; ++s) {
        std::vector<int> path_edges;
        std::vector<char> onpath(nv, 0);
        std::function<void(int)> dfs = [&](int v) {
            for (int ei : out[v]) {
                int w = g.edges[ei].to;
                if (w < s) continue;
                if (w == s) {
                    path_edges.push_back(ei);
                    cycles.push_back(path_edges);
                    path_edges.pop_back();
                } else if (!onpath[w]) {
                    onpath[w] = 1;
                    path_edges.push_back(ei);
                    dfs(w);
                    path_edges.pop_back();
                    onpath[w] = 0;
                }
            }
        };
        onpath[s] = 1;
        dfs(s);
        onpath[s] = 0;
    }
    return cycles;
}

TypeDStructure reduce(const TypeDStructure& din) {
    DecoratedGraph g = din.graph;
    g.cancel_mod2();
    for (;;) {
        int pick = -1;
        std::pair<std::string, std::string> best;
        for (size_t i = 0; i < g.edges.size(); ++i) {
            if (g.edges[i].label) continue;
            auto key = std::make_pair(g.vertices[g.edges[i].from].id, g.vertices[g.edges[i].to].id);
            if (pick < 0 || key < best) {
                pick = (int)i;
                best = key;
            }
        }
        if (pick < 0) break;
        const GraphEdge cancel = g.edges[pick];
        int x = cancel.from, y = cancel.to;
        if (x == y) throw Error(Error::DSquaredNonzero, "empty self-edge survives cancellation");
        // For edges a->y (label K, a != x) and x->b (label L, b != y), add a
        // composite a -> b labelled K*L.
        std::vector<GraphEdge> extra;
        for (auto& ein : g.edges) {
            if (ein.to != y || ein.from == x) continue;
            if (&ein == &g.edges[pick]) continue;
            for (auto& eout : g.edges) {
                if (eout.from != x || eout.to == y) continue;
                AlgElement prod = chord_mul(label_element(ein.label, g.vertices[ein.from].idem),
                                            label_element(eout.label, g.vertices[eout.from].idem));
                for (auto& c : prod.terms()) {
                    GraphEdge add;
                    add.from = ein.from;
                    add.to = eout.to;
                    add.label = c.is_idem() ? std::optional<Chord>() : std::optional<Chord>(c);
                    extra.push_back(add);
                }
            }
        }
        // remove x, y and all incident edges; reindex
        std::vector<GraphEdge> kept;
        for (auto& e : g.edges)
            if (e.from != x && e.from != y && e.to != x && e.to != y) kept.push_back(e);
        for (auto& e : extra)
            if (e.from != x && e.from != y && e.to != x && e.to != y) kept.push_back(e);
        std::vector<int> remap(g.vertices.size(), -1);
        DecoratedGraph h;
        for (size_t i = 0; i < g.vertices.size(); ++i) {
            if ((int)i == x || (int)i == y) continue;
            remap[i] = (int)h.vertices.size();
            h.vertices.push_back(g.vertices[i]);
        }
        for (auto& e : kept) h.edges.push_back({remap[e.from], remap[e.to], e.label});
        h.cancel_mod2();
        g = std::move(h);
    }
    return validate(g);
}

F2Mat structure_matrix_one(const DecoratedGraph& g, const GenOrder& ord) {
    F2Mat m(2 * ord.n, 2 * ord.n);
    for (auto& e : g.edges) {
        if (!e.label) throw Error(Error::InvalidInput, "structure matrix requires a reduced graph");
        if (e.label->zeros() != 0) continue;
        int gx = ord.pos_of_vertex[e.from], gy = ord.pos_of_vertex[e.to];
        int rs = row_side_of_first(e.label->first());
        int cs = col_side_of_last(e.label->last());
        int row = (rs == 0 || rs == 1) ? ord.near_point(gx) : ord.far_point(gx);
        int col = (cs == 0 || cs == 1) ? ord.near_point(gy) : ord.far_point(gy);
        if (ord.side(row) != rs || ord.side(col) != cs)
            throw Error(Error::IdempotentMismatch, "label incompatible with idempotents");
        m.flip(row, col);
    }
    return m;
}

ExtendedTypeDStructure extend(const TypeDStructure& d, const std::vector<int>* var_order) {
    if (!d.reduced) throw Error(Error::InvalidInput, "extend requires a reduced structure");
    GenOrder ord = make_gen_order(d.graph);
    int N = 2 * ord.n;
    F2Mat m1 = structure_matrix_one(d.graph, ord);
    if (!(m1 * m1).zero()) throw Error(Error::DSquaredNonzero, "(M^1)^2 != 0");
    // Unknowns X(k,l) indexed k*N+l; equations M1*X + X*M1 = I.
    F2Mat A(N * N, N * N);
    F2Vec b(N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            int eq = i * N + j;
            for (int t = 0; t < N; ++t) {
                if (m1.get(i, t)) A.flip(eq, t * N + j);
                if (m1.get(t, j)) A.flip(eq, i * N + t);
            }
            b.set(eq, i == j);
        }
    std::optional<F2Vec> sol;
    if (var_order)
        sol = solve_lex_min_order(A, b, *var_order);
    else
        sol = solve_lex_min(A, b);
    if (!sol) throw Error(Error::NotExtendable, "extension system is inconsistent");
    ExtendedTypeDStructure ext;
    ext.graph = d.graph;
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q) {
            if (!sol->get(p * N + q)) continue;
            Chord c = chord_for_block(ord.side(p), ord.side(q), true);
            GraphEdge e;
            e.from = ord.gens[ord.gen_of_point(p)];
            e.to = ord.gens[ord.gen_of_point(q)];
            e.label = c;
            ext.graph.edges.push_back(e);
        }
    return ext;
}

TypeDStructure make_special_bounded(const TypeDStructure& din) {
    DecoratedGraph g = din.graph;
    int fresh = 0;
    for (;;) {
        auto cycles = detect_cycles(g);
        if (cycles.empty()) break;
        const auto& cyc = cycles.front();
        int pick = -1;
        for (int ei : cyc) {
            auto& e = g.edges[ei];
            if (!e.label) continue;
            std::string s = e.label->str();
            if (s == "12" || s == "23" || s == "123")
                if (pick < 0 || ei < pick) pick = ei;
        }
        if (pick < 0)
            throw Error(Error::UnbreakableCycle, "directed cycle with labels only in {1,2,3,e}");
        GraphEdge e = g.edges[pick];
        std::string s = e.label->str();
        g.edges.erase(g.edges.begin() + pick);
        std::string base = g.vertices[e.from].id + "_" + g.vertices[e.to].id + "_" + std::to_string(fresh++);
        std::string w1 = base + "a", w2 = base + "b";
        Idem mid = s == "23" ? Idem::I0 : Idem::I1;
        g.add_vertex(w1, mid);
        g.add_vertex(w2, mid);
        int iw1 = (int)g.vertices.size() - 2, iw2 = (int)g.vertices.size() - 1;
        std::string l1 = s == "23" ? "2" : "1";
        std::string l2 = s == "12" ? "2" : s == "23" ? "3" : "23";
        g.edges.push_back({e.from, iw1, Chord::parse(l1)});
        g.edges.push_back({iw2, iw1, std::nullopt});
        g.edges.push_back({iw2, e.to, Chord::parse(l2)});
    }
    return validate(g);
}

std::set<std::string> typeA_delta(const TypeDStructure& d, const std::string& x,
                                  const std::vector<Chord>& rho_seq) {
    if (!d.reduced) throw Error(Error::InvalidInput, "typeA_delta requires a reduced structure");
    std::set<std::string> result;
    if (rho_seq.empty()) return result;  // m_1 = 0 in the reduced case
    std::vector<int> word;
    for (auto& c : rho_seq) {
        if (c.is_idem() || c.zeros() != 0)
            throw Error(Error::InvalidInput, "typeA_delta chords must be 0-free");
        for (int i = 0; i < c.len(); ++i) word.push_back(c.letter(i));
    }
    // Only the minimal regrouping of a path word defines an operation.
    if (!(regroup_increasing(word) == rho_seq)) return result;
    const DecoratedGraph& g = d.graph;
    auto out = g.out_edges();
    int start = g.vertex_index(x);
    std::function<void(int, size_t)> dfs = [&](int v, size_t pos) {
        if (pos == word.size()) {
            const std::string& id = g.vertices[v].id;
            if (result.count(id))
                result.erase(id);
            else
                result.insert(id);
            return;
        }
        for (int ei : out[v]) {
            const auto& e = g.edges[ei];
            std::vector<int> lab;
            for (int i = 0; i < e.label->len(); ++i) lab.push_back(e.label->letter(i));
            lab = relabel_for_typeA(lab);
            if (pos + lab.size() > word.size()) continue;
            bool ok = true;
            for (size_t i = 0; i < lab.size(); ++i)
                if (word[pos + i] != lab[i]) {
                    ok = false;
                    break;
                }
            if (ok) dfs(e.to, pos + lab.size());
        }
    };
    dfs(start, 0);
    return result;
}

SpinCData spinc_classes(const DecoratedGraph& g) {
    // Doubled (alpha, beta) shifts from the grading table.
    auto shift = [](const std::optional<Chord>& l) -> std::pair<long long, long long> {
        if (!l) return {0, 0};
        std::string s = l->str();
        if (s == "1") return {-1, -1};
        if (s == "2") return {1, -1};
        if (s == "3") return {1, 1};
        if (s == "12") return {0, -2};
        if (s == "23") return {2, 0};
        if (s == "123") return {1, -1};
        throw Error(Error::InvalidInput, "spin^c classes need small-algebra labels");
    };
    int nv = (int)g.vertices.size();
    SpinCData out;
    out.cls.assign(nv, {0, 0});
    std::vector<char> seen(nv, 0);
    std::vector<std::vector<std::pair<int, std::pair<long long, long long>>>> adj(nv);
    for (auto& e : g.edges) {
        auto s = shift(e.label);
        adj[e.from].push_back({e.to, s});
        adj[e.to].push_back({e.from, {-s.first, -s.second}});
    }
    for (int s0 = 0; s0 < nv; ++s0) {
        if (seen[s0]) continue;
        seen[s0] = 1;
        std::vector<int> stack = {s0};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto& [w, sh] : adj[v]) {
                auto want = std::make_pair(out.cls[v].first + sh.first, out.cls[v].second + sh.second);
                if (!seen[w]) {
                    seen[w] = 1;
                    out.cls[w] = want;
                    stack.push_back(w);
                } else if (out.cls[w] != want) {
                    out.lattice.push_back(
                        {want.first - out.cls[w].first, want.second - out.cls[w].second});
                }
            }
        }
    }
    return out;
}

std::optional<std::vector<int>> z2_gradings(const DecoratedGraph& g) {
    int nv = (int)g.vertices.size();
    std::vector<int> gr(nv, -1);
    std::vector<std::vector<std::pair<int, int>>> adj(nv);
    for (auto& e : g.edges) {
        int flip = 1;
        if (e.label && e.label->str() != "1" && e.label->str() != "3") flip = 0;
        adj[e.from].push_back({e.to, flip});
        adj[e.to].push_back({e.from, flip});
    }
    for (int s = 0; s < nv; ++s) {
        if (gr[s] >= 0) continue;
        gr[s] = g.vertices[s].gr ? *g.vertices[s].gr : 0;
        std::vector<int> stack = {s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto& [w, f] : adj[v]) {
                int want = gr[v] ^ f;
                if (gr[w] < 0) {
                    gr[w] = want;
                    stack.push_back(w);
                } else if (gr[w] != want)
                    return std::nullopt;
            }
        }
    }
    return gr;
}

bool graphs_isomorphic(const DecoratedGraph& a, const DecoratedGraph& b) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
    int n = (int)a.vertices.size();
    std::vector<int> map(n, -1), used(n, 0);
    auto edge_set = [](const DecoratedGraph& g) {
        std::set<std::tuple<int, int, std::string>> s;
        for (auto& e : g.edges) s.insert({e.from, e.to, e.label ? e.label->str() : "e"});
        return s;
    };
    auto bs = edge_set(b);
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v == n) {
            for (auto& e : a.edges)
                if (!bs.count({map[e.from], map[e.to], e.label ? e.label->str() : "e"})) return false;
            return true;
        }
        for (int w = 0; w < n; ++w) {
            if (used[w] || a.vertices[v].idem != b.vertices[w].idem) continue;
            used[w] = 1;
            map[v] = w;
            if (rec(v + 1)) return true;
            used[w] = 0;
            map[v] = -1;
        }
        return false;
    };
    return rec(0);
}

}  // namespace hf
