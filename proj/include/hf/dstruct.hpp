#pragma once

// Decorated directed graphs encoding (extended) type D structures over the
// torus algebra, and the operations on them: validation (d^2 = 0),
// cancellation of empty edges, the extension solver, the Hedden-Levine type A
// dualization, and the special-bounded transform used before pairing.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hf/algebra.hpp"
#include "hf/f2.hpp"

namespace hf {

struct Vertex {
    std::string id;
    Idem idem = Idem::I0;
    std::optional<std::string> spinc;
    std::optional<int> gr;  // Z/2 grading bit
};

struct GraphEdge {
    int from = 0, to = 0;
    std::optional<Chord> label;  // nullopt = the empty label (unit)
};

class DecoratedGraph {
  public:
    std::vector<Vertex> vertices;
    std::vector<GraphEdge> edges;

    int vertex_index(const std::string& id) const;
    void add_vertex(const std::string& id, Idem idem) { vertices.push_back({id, idem, {}, {}}); }
    void add_edge(const std::string& from, const std::string& to, const std::string& label);

    // Parallel edges with identical labels cancel in pairs (F2 coefficients).
    void cancel_mod2();

    std::vector<std::vector<int>> out_edges() const;  // per-vertex edge indices

    std::string to_json() const;
    static DecoratedGraph from_json(const std::string& text);
};

struct TypeDStructure {
    DecoratedGraph graph;
    bool reduced = false;
    bool bounded = false;
};

struct ExtendedTypeDStructure {
    DecoratedGraph graph;  // extended label set; satisfies dtilde^2 = U
};

// Index bookkeeping shared with the matrix model: generators are ordered
// with the i0 generators first (each sorted by id); generator g owns the
// boundary points g and t(g) of the cut-open square, labelled clockwise from
// the basepoint corner.
struct GenOrder {
    int n = 0, k = 0;
    std::vector<int> gens;           // generator position -> vertex index
    std::vector<int> pos_of_vertex;  // vertex index -> generator position

    int near_point(int g) const { return g; }
    int far_point(int g) const { return g < k ? n + k - 1 - g : 2 * n + k - 1 - g; }
    // 0 = right, 1 = bottom, 2 = left, 3 = top
    int side(int p) const { return p < k ? 0 : p < n ? 1 : p < n + k ? 2 : 3; }
    int gen_of_point(int p) const {
        if (p < n) return p;
        if (p < n + k) return n + k - 1 - p;
        return 2 * n + k - 1 - p;
    }
};

GenOrder make_gen_order(const DecoratedGraph& g);

// Matrix position of a chord: (row side by first letter, column side by last
// letter); inverse lookup returns the unique chord for a block position with
// the requested number of zeros (0 or 1).
int row_side_of_first(int letter);   // 1->0, 2->1, 3->2, 0->3
int col_side_of_last(int letter);    // 1->1, 2->2, 3->3, 0->0
Chord chord_for_block(int row_side, int col_side, bool with_u);

// Checks labels, idempotent compatibility and d^2 = 0; computes flags.
TypeDStructure validate(const DecoratedGraph& g);

// Cancels empty-labelled edges (lowest-id pair first) until reduced.
TypeDStructure reduce(const TypeDStructure& d);

std::vector<std::vector<int>> detect_cycles(const DecoratedGraph& g);  // edge-index cycles

// Solves M1*MU + MU*M1 = I for the U-part and returns the extended graph.
// var_order optionally permutes the 4n^2 unknowns before taking the
// lexicographically least solution.
ExtendedTypeDStructure extend(const TypeDStructure& d, const std::vector<int>* var_order = nullptr);

// The F2 matrix of the reduced structure in the block layout (k, n-k, k, n-k).
F2Mat structure_matrix_one(const DecoratedGraph& g, const GenOrder& ord);

// Replaces one eligible edge (label 12, 23 or 123) per directed cycle with
// the backward zig-zag of the almost-reduced calculus until no cycles remain.
TypeDStructure make_special_bounded(const TypeDStructure& d);

// All endpoints (mod 2) of directed paths from x whose relabelled letter
// sequence regroups exactly to rho_seq.
std::set<std::string> typeA_delta(const TypeDStructure& d, const std::string& x,
                                  const std::vector<Chord>& rho_seq);

// Relative spin^c class vectors in doubled (alpha, beta) coordinates, one per
// vertex (arbitrary base per connected component), plus the defect lattice
// spanned by cycle sums.
struct SpinCData {
    std::vector<std::pair<long long, long long>> cls;  // doubled coordinates
    std::vector<std::pair<long long, long long>> lattice;
};
SpinCData spinc_classes(const DecoratedGraph& g);

// Relative Z/2 gradings propagated along edges (empty, rho_1 and rho_3 flip).
// nullopt when inconsistent around some cycle.
std::optional<std::vector<int>> z2_gradings(const DecoratedGraph& g);

bool graphs_isomorphic(const DecoratedGraph& a, const DecoratedGraph& b);

}  // namespace hf
