#pragma once

// The train-track engine: the 2n x 2n matrix model over F2[U]/U^2, its
// normal form by elementary conjugations, curve configurations (corner-box
// pairing, handle permutations, crossover arrows in the four arrow boxes),
// the depth-raising arrow-slide algorithm, and local-system extraction.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hf/curves.hpp"
#include "hf/dstruct.hpp"
#include "hf/f2.hpp"

namespace hf {

struct BlockMatrix {
    int n = 0, k = 0;
    UMat M;                        // 2n x 2n, strictly block upper triangular mod U
    std::vector<std::string> ids;  // generator ids in matrix order

    bool valid() const { return (M * M) == UMat::u_identity(2 * n); }
};

BlockMatrix to_matrix(const ExtendedTypeDStructure& e);

// Elementary conjugation: A_{i,j} (i < j) or A^U_{i,j}.
struct ElemOp {
    bool with_u = false;
    int i = 0, j = 0;
};

UMat elem_matrix(const ElemOp& op, int size);

// Lemma "one nonzero entry per row and column, paired (i,j) -> 1, (j,i) -> U":
// returns (Mbar, ops) with M = P Mbar P^{-1}, P the product of ops in order.
std::pair<BlockMatrix, std::vector<ElemOp>> matrix_normal_form(const BlockMatrix& b);

// Move log entries for the audit trace.
struct Move {
    std::string kind;
    std::string detail;
};
using MoveLog = std::vector<Move>;

// A curve configuration: boundary points 0..2n-1 of the corner box labelled
// clockwise from the basepoint corner (right side first), the corner-box
// pairing with its U-direction, the two handle permutations, and the ordered
// arrow boxes (corner-box end first).
struct Arrow {
    int from = 0, to = 0;  // boundary points of one side
};

struct Configuration {
    int n = 0, k = 0;
    std::vector<int> mu;      // corner-box pairing (involution)
    std::vector<int> one_to;  // one_to[i] = j when the arc traversal i->j has weight 1
    std::vector<int> conn;    // handle connection (involution between opposite sides)
    std::vector<Arrow> boxes[4];
    MoveLog log;

    int side(int p) const { return p < k ? 0 : p < n ? 1 : p < n + k ? 2 : 3; }
    static int opposite(int s) { return s ^ 2; }
};

// Weight of an arrow: nullopt = infinite (parallel strands).
struct ArrowWeight {
    std::optional<int> w_to;    // toward the corner box, signed
    std::optional<int> w_from;  // away from the corner box, signed
    bool infinite() const { return !w_to; }
    int depth() const { return infinite() ? -1 : std::min(std::abs(*w_to), std::abs(*w_from)); }
};

Configuration to_configuration(const BlockMatrix& mbar, const std::vector<ElemOp>& ops);

// Track matrix of a configuration (paths through the square); used to verify
// the construction against the matrix model.
UMat configuration_matrix(const Configuration& c);

ArrowWeight arrow_weight(const Configuration& c, int box, const Arrow& a);

// One round of the depth-raising algorithm: afterwards every arrow has depth
// strictly greater than m.
void increase_depth(Configuration& c, int m);

// Runs increase_depth until only infinite-depth arrows remain.
void eliminate_finite_arrows(Configuration& c);

// Groups parallel strands into bundles and reads off words, multiplicities
// and path-count monodromies; requires all arrows at infinite depth.
MultiCurve extract_curves(const Configuration& c);

// The composite map f: reduce, extend, matrix model, normal form,
// configuration, arrow elimination, extraction, normalization.
MultiCurve curve_invariant(const TypeDStructure& d, const std::vector<int>* extension_order = nullptr,
                           MoveLog* log = nullptr);

}  // namespace hf
