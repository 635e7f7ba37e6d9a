#pragma once

// Decorated immersed multicurves in the marked torus. Words are cyclic
// strings over a/A/b/B (alpha^{+-1}, beta^{+-1}); alpha is the vertical
// parametrizing curve and beta the horizontal one, with the puncture in the
// top-right corner of the square. Local systems are invertible F2 matrices
// stored in rational canonical form.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hf/dstruct.hpp"
#include "hf/f2.hpp"

namespace hf {

struct DecoratedCurve {
    std::string word;  // canonical: lex-least rotation of word or inverse word
    int k = 1;
    F2Mat system;  // k x k, rational canonical form
    bool oriented = false;
    std::optional<std::string> spinc;
};

struct MultiCurve {
    std::vector<DecoratedCurve> components;  // pairwise distinct words, sorted

    std::string to_json() const;
    static MultiCurve from_json(const std::string& text);
    bool operator==(const MultiCurve& o) const;
};

std::string word_inverse(const std::string& w);
std::string cyclic_reduce(const std::string& w);
// smallest u with w = u^m (as a cyclic word); returns (u, m)
std::pair<std::string, int> primitive_root(const std::string& w);
std::string canonical_rotation(const std::string& w);

// (p, q) = (net beta count, net alpha count); beta horizontal, alpha vertical.
std::pair<long long, long long> homology_class(const std::string& word);

// Cyclic reduction, periodic unwrapping via the companion block, inverse
// canonicalization (inverting the system), merging of equal words by direct
// sum, and recanonicalization of every system.
MultiCurve normalize(const std::vector<DecoratedCurve>& raw);

// f^{-1}: k parallel copies in minimal position plus one crossover arrow per
// elementary factor of the local system, read off as a reduced type D graph.
TypeDStructure from_curves(const MultiCurve& m);

// Action of a mapping class given in SL2(Z) as columns (image of alpha,
// image of beta) in (alpha, beta) coordinates; factored into Dehn twists.
MultiCurve apply_mapping_class(const MultiCurve& m, const std::array<std::array<long long, 2>, 2>& g);

// The orientation-reversing diffeomorphism exchanging alpha and -beta.
MultiCurve reflect(const MultiCurve& m);

// --- peg-board geometry ---------------------------------------------------

struct PegCorner {
    long long x = 0, y = 0;   // peg (lattice point)
    long long ux = 0, uy = 0; // incoming direction (full edge vector)
    long long vx = 0, vy = 0; // outgoing direction
    int pass_side = 0;        // +1 peg left of travel, -1 right (collinear corners)
    int wraps = 0;            // extra full half-turns beyond the basic turn
    bool straight() const { return ux * vy - uy * vx == 0 && (ux * vx + uy * vy) > 0; }
    bool bounce() const { return ux * vy - uy * vx == 0 && (ux * vx + uy * vy) < 0; }
};

struct PegboardPath {
    long long period_x = 0, period_y = 0;
    std::vector<PegCorner> corners;  // one period; empty = straight line avoiding pegs
    bool closed = false;             // zero homology class (ux,uy periodic lift otherwise)
};

// Minimal-length singular peg-board representative of a nonzero-class word.
PegboardPath pull_tight(const std::string& word);
// Same straightening for zero-class (closed) lifts; used internally.
PegboardPath pull_tight_closed(const std::string& word);

bool is_loose(const DecoratedCurve& c);

// primitive direction dividing all nonzero component classes
std::pair<long long, long long> rational_longitude(const MultiCurve& m);

// Christoffel-type staircase word of the embedded curve with class (p, q).
std::string line_word(long long p, long long q);

}  // namespace hf
