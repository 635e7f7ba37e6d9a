#include "hf/examples.hpp"

namespace hf {

DecoratedGraph trefoil_rh_graph() {
    // CFD of the right-hand trefoil exterior with (meridian, longitude)
    // framing: a 7-cycle with one length-3 chain of rho_3, rho_2, rho_1.
    DecoratedGraph g;
    g.add_vertex("v1", Idem::I0);
    g.add_vertex("v2", Idem::I1);
    g.add_vertex("v3", Idem::I0);
    g.add_vertex("v4", Idem::I1);
    g.add_vertex("v5", Idem::I0);
    g.add_vertex("v6", Idem::I1);
    g.add_vertex("v7", Idem::I1);
    g.add_edge("v1", "v2", "123");
    g.add_edge("v3", "v2", "1");
    g.add_edge("v3", "v4", "3");
    g.add_edge("v4", "v5", "2");
    g.add_edge("v5", "v6", "1");
    g.add_edge("v7", "v6", "23");
    g.add_edge("v1", "v7", "3");
    return g;
}

DecoratedGraph solid_torus_graph() {
    // slope-0 solid torus: one generator with a rho_12 self edge
    DecoratedGraph g;
    g.add_vertex("x", Idem::I0);
    g.add_edge("x", "x", "12");
    return g;
}

DecoratedGraph naive_example_graph() {
    // The 11-generator example whose invariant carries a 2-dimensional local
    // system.
    DecoratedGraph g;
    g.add_vertex("a", Idem::I0);
    g.add_vertex("b", Idem::I0);
    g.add_vertex("c", Idem::I0);
    g.add_vertex("d", Idem::I0);
    g.add_vertex("e", Idem::I0);
    g.add_vertex("f", Idem::I0);
    g.add_vertex("g", Idem::I1);
    g.add_vertex("h", Idem::I1);
    g.add_vertex("i", Idem::I1);
    g.add_vertex("j", Idem::I1);
    g.add_vertex("k", Idem::I1);
    g.add_edge("d", "j", "1");
    g.add_edge("a", "j", "3");
    g.add_edge("a", "k", "123");
    g.add_edge("k", "f", "2");
    g.add_edge("f", "g", "1");
    g.add_edge("h", "g", "23");
    g.add_edge("c", "h", "3");
    g.add_edge("c", "e", "12");
    g.add_edge("e", "i", "1");
    g.add_edge("b", "i", "3");
    g.add_edge("b", "d", "12");
    g.add_edge("d", "i", "1");
    g.add_edge("d", "e", "12");
    g.add_edge("d", "h", "1");
    g.add_edge("j", "g", "23");
    return g;
}

namespace {

MultiCurve one_curve(const std::string& word, int k, const F2Mat& sys,
                     const std::optional<std::string>& spinc = std::nullopt) {
    DecoratedCurve c;
    c.word = word;
    c.k = k;
    c.system = sys;
    c.spinc = spinc;
    return normalize({c});
}

}  // namespace

MultiCurve trefoil_rh_curves() { return one_curve("abaBAAB", 1, F2Mat::identity(1)); }

MultiCurve trefoil_lh_curves() {
    // mirror image: reflect the right-hand curve across the longitude
    return one_curve("AbABaaB", 1, F2Mat::identity(1));
}

MultiCurve solid_torus_curves() { return one_curve("b", 1, F2Mat::identity(1)); }

MultiCurve figure_eight_curves() {
    // horizontal line plus the zero-class component around two vertically
    // adjacent pegs (pinned by the fill and knot-rank checks in the tests)
    DecoratedCurve line;
    line.word = "b";
    line.k = 1;
    line.system = F2Mat::identity(1);
    DecoratedCurve dumbbell;
    dumbbell.word = "abABAbaB";
    dumbbell.k = 1;
    dumbbell.system = F2Mat::identity(1);
    return normalize({line, dumbbell});
}

MultiCurve twisted_i_bundle_curves() {
    DecoratedCurve through;
    through.word = "babA";
    through.k = 1;
    through.system = F2Mat::identity(1);
    through.spinc = "s0";
    DecoratedCurve doubled;
    doubled.word = "b";
    doubled.k = 2;
    F2Mat swap(2, 2);
    swap.set(0, 1, true);
    swap.set(1, 0, true);
    doubled.system = swap;
    doubled.spinc = "s1";
    return normalize({through, doubled});
}

const std::vector<ExampleEntry>& builtin_examples() {
    static const std::vector<ExampleEntry> entries = [] {
        std::vector<ExampleEntry> v;
        v.push_back({"trefoil_rh", "typeD", "right-hand trefoil exterior, (mu, lambda) framing",
                     trefoil_rh_graph().to_json()});
        v.push_back({"trefoil_rh_curves", "curves", "immersed curve of the right-hand trefoil",
                     trefoil_rh_curves().to_json()});
        v.push_back({"trefoil_lh_curves", "curves", "immersed curve of the left-hand trefoil",
                     trefoil_lh_curves().to_json()});
        v.push_back({"solid_torus", "typeD", "slope-0 solid torus", solid_torus_graph().to_json()});
        v.push_back({"solid_torus_curves", "curves", "longitude of the solid torus",
                     solid_torus_curves().to_json()});
        v.push_back({"naive_example", "typeD", "11-generator track with a 2-dimensional local system",
                     naive_example_graph().to_json()});
        v.push_back({"figure_eight_curves", "curves", "figure-eight knot exterior",
                     figure_eight_curves().to_json()});
        v.push_back({"twisted_i_bundle_curves", "curves", "twisted I-bundle over the Klein bottle",
                     twisted_i_bundle_curves().to_json()});
        return v;
    }();
    return entries;
}

ExampleEntry find_example(const std::string& name) {
    for (auto& e : builtin_examples())
        if (e.name == name) return e;
    throw Error(Error::InvalidInput, "unknown example '" + name + "'");
}

}  // namespace hf
