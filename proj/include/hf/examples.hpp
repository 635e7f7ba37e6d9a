#pragma once

// Built-in example corpus: standard bordered invariants used by the tests
// and exposed through the CLI.

#include <string>
#include <vector>

#include "hf/curves.hpp"
#include "hf/dstruct.hpp"

namespace hf {

struct ExampleEntry {
    std::string name;
    std::string kind;  // "typeD" or "curves"
    std::string note;
    std::string payload_json;
};

const std::vector<ExampleEntry>& builtin_examples();

// Convenience accessors used throughout the tests.
DecoratedGraph trefoil_rh_graph();      // CFD of the right-hand trefoil exterior, (mu, lambda) framing
DecoratedGraph solid_torus_graph();     // single generator with a D_12 self edge (slope-0 solid torus)
DecoratedGraph naive_example_graph();   // the 11-generator track with a 2-dimensional local system
MultiCurve trefoil_rh_curves();
MultiCurve trefoil_lh_curves();
MultiCurve solid_torus_curves();
MultiCurve figure_eight_curves();
MultiCurve twisted_i_bundle_curves();

ExampleEntry find_example(const std::string& name);

}  // namespace hf
