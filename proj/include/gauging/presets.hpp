#pragma once

#include "gauging/bbcode.hpp"
#include "gauging/plan.hpp"

namespace gauging {

/// A hand-picked bivariate-bicycle deformation: the expander edges and the
/// retained flux cycles are fixed published choices instead of the generic
/// greedy selection, so the deformed Tanner data is reproduced exactly.
struct PresetDeformation {
    BBCode bb;
    StabilizerCode code;       // basis-changed when the logical is Z-type
    PauliOp logical;           // X-type after the basis change
    BasisChangeRecord record;  // identity for the X-side presets
    GaugingPlan plan;          // completed plan with monomial vertex labels
};

/// Gross code [[144,12,12]] measuring X-bar: 22-edge graph, 7 flux cycles.
PresetDeformation gross_deformation();

/// Double-gross code [[288,12,18]] measuring X-bar: 34-edge multigraph (one
/// doubled edge), 13 flux cycles.
PresetDeformation double_gross_deformation();

/// The paired Z-side measurement (Z-bar-prime) of the gross code: per-qubit
/// Hadamards rotate it to X-type and the X-bar monomial data maps onto the
/// R block through inversion, giving the same graph connectivity.
PresetDeformation gross_z_side_deformation();

}  // namespace gauging
