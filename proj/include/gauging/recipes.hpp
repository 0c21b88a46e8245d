#pragma once

#include <vector>

#include "gauging/code.hpp"
#include "gauging/deform.hpp"
#include "gauging/plan.hpp"

namespace gauging {

/// Tensor product of two codes: checks of `a` padded right, checks of `b`
/// padded left, labels prefixed "a:" / "b:".
StabilizerCode tensor_code(const StabilizerCode& a, const StabilizerCode& b);

/// A recipe result: the (possibly basis-changed) code, the measured logical,
/// the per-qubit basis change, and the completed plan.
struct RecipePlan {
    StabilizerCode code;
    PauliOp logical;
    BasisChangeRecord record;
    GaugingPlan plan;
};

/// Lattice-surgery style plan measuring la*lb through a ladder graph: rails
/// run along each support (consecutive pairs, mostly supplied by matching)
/// and rungs pair the i-th qubits of the two supports. The supports must be
/// disjoint and equally long.
RecipePlan recipe_ladder(const StabilizerCode& code, const PauliOp& la, const PauliOp& lb);
/// Same, with the two logicals living on separate code blocks (tensored
/// first; lb is shifted onto the second block).
RecipePlan recipe_ladder(const StabilizerCode& code_a, const StabilizerCode& code_b,
                         const PauliOp& la, const PauliOp& lb);

/// Shor-style plan: a pendant dummy vertex per support qubit plus the given
/// connected graph on the dummies (edges indexed 0..|supp(L)|-1). Measuring
/// the dummy-dummy edges first leaves a GHZ state entangled with supp(L).
RecipePlan recipe_shor(const StabilizerCode& code, const PauliOp& L,
                       const std::vector<std::pair<size_t, size_t>>& dummy_edges);

/// Multi-layer measurement hypergraph: the Z-restriction hyperedges on
/// supp(L), `layers` additional all-dummy copies joined per layer, and line
/// edges connecting the copies of each vertex.
Hypergraph ckbb_hypergraph(const StabilizerCode& code, const PauliOp& L, size_t layers);

}  // namespace gauging
