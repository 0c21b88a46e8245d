#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gauging/code.hpp"
#include "gauging/plan.hpp"

namespace gauging {

/// Result of applying a gauging plan to a code: the original qubits plus one
/// auxiliary qubit per (hyper)edge, with the star checks, retained flux
/// checks, untouched originals, and deformed originals.
struct DeformedCode {
    StabilizerCode base;   // the (basis-changed) input code
    StabilizerCode code;   // deformed check set on n_base + n_aux qubits
    size_t n_base = 0;
    size_t n_aux = 0;      // edge or hyperedge qubits, appended after the base
    GaugingPlan plan;      // populated for graph-based deformations

    // Indices into code.checks.
    std::vector<size_t> a_checks;        // star checks, one per vertex
    std::vector<size_t> b_checks;        // retained flux checks
    std::vector<size_t> c_checks;        // untouched originals
    std::vector<size_t> s_tilde_checks;  // deformed originals

    size_t aux_qubit(size_t e) const { return n_base + e; }
};

/// Build the deformed code for a complete plan (paths routed, flux cycles
/// selected). Validates commutation, the counting identity
/// |E| - C - |V| = -1, and that k drops by exactly one for a nontrivial
/// logical.
DeformedCode deform(const StabilizerCode& code, const GaugingPlan& plan);

/// Deform an operator of the base code: extend by Z on an edge path whose
/// boundary equals the operator's Z-type support restricted to supp(L).
/// Throws for operators that anticommute with the measured logical.
PauliOp deform_operator(const DeformedCode& dc, const PauliOp& p);
PauliOp deform_operator(const DeformedCode& dc, const PauliOp& p,
                        const std::vector<size_t>& gamma);

/// Hypergraph generalization: hyperedges are arbitrary vertex sets, each
/// carrying one new qubit.
struct Hypergraph {
    std::vector<GraphVertex> vertices;
    std::vector<std::vector<size_t>> hyperedges;

    size_t add_vertex(std::optional<size_t> qubit, std::string label = "");
    /// Vertex-index set; must be nonempty, in range, strictly increasing.
    size_t add_hyperedge(std::vector<size_t> verts);
    /// |V| x |H| vertex-hyperedge incidence.
    BitMatrix incidence() const;
    std::optional<size_t> vertex_for_qubit(size_t qubit) const;
};

/// Deform along a hypergraph: A_v = X_v * prod_{h contains v} X_h, flux checks
/// from the kernel of the incidence (modulo relation-induced elements), and
/// deformation paths solved from the incidence. An ordinary graph given as
/// size-2 hyperedges reproduces deform().
DeformedCode hypergraph_deform(const StabilizerCode& code, const PauliOp& L,
                               const Hypergraph& hg);
/// Convenience form: hyperedges given as qubit sets over supp(L).
DeformedCode hypergraph_deform(const StabilizerCode& code, const PauliOp& L,
                               const std::vector<std::vector<size_t>>& hyperedge_qubits);

/// Jointly measurable set of logicals: a shared basis change exists because no
/// two logicals act on a common qubit via different nontrivial Paulis.
struct ParallelPlanSet {
    StabilizerCode code;  // jointly basis-changed
    BasisChangeRecord record;
    std::vector<GaugingPlan> plans;
};

/// Validate pairwise compatibility, apply the joint basis change, and build
/// one plan (matching + flux selection) per logical. Throws with the offending
/// pair on a compatibility violation.
ParallelPlanSet parallel_compose(const StabilizerCode& code,
                                 const std::vector<PauliOp>& logicals);

/// Merged deformation measuring all logicals at once; k drops by the number of
/// independent measured logicals.
DeformedCode deform_parallel(const ParallelPlanSet& set);

/// Random expander augmentation: sample vertex pairs uniformly (rejecting
/// self-pairs and degree-cap violations), complete the plan, and accept the
/// first trial whose deformed code scores at least `accept_threshold`.
/// Throws BudgetError with a best-trial report when the budget runs out.
struct RandomEdgeOptions {
    size_t edges_to_add = 1;
    size_t max_trials = 100;
    uint64_t seed = 0;
    size_t degree_cap = 0;  // 0 = uncapped
    size_t accept_threshold = 1;
};
GaugingPlan add_expander_edges_random(const GaugingPlan& base, const StabilizerCode& code,
                                      const RandomEdgeOptions& opt,
                                      const std::function<size_t(const DeformedCode&)>& score);

}  // namespace gauging
