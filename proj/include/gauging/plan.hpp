#pragma once

#include <cstdint>
#include <vector>

#include "gauging/code.hpp"
#include "gauging/graph.hpp"
#include "gauging/pauli.hpp"
#include "gauging/tableau.hpp"

namespace gauging {

/// Per-qubit single-qubit Clifford layer used to rotate a logical operator
/// into X-type. `sh` denotes the composite S*H (maps Y to X).
struct BasisChangeRecord {
    enum class Gate : uint8_t { identity, hadamard, sh };
    std::vector<Gate> gates;

    bool is_identity() const;
    /// Conjugate p by the recorded layer (P -> U P U^dag).
    PauliOp apply(const PauliOp& p) const;
    /// Conjugate p by the inverse layer.
    PauliOp undo(const PauliOp& p) const;
    /// Apply the layer as gates to a state (|psi> -> U |psi>).
    void apply_to_tableau(Tableau& t) const;
    void undo_on_tableau(Tableau& t) const;
};

struct BasisChangeResult {
    StabilizerCode code;
    PauliOp logical;
    BasisChangeRecord record;
};

/// Rotate each qubit of L to X by single-qubit Cliffords, conjugating every
/// check along. Throws if L anticommutes with a check.
BasisChangeResult basis_change_to_x(const StabilizerCode& code, const PauliOp& L);

/// Complete description of one gauging measurement: the (X-type) logical, the
/// auxiliary graph, which checks get deformed and along which edge path, and
/// the retained flux cycles.
struct GaugingPlan {
    PauliOp logical;
    GaugingGraph graph;
    /// Indices (into code.checks) of checks with Z-type support on supp(L).
    std::vector<size_t> deformed_checks;
    /// Rows align with deformed_checks; columns are edge ids.
    BitMatrix matching;
    /// Edge-id list per deformed check (support of the matching row).
    std::vector<std::vector<size_t>> paths;
    /// Retained flux cycles (rows) over edges.
    BitMatrix cycles;
    /// Full cycle basis of the graph (|E| - |V| + 1 rows once computed).
    BitMatrix full_cycles;
    size_t dim_u = 0;

    /// Structural consistency against the (basis-changed) code: sizes, vertex
    /// bindings, commutation, path boundaries, and cycle conditions.
    void validate_against(const StabilizerCode& code) const;
};

/// Build the initial plan: one vertex per support qubit of the X-type logical
/// and, for every check with Z-type support on supp(L), edges pairing up that
/// restricted support (consecutive in ascending qubit order). Coincident pairs
/// reuse the existing edge.
GaugingPlan matching_edges(const StabilizerCode& code, const PauliOp& L);

/// Append explicit expander edges (given as vertex-index pairs).
GaugingPlan add_expander_edges(GaugingPlan plan,
                               const std::vector<std::pair<size_t, size_t>>& extra);

/// Cycle basis from BFS spanning-tree fundamental cycles, greedily
/// weight-reduced. Rows = |E| - |V| + 1. Throws on a disconnected graph.
BitMatrix cycle_basis(const GaugingGraph& graph);

/// Dimension of the space of check-relation-induced cycles:
/// row_nullity(all checks) - row_nullity(checks untouched by the deformation).
size_t redundant_cycle_dim(const StabilizerCode& code, const PauliOp& L);

/// Cycles implied by check relations: each relation among checks, projected to
/// the deformed subset, maps through the matching rows to a cycle. Returned as
/// a (possibly redundant) list of rows; its rank equals redundant_cycle_dim.
BitMatrix relation_cycles(const StabilizerCode& code, const GaugingPlan& plan);

/// Pick the retained flux cycles: greedy ascending-weight selection from short
/// cycles (parallel pairs, triangles, quads) plus the reduced fundamental
/// basis, keeping rows independent modulo the relation cycles, until
/// (|E| - |V| + 1) - dim U rows are retained. Fills plan.cycles, plan.full_cycles
/// and plan.dim_u.
GaugingPlan select_flux_checks(GaugingPlan plan, const StabilizerCode& code);

/// Boundary/coboundary maps of the graph with a chosen cycle set.
struct BoundaryMaps {
    BitMatrix boundary;     // |V| x |E|
    BitMatrix coboundary;   // |E| x |V|
    BitMatrix boundary2;    // |E| x |cycles|
    BitMatrix coboundary2;  // |cycles| x |E|
};
BoundaryMaps boundary_maps(const GaugingGraph& graph, const BitMatrix& cycles);

/// Compute deformation paths by routing through an existing graph instead of
/// adding matched edges: each check's restricted Z-support is paired up via
/// shortest paths. Used by recipes whose graph is fixed up front.
GaugingPlan plan_with_routed_paths(const StabilizerCode& code, const PauliOp& L,
                                   GaugingGraph graph);

/// Edge path with boundary equal to `boundary_vertices` (even-sized vertex
/// set), built from greedy nearest-pair shortest paths. Used for routed plans
/// and deformed operators.
std::vector<size_t> route_boundary(const GaugingGraph& graph,
                                   const std::vector<size_t>& boundary_vertices);

}  // namespace gauging
