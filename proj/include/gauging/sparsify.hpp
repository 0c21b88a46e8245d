#pragma once

#include <array>
#include <string>
#include <vector>

#include "gauging/deform.hpp"
#include "gauging/plan.hpp"

namespace gauging {

enum class CheegerMode { exact, spectral };

/// Edge expansion h(G) = min |boundary(S)| / |S| over nonempty vertex sets S
/// with |S| <= |V|/2. Parallel edges count separately in the boundary.
struct CheegerResult {
    double value = 0.0;
    /// Minimizing vertex set, ascending (exact mode only).
    std::vector<size_t> witness;
    /// True for the enumerated optimum; false for the lambda_2/2 lower bound.
    bool exact = false;
};

/// Exact mode enumerates every subset (|V| <= 24; the subset space is sharded
/// across threads and the optimum is tie-broken deterministically). Spectral
/// mode returns lambda_2/2 of the combinatorial Laplacian, which only lower
/// bounds h(G) but has no size limit. Throws BudgetError when exact mode is
/// asked for a graph above the enumeration budget.
CheegerResult cheeger(const GaugingGraph& graph, CheegerMode mode);

/// Chords cellulating a simple cycle into triangles, following the zigzag
/// pattern over traversal positions {(1,N-1), (N-1,2), (2,N-2), ...}. Input is
/// the ordered vertex list; output pairs are its entries. The N-2 resulting
/// triangles XOR-sum back to the cycle. Throws for cycles shorter than 3.
std::vector<std::array<size_t, 2>> cellulate(const std::vector<size_t>& cycle);

/// Triangle faces are minimal weight; square faces match the inter-layer
/// cycles that the layered construction introduces anyway.
enum class CellulationMode { triangles, squares };

/// Cycle-sparsified graph: copies 0..layers of the base graph, vertical edges
/// linking each vertex to its next-layer copy, and per-layer chords
/// cellulating the cycles assigned there. Layer 0 is the original graph and is
/// never cellulated; every other cycle is cellulated in exactly the layer it
/// was assigned to.
struct LayeredGraph {
    GaugingGraph base;  // layer 0, exactly as planned
    size_t layers = 0;  // R: extra copies stacked above layer 0
    size_t cap = 0;     // per-edge, per-layer cycle participation bound
    CellulationMode mode = CellulationMode::triangles;
    size_t base_vertices = 0;
    size_t base_edges = 0;  // base edge ids 0..base_edges-1 in the lifted graph

    /// Input flux-cycle row -> assigned layer.
    std::vector<size_t> cycle_layer;
    /// copy_edges[l][e]: lifted edge id of the layer-l copy of base edge e
    /// (layer 0 keeps the original ids).
    std::vector<std::vector<size_t>> copy_edges;
    /// vertical_edges[l][v]: lifted edge joining copies l and l+1 of vertex v.
    std::vector<std::vector<size_t>> vertical_edges;
    /// Chord edge ids added per layer; index 0 stays empty.
    std::vector<std::vector<size_t>> layer_chords;

    /// Flux rows over the lifted edges, concatenated into plan.cycles in this
    /// order: retained layer-0 cycles, inter-layer squares, cellulation faces.
    BitMatrix layer0_cycles;
    BitMatrix squares;
    BitMatrix faces;
    /// Source cycle row of each face.
    std::vector<size_t> face_cycle;

    /// Lifted plan: same logical, matching and paths (all routed through layer
    /// 0), the lifted graph, and the flux rows above.
    GaugingPlan plan;

    size_t layer_vertex(size_t layer, size_t v) const { return layer * base_vertices + v; }
    size_t chord_count() const;
};

/// Assign each retained flux cycle to the lowest layer where every one of its
/// edges stays within `cap` assigned cycles; cycles heavier than 4 skip layer
/// 0 so they can be cellulated. The layer count grows as needed. Cellulated
/// cycles are split into simple closed walks first; triangle mode gives faces
/// of weight <= 3 (plus the weight-4 inter-layer squares), square mode gives
/// faces of weight <= 4 with fewer chords.
LayeredGraph decongest(const GaugingPlan& plan, size_t cap = 3,
                       CellulationMode mode = CellulationMode::triangles);

/// Deform along the lifted plan: star checks on every copy (copies are dummy
/// vertices), flux checks of weight <= 4, and the original deformation paths
/// through layer 0. With zero extra layers this is exactly deform(). Throws if
/// any lifted flux row still exceeds weight 4.
DeformedCode sparsified_deform(const StabilizerCode& code, const LayeredGraph& layered);

/// Thresholds for the graph-choice audit.
struct AuditOptions {
    size_t kappa_threshold = 3;   // flag deformation paths longer than this
    size_t weight_threshold = 4;  // flag retained flux cycles heavier than this
    size_t exact_cheeger_limit = 24;
};

/// Measured graph desiderata: short deformation paths, expansion at least 1,
/// and low-weight flux cycles, each with a pass/fail verdict.
struct DesiderataReport {
    size_t kappa = 0;            // longest deformation path, in edges
    double cheeger_value = 0.0;  // h(G) of the (base) graph
    bool cheeger_exact = false;  // false: spectral lower bound only
    size_t max_cycle_weight = 0;
    size_t kappa_threshold = 0;
    size_t weight_threshold = 0;
    bool kappa_ok = false;
    bool cheeger_ok = false;  // h >= 1
    bool weight_ok = false;

    std::string str() const;
};

DesiderataReport audit_desiderata(const GaugingPlan& plan, const AuditOptions& opt = {});
/// Audits the lifted plan; expansion is measured on the base layer.
DesiderataReport audit_desiderata(const LayeredGraph& layered, const AuditOptions& opt = {});

}  // namespace gauging
