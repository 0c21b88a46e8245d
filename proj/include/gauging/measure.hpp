#pragma once

#include <random>
#include <vector>

#include "gauging/deform.hpp"
#include "gauging/plan.hpp"
#include "gauging/tableau.hpp"

namespace gauging {

/// How the star measurements are realized: directly as multi-qubit Pauli
/// measurements, or as single-qubit X measurements sandwiched between two
/// applications of the CX entangler. Both give identical outcomes and states
/// for the same RNG stream.
enum class GaugeMode { algorithm1, circuit };

struct GaugeOutcome {
    int sigma = 1;                    // measured value of the logical
    std::vector<int> vertex_outcomes;  // epsilon_v per vertex id (+1/-1)
    std::vector<int> edge_outcomes;    // z_e per edge id (+1/-1)
    PauliOp byproduct;                 // X_V(c') carried by the post-state
};

/// Run the gauging measurement of plan.logical on a base-code state. The
/// tableau is mutated in place to the post-measurement state (edge qubits
/// introduced, measured out, and discarded): X_V(c') (1 + sigma L)/2 |psi>.
/// The byproduct X_V(c') is reported for Pauli-frame tracking; apply it to
/// recover the plain projected state.
GaugeOutcome gauge_measure(Tableau& t, const GaugingPlan& plan, GaugeMode mode,
                           std::mt19937_64& rng);

/// Measure several compatible logicals by running each plan in sequence.
std::vector<GaugeOutcome> gauge_measure_parallel(Tableau& t, const ParallelPlanSet& set,
                                                 GaugeMode mode, std::mt19937_64& rng);

/// Generalized star measurement along a hypergraph: extend the tableau with
/// one |0> qubit per hyperedge and measure every A_v. The hyperedge qubits are
/// kept (no ungauging). Returns the per-vertex outcomes.
std::vector<int> hyper_gauge_measure(Tableau& t, const Hypergraph& hg, std::mt19937_64& rng);

/// CSS initialization via gauging: a dummy vertex per X check, a hyperedge per
/// qubit, run on an empty base. The resulting tableau holds |0>^n projected by
/// the X checks, i.e. a CSS code state.
Tableau css_init_state(const CssCode& css, std::mt19937_64& rng,
                       std::vector<int>* outcomes = nullptr);

/// The hypergraph used by css_init_state.
Hypergraph css_init_hypergraph(const CssCode& css);

}  // namespace gauging
