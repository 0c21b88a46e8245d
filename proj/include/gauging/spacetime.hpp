#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gauging/deform.hpp"

namespace gauging {

/// How often the flux checks are measured during the deformation window.
enum class FluxCadence { every_round, endpoints_only };

/// Fault-tolerant measurement schedule. Check rounds happen at half-integer
/// times tau + 1/2: the original code for `pre` rounds before t_i, the
/// deformed code for the t_o - t_i rounds in between, and the original code
/// for `post` rounds from t_o on. Edge qubits are initialized to |0> at
/// t_i - 1/2 (alongside the last original round) and read out in the Z basis
/// at t_o + 1/2 (alongside the first original round after the deformation).
/// The first and last rounds are treated as perfect: they admit no
/// measurement-fault sites.
struct Schedule {
    size_t t_i = 0;
    size_t t_o = 0;
    size_t pre = 1;
    size_t post = 1;
    FluxCadence cadence = FluxCadence::every_round;

    /// Throws unless t_o > t_i, pre >= 1, post >= 1, and t_i >= pre.
    void validate() const;
    size_t first_round() const { return t_i - pre; }
    size_t last_round() const { return t_o + post - 1; }
    size_t rounds_deformed() const { return t_o - t_i; }
};

/// One elementary fault: a single-qubit Pauli at an integer time, a flipped
/// measurement report at round tau (the measurement itself sits at tau + 1/2),
/// a |0> edge initialization fault at t_i - 1/2, or a flipped edge readout at
/// t_o + 1/2. Each site has weight one.
enum class FaultKind { pauli, measurement, init, readout };

struct FaultSite {
    FaultKind kind = FaultKind::pauli;
    size_t qubit = 0;    // pauli: qubit index in the deformed register
    char pauli = 'X';    // pauli: 'X', 'Y', or 'Z'
    std::string check;   // measurement: check label within that round
    long t = 0;          // pauli: integer time; measurement: round index tau
    size_t edge = 0;     // init/readout: edge index

    static FaultSite pauli_at(size_t qubit, char p, long t);
    static FaultSite measurement_at(std::string check, long tau);
    static FaultSite init_fault(size_t edge);
    static FaultSite readout_fault(size_t edge);

    std::string str() const;
    bool operator==(const FaultSite&) const = default;
};

enum class DetectorPhase { before, seam_in, bulk, seam_out, after };

struct DetectorMember {
    enum class Kind { measurement, initialization, readout };
    Kind kind = Kind::measurement;
    std::string label;  // check label, or "e<id>" for edge events
    int half_time = 0;  // time in half-steps (a measurement at tau+1/2 is 2*tau+1)
};

/// A set of recorded events whose outcome product is +1 in every fault-free
/// run. Detectors pair consecutive measurements of the same check; at the
/// deformation seams the pairs absorb the edge initializations (t_i) and the
/// Z-basis edge readouts plus the returning original check (t_o).
struct Detector {
    std::string id;  // "<check label>@<time slice>"
    size_t slice = 0;
    DetectorPhase phase = DetectorPhase::bulk;
    std::vector<DetectorMember> members;
    /// Indices into the run's record order (initializations carry no record).
    std::vector<size_t> records;
};

/// Build the generating detector set for the schedule and validate each one
/// against a fault-free simulated run. Throws if any detector comes out
/// nondeterministic.
std::vector<Detector> build_detectors(const DeformedCode& dc, const Schedule& s);

/// One fault-free seeded pass; returns one parity bit per detector in
/// build_detectors order (0 means the observed product was +1).
std::vector<uint8_t> detector_parities(const DeformedCode& dc, const Schedule& s, uint64_t seed);

/// Linear fault model of one schedule, built by probing: each elementary
/// fault is injected alone and the violated detectors, the flip of the
/// measurement result sigma, and the residual action on the final state are
/// recorded. Faults compose by XOR of their rows.
struct SyndromeMap {
    Schedule schedule;
    std::vector<Detector> detectors;
    std::vector<FaultSite> sites;
    BitMatrix d;          // sites x detectors
    BitVec sigma_flip;    // sites; bit set = the reported sigma flips
    /// sites x n: anticommutation of the site's end-of-run residual Pauli
    /// with the final-state stabilizer generators (zero row = state
    /// preserved). Edge-qubit residuals are discarded with the readout.
    BitMatrix residual;

    /// Row of a site; throws ValidationError for a site outside the model.
    size_t site_index(const FaultSite& site) const;

    std::map<std::string, size_t> index;  // site.str() -> row
};

SyndromeMap build_syndrome_map(const DeformedCode& dc, const Schedule& s, uint64_t seed = 0);

struct SyndromeResult {
    std::vector<size_t> violated;  // detector indices, ascending
    bool sigma_flipped = false;
};

/// XOR of the per-site detector columns plus the sigma-functional parity.
SyndromeResult syndrome(const SyndromeMap& map, const std::vector<FaultSite>& faults);

/// Instantiates every local spacetime-stabilizer generator (check operators
/// applied at a time step, Pauli pairs bridged by report flips, seam
/// terminations) and checks each has empty syndrome, preserves sigma, and
/// preserves the final state. Throws naming the first failing generator.
struct SpacetimeStabilizerReport {
    size_t generators = 0;
    std::map<std::string, size_t> by_family;
    std::string str() const;
};

SpacetimeStabilizerReport verify_spacetime_stabilizers(const DeformedCode& dc, const Schedule& s);

/// The canonical measurement-only logical fault: flipped reports of one star
/// check at every deformed round. Weight t_o - t_i; verified to have empty
/// syndrome and to flip sigma.
std::vector<FaultSite> time_logical_fault(const DeformedCode& dc, const Schedule& s);

/// The trivial counterpart through one edge: an initialization fault, flipped
/// reports of every flux/deformed check that anticommutes with X on the edge
/// at every deformed round, and a flipped readout. Verified to have empty
/// syndrome and to preserve sigma.
std::vector<FaultSite> flux_time_string(const DeformedCode& dc, const Schedule& s, size_t edge);

struct FaultWitness {
    size_t weight = 0;
    std::vector<FaultSite> sites;
    bool sigma_flipped = false;
};

/// Exhaustive ascending-weight search (with syndrome-guided pruning) for the
/// lightest fault set with empty syndrome that is not a spacetime stabilizer:
/// it flips sigma or leaves a residual logical on the final state. Returns
/// nothing if no such set exists up to w_max. Throws BudgetError when the
/// enumeration space is too large.
std::optional<FaultWitness> fault_distance_search(const DeformedCode& dc, const Schedule& s,
                                                  size_t w_max);

}  // namespace gauging
