#pragma once

#include <random>
#include <vector>

#include "gauging/pauli.hpp"

namespace gauging {

struct MeasureResult {
    int outcome = 0;          // +1 or -1
    bool deterministic = false;
};

/// Canonical form of a stabilizer group: symplectic RREF of the generator
/// rows [X|Z] with the sign of each canonical generator. Two tableaus encode
/// the same state iff their canonical forms compare equal.
struct CanonicalTableau {
    BitMatrix rows;  // k x 2n
    BitVec signs;    // bit set means -1

    bool operator==(const CanonicalTableau&) const = default;
};

/// Stabilizer-state simulator with destabilizer bookkeeping. All generator
/// phases are exact; measurement supports sampled (caller-provided RNG) and
/// forced outcomes.
struct Tableau {
    size_t n = 0;
    std::vector<PauliOp> stab;
    std::vector<PauliOp> destab;

    static Tableau zero_state(size_t n);
    static Tableau plus_state(size_t n);
    /// Build a full tableau from n independent pairwise-commuting generators
    /// on n qubits; destabilizers are completed by solving the symplectic
    /// pairing constraints.
    static Tableau from_stabilizers(const std::vector<PauliOp>& gens);

    void apply_h(size_t q);
    void apply_s(size_t q);
    void apply_cx(size_t c, size_t t);
    void apply_x(size_t q);
    void apply_z(size_t q);
    /// Apply a Pauli operator to the state (flips signs of anticommuting rows).
    void apply_pauli(const PauliOp& p);

    /// Measure a Hermitian Pauli; random outcomes drawn from `rng`.
    MeasureResult measure(const PauliOp& p, std::mt19937_64& rng);
    /// Measure with a forced outcome; throws if the forced value contradicts a
    /// deterministic outcome.
    MeasureResult measure_forced(const PauliOp& p, int forced);

    /// True iff +p is in the stabilizer group.
    bool stabilizes(const PauliOp& p) const;

    void extend_zero(size_t count);
    void extend_plus(size_t count);
    /// Remove qubits that are in a product state with the rest; throws
    /// ValidationError when a listed qubit is still entangled.
    void discard(const std::vector<size_t>& qubits);

    CanonicalTableau canonical() const;

  private:
    MeasureResult measure_impl(const PauliOp& p, int forced, std::mt19937_64* rng);
};

}  // namespace gauging
