#pragma once

#include <string>
#include <vector>

#include "gauging/bitmat.hpp"

namespace gauging {

/// An n-qubit Pauli operator stored as i^phase * X^x * Z^z (X before Z on each
/// qubit). Hermitian operators satisfy phase == |x & z| (mod 2); their sign is
/// exposed through sign()/set_sign().
struct PauliOp {
    size_t n = 0;
    BitVec x, z;
    uint8_t phase = 0;  // exponent of i, mod 4

    PauliOp() = default;
    explicit PauliOp(size_t n_qubits) : n(n_qubits), x(n_qubits), z(n_qubits) {}

    /// Parse "XIZY..." with optional leading '+'/'-'. 'I', '_' and '.' all mean identity.
    static PauliOp from_string(const std::string& s);
    static PauliOp x_on(size_t n, const std::vector<size_t>& qubits);
    static PauliOp z_on(size_t n, const std::vector<size_t>& qubits);
    static PauliOp single(size_t n, size_t q, char p);

    size_t weight() const;
    bool is_identity() const { return !x.any() && !z.any(); }
    bool is_x_type() const { return !z.any(); }
    bool is_z_type() const { return !x.any(); }
    bool is_hermitian() const;
    /// +1 or -1; throws for non-Hermitian phases.
    int sign() const;
    void set_sign(int s);
    char pauli_at(size_t q) const;

    bool commutes(const PauliOp& o) const;
    /// Group product (this * o) with exact phase tracking.
    PauliOp mul(const PauliOp& o) const;

    // Single-qubit / two-qubit Clifford conjugations P -> U P U^dag.
    void conj_h(size_t q);
    void conj_s(size_t q);     // X -> Y, Y -> -X, Z -> Z
    void conj_sdg(size_t q);   // X -> -Y
    void conj_sh(size_t q);    // composite S*H: maps Y -> X (used for basis changes)
    void conj_hsdg(size_t q);  // inverse of conj_sh
    void conj_cx(size_t c, size_t t);
    void conj_x(size_t q);
    void conj_z(size_t q);

    /// Same operator on n + extra qubits (identity on the new ones).
    PauliOp extended(size_t extra) const;
    /// Keep only the listed qubits, reindexed to 0..k-1.
    PauliOp restricted(const std::vector<size_t>& qubits) const;

    /// "+XIZY" rendering; non-Hermitian phases render as "+i"/"-i" prefixes.
    std::string str() const;

    bool operator==(const PauliOp&) const = default;
};

}  // namespace gauging
