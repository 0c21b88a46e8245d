#pragma once

#include <map>
#include <string>
#include <vector>

#include "gauging/bitmat.hpp"
#include "gauging/pauli.hpp"

namespace gauging {

/// A stabilizer code given by a list of (possibly dependent) commuting checks.
struct StabilizerCode {
    size_t n = 0;
    std::vector<PauliOp> checks;
    std::vector<std::string> labels;  // empty, or one label per check

    StabilizerCode() = default;
    StabilizerCode(size_t n_qubits, std::vector<PauliOp> check_list,
                   std::vector<std::string> check_labels = {});

    /// Throws unless all checks act on n qubits, are Hermitian, and commute
    /// pairwise.
    void validate() const;

    /// Symplectic check matrix, one [X|Z] row of width 2n per check.
    BitMatrix symplectic() const;
    size_t rank() const { return symplectic().rank(); }
    size_t k() const { return n - rank(); }

    /// Sign-free membership of p's symplectic row in the check row space.
    bool in_check_group(const PauliOp& p) const;
    /// Commutes with every check and lies outside the check group.
    bool is_logical(const PauliOp& p) const;
};

/// CSS code as a pair of orthogonal parity-check matrices.
struct CssCode {
    BitMatrix hx, hz;

    CssCode() = default;
    /// Throws unless the column counts match and hx * hz^T = 0.
    CssCode(BitMatrix hx_in, BitMatrix hz_in);

    size_t n() const { return hx.cols; }
    size_t k() const { return n() - hx.rank() - hz.rank(); }

    /// All X rows (labeled "X<i>") followed by all Z rows ("Z<i>").
    StabilizerCode to_stabilizer() const;
};

/// Check-weight and qubit-degree histograms of a code's Tanner graph.
struct TannerReport {
    std::map<size_t, size_t> x_weights;      // X-type checks by weight
    std::map<size_t, size_t> z_weights;      // Z-type checks by weight
    std::map<size_t, size_t> mixed_weights;  // anything else
    std::map<size_t, size_t> degrees;        // qubits by check degree
    size_t max_weight = 0;
    size_t max_degree = 0;

    bool operator==(const TannerReport&) const = default;
    std::string str() const;
};

TannerReport tanner_report(const StabilizerCode& code);
TannerReport tanner_report(const CssCode& code);

}  // namespace gauging
