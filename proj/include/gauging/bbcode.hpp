#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gauging/code.hpp"

namespace gauging {

/// Monomial x^a y^b in F2[x,y] / (x^l - 1, y^m - 1).
struct Monomial {
    int64_t a = 0;
    int64_t b = 0;

    bool operator==(const Monomial&) const = default;
};

using Poly = std::vector<Monomial>;

/// "1", "x", "y^3", "x^2y", ...
std::string mono_label(Monomial t);

/// Bivariate-bicycle CSS code: H_X = [A|B], H_Z = [B^T|A^T] over the l*m
/// monomial group. Qubits are all L (row-major monomial order) then all R;
/// checks are labeled by monomials in the same order.
struct BBCode {
    size_t l = 0;
    size_t m = 0;
    Poly a, b;
    CssCode css;
    // Logical-basis polynomials when known (the built-in gross / double-gross
    // tables); logical_op throws if the needed entry is missing.
    std::optional<Poly> f, g, h;

    static BBCode build(size_t l, size_t m, const Poly& a, const Poly& b);
    static BBCode gross();         // [[144,12,12]]
    static BBCode double_gross();  // [[288,12,18]]

    size_t n() const { return 2 * l * m; }
    size_t mono_index(Monomial t) const;
    Monomial mono_reduce(Monomial t) const;
    Monomial mono_mul(Monomial s, Monomial t) const;
    Monomial mono_inv(Monomial t) const;

    /// L-block qubit index of monomial t (R block is l*m + mono_index).
    size_t qubit_l(Monomial t) const { return mono_index(t); }
    size_t qubit_r(Monomial t) const { return l * m + mono_index(t); }

    enum class Logical { x_bar, x_bar_prime, z_bar, z_bar_prime };

    /// Named logical operator; validated to commute with all checks and to lie
    /// outside the check row space.
    PauliOp logical_op(Monomial alpha, Logical which) const;
};

}  // namespace gauging
