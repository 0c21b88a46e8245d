#pragma once

#include "gauging/code.hpp"

namespace gauging {

/// [[4,2,2]] code with checks XXXX and ZZZZ.
CssCode toy_422();

/// [[4,1,2]] rotated surface code: X check on all four qubits, Z checks on
/// the two horizontal pairs.
CssCode surface_code_d2();

/// [[9,1,3]] rotated surface code with the standard 3x3 layout (qubit q at
/// row q/3, column q%3).
CssCode surface_code_d3();

/// Minimum-weight logical representatives for the surface codes above.
PauliOp surface_code_d3_logical_x();  // X on the left column {0,3,6}
PauliOp surface_code_d3_logical_z();  // Z on the top row {0,1,2}
PauliOp surface_code_d2_logical_x();  // X on {0,1}
PauliOp surface_code_d2_logical_z();  // Z on {0,2}

}  // namespace gauging
