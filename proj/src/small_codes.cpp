#include "gauging/small_codes.hpp"

namespace gauging {

namespace {

BitMatrix rows_from_supports(size_t cols, const std::vector<std::vector<size_t>>& supports) {
    BitMatrix m(supports.size(), cols);
    for (size_t r = 0; r < supports.size(); r++) {
        for (size_t q : supports[r]) {
            m.set(r, q, true);
        }
    }
    return m;
}

}  // namespace

CssCode toy_422() {
    return CssCode(rows_from_supports(4, {{0, 1, 2, 3}}),
                   rows_from_supports(4, {{0, 1, 2, 3}}));
}

CssCode surface_code_d2() {
    return CssCode(rows_from_supports(4, {{0, 1, 2, 3}}),
                   rows_from_supports(4, {{0, 1}, {2, 3}}));
}

CssCode surface_code_d3() {
    return CssCode(
        rows_from_supports(9, {{1, 2, 4, 5}, {3, 4, 6, 7}, {0, 1}, {7, 8}}),
        rows_from_supports(9, {{0, 1, 3, 4}, {4, 5, 7, 8}, {2, 5}, {3, 6}}));
}

PauliOp surface_code_d3_logical_x() { return PauliOp::x_on(9, {0, 3, 6}); }
PauliOp surface_code_d3_logical_z() { return PauliOp::z_on(9, {0, 1, 2}); }
PauliOp surface_code_d2_logical_x() { return PauliOp::x_on(4, {0, 1}); }
PauliOp surface_code_d2_logical_z() { return PauliOp::z_on(4, {0, 2}); }

}  // namespace gauging
