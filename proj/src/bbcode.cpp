#include "gauging/bbcode.hpp"

#include <algorithm>

#include "gauging/errors.hpp"

namespace gauging {

std::string mono_label(Monomial t) {
    std::string out;
    if (t.a == 1) {
        out += "x";
    } else if (t.a > 1) {
        out += "x^" + std::to_string(t.a);
    }
    if (t.b == 1) {
        out += "y";
    } else if (t.b > 1) {
        out += "y^" + std::to_string(t.b);
    }
    return out.empty() ? "1" : out;
}

Monomial BBCode::mono_reduce(Monomial t) const {
    int64_t la = int64_t(l);
    int64_t mb = int64_t(m);
    return {((t.a % la) + la) % la, ((t.b % mb) + mb) % mb};
}

size_t BBCode::mono_index(Monomial t) const {
    Monomial r = mono_reduce(t);
    return size_t(r.a) * m + size_t(r.b);
}

Monomial BBCode::mono_mul(Monomial s, Monomial t) const {
    return mono_reduce({s.a + t.a, s.b + t.b});
}

Monomial BBCode::mono_inv(Monomial t) const {
    return mono_reduce({-t.a, -t.b});
}

BBCode BBCode::build(size_t l, size_t m, const Poly& a, const Poly& b) {
    if (l == 0 || m == 0) {
        throw ValidationError("BBCode: l and m must be positive");
    }
    if (a.empty() || b.empty()) {
        throw ValidationError("BBCode: polynomials must be nonempty");
    }
    BBCode code;
    code.l = l;
    code.m = m;
    auto reduce_poly = [&code](const Poly& p, const char* name) {
        Poly out;
        for (Monomial t : p) {
            Monomial r = code.mono_reduce(t);
            if (std::find(out.begin(), out.end(), r) != out.end()) {
                throw ValidationError(std::string("BBCode: duplicate monomial in ") + name);
            }
            out.push_back(r);
        }
        return out;
    };
    code.a = reduce_poly(a, "A");
    code.b = reduce_poly(b, "B");

    size_t lm = l * m;
    BitMatrix hx(lm, 2 * lm);
    BitMatrix hz(lm, 2 * lm);
    for (size_t i = 0; i < l; i++) {
        for (size_t j = 0; j < m; j++) {
            Monomial r{int64_t(i), int64_t(j)};
            size_t row = code.mono_index(r);
            for (Monomial t : code.a) {
                hx.set(row, code.qubit_l(code.mono_mul(r, t)), true);
                hz.set(row, code.qubit_r(code.mono_mul(r, code.mono_inv(t))), true);
            }
            for (Monomial t : code.b) {
                hx.set(row, code.qubit_r(code.mono_mul(r, t)), true);
                hz.set(row, code.qubit_l(code.mono_mul(r, code.mono_inv(t))), true);
            }
        }
    }
    code.css = CssCode(std::move(hx), std::move(hz));  // checks orthogonality
    return code;
}

BBCode BBCode::gross() {
    BBCode code = build(12, 6,
                        {{3, 0}, {0, 2}, {0, 1}},   // A = x^3 + y^2 + y
                        {{0, 3}, {2, 0}, {1, 0}});  // B = y^3 + x^2 + x
    code.f = Poly{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {6, 0},  {7, 0},
                  {8, 0}, {9, 0}, {1, 3}, {5, 3}, {7, 3}, {11, 3}};
    code.g = Poly{{1, 0}, {2, 1}, {0, 2}, {1, 2}, {2, 3}, {0, 4}};
    code.h = Poly{{0, 0}, {0, 1}, {1, 1}, {0, 2}, {0, 3}, {1, 3}};
    return code;
}

BBCode BBCode::double_gross() {
    BBCode code = build(12, 12,
                        {{3, 0}, {0, 7}, {0, 2}},   // A = x^3 + y^7 + y^2
                        {{0, 3}, {2, 0}, {1, 0}});  // B = y^3 + x^2 + x
    code.f = Poly{{0, 0}, {1, 0}, {2, 0},  {7, 0}, {8, 0}, {9, 0},
                  {10, 0}, {11, 0}, {0, 3}, {6, 3}, {8, 3}, {10, 3},
                  {5, 6}, {6, 6}, {9, 6}, {10, 6}, {4, 9}, {8, 9}};
    return code;
}

PauliOp BBCode::logical_op(Monomial alpha, Logical which) const {
    auto need = [](const std::optional<Poly>& p, const char* name) -> const Poly& {
        if (!p) {
            throw ValidationError(std::string("BBCode::logical_op: polynomial ") + name +
                                  " is not available for this code");
        }
        return *p;
    };
    PauliOp op(n());
    switch (which) {
        case Logical::x_bar:
            for (Monomial t : need(f, "f")) {
                op.x.set(qubit_l(mono_mul(alpha, t)), true);
            }
            break;
        case Logical::x_bar_prime:
            for (Monomial t : need(g, "g")) {
                op.x.set(qubit_l(mono_mul(alpha, t)), true);
            }
            for (Monomial t : need(h, "h")) {
                op.x.set(qubit_r(mono_mul(alpha, t)), true);
            }
            break;
        case Logical::z_bar:
            // Z(alpha h^T, alpha g^T): transposing a monomial inverts it.
            for (Monomial t : need(h, "h")) {
                op.z.set(qubit_l(mono_mul(alpha, mono_inv(t))), true);
            }
            for (Monomial t : need(g, "g")) {
                op.z.set(qubit_r(mono_mul(alpha, mono_inv(t))), true);
            }
            break;
        case Logical::z_bar_prime:
            for (Monomial t : need(f, "f")) {
                op.z.set(qubit_r(mono_mul(alpha, mono_inv(t))), true);
            }
            break;
    }

    // Postconditions: commutes with every check, outside the check row space.
    const BitMatrix& other = op.is_x_type() ? css.hz : css.hx;
    BitVec support = op.is_x_type() ? op.x : op.z;
    if (other.mul_vec(support).any()) {
        throw ValidationError("BBCode::logical_op: operator fails check commutation");
    }
    const BitMatrix& own = op.is_x_type() ? css.hx : css.hz;
    if (in_row_space(own.row_reduce(), support)) {
        throw ValidationError("BBCode::logical_op: operator lies in the check row space");
    }
    return op;
}

}  // namespace gauging
