#include "gauging/pauli.hpp"

#include <bit>

#include "gauging/errors.hpp"

namespace gauging {

PauliOp PauliOp::from_string(const std::string& s) {
    size_t start = 0;
    int sgn = +1;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        sgn = s[0] == '-' ? -1 : +1;
        start = 1;
    }
    PauliOp p(s.size() - start);
    for (size_t i = start; i < s.size(); i++) {
        size_t q = i - start;
        switch (s[i]) {
            case 'X':
                p.x.set(q, true);
                break;
            case 'Z':
                p.z.set(q, true);
                break;
            case 'Y':
                p.x.set(q, true);
                p.z.set(q, true);
                p.phase = (p.phase + 1) & 3;
                break;
            case 'I':
            case '_':
            case '.':
                break;
            default:
                throw ValidationError("PauliOp::from_string: unexpected character");
        }
    }
    if (sgn < 0) {
        p.phase = (p.phase + 2) & 3;
    }
    return p;
}

PauliOp PauliOp::x_on(size_t n, const std::vector<size_t>& qubits) {
    PauliOp p(n);
    for (size_t q : qubits) {
        p.x.set(q, true);
    }
    return p;
}

PauliOp PauliOp::z_on(size_t n, const std::vector<size_t>& qubits) {
    PauliOp p(n);
    for (size_t q : qubits) {
        p.z.set(q, true);
    }
    return p;
}

PauliOp PauliOp::single(size_t n, size_t q, char c) {
    PauliOp p(n);
    if (c == 'X' || c == 'Y') {
        p.x.set(q, true);
    }
    if (c == 'Z' || c == 'Y') {
        p.z.set(q, true);
    }
    if (c == 'Y') {
        p.phase = 1;
    }
    return p;
}

size_t PauliOp::weight() const {
    size_t c = 0;
    for (size_t i = 0; i < x.w.size(); i++) {
        c += std::popcount(x.w[i] | z.w[i]);
    }
    return c;
}

bool PauliOp::is_hermitian() const {
    size_t y = x.dot(z) ? 1 : 0;  // parity of Y count
    return ((phase & 1) == (y & 1));
}

int PauliOp::sign() const {
    size_t y = 0;
    for (size_t i = 0; i < x.w.size(); i++) {
        y += std::popcount(x.w[i] & z.w[i]);
    }
    int d = (int(phase) - int(y % 4) + 8) & 3;
    if (d == 0) {
        return +1;
    }
    if (d == 2) {
        return -1;
    }
    throw ValidationError("PauliOp::sign: operator is not Hermitian");
}

void PauliOp::set_sign(int s) {
    int cur = sign();
    if (cur != s) {
        phase = (phase + 2) & 3;
    }
}

char PauliOp::pauli_at(size_t q) const {
    bool xb = x.get(q);
    bool zb = z.get(q);
    if (xb && zb) {
        return 'Y';
    }
    if (xb) {
        return 'X';
    }
    if (zb) {
        return 'Z';
    }
    return 'I';
}

bool PauliOp::commutes(const PauliOp& o) const {
    if (n != o.n) {
        throw ValidationError("PauliOp::commutes: size mismatch");
    }
    return !(x.dot(o.z) ^ z.dot(o.x));
}

PauliOp PauliOp::mul(const PauliOp& o) const {
    if (n != o.n) {
        throw ValidationError("PauliOp::mul: size mismatch");
    }
    PauliOp r(n);
    size_t cross = 0;  // Z-past-X reorderings pick up (-1) each
    for (size_t i = 0; i < x.w.size(); i++) {
        cross += std::popcount(z.w[i] & o.x.w[i]);
        r.x.w[i] = x.w[i] ^ o.x.w[i];
        r.z.w[i] = z.w[i] ^ o.z.w[i];
    }
    r.phase = (phase + o.phase + 2 * (cross & 1)) & 3;
    return r;
}

void PauliOp::conj_h(size_t q) {
    bool xb = x.get(q);
    bool zb = z.get(q);
    if (xb && zb) {
        phase = (phase + 2) & 3;  // Y -> -Y
    }
    x.set(q, zb);
    z.set(q, xb);
}

void PauliOp::conj_s(size_t q) {
    if (x.get(q)) {
        phase = (phase + 1) & 3;
        z.flip(q);
    }
}

void PauliOp::conj_sdg(size_t q) {
    if (x.get(q)) {
        phase = (phase + 3) & 3;
        z.flip(q);
    }
}

void PauliOp::conj_sh(size_t q) {
    conj_h(q);
    conj_s(q);
}

void PauliOp::conj_hsdg(size_t q) {
    conj_sdg(q);
    conj_h(q);
}

void PauliOp::conj_cx(size_t c, size_t t) {
    // In the i^phase * X^x * Z^z representation CX is phase-free.
    x.set(t, x.get(t) ^ x.get(c));
    z.set(c, z.get(c) ^ z.get(t));
}

void PauliOp::conj_x(size_t q) {
    if (z.get(q)) {
        phase = (phase + 2) & 3;
    }
}

void PauliOp::conj_z(size_t q) {
    if (x.get(q)) {
        phase = (phase + 2) & 3;
    }
}

PauliOp PauliOp::extended(size_t extra) const {
    PauliOp p(n + extra);
    for (size_t i = 0; i < x.w.size(); i++) {
        p.x.w[i] = x.w[i];
        p.z.w[i] = z.w[i];
    }
    p.phase = phase;
    return p;
}

PauliOp PauliOp::restricted(const std::vector<size_t>& qubits) const {
    PauliOp p(qubits.size());
    for (size_t i = 0; i < qubits.size(); i++) {
        p.x.set(i, x.get(qubits[i]));
        p.z.set(i, z.get(qubits[i]));
    }
    // Preserve Hermitian sign rather than raw phase bits.
    size_t y_full = 0;
    for (size_t i = 0; i < x.w.size(); i++) {
        y_full += std::popcount(x.w[i] & z.w[i]);
    }
    size_t y_kept = 0;
    for (size_t i = 0; i < p.x.w.size(); i++) {
        y_kept += std::popcount(p.x.w[i] & p.z.w[i]);
    }
    p.phase = uint8_t((int(phase) - int(y_full % 4) + int(y_kept % 4) + 8) & 3);
    return p;
}

std::string PauliOp::str() const {
    size_t y = 0;
    for (size_t i = 0; i < x.w.size(); i++) {
        y += std::popcount(x.w[i] & z.w[i]);
    }
    int d = (int(phase) - int(y % 4) + 8) & 3;
    std::string out;
    switch (d) {
        case 0:
            out = "+";
            break;
        case 1:
            out = "+i";
            break;
        case 2:
            out = "-";
            break;
        default:
            out = "-i";
            break;
    }
    for (size_t q = 0; q < n; q++) {
        out += pauli_at(q);
    }
    return out;
}

}  // namespace gauging
