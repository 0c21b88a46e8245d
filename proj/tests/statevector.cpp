#include "statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace gauging::testing {

using cd = std::complex<double>;

StateVector StateVector::zero_state(size_t n) {
    StateVector s;
    s.n = n;
    s.amp.assign(size_t(1) << n, cd(0));
    s.amp[0] = cd(1);
    return s;
}

StateVector StateVector::plus_state(size_t n) {
    StateVector s;
    s.n = n;
    double a = 1.0 / std::sqrt(double(size_t(1) << n));
    s.amp.assign(size_t(1) << n, cd(a));
    return s;
}

void StateVector::apply_h(size_t q) {
    size_t mask = size_t(1) << q;
    double inv = 1.0 / std::sqrt(2.0);
    for (size_t b = 0; b < amp.size(); b++) {
        if (!(b & mask)) {
            cd a0 = amp[b];
            cd a1 = amp[b | mask];
            amp[b] = inv * (a0 + a1);
            amp[b | mask] = inv * (a0 - a1);
        }
    }
}

void StateVector::apply_s(size_t q) {
    size_t mask = size_t(1) << q;
    for (size_t b = 0; b < amp.size(); b++) {
        if (b & mask) {
            amp[b] *= cd(0, 1);
        }
    }
}

void StateVector::apply_cx(size_t c, size_t t) {
    size_t cm = size_t(1) << c;
    size_t tm = size_t(1) << t;
    for (size_t b = 0; b < amp.size(); b++) {
        if ((b & cm) && !(b & tm)) {
            std::swap(amp[b], amp[b | tm]);
        }
    }
}

void StateVector::apply_x(size_t q) {
    size_t mask = size_t(1) << q;
    for (size_t b = 0; b < amp.size(); b++) {
        if (!(b & mask)) {
            std::swap(amp[b], amp[b | mask]);
        }
    }
}

void StateVector::apply_z(size_t q) {
    size_t mask = size_t(1) << q;
    for (size_t b = 0; b < amp.size(); b++) {
        if (b & mask) {
            amp[b] = -amp[b];
        }
    }
}

void StateVector::apply_pauli(const PauliOp& p) {
    if (p.n != n) {
        throw std::invalid_argument("StateVector::apply_pauli: size mismatch");
    }
    static const cd I_POW[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
    size_t xmask = 0;
    size_t zmask = 0;
    for (size_t q = 0; q < n; q++) {
        if (p.x.get(q)) {
            xmask |= size_t(1) << q;
        }
        if (p.z.get(q)) {
            zmask |= size_t(1) << q;
        }
    }
    std::vector<cd> out(amp.size());
    cd ph = I_POW[p.phase & 3];
    for (size_t b = 0; b < amp.size(); b++) {
        cd v = amp[b] * ph;
        if (std::popcount(b & zmask) & 1) {
            v = -v;
        }
        out[b ^ xmask] = v;
    }
    amp = std::move(out);
}

double StateVector::project(const PauliOp& p, int outcome) {
    StateVector moved = *this;
    moved.apply_pauli(p);
    double s = outcome < 0 ? -1.0 : 1.0;
    for (size_t b = 0; b < amp.size(); b++) {
        amp[b] = 0.5 * (amp[b] + s * moved.amp[b]);
    }
    double nrm = norm();
    if (nrm < 1e-12) {
        throw std::runtime_error("StateVector::project: zero-probability branch");
    }
    for (auto& a : amp) {
        a /= nrm;
    }
    return nrm * nrm;
}

bool StateVector::stabilized_by(const PauliOp& p) const {
    StateVector moved = *this;
    moved.apply_pauli(p);
    double diff = 0;
    for (size_t b = 0; b < amp.size(); b++) {
        diff += std::norm(moved.amp[b] - amp[b]);
    }
    return diff < 1e-18;
}

double StateVector::norm() const {
    double s = 0;
    for (const auto& a : amp) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

bool state_matches(const Tableau& t, const StateVector& sv) {
    for (const auto& g : t.stab) {
        if (!sv.stabilized_by(g)) return false;
    }
    return true;
}

}  // namespace gauging::testing
