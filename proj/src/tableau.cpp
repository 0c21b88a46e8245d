#include "gauging/tableau.hpp"

#include <algorithm>

#include "gauging/errors.hpp"

namespace gauging {

Tableau Tableau::zero_state(size_t n) {
    Tableau t;
    t.n = n;
    for (size_t q = 0; q < n; q++) {
        t.stab.push_back(PauliOp::single(n, q, 'Z'));
        t.destab.push_back(PauliOp::single(n, q, 'X'));
    }
    return t;
}

Tableau Tableau::plus_state(size_t n) {
    Tableau t;
    t.n = n;
    for (size_t q = 0; q < n; q++) {
        t.stab.push_back(PauliOp::single(n, q, 'X'));
        t.destab.push_back(PauliOp::single(n, q, 'Z'));
    }
    return t;
}

Tableau Tableau::from_stabilizers(const std::vector<PauliOp>& gens) {
    if (gens.empty()) {
        return Tableau();
    }
    size_t n = gens[0].n;
    if (gens.size() != n) {
        throw ValidationError("Tableau::from_stabilizers: need exactly n generators");
    }
    BitMatrix symp(n, 2 * n);
    for (size_t i = 0; i < n; i++) {
        if (gens[i].n != n || !gens[i].is_hermitian()) {
            throw ValidationError("Tableau::from_stabilizers: bad generator");
        }
        for (size_t j = 0; j < i; j++) {
            if (!gens[i].commutes(gens[j])) {
                throw ValidationError("Tableau::from_stabilizers: generators do not commute");
            }
        }
        for (size_t q = 0; q < n; q++) {
            symp.set(i, q, gens[i].x.get(q));
            symp.set(i, n + q, gens[i].z.get(q));
        }
    }
    if (symp.rank() != n) {
        throw ValidationError("Tableau::from_stabilizers: generators are dependent");
    }

    Tableau t;
    t.n = n;
    t.stab = gens;
    // Solve for destabilizers one at a time: <d_i, g_j> = delta_ij and
    // <d_i, d_k> = 0 for k < i, where <a,b> = a.x*b.z + a.z*b.x.
    BitMatrix constraints(0, 0);
    auto symp_row = [n](const PauliOp& p) {
        BitVec r(2 * n);
        for (size_t q = 0; q < n; q++) {
            r.set(q, p.z.get(q));      // pairs with v.x
            r.set(n + q, p.x.get(q));  // pairs with v.z
        }
        return r;
    };
    for (size_t j = 0; j < n; j++) {
        constraints.append_row(symp_row(gens[j]));
    }
    for (size_t i = 0; i < n; i++) {
        BitVec rhs(constraints.rows);
        rhs.set(i, true);
        auto sol = constraints.solve(rhs);
        if (!sol) {
            throw ValidationError("Tableau::from_stabilizers: no symplectic completion");
        }
        PauliOp d(n);
        for (size_t q = 0; q < n; q++) {
            d.x.set(q, sol->get(q));
            d.z.set(q, sol->get(n + q));
        }
        size_t y = 0;
        for (size_t k = 0; k < d.x.w.size(); k++) {
            y += std::popcount(d.x.w[k] & d.z.w[k]);
        }
        d.phase = uint8_t(y % 4) & 3;  // Hermitian, sign +1
        t.destab.push_back(d);
        constraints.append_row(symp_row(d));
    }
    return t;
}

void Tableau::apply_h(size_t q) {
    for (auto& p : stab) {
        p.conj_h(q);
    }
    for (auto& p : destab) {
        p.conj_h(q);
    }
}

void Tableau::apply_s(size_t q) {
    for (auto& p : stab) {
        p.conj_s(q);
    }
    for (auto& p : destab) {
        p.conj_s(q);
    }
}

void Tableau::apply_cx(size_t c, size_t t) {
    for (auto& p : stab) {
        p.conj_cx(c, t);
    }
    for (auto& p : destab) {
        p.conj_cx(c, t);
    }
}

void Tableau::apply_x(size_t q) {
    for (auto& p : stab) {
        p.conj_x(q);
    }
    for (auto& p : destab) {
        p.conj_x(q);
    }
}

void Tableau::apply_z(size_t q) {
    for (auto& p : stab) {
        p.conj_z(q);
    }
    for (auto& p : destab) {
        p.conj_z(q);
    }
}

void Tableau::apply_pauli(const PauliOp& p) {
    for (auto& g : stab) {
        if (!g.commutes(p)) {
            g.phase = (g.phase + 2) & 3;
        }
    }
    for (auto& g : destab) {
        if (!g.commutes(p)) {
            g.phase = (g.phase + 2) & 3;
        }
    }
}

MeasureResult Tableau::measure(const PauliOp& p, std::mt19937_64& rng) {
    return measure_impl(p, 0, &rng);
}

MeasureResult Tableau::measure_forced(const PauliOp& p, int forced) {
    if (forced != 1 && forced != -1) {
        throw ValidationError("Tableau::measure_forced: outcome must be +1 or -1");
    }
    return measure_impl(p, forced, nullptr);
}

MeasureResult Tableau::measure_impl(const PauliOp& p, int forced, std::mt19937_64* rng) {
    if (p.n != n) {
        throw ValidationError("Tableau::measure: size mismatch");
    }
    if (!p.is_hermitian()) {
        throw ValidationError("Tableau::measure: operator is not Hermitian");
    }
    size_t piv = n;
    for (size_t i = 0; i < n; i++) {
        if (!stab[i].commutes(p)) {
            piv = i;
            break;
        }
    }
    if (piv == n) {
        // Deterministic: express p as a product of stabilizers using the
        // destabilizer pairing.
        PauliOp acc(n);
        for (size_t i = 0; i < n; i++) {
            if (!destab[i].commutes(p)) {
                acc = acc.mul(stab[i]);
            }
        }
        if (acc.x != p.x || acc.z != p.z) {
            throw ValidationError("Tableau::measure: internal decomposition failure");
        }
        int outcome = ((acc.phase - p.phase) & 3) == 0 ? +1 : -1;
        if (forced != 0 && forced != outcome) {
            throw ValidationError("Tableau::measure: forced outcome contradicts deterministic value");
        }
        return {outcome, true};
    }

    int outcome = forced != 0 ? forced : (((*rng)() & 1) ? -1 : +1);
    PauliOp old_piv = stab[piv];
    for (size_t i = 0; i < n; i++) {
        if (i != piv && !stab[i].commutes(p)) {
            stab[i] = stab[i].mul(old_piv);
        }
        if (!destab[i].commutes(p)) {
            destab[i] = destab[i].mul(old_piv);
        }
    }
    destab[piv] = old_piv;
    stab[piv] = p;  // post-state is stabilized by outcome * p
    if (outcome < 0) {
        stab[piv].phase = (stab[piv].phase + 2) & 3;
    }
    return {outcome, false};
}

bool Tableau::stabilizes(const PauliOp& p) const {
    for (size_t i = 0; i < n; i++) {
        if (!stab[i].commutes(p)) {
            return false;
        }
    }
    PauliOp acc(n);
    for (size_t i = 0; i < n; i++) {
        if (!destab[i].commutes(p)) {
            acc = acc.mul(stab[i]);
        }
    }
    return acc.x == p.x && acc.z == p.z && ((acc.phase - p.phase) & 3) == 0;
}

void Tableau::extend_zero(size_t count) {
    size_t old_n = n;
    n += count;
    for (auto& p : stab) {
        p = p.extended(count);
    }
    for (auto& p : destab) {
        p = p.extended(count);
    }
    for (size_t q = old_n; q < n; q++) {
        stab.push_back(PauliOp::single(n, q, 'Z'));
        destab.push_back(PauliOp::single(n, q, 'X'));
    }
}

void Tableau::extend_plus(size_t count) {
    size_t old_n = n;
    n += count;
    for (auto& p : stab) {
        p = p.extended(count);
    }
    for (auto& p : destab) {
        p = p.extended(count);
    }
    for (size_t q = old_n; q < n; q++) {
        stab.push_back(PauliOp::single(n, q, 'X'));
        destab.push_back(PauliOp::single(n, q, 'Z'));
    }
}

void Tableau::discard(const std::vector<size_t>& qubits) {
    if (qubits.empty()) {
        return;
    }
    std::vector<bool> drop(n, false);
    for (size_t q : qubits) {
        if (q >= n || drop[q]) {
            throw ValidationError("Tableau::discard: bad qubit list");
        }
        drop[q] = true;
    }
    // Column order: dropped-qubit (x, z) columns first, then the rest. Rows
    // with pivots in the dropped block must be supported entirely inside it.
    std::vector<std::pair<size_t, char>> col_order;
    for (size_t q = 0; q < n; q++) {
        if (drop[q]) {
            col_order.push_back({q, 'x'});
            col_order.push_back({q, 'z'});
        }
    }
    for (size_t q = 0; q < n; q++) {
        if (!drop[q]) {
            col_order.push_back({q, 'x'});
            col_order.push_back({q, 'z'});
        }
    }
    std::vector<PauliOp> rows = stab;
    auto bit_at = [](const PauliOp& p, const std::pair<size_t, char>& col) {
        return col.second == 'x' ? p.x.get(col.first) : p.z.get(col.first);
    };
    size_t r = 0;
    size_t dropped_pivots = 0;
    size_t drop_cols = 2 * qubits.size();
    for (size_t ci = 0; ci < col_order.size() && r < rows.size(); ci++) {
        size_t hit = rows.size();
        for (size_t i = r; i < rows.size(); i++) {
            if (bit_at(rows[i], col_order[ci])) {
                hit = i;
                break;
            }
        }
        if (hit == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[hit]);
        for (size_t i = 0; i < rows.size(); i++) {
            if (i != r && bit_at(rows[i], col_order[ci])) {
                rows[i] = rows[i].mul(rows[r]);
            }
        }
        if (ci < drop_cols) {
            dropped_pivots++;
        }
        r++;
    }
    if (dropped_pivots != qubits.size()) {
        throw ValidationError("Tableau::discard: qubit is entangled with the rest");
    }
    for (size_t i = 0; i < dropped_pivots; i++) {
        for (size_t q = 0; q < n; q++) {
            if (!drop[q] && (rows[i].x.get(q) || rows[i].z.get(q))) {
                throw ValidationError("Tableau::discard: qubit is entangled with the rest");
            }
        }
    }

    std::vector<size_t> keep;
    for (size_t q = 0; q < n; q++) {
        if (!drop[q]) {
            keep.push_back(q);
        }
    }
    std::vector<PauliOp> remaining;
    for (size_t i = dropped_pivots; i < rows.size(); i++) {
        remaining.push_back(rows[i].restricted(keep));
    }
    *this = remaining.empty() ? Tableau() : Tableau::from_stabilizers(remaining);
}

CanonicalTableau Tableau::canonical() const {
    std::vector<PauliOp> rows = stab;
    size_t r = 0;
    for (size_t col = 0; col < 2 * n && r < rows.size(); col++) {
        auto bit = [&](const PauliOp& p) {
            return col < n ? p.x.get(col) : p.z.get(col - n);
        };
        size_t hit = rows.size();
        for (size_t i = r; i < rows.size(); i++) {
            if (bit(rows[i])) {
                hit = i;
                break;
            }
        }
        if (hit == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[hit]);
        for (size_t i = 0; i < rows.size(); i++) {
            if (i != r && bit(rows[i])) {
                rows[i] = rows[i].mul(rows[r]);
            }
        }
        r++;
    }
    CanonicalTableau out;
    out.rows = BitMatrix(rows.size(), 2 * n);
    out.signs = BitVec(rows.size());
    for (size_t i = 0; i < rows.size(); i++) {
        for (size_t q = 0; q < n; q++) {
            out.rows.set(i, q, rows[i].x.get(q));
            out.rows.set(i, n + q, rows[i].z.get(q));
        }
        out.signs.set(i, rows[i].sign() < 0);
    }
    return out;
}

}  // namespace gauging
