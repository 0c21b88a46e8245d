#include "gauging/code.hpp"

#include <sstream>

#include "gauging/errors.hpp"

namespace gauging {

StabilizerCode::StabilizerCode(size_t n_qubits, std::vector<PauliOp> check_list,
                               std::vector<std::string> check_labels)
    : n(n_qubits), checks(std::move(check_list)), labels(std::move(check_labels)) {
    if (labels.empty()) {
        for (size_t i = 0; i < checks.size(); i++) {
            labels.push_back("c" + std::to_string(i));
        }
    }
    if (labels.size() != checks.size()) {
        throw ValidationError("StabilizerCode: label count does not match check count");
    }
}

void StabilizerCode::validate() const {
    for (size_t i = 0; i < checks.size(); i++) {
        if (checks[i].n != n) {
            throw ValidationError("StabilizerCode: check size mismatch");
        }
        if (!checks[i].is_hermitian()) {
            throw ValidationError("StabilizerCode: non-Hermitian check");
        }
        for (size_t j = 0; j < i; j++) {
            if (!checks[i].commutes(checks[j])) {
                throw ValidationError("StabilizerCode: checks " + labels[j] + " and " +
                                      labels[i] + " do not commute");
            }
        }
    }
}

BitMatrix StabilizerCode::symplectic() const {
    BitMatrix m(checks.size(), 2 * n);
    for (size_t i = 0; i < checks.size(); i++) {
        for (size_t q = 0; q < n; q++) {
            m.set(i, q, checks[i].x.get(q));
            m.set(i, n + q, checks[i].z.get(q));
        }
    }
    return m;
}

bool StabilizerCode::in_check_group(const PauliOp& p) const {
    if (p.n != n) {
        throw ValidationError("StabilizerCode::in_check_group: size mismatch");
    }
    BitVec row(2 * n);
    for (size_t q = 0; q < n; q++) {
        row.set(q, p.x.get(q));
        row.set(n + q, p.z.get(q));
    }
    return in_row_space(symplectic().row_reduce(), row);
}

bool StabilizerCode::is_logical(const PauliOp& p) const {
    for (const PauliOp& c : checks) {
        if (!c.commutes(p)) {
            return false;
        }
    }
    return !in_check_group(p);
}

CssCode::CssCode(BitMatrix hx_in, BitMatrix hz_in)
    : hx(std::move(hx_in)), hz(std::move(hz_in)) {
    if (hx.cols != hz.cols) {
        throw ValidationError("CssCode: column count mismatch");
    }
    BitMatrix prod = hx.mul(hz.transposed());
    for (size_t r = 0; r < prod.rows; r++) {
        if (prod.row_any(r)) {
            throw ValidationError("CssCode: hx and hz are not orthogonal");
        }
    }
}

StabilizerCode CssCode::to_stabilizer() const {
    std::vector<PauliOp> checks;
    std::vector<std::string> labels;
    for (size_t r = 0; r < hx.rows; r++) {
        PauliOp p(n());
        p.x = hx.row(r);
        checks.push_back(p);
        labels.push_back("X" + std::to_string(r));
    }
    for (size_t r = 0; r < hz.rows; r++) {
        PauliOp p(n());
        p.z = hz.row(r);
        checks.push_back(p);
        labels.push_back("Z" + std::to_string(r));
    }
    return StabilizerCode(n(), std::move(checks), std::move(labels));
}

namespace {

void histogram_line(std::ostringstream& out, const char* title,
                    const std::map<size_t, size_t>& hist) {
    out << title << ":";
    for (const auto& [k, v] : hist) {
        out << " " << k << ":" << v;
    }
    out << "\n";
}

}  // namespace

std::string TannerReport::str() const {
    std::ostringstream out;
    histogram_line(out, "X check weights", x_weights);
    histogram_line(out, "Z check weights", z_weights);
    if (!mixed_weights.empty()) {
        histogram_line(out, "mixed check weights", mixed_weights);
    }
    histogram_line(out, "qubit degrees", degrees);
    out << "max weight: " << max_weight << "\n";
    out << "max degree: " << max_degree << "\n";
    return out.str();
}

TannerReport tanner_report(const StabilizerCode& code) {
    TannerReport rep;
    std::vector<size_t> degree(code.n, 0);
    for (const PauliOp& c : code.checks) {
        size_t w = c.weight();
        rep.max_weight = std::max(rep.max_weight, w);
        if (c.is_x_type() && !c.is_identity()) {
            rep.x_weights[w]++;
        } else if (c.is_z_type() && !c.is_identity()) {
            rep.z_weights[w]++;
        } else {
            rep.mixed_weights[w]++;
        }
        for (size_t q = 0; q < code.n; q++) {
            if (c.x.get(q) || c.z.get(q)) {
                degree[q]++;
            }
        }
    }
    for (size_t q = 0; q < code.n; q++) {
        rep.degrees[degree[q]]++;
        rep.max_degree = std::max(rep.max_degree, degree[q]);
    }
    return rep;
}

TannerReport tanner_report(const CssCode& code) {
    return tanner_report(code.to_stabilizer());
}

}  // namespace gauging
