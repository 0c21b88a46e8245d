#include "gauging/presets.hpp"

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "gauging/errors.hpp"

namespace gauging {

namespace {

using MonoPath = std::vector<Monomial>;
using MonoEdges = std::vector<std::pair<Monomial, Monomial>>;

// Shared construction. Vertices are named by monomials of f; on the Z side
// the monomial t stands for the R-block qubit of its inverse, which is where
// the paired logical Z-bar-prime acts.
PresetDeformation build(BBCode bb, bool z_side, const MonoEdges& extra,
                        const std::vector<MonoPath>& cycles) {
    PresetDeformation pd;
    pd.bb = std::move(bb);
    const StabilizerCode base = pd.bb.css.to_stabilizer();
    const PauliOp raw = pd.bb.logical_op(
        {0, 0}, z_side ? BBCode::Logical::z_bar_prime : BBCode::Logical::x_bar);
    BasisChangeResult rot = basis_change_to_x(base, raw);
    pd.code = std::move(rot.code);
    pd.logical = std::move(rot.logical);
    pd.record = std::move(rot.record);

    GaugingPlan plan = matching_edges(pd.code, pd.logical);
    auto qubit_of = [&](Monomial t) {
        return z_side ? pd.bb.qubit_r(pd.bb.mono_inv(t)) : pd.bb.qubit_l(t);
    };
    auto vertex_of = [&](Monomial t) {
        const auto v = plan.graph.vertex_for_qubit(qubit_of(t));
        if (!v.has_value()) {
            throw ValidationError("monomial " + mono_label(t) + " is not a graph vertex");
        }
        return *v;
    };
    if (!pd.bb.f.has_value()) {
        throw ValidationError("preset deformation needs the logical-basis polynomial f");
    }
    for (const Monomial& t : *pd.bb.f) {
        const Monomial bound = z_side ? pd.bb.mono_inv(t) : t;
        plan.graph.set_vertex_label(vertex_of(t), mono_label(pd.bb.mono_reduce(bound)));
    }

    std::vector<std::pair<size_t, size_t>> extra_vertices;
    for (const auto& [s, t] : extra) extra_vertices.push_back({vertex_of(s), vertex_of(t)});
    plan = add_expander_edges(std::move(plan), extra_vertices);
    plan = select_flux_checks(std::move(plan), pd.code);  // full basis + dim U

    // Replace the generic retention with the published cycles. Hops between
    // parallel edges take the least-used copy (ties to the lowest edge id)
    // and never reuse an edge within one cycle.
    const size_t E = plan.graph.edge_count();
    BitMatrix preset(0, E);
    std::vector<size_t> usage(E, 0);
    for (const MonoPath& path : cycles) {
        if (path.size() < 3 || !(path.front() == path.back())) {
            throw ValidationError("preset cycle must close on its starting vertex");
        }
        std::set<size_t> chosen;
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            std::optional<size_t> pick;
            for (size_t e : plan.graph.edges_between(vertex_of(path[i]), vertex_of(path[i + 1]))) {
                if (chosen.count(e)) continue;
                if (!pick.has_value() || usage[e] < usage[*pick]) pick = e;
            }
            if (!pick.has_value()) {
                throw ValidationError("no free edge between " + mono_label(path[i]) + " and " +
                                      mono_label(path[i + 1]));
            }
            chosen.insert(*pick);
            ++usage[*pick];
        }
        BitVec row(E);
        for (size_t e : chosen) row.set(e, true);
        preset.append_row(row);
    }
    if (preset.rows != plan.cycles.rows) {
        throw ValidationError("preset lists " + std::to_string(preset.rows) +
                              " cycles but the flux target is " +
                              std::to_string(plan.cycles.rows));
    }
    BitMatrix span = relation_cycles(pd.code, plan);
    const size_t relation_rank = span.rank();
    for (size_t r = 0; r < preset.rows; ++r) span.append_row(preset.row(r));
    if (span.rank() != relation_rank + preset.rows) {
        throw ValidationError("preset cycles are dependent modulo check relations");
    }
    plan.cycles = std::move(preset);
    plan.validate_against(pd.code);
    pd.plan = std::move(plan);
    return pd;
}

const MonoEdges kGrossExtraEdges = {
    {{2, 0}, {5, 3}}, {{2, 0}, {6, 0}}, {{5, 3}, {11, 3}}, {{7, 3}, {11, 3}}};

const std::vector<MonoPath> kGrossCycles = {
    {{9, 0}, {7, 3}, {8, 0}, {9, 0}},
    {{9, 0}, {11, 3}, {7, 3}, {9, 0}},
    {{6, 0}, {7, 0}, {5, 3}, {6, 0}},
    {{6, 0}, {2, 0}, {5, 3}, {6, 0}},
    {{3, 0}, {2, 0}, {5, 3}, {3, 0}},
    {{6, 0}, {7, 0}, {8, 0}, {7, 3}, {6, 0}},
    {{1, 0}, {2, 0}, {5, 3}, {11, 3}, {1, 0}}};

const MonoEdges kDoubleGrossExtraEdges = {
    {{4, 9}, {9, 6}}, {{0, 3}, {11, 0}},  {{7, 0}, {10, 6}}, {{8, 3}, {10, 6}},
    {{0, 0}, {8, 0}}, {{2, 0}, {6, 3}},   {{2, 0}, {6, 3}}};

const std::vector<MonoPath> kDoubleGrossCycles = {
    {{2, 0}, {4, 9}, {9, 6}, {10, 6}, {7, 0}, {6, 3}, {2, 0}},
    {{4, 9}, {6, 6}, {8, 3}, {10, 6}, {8, 9}, {9, 6}, {4, 9}},
    {{0, 0}, {1, 0}, {0, 3}, {10, 6}, {7, 0}, {8, 0}, {0, 0}},
    {{0, 0}, {1, 0}, {2, 0}, {6, 3}, {8, 0}, {0, 0}},
    {{0, 0}, {1, 0}, {2, 0}, {0, 3}, {11, 0}, {0, 0}},
    {{0, 0}, {8, 0}, {9, 0}, {10, 0}, {11, 0}, {0, 0}},
    {{2, 0}, {6, 3}, {5, 6}, {4, 9}, {2, 0}},
    {{4, 9}, {5, 6}, {6, 6}, {4, 9}},
    {{7, 0}, {8, 0}, {6, 3}, {7, 0}},
    {{9, 0}, {10, 0}, {8, 3}, {9, 0}},
    {{0, 0}, {11, 0}, {10, 3}, {0, 0}},
    {{7, 0}, {8, 9}, {10, 6}, {7, 0}},
    {{2, 0}, {6, 3}, {2, 0}}};

}  // namespace

PresetDeformation gross_deformation() {
    return build(BBCode::gross(), false, kGrossExtraEdges, kGrossCycles);
}

PresetDeformation double_gross_deformation() {
    return build(BBCode::double_gross(), false, kDoubleGrossExtraEdges, kDoubleGrossCycles);
}

PresetDeformation gross_z_side_deformation() {
    return build(BBCode::gross(), true, kGrossExtraEdges, kGrossCycles);
}

}  // namespace gauging
