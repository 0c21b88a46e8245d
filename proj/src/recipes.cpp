#include "gauging/recipes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "gauging/errors.hpp"

namespace gauging {

StabilizerCode tensor_code(const StabilizerCode& a, const StabilizerCode& b) {
    std::vector<PauliOp> checks;
    std::vector<std::string> labels;
    for (size_t j = 0; j < a.checks.size(); ++j) {
        checks.push_back(a.checks[j].extended(b.n));
        labels.push_back("a:" + (a.labels.empty() ? "c" + std::to_string(j) : a.labels[j]));
    }
    for (size_t j = 0; j < b.checks.size(); ++j) {
        PauliOp p(a.n + b.n);
        for (size_t q = 0; q < b.n; ++q) {
            p.x.set(a.n + q, b.checks[j].x.get(q));
            p.z.set(a.n + q, b.checks[j].z.get(q));
        }
        p.phase = b.checks[j].phase;
        checks.push_back(p);
        labels.push_back("b:" + (b.labels.empty() ? "c" + std::to_string(j) : b.labels[j]));
    }
    return StabilizerCode(a.n + b.n, std::move(checks), std::move(labels));
}

namespace {

PauliOp shift_right(const PauliOp& p, size_t left_pad, size_t total) {
    PauliOp out(total);
    for (size_t q = 0; q < p.n; ++q) {
        out.x.set(left_pad + q, p.x.get(q));
        out.z.set(left_pad + q, p.z.get(q));
    }
    out.phase = p.phase;
    return out;
}

}  // namespace

RecipePlan recipe_ladder(const StabilizerCode& code, const PauliOp& la, const PauliOp& lb) {
    if (la.n != code.n || lb.n != code.n) {
        throw ValidationError("ladder logicals must act on the code's qubits");
    }
    std::vector<size_t> sup_a, sup_b;
    for (size_t q = 0; q < code.n; ++q) {
        if (la.x.get(q) || la.z.get(q)) sup_a.push_back(q);
        if (lb.x.get(q) || lb.z.get(q)) sup_b.push_back(q);
    }
    for (size_t q : sup_a) {
        if (lb.x.get(q) || lb.z.get(q)) {
            throw ValidationError("ladder qubits not distinct: qubit " + std::to_string(q) +
                                  " is in both supports");
        }
    }
    if (sup_a.size() != sup_b.size()) {
        throw ValidationError("ladder support length mismatch: " +
                              std::to_string(sup_a.size()) + " vs " +
                              std::to_string(sup_b.size()));
    }

    RecipePlan rp;
    BasisChangeResult rot = basis_change_to_x(code, la.mul(lb));
    rp.code = std::move(rot.code);
    rp.logical = std::move(rot.logical);
    rp.record = std::move(rot.record);

    rp.plan = matching_edges(rp.code, rp.logical);
    auto vertex_of = [&](size_t q) { return *rp.plan.graph.vertex_for_qubit(q); };
    std::vector<std::pair<size_t, size_t>> extra;
    auto want_edge = [&](size_t u, size_t v) {
        bool pending = std::find(extra.begin(), extra.end(),
                                 std::make_pair(std::min(u, v), std::max(u, v))) != extra.end();
        if (rp.plan.graph.edges_between(u, v).empty() && !pending) {
            extra.push_back({std::min(u, v), std::max(u, v)});
        }
    };
    for (const auto& rail : {sup_a, sup_b}) {
        for (size_t i = 0; i + 1 < rail.size(); ++i) {
            want_edge(vertex_of(rail[i]), vertex_of(rail[i + 1]));
        }
    }
    for (size_t i = 0; i < sup_a.size(); ++i) {  // rungs
        want_edge(vertex_of(sup_a[i]), vertex_of(sup_b[i]));
    }
    rp.plan = add_expander_edges(std::move(rp.plan), extra);
    rp.plan = select_flux_checks(std::move(rp.plan), rp.code);
    rp.plan.validate_against(rp.code);
    return rp;
}

RecipePlan recipe_ladder(const StabilizerCode& code_a, const StabilizerCode& code_b,
                         const PauliOp& la, const PauliOp& lb) {
    StabilizerCode merged = tensor_code(code_a, code_b);
    return recipe_ladder(merged, la.extended(code_b.n),
                         shift_right(lb, code_a.n, merged.n));
}

RecipePlan recipe_shor(const StabilizerCode& code, const PauliOp& L,
                       const std::vector<std::pair<size_t, size_t>>& dummy_edges) {
    if (!L.is_x_type()) {
        throw ValidationError("the Shor-style recipe requires an X-type logical");
    }
    const std::vector<size_t> support = L.x.ones();
    const size_t D = support.size();
    if (D == 0) throw ValidationError("logical has empty support");

    GaugingGraph g;
    for (size_t q : support) g.add_vertex(q);
    for (size_t i = 0; i < D; ++i) g.add_vertex(std::nullopt);
    for (size_t i = 0; i < D; ++i) g.add_edge(i, D + i);  // pendants
    for (const auto& [a, b] : dummy_edges) {
        if (a >= D || b >= D) {
            throw ValidationError("dummy edge endpoint out of range");
        }
        g.add_edge(D + a, D + b);
    }
    // The dummy part on its own must be connected (it carries the GHZ state).
    if (D > 1) {
        std::vector<size_t> comp(D);
        for (size_t i = 0; i < D; ++i) comp[i] = i;
        std::function<size_t(size_t)> find = [&](size_t x) {
            return comp[x] == x ? x : comp[x] = find(comp[x]);
        };
        for (const auto& [a, b] : dummy_edges) comp[find(a)] = find(b);
        for (size_t i = 1; i < D; ++i) {
            if (find(i) != find(0)) {
                throw ValidationError("dummy graph is not connected");
            }
        }
    }

    RecipePlan rp;
    rp.code = code;
    rp.logical = L;
    rp.record.gates.assign(code.n, BasisChangeRecord::Gate::identity);
    rp.plan = select_flux_checks(plan_with_routed_paths(code, L, std::move(g)), code);
    rp.plan.validate_against(rp.code);
    return rp;
}

Hypergraph ckbb_hypergraph(const StabilizerCode& code, const PauliOp& L, size_t layers) {
    if (!L.is_x_type()) {
        throw ValidationError("the multi-layer recipe requires an X-type logical");
    }
    const std::vector<size_t> support = L.x.ones();
    const size_t s = support.size();
    std::map<size_t, size_t> col;
    for (size_t i = 0; i < s; ++i) col[support[i]] = i;

    // Distinct Z-restriction hyperedges over the support columns.
    std::set<std::vector<size_t>> seen;
    std::vector<std::vector<size_t>> restriction;
    for (const auto& chk : code.checks) {
        std::vector<size_t> verts;
        for (size_t q : support) {
            if (chk.z.get(q)) verts.push_back(col[q]);
        }
        if (verts.empty()) continue;
        if (seen.insert(verts).second) restriction.push_back(std::move(verts));
    }

    Hypergraph hg;
    for (size_t q : support) hg.add_vertex(q);
    for (size_t layer = 1; layer <= layers; ++layer) {
        for (size_t i = 0; i < s; ++i) {
            hg.add_vertex(std::nullopt, "d" + std::to_string(layer) + "_" + std::to_string(i));
        }
    }
    // Per-layer copies of the restriction hyperedges, then the line edges
    // joining the copies of each vertex.
    for (size_t layer = 0; layer <= layers; ++layer) {
        for (const auto& he : restriction) {
            std::vector<size_t> verts;
            for (size_t i : he) verts.push_back(layer * s + i);
            hg.add_hyperedge(std::move(verts));
        }
    }
    for (size_t layer = 0; layer < layers; ++layer) {
        for (size_t i = 0; i < s; ++i) {
            hg.add_hyperedge({layer * s + i, (layer + 1) * s + i});
        }
    }
    return hg;
}

}  // namespace gauging
