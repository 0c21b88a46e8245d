#include "gauging/plan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "gauging/errors.hpp"

namespace gauging {

bool BasisChangeRecord::is_identity() const {
    for (Gate g : gates) {
        if (g != Gate::identity) return false;
    }
    return true;
}

PauliOp BasisChangeRecord::apply(const PauliOp& p) const {
    PauliOp out = p;
    for (size_t q = 0; q < gates.size(); ++q) {
        switch (gates[q]) {
            case Gate::identity:
                break;
            case Gate::hadamard:
                out.conj_h(q);
                break;
            case Gate::sh:
                out.conj_sh(q);
                break;
        }
    }
    return out;
}

PauliOp BasisChangeRecord::undo(const PauliOp& p) const {
    PauliOp out = p;
    for (size_t q = 0; q < gates.size(); ++q) {
        switch (gates[q]) {
            case Gate::identity:
                break;
            case Gate::hadamard:
                out.conj_h(q);
                break;
            case Gate::sh:
                out.conj_hsdg(q);
                break;
        }
    }
    return out;
}

void BasisChangeRecord::apply_to_tableau(Tableau& t) const {
    for (size_t q = 0; q < gates.size(); ++q) {
        switch (gates[q]) {
            case Gate::identity:
                break;
            case Gate::hadamard:
                t.apply_h(q);
                break;
            case Gate::sh:
                t.apply_h(q);
                t.apply_s(q);
                break;
        }
    }
}

void BasisChangeRecord::undo_on_tableau(Tableau& t) const {
    for (size_t q = 0; q < gates.size(); ++q) {
        switch (gates[q]) {
            case Gate::identity:
                break;
            case Gate::hadamard:
                t.apply_h(q);
                break;
            case Gate::sh:
                // (S*H)^dag = H * S^3
                t.apply_s(q);
                t.apply_s(q);
                t.apply_s(q);
                t.apply_h(q);
                break;
        }
    }
}

BasisChangeResult basis_change_to_x(const StabilizerCode& code, const PauliOp& L) {
    if (L.n != code.n) {
        throw ValidationError("logical operator size does not match the code");
    }
    for (size_t j = 0; j < code.checks.size(); ++j) {
        if (!L.commutes(code.checks[j])) {
            throw ValidationError("logical anticommutes with check " +
                                  (j < code.labels.size() ? code.labels[j] : std::to_string(j)));
        }
    }
    BasisChangeRecord record;
    record.gates.assign(code.n, BasisChangeRecord::Gate::identity);
    for (size_t q = 0; q < code.n; ++q) {
        const bool x = L.x.get(q), z = L.z.get(q);
        if (x && z) {
            record.gates[q] = BasisChangeRecord::Gate::sh;
        } else if (z) {
            record.gates[q] = BasisChangeRecord::Gate::hadamard;
        }
    }
    BasisChangeResult out;
    out.record = record;
    out.logical = record.apply(L);
    std::vector<PauliOp> checks;
    checks.reserve(code.checks.size());
    for (const auto& c : code.checks) checks.push_back(record.apply(c));
    out.code = StabilizerCode(code.n, std::move(checks), code.labels);
    return out;
}

namespace {

std::vector<size_t> restricted_z_support(const PauliOp& check, const BitVec& lsupp) {
    std::vector<size_t> qs;
    for (size_t q : check.z.ones()) {
        if (lsupp.get(q)) qs.push_back(q);
    }
    return qs;
}

}  // namespace

GaugingPlan matching_edges(const StabilizerCode& code, const PauliOp& L) {
    if (L.n != code.n) {
        throw ValidationError("logical operator size does not match the code");
    }
    if (!L.is_x_type()) {
        throw ValidationError("matching requires an X-type logical (apply basis_change_to_x first)");
    }
    GaugingPlan plan;
    plan.logical = L;
    std::map<size_t, size_t> vid;
    for (size_t q : L.x.ones()) {
        vid[q] = plan.graph.add_vertex(q);
    }
    std::map<std::pair<size_t, size_t>, size_t> edge_of_pair;
    std::vector<BitVec> rows;
    for (size_t j = 0; j < code.checks.size(); ++j) {
        const auto qs = restricted_z_support(code.checks[j], L.x);
        if (qs.empty()) continue;
        if (qs.size() % 2 != 0) {
            throw ValidationError("check " +
                                  (j < code.labels.size() ? code.labels[j] : std::to_string(j)) +
                                  " has odd Z-type support on the logical (does not commute)");
        }
        plan.deformed_checks.push_back(j);
        std::vector<size_t> path;
        for (size_t i = 0; i + 1 < qs.size(); i += 2) {
            size_t u = vid.at(qs[i]), v = vid.at(qs[i + 1]);
            if (u > v) std::swap(u, v);
            auto it = edge_of_pair.find({u, v});
            size_t eid;
            if (it == edge_of_pair.end()) {
                eid = plan.graph.add_edge(u, v);
                edge_of_pair[{u, v}] = eid;
            } else {
                eid = it->second;
            }
            path.push_back(eid);
        }
        plan.paths.push_back(std::move(path));
    }
    const size_t E = plan.graph.edge_count();
    plan.matching = BitMatrix(plan.deformed_checks.size(), E);
    for (size_t i = 0; i < plan.paths.size(); ++i) {
        for (size_t e : plan.paths[i]) plan.matching.set(i, e, true);
    }
    plan.cycles = BitMatrix(0, E);
    plan.full_cycles = BitMatrix(0, E);
    return plan;
}

GaugingPlan add_expander_edges(GaugingPlan plan,
                               const std::vector<std::pair<size_t, size_t>>& extra) {
    for (const auto& [u, v] : extra) plan.graph.add_edge(u, v);
    const size_t E = plan.graph.edge_count();
    if (plan.matching.cols < E) {
        plan.matching = BitMatrix::hstack(
            plan.matching, BitMatrix(plan.matching.rows, E - plan.matching.cols));
    }
    // Any previously computed cycle data is stale once edges change.
    plan.cycles = BitMatrix(0, E);
    plan.full_cycles = BitMatrix(0, E);
    plan.dim_u = 0;
    return plan;
}

namespace {

BitVec tree_path_to_root(const std::vector<std::optional<GaugingGraph::TreeLink>>& parent,
                         size_t v, size_t num_edges) {
    BitVec path(num_edges);
    while (parent[v].has_value()) {
        path.flip(parent[v]->edge);
        v = parent[v]->parent;
    }
    return path;
}

}  // namespace

BitMatrix cycle_basis(const GaugingGraph& graph) {
    const auto parent = graph.spanning_tree();  // throws if disconnected
    const size_t E = graph.edge_count();
    std::vector<bool> in_tree(E, false);
    for (const auto& link : parent) {
        if (link.has_value()) in_tree[link->edge] = true;
    }
    std::vector<BitVec> rows;
    for (size_t e = 0; e < E; ++e) {
        if (in_tree[e]) continue;
        BitVec cyc = tree_path_to_root(parent, graph.edge(e).u, E);
        cyc.xor_with(tree_path_to_root(parent, graph.edge(e).v, E));
        cyc.flip(e);
        rows.push_back(std::move(cyc));
    }
    // Greedy pairwise weight reduction to a fixpoint.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < rows.size(); ++i) {
            for (size_t j = 0; j < rows.size(); ++j) {
                if (i == j) continue;
                BitVec cand = rows[i];
                cand.xor_with(rows[j]);
                if (cand.popcount() < rows[i].popcount()) {
                    rows[i] = std::move(cand);
                    changed = true;
                }
            }
        }
    }
    BitMatrix out(rows.size(), E);
    for (size_t i = 0; i < rows.size(); ++i) out.set_row(i, rows[i]);
    return out;
}

size_t redundant_cycle_dim(const StabilizerCode& code, const PauliOp& L) {
    const BitMatrix sym = code.symplectic();
    std::vector<size_t> untouched;
    for (size_t j = 0; j < code.checks.size(); ++j) {
        BitVec overlap = code.checks[j].z;
        bool touches = false;
        for (size_t q : overlap.ones()) {
            if (L.x.get(q)) {
                touches = true;
                break;
            }
        }
        if (!touches) untouched.push_back(j);
    }
    const size_t nullity_all = code.checks.size() - sym.rank();
    const BitMatrix cm = sym.select_rows(untouched);
    const size_t nullity_c = untouched.size() - cm.rank();
    return nullity_all - nullity_c;
}

BitMatrix relation_cycles(const StabilizerCode& code, const GaugingPlan& plan) {
    std::vector<size_t> order = plan.deformed_checks;
    std::set<size_t> deformed(order.begin(), order.end());
    for (size_t j = 0; j < code.checks.size(); ++j) {
        if (!deformed.count(j)) order.push_back(j);
    }
    const BitMatrix stacked = code.symplectic().select_rows(order);
    const BitMatrix relations = stacked.transposed().nullspace();
    const size_t E = plan.graph.edge_count();
    BitMatrix out(relations.rows, E);
    for (size_t r = 0; r < relations.rows; ++r) {
        BitVec cyc(E);
        for (size_t i = 0; i < plan.deformed_checks.size(); ++i) {
            if (relations.get(r, i)) cyc.xor_with(plan.matching.row(i));
        }
        out.set_row(r, cyc);
    }
    return out;
}

namespace {

void collect_short_cycles(const GaugingGraph& graph, std::vector<BitVec>& pool) {
    const size_t V = graph.vertex_count(), E = graph.edge_count();
    // Parallel-edge pairs.
    for (size_t a = 0; a < E; ++a) {
        for (size_t b = a + 1; b < E; ++b) {
            if (graph.edge(a) == graph.edge(b)) {
                BitVec v(E);
                v.set(a, true);
                v.set(b, true);
                pool.push_back(std::move(v));
            }
        }
    }
    // Triangles, all parallel-copy combinations.
    for (size_t a = 0; a < V; ++a) {
        for (size_t b = a + 1; b < V; ++b) {
            const auto ab = graph.edges_between(a, b);
            if (ab.empty()) continue;
            for (size_t c = b + 1; c < V; ++c) {
                for (size_t e1 : ab) {
                    for (size_t e2 : graph.edges_between(b, c)) {
                        for (size_t e3 : graph.edges_between(a, c)) {
                            BitVec v(E);
                            v.set(e1, true);
                            v.set(e2, true);
                            v.set(e3, true);
                            pool.push_back(std::move(v));
                        }
                    }
                }
            }
        }
    }
    // Quads: three vertex orderings per 4-subset.
    for (size_t a = 0; a < V; ++a) {
        for (size_t b = a + 1; b < V; ++b) {
            for (size_t c = b + 1; c < V; ++c) {
                for (size_t d = c + 1; d < V; ++d) {
                    const size_t orders[3][4] = {{a, b, c, d}, {a, b, d, c}, {a, c, b, d}};
                    for (const auto& o : orders) {
                        for (size_t e1 : graph.edges_between(o[0], o[1])) {
                            for (size_t e2 : graph.edges_between(o[1], o[2])) {
                                for (size_t e3 : graph.edges_between(o[2], o[3])) {
                                    for (size_t e4 : graph.edges_between(o[3], o[0])) {
                                        BitVec v(E);
                                        v.set(e1, true);
                                        v.set(e2, true);
                                        v.set(e3, true);
                                        v.set(e4, true);
                                        pool.push_back(std::move(v));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

}  // namespace

GaugingPlan select_flux_checks(GaugingPlan plan, const StabilizerCode& code) {
    plan.full_cycles = cycle_basis(plan.graph);
    const size_t E = plan.graph.edge_count();

    // The operative dimension is the rank of the relation-induced cycles; the
    // nullity-difference count is an upper bound, strict only when distinct
    // relations project through coincident deformation paths.
    const BitMatrix uimg = relation_cycles(code, plan);
    plan.dim_u = uimg.rank();
    if (plan.dim_u > redundant_cycle_dim(code, plan.logical)) {
        throw ValidationError("relation-cycle rank exceeds the redundant dimension");
    }
    if (plan.full_cycles.rows < plan.dim_u) {
        throw ValidationError("cycle space smaller than the relation-cycle dimension");
    }
    const size_t target = plan.full_cycles.rows - plan.dim_u;

    std::vector<BitVec> pool;
    collect_short_cycles(plan.graph, pool);
    for (size_t r = 0; r < plan.full_cycles.rows; ++r) pool.push_back(plan.full_cycles.row(r));
    std::sort(pool.begin(), pool.end(), [](const BitVec& a, const BitVec& b) {
        const size_t wa = a.popcount(), wb = b.popcount();
        if (wa != wb) return wa < wb;
        return a.str() < b.str();
    });
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    BitMatrix basis = uimg;
    plan.cycles = BitMatrix(0, E);
    for (const BitVec& cand : pool) {
        if (plan.cycles.rows == target) break;
        if (in_row_space(basis.row_reduce(), cand)) continue;
        basis.append_row(cand);
        plan.cycles.append_row(cand);
    }
    if (plan.cycles.rows != target) {
        throw ValidationError("independence shortfall while retaining flux cycles");
    }
    return plan;
}

BoundaryMaps boundary_maps(const GaugingGraph& graph, const BitMatrix& cycles) {
    BoundaryMaps maps;
    maps.boundary = graph.incidence();
    maps.coboundary = maps.boundary.transposed();
    maps.coboundary2 = cycles;
    maps.boundary2 = cycles.transposed();
    return maps;
}

std::vector<size_t> route_boundary(const GaugingGraph& graph,
                                   const std::vector<size_t>& boundary_vertices) {
    if (boundary_vertices.size() % 2 != 0) {
        throw ValidationError("boundary vertex set must have even size");
    }
    std::vector<size_t> remaining = boundary_vertices;
    std::sort(remaining.begin(), remaining.end());
    BitVec acc(graph.edge_count());
    while (!remaining.empty()) {
        const size_t a = remaining.front();
        remaining.erase(remaining.begin());
        // Nearest partner by BFS level; ties resolved by BFS visit order.
        std::vector<bool> seen(graph.vertex_count(), false);
        std::vector<std::optional<GaugingGraph::TreeLink>> parent(graph.vertex_count());
        std::vector<size_t> queue{a};
        seen[a] = true;
        size_t head = 0;
        std::optional<size_t> partner;
        while (head < queue.size() && !partner.has_value()) {
            const size_t u = queue[head++];
            if (u != a && std::find(remaining.begin(), remaining.end(), u) != remaining.end()) {
                partner = u;
                break;
            }
            for (size_t e = 0; e < graph.edge_count(); ++e) {
                const auto& ed = graph.edge(e);
                size_t other;
                if (ed.u == u) {
                    other = ed.v;
                } else if (ed.v == u) {
                    other = ed.u;
                } else {
                    continue;
                }
                if (!seen[other]) {
                    seen[other] = true;
                    parent[other] = GaugingGraph::TreeLink{u, e};
                    queue.push_back(other);
                }
            }
        }
        if (!partner.has_value()) {
            throw ValidationError("no path between boundary vertices");
        }
        remaining.erase(std::find(remaining.begin(), remaining.end(), *partner));
        size_t v = *partner;
        while (parent[v].has_value()) {
            acc.flip(parent[v]->edge);
            v = parent[v]->parent;
        }
    }
    return acc.ones();
}

GaugingPlan plan_with_routed_paths(const StabilizerCode& code, const PauliOp& L,
                                   GaugingGraph graph) {
    if (L.n != code.n) {
        throw ValidationError("logical operator size does not match the code");
    }
    if (!L.is_x_type()) {
        throw ValidationError("routing requires an X-type logical");
    }
    if (!graph.connected()) {
        throw ValidationError("graph is not connected");
    }
    std::map<size_t, size_t> vid;
    for (size_t v = 0; v < graph.vertex_count(); ++v) {
        const auto& vx = graph.vertex(v);
        if (vx.qubit.has_value()) vid[*vx.qubit] = v;
    }
    for (size_t q : L.x.ones()) {
        if (!vid.count(q)) {
            throw ValidationError("support qubit " + std::to_string(q) + " has no vertex");
        }
    }
    GaugingPlan plan;
    plan.logical = L;
    plan.graph = std::move(graph);
    const size_t E = plan.graph.edge_count();
    std::vector<BitVec> rows;
    for (size_t j = 0; j < code.checks.size(); ++j) {
        const auto qs = restricted_z_support(code.checks[j], L.x);
        if (qs.empty()) continue;
        if (qs.size() % 2 != 0) {
            throw ValidationError("check " +
                                  (j < code.labels.size() ? code.labels[j] : std::to_string(j)) +
                                  " has odd Z-type support on the logical (does not commute)");
        }
        plan.deformed_checks.push_back(j);
        std::vector<size_t> boundary;
        for (size_t q : qs) boundary.push_back(vid.at(q));
        plan.paths.push_back(route_boundary(plan.graph, boundary));
    }
    plan.matching = BitMatrix(plan.deformed_checks.size(), E);
    for (size_t i = 0; i < plan.paths.size(); ++i) {
        for (size_t e : plan.paths[i]) plan.matching.set(i, e, true);
    }
    plan.cycles = BitMatrix(0, E);
    plan.full_cycles = BitMatrix(0, E);
    return plan;
}

void GaugingPlan::validate_against(const StabilizerCode& code) const {
    if (logical.n != code.n) {
        throw ValidationError("plan logical does not match the code size");
    }
    if (!logical.is_x_type()) {
        throw ValidationError("plan logical must be X-type");
    }
    for (const auto& c : code.checks) {
        if (!logical.commutes(c)) {
            throw ValidationError("plan logical anticommutes with a check");
        }
    }
    if (!graph.connected()) {
        throw ValidationError("plan graph is not connected");
    }
    // Real vertices must bind exactly the support of L, each once.
    std::set<size_t> bound;
    for (const auto& v : graph.vertices()) {
        if (!v.qubit.has_value()) continue;
        if (!logical.x.get(*v.qubit)) {
            throw ValidationError("vertex binds a qubit outside the logical support");
        }
        if (!bound.insert(*v.qubit).second) {
            throw ValidationError("two vertices bind the same qubit");
        }
    }
    if (bound.size() != logical.x.popcount()) {
        throw ValidationError("logical support not fully covered by vertices");
    }
    // Deformed-check set and path boundaries.
    std::vector<size_t> expect;
    for (size_t j = 0; j < code.checks.size(); ++j) {
        if (!restricted_z_support(code.checks[j], logical.x).empty()) expect.push_back(j);
    }
    if (expect != deformed_checks) {
        throw ValidationError("deformed-check set does not match the code");
    }
    const size_t E = graph.edge_count();
    if (matching.rows != deformed_checks.size() || matching.cols != E ||
        paths.size() != deformed_checks.size()) {
        throw ValidationError("matching matrix shape mismatch");
    }
    const BitMatrix inc = graph.incidence();
    for (size_t i = 0; i < deformed_checks.size(); ++i) {
        BitVec row(E);
        for (size_t e : paths[i]) row.flip(e);
        if (!(row == matching.row(i))) {
            throw ValidationError("path does not match its matching row");
        }
        const BitVec got = inc.mul_vec(row);
        BitVec want(graph.vertex_count());
        for (size_t q : restricted_z_support(code.checks[deformed_checks[i]], logical.x)) {
            const auto v = graph.vertex_for_qubit(q);
            if (!v.has_value()) throw ValidationError("restricted qubit has no vertex");
            want.set(*v, true);
        }
        if (!(got == want)) {
            throw ValidationError("path boundary does not equal the restricted Z support");
        }
    }
    for (const BitMatrix* m : {&cycles, &full_cycles}) {
        for (size_t r = 0; r < m->rows; ++r) {
            if (inc.mul_vec(m->row(r)).any()) {
                throw ValidationError("cycle row has a nonzero boundary");
            }
        }
    }
    if (cycles.rows > 0 && cycles.rank() != cycles.rows) {
        throw ValidationError("retained cycles are not independent");
    }
}

}  // namespace gauging
