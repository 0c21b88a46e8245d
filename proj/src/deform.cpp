#include "gauging/deform.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "gauging/errors.hpp"

namespace gauging {

namespace {

std::string check_label(const StabilizerCode& code, size_t j) {
    return j < code.labels.size() ? code.labels[j] : "c" + std::to_string(j);
}

// Shared tail of deform/hypergraph_deform: assemble the check list in the
// canonical order (stars, flux, originals) and validate the result.
DeformedCode assemble(const StabilizerCode& code, const PauliOp& logical, size_t n_aux,
                      const std::vector<PauliOp>& stars,
                      const std::vector<std::string>& star_labels,
                      const BitMatrix& flux_rows,
                      const std::vector<size_t>& deformed_checks,
                      const std::vector<std::vector<size_t>>& gammas) {
    DeformedCode dc;
    dc.base = code;
    dc.n_base = code.n;
    dc.n_aux = n_aux;
    const size_t n_total = code.n + n_aux;

    std::vector<PauliOp> checks;
    std::vector<std::string> labels;
    for (size_t i = 0; i < stars.size(); ++i) {
        dc.a_checks.push_back(checks.size());
        checks.push_back(stars[i]);
        labels.push_back(star_labels[i]);
    }
    for (size_t r = 0; r < flux_rows.rows; ++r) {
        PauliOp b(n_total);
        for (size_t e : flux_rows.row(r).ones()) b.z.set(code.n + e, true);
        dc.b_checks.push_back(checks.size());
        checks.push_back(std::move(b));
        labels.push_back("B" + std::to_string(r));
    }
    std::vector<std::optional<size_t>> gamma_of(code.checks.size());
    for (size_t i = 0; i < deformed_checks.size(); ++i) gamma_of[deformed_checks[i]] = i;
    for (size_t j = 0; j < code.checks.size(); ++j) {
        PauliOp s = code.checks[j].extended(n_aux);
        if (gamma_of[j].has_value()) {
            PauliOp zpart(n_total);
            for (size_t e : gammas[*gamma_of[j]]) zpart.z.set(code.n + e, true);
            s = s.mul(zpart);
            dc.s_tilde_checks.push_back(checks.size());
        } else {
            dc.c_checks.push_back(checks.size());
        }
        checks.push_back(std::move(s));
        labels.push_back(check_label(code, j));
    }
    dc.code = StabilizerCode(n_total, std::move(checks), std::move(labels));
    dc.code.validate();  // guards against a non-commuting construction

    const size_t k_base = code.k();
    const size_t k_def = dc.code.k();
    const bool nontrivial = code.is_logical(logical);
    const size_t k_expect = nontrivial ? k_base - 1 : k_base;
    if (k_def != k_expect) {
        throw ValidationError("deformed code has k=" + std::to_string(k_def) + ", expected " +
                              std::to_string(k_expect));
    }
    return dc;
}

}  // namespace

DeformedCode deform(const StabilizerCode& code, const GaugingPlan& plan) {
    plan.validate_against(code);
    const auto& g = plan.graph;
    const size_t E = g.edge_count();

    // Counting identity |E| - C - |V| = -1 for the full cycle basis.
    const size_t c_full =
        plan.full_cycles.rows > 0 ? plan.full_cycles.rows : cycle_basis(g).rows;
    if (E + 1 != c_full + g.vertex_count()) {
        throw ValidationError("cycle basis size violates the counting identity");
    }

    std::vector<PauliOp> stars;
    std::vector<std::string> star_labels;
    for (size_t v = 0; v < g.vertex_count(); ++v) {
        PauliOp a(code.n + E);
        if (g.vertex(v).qubit.has_value()) a.x.set(*g.vertex(v).qubit, true);
        for (size_t e : g.incident_edges(v)) a.x.set(code.n + e, true);
        stars.push_back(std::move(a));
        star_labels.push_back("A_" + g.vertex(v).label);
    }
    DeformedCode dc = assemble(code, plan.logical, E, stars, star_labels, plan.cycles,
                               plan.deformed_checks, plan.paths);
    dc.plan = plan;
    return dc;
}

PauliOp deform_operator(const DeformedCode& dc, const PauliOp& p,
                        const std::vector<size_t>& gamma) {
    if (p.n != dc.n_base) {
        throw ValidationError("operator size does not match the base code");
    }
    const PauliOp& L = dc.plan.logical;
    if (!p.commutes(L)) {
        throw ValidationError("operator anticommutes with the measured logical; no deformed version exists");
    }
    const auto& g = dc.plan.graph;
    BitVec path(g.edge_count());
    for (size_t e : gamma) path.flip(e);
    BitVec want(g.vertex_count());
    for (size_t q : p.z.ones()) {
        if (!L.x.get(q)) continue;
        const auto v = g.vertex_for_qubit(q);
        if (!v.has_value()) throw ValidationError("restricted qubit has no vertex");
        want.set(*v, true);
    }
    if (!(g.incidence().mul_vec(path) == want)) {
        throw ValidationError("path boundary does not match the operator's restricted Z support");
    }
    PauliOp out = p.extended(dc.n_aux);
    PauliOp zpart(out.n);
    for (size_t e : gamma) zpart.z.set(dc.n_base + e, true);
    return out.mul(zpart);
}

PauliOp deform_operator(const DeformedCode& dc, const PauliOp& p) {
    if (p.n != dc.n_base) {
        throw ValidationError("operator size does not match the base code");
    }
    const PauliOp& L = dc.plan.logical;
    if (!p.commutes(L)) {
        throw ValidationError("operator anticommutes with the measured logical; no deformed version exists");
    }
    const auto& g = dc.plan.graph;
    std::vector<size_t> boundary;
    for (size_t q : p.z.ones()) {
        if (!L.x.get(q)) continue;
        const auto v = g.vertex_for_qubit(q);
        if (!v.has_value()) throw ValidationError("restricted qubit has no vertex");
        boundary.push_back(*v);
    }
    return deform_operator(dc, p, route_boundary(g, boundary));
}

size_t Hypergraph::add_vertex(std::optional<size_t> qubit, std::string label) {
    if (qubit.has_value()) {
        for (const auto& v : vertices) {
            if (v.qubit == qubit) {
                throw ValidationError("vertex for qubit " + std::to_string(*qubit) +
                                      " already exists");
            }
        }
    }
    if (label.empty()) {
        label = qubit.has_value() ? "q" + std::to_string(*qubit)
                                  : "d" + std::to_string(vertices.size());
    }
    vertices.push_back({qubit, std::move(label)});
    return vertices.size() - 1;
}

size_t Hypergraph::add_hyperedge(std::vector<size_t> verts) {
    if (verts.empty()) throw ValidationError("empty hyperedge");
    for (size_t i = 0; i < verts.size(); ++i) {
        if (verts[i] >= vertices.size()) throw ValidationError("hyperedge vertex out of range");
        if (i > 0 && verts[i] <= verts[i - 1]) {
            throw ValidationError("hyperedge vertices must be strictly increasing");
        }
    }
    hyperedges.push_back(std::move(verts));
    return hyperedges.size() - 1;
}

BitMatrix Hypergraph::incidence() const {
    BitMatrix m(vertices.size(), hyperedges.size());
    for (size_t h = 0; h < hyperedges.size(); ++h) {
        for (size_t v : hyperedges[h]) m.set(v, h, true);
    }
    return m;
}

std::optional<size_t> Hypergraph::vertex_for_qubit(size_t qubit) const {
    for (size_t v = 0; v < vertices.size(); ++v) {
        if (vertices[v].qubit == qubit) return v;
    }
    return std::nullopt;
}

DeformedCode hypergraph_deform(const StabilizerCode& code, const PauliOp& L,
                               const Hypergraph& hg) {
    if (L.n != code.n) {
        throw ValidationError("logical operator size does not match the code");
    }
    if (!L.is_x_type()) {
        throw ValidationError("hypergraph deformation requires an X-type logical");
    }
    std::set<size_t> bound;
    for (const auto& v : hg.vertices) {
        if (!v.qubit.has_value()) continue;
        if (!L.x.get(*v.qubit)) {
            throw ValidationError("vertex binds a qubit outside the logical support");
        }
        bound.insert(*v.qubit);
    }
    if (bound.size() != L.x.popcount()) {
        throw ValidationError("logical support not fully covered by vertices");
    }
    const size_t H = hg.hyperedges.size();
    const BitMatrix inc = hg.incidence();

    // Deformation paths: solve incidence * gamma = restricted Z support.
    std::vector<size_t> deformed_checks;
    std::vector<std::vector<size_t>> gammas;
    for (size_t j = 0; j < code.checks.size(); ++j) {
        BitVec want(hg.vertices.size());
        bool touches = false;
        for (size_t q : code.checks[j].z.ones()) {
            if (!L.x.get(q)) continue;
            want.set(*hg.vertex_for_qubit(q), true);
            touches = true;
        }
        if (!touches) continue;
        const auto gamma = inc.solve(want);
        if (!gamma.has_value()) {
            throw ValidationError("check " + check_label(code, j) +
                                  " cannot be deformed along the hypergraph");
        }
        deformed_checks.push_back(j);
        gammas.push_back(gamma->ones());
    }

    // Flux checks: kernel of the incidence, retained modulo relation-induced
    // elements (greedy ascending weight), mirroring the graph case.
    const BitMatrix kernel = inc.nullspace();
    const size_t dim_u = redundant_cycle_dim(code, L);
    if (kernel.rows < dim_u) {
        throw ValidationError("hyperedge kernel smaller than the relation dimension");
    }
    const size_t target = kernel.rows - dim_u;

    BitMatrix mrows(deformed_checks.size(), H);
    for (size_t i = 0; i < gammas.size(); ++i) {
        for (size_t e : gammas[i]) mrows.set(i, e, true);
    }
    std::vector<size_t> order = deformed_checks;
    std::set<size_t> dset(order.begin(), order.end());
    for (size_t j = 0; j < code.checks.size(); ++j) {
        if (!dset.count(j)) order.push_back(j);
    }
    const BitMatrix relations = code.symplectic().select_rows(order).transposed().nullspace();
    BitMatrix basis(0, H);
    for (size_t r = 0; r < relations.rows; ++r) {
        BitVec cyc(H);
        for (size_t i = 0; i < deformed_checks.size(); ++i) {
            if (relations.get(r, i)) cyc.xor_with(mrows.row(i));
        }
        basis.append_row(cyc);
    }
    if (basis.rank() != dim_u) {
        throw ValidationError("relation-cycle rank does not match the redundant dimension");
    }
    std::vector<BitVec> pool;
    for (size_t r = 0; r < kernel.rows; ++r) pool.push_back(kernel.row(r));
    // Greedy pairwise weight reduction to a fixpoint, as in cycle_basis, so
    // an ordinary graph given as size-2 hyperedges reproduces deform().
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < pool.size(); ++i) {
            for (size_t j = 0; j < pool.size(); ++j) {
                if (i == j) continue;
                BitVec cand = pool[i];
                cand.xor_with(pool[j]);
                if (cand.popcount() < pool[i].popcount()) {
                    pool[i] = std::move(cand);
                    changed = true;
                }
            }
        }
    }
    std::sort(pool.begin(), pool.end(), [](const BitVec& a, const BitVec& b) {
        const size_t wa = a.popcount(), wb = b.popcount();
        if (wa != wb) return wa < wb;
        return a.str() < b.str();
    });
    BitMatrix flux(0, H);
    for (const BitVec& cand : pool) {
        if (flux.rows == target) break;
        if (in_row_space(basis.row_reduce(), cand)) continue;
        basis.append_row(cand);
        flux.append_row(cand);
    }
    if (flux.rows != target) {
        throw ValidationError("independence shortfall while retaining flux checks");
    }

    std::vector<PauliOp> stars;
    std::vector<std::string> star_labels;
    for (size_t v = 0; v < hg.vertices.size(); ++v) {
        PauliOp a(code.n + H);
        if (hg.vertices[v].qubit.has_value()) a.x.set(*hg.vertices[v].qubit, true);
        for (size_t h = 0; h < H; ++h) {
            if (inc.get(v, h)) a.x.set(code.n + h, true);
        }
        stars.push_back(std::move(a));
        star_labels.push_back("A_" + hg.vertices[v].label);
    }
    return assemble(code, L, H, stars, star_labels, flux, deformed_checks, gammas);
}

DeformedCode hypergraph_deform(const StabilizerCode& code, const PauliOp& L,
                               const std::vector<std::vector<size_t>>& hyperedge_qubits) {
    Hypergraph hg;
    std::vector<size_t> vid(code.n, 0);
    for (size_t q : L.x.ones()) vid[q] = hg.add_vertex(q);
    for (const auto& qs : hyperedge_qubits) {
        std::vector<size_t> verts;
        for (size_t q : qs) {
            if (q >= code.n || !L.x.get(q)) {
                throw ValidationError("hyperedge qubit outside the logical support");
            }
            verts.push_back(vid[q]);
        }
        std::sort(verts.begin(), verts.end());
        hg.add_hyperedge(std::move(verts));
    }
    return hypergraph_deform(code, L, hg);
}

ParallelPlanSet parallel_compose(const StabilizerCode& code,
                                 const std::vector<PauliOp>& logicals) {
    if (logicals.empty()) throw ValidationError("no logicals to compose");
    for (const auto& l : logicals) {
        if (l.n != code.n) throw ValidationError("logical size does not match the code");
    }
    for (size_t q = 0; q < code.n; ++q) {
        for (size_t i = 0; i < logicals.size(); ++i) {
            const char pi = logicals[i].pauli_at(q);
            if (pi == 'I') continue;
            for (size_t j = i + 1; j < logicals.size(); ++j) {
                const char pj = logicals[j].pauli_at(q);
                if (pj != 'I' && pj != pi) {
                    throw ValidationError("logicals " + std::to_string(i) + " and " +
                                          std::to_string(j) + " act on qubit " +
                                          std::to_string(q) + " via " + std::string(1, pi) +
                                          " vs " + std::string(1, pj));
                }
            }
        }
    }
    // Joint basis change: rotate whichever nontrivial Pauli acts on each qubit.
    BasisChangeRecord record;
    record.gates.assign(code.n, BasisChangeRecord::Gate::identity);
    for (size_t q = 0; q < code.n; ++q) {
        for (const auto& l : logicals) {
            const char p = l.pauli_at(q);
            if (p == 'Z') record.gates[q] = BasisChangeRecord::Gate::hadamard;
            if (p == 'Y') record.gates[q] = BasisChangeRecord::Gate::sh;
            if (p != 'I') break;
        }
    }
    ParallelPlanSet set;
    set.record = record;
    std::vector<PauliOp> checks;
    for (const auto& c : code.checks) checks.push_back(record.apply(c));
    set.code = StabilizerCode(code.n, std::move(checks), code.labels);
    for (const auto& l : logicals) {
        const PauliOp lx = record.apply(l);
        GaugingPlan plan = matching_edges(set.code, lx);
        set.plans.push_back(select_flux_checks(std::move(plan), set.code));
    }
    return set;
}

DeformedCode deform_parallel(const ParallelPlanSet& set) {
    if (set.plans.empty()) throw ValidationError("no plans to deform");
    if (set.plans.size() == 1) return deform(set.code, set.plans[0]);
    const StabilizerCode& code = set.code;
    size_t n_aux = 0;
    std::vector<size_t> offset;
    for (const auto& plan : set.plans) {
        plan.validate_against(code);
        offset.push_back(n_aux);
        n_aux += plan.graph.edge_count();
    }
    const size_t n_total = code.n + n_aux;

    DeformedCode dc;
    dc.base = code;
    dc.n_base = code.n;
    dc.n_aux = n_aux;
    std::vector<PauliOp> checks;
    std::vector<std::string> labels;
    for (size_t pi = 0; pi < set.plans.size(); ++pi) {
        const auto& g = set.plans[pi].graph;
        for (size_t v = 0; v < g.vertex_count(); ++v) {
            PauliOp a(n_total);
            if (g.vertex(v).qubit.has_value()) a.x.set(*g.vertex(v).qubit, true);
            for (size_t e : g.incident_edges(v)) a.x.set(code.n + offset[pi] + e, true);
            dc.a_checks.push_back(checks.size());
            checks.push_back(std::move(a));
            labels.push_back("A" + std::to_string(pi) + "_" + g.vertex(v).label);
        }
        for (size_t r = 0; r < set.plans[pi].cycles.rows; ++r) {
            PauliOp b(n_total);
            for (size_t e : set.plans[pi].cycles.row(r).ones()) {
                b.z.set(code.n + offset[pi] + e, true);
            }
            dc.b_checks.push_back(checks.size());
            checks.push_back(std::move(b));
            labels.push_back("B" + std::to_string(pi) + "_" + std::to_string(r));
        }
    }
    for (size_t j = 0; j < code.checks.size(); ++j) {
        PauliOp s = code.checks[j].extended(n_aux);
        bool touched = false;
        for (size_t pi = 0; pi < set.plans.size(); ++pi) {
            const auto& plan = set.plans[pi];
            const auto it = std::find(plan.deformed_checks.begin(), plan.deformed_checks.end(), j);
            if (it == plan.deformed_checks.end()) continue;
            touched = true;
            PauliOp zpart(n_total);
            for (size_t e : plan.paths[it - plan.deformed_checks.begin()]) {
                zpart.z.set(code.n + offset[pi] + e, true);
            }
            s = s.mul(zpart);
        }
        (touched ? dc.s_tilde_checks : dc.c_checks).push_back(checks.size());
        checks.push_back(std::move(s));
        labels.push_back(check_label(code, j));
    }
    dc.code = StabilizerCode(n_total, std::move(checks), std::move(labels));
    dc.code.validate();

    // k drops by the number of independent measured logicals.
    BitMatrix with_logicals = code.symplectic();
    for (const auto& plan : set.plans) {
        BitVec row(2 * code.n);
        for (size_t q : plan.logical.x.ones()) row.set(q, true);
        with_logicals.append_row(row);
    }
    const size_t indep = with_logicals.rank() - code.symplectic().rank();
    if (dc.code.k() != code.k() - indep) {
        throw ValidationError("merged deformation changed k by an unexpected amount");
    }
    return dc;
}

GaugingPlan add_expander_edges_random(const GaugingPlan& base, const StabilizerCode& code,
                                      const RandomEdgeOptions& opt,
                                      const std::function<size_t(const DeformedCode&)>& score) {
    const size_t V = base.graph.vertex_count();
    if (V < 2) throw ValidationError("graph too small for random edges");
    std::mt19937_64 rng(opt.seed);
    size_t best_score = 0;
    size_t best_trial = 0;
    for (size_t trial = 0; trial < opt.max_trials; ++trial) {
        std::vector<std::pair<size_t, size_t>> extra;
        std::vector<size_t> degree(V, 0);
        for (size_t v = 0; v < V; ++v) degree[v] = base.graph.degree(v);
        bool sampled = true;
        for (size_t i = 0; i < opt.edges_to_add; ++i) {
            bool found = false;
            for (size_t attempt = 0; attempt < 1000; ++attempt) {
                const size_t u = static_cast<size_t>(rng() % V);
                const size_t v = static_cast<size_t>(rng() % V);
                if (u == v) continue;
                if (opt.degree_cap > 0 &&
                    (degree[u] + 1 > opt.degree_cap || degree[v] + 1 > opt.degree_cap)) {
                    continue;
                }
                extra.emplace_back(u, v);
                ++degree[u];
                ++degree[v];
                found = true;
                break;
            }
            if (!found) {
                sampled = false;
                break;
            }
        }
        if (!sampled) continue;
        GaugingPlan candidate = add_expander_edges(base, extra);
        candidate = select_flux_checks(std::move(candidate), code);
        const DeformedCode dc = deform(code, candidate);
        const size_t s = score(dc);
        if (s >= opt.accept_threshold) return candidate;
        if (s > best_score) {
            best_score = s;
            best_trial = trial;
        }
    }
    throw BudgetError("no accepted expander augmentation in " + std::to_string(opt.max_trials) +
                      " trials; best trial " + std::to_string(best_trial) + " scored " +
                      std::to_string(best_score) + " (threshold " +
                      std::to_string(opt.accept_threshold) + ")");
}

}  // namespace gauging
