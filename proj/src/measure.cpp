#include "gauging/measure.hpp"

#include <algorithm>
#include <stdexcept>

#include "gauging/errors.hpp"

namespace gauging {

namespace {

// Byproduct assignment: c'_root = 0, accumulated along the spanning tree so
// that delta c' = z; consistency on non-tree edges is guaranteed because every
// flux cycle has +1 parity after the star measurements.
std::vector<bool> solve_byproduct(const GaugingGraph& g, const std::vector<int>& edge_outcomes) {
    const auto parent = g.spanning_tree();
    std::vector<bool> cprime(g.vertex_count(), false);
    std::vector<bool> done(g.vertex_count(), false);
    done[g.root] = true;
    // Parents are BFS-discovered, so repeated passes settle quickly; a simple
    // worklist keeps it linear without assuming an order.
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (size_t v = 0; v < g.vertex_count(); ++v) {
            if (done[v] || !parent[v].has_value()) continue;
            const size_t p = parent[v]->parent;
            if (!done[p]) continue;
            cprime[v] = cprime[p] ^ (edge_outcomes[parent[v]->edge] < 0);
            done[v] = true;
            progressed = true;
        }
    }
    for (size_t e = 0; e < g.edge_count(); ++e) {
        const bool flip = edge_outcomes[e] < 0;
        if ((cprime[g.edge(e).u] ^ cprime[g.edge(e).v]) != flip) {
            throw std::logic_error("edge outcomes are inconsistent with a coboundary");
        }
    }
    return cprime;
}

// The post-measurement state already carries the byproduct (it equals
// X_V(c') (1 + sigma L)/2 |psi>); the byproduct is reported for Pauli-frame
// tracking, not applied again.
GaugeOutcome finish(const GaugingPlan& plan, const std::vector<int>& vertex_outcomes,
                    const std::vector<int>& edge_outcomes, size_t n_base) {
    GaugeOutcome out;
    out.vertex_outcomes = vertex_outcomes;
    out.edge_outcomes = edge_outcomes;
    out.sigma = 1;
    for (int e : vertex_outcomes) out.sigma *= e;
    const auto cprime = solve_byproduct(plan.graph, edge_outcomes);
    out.byproduct = PauliOp(n_base);
    for (size_t v = 0; v < plan.graph.vertex_count(); ++v) {
        const auto& q = plan.graph.vertex(v).qubit;
        if (cprime[v] && q.has_value()) out.byproduct.x.set(*q, true);
    }
    return out;
}

}  // namespace

GaugeOutcome gauge_measure(Tableau& t, const GaugingPlan& plan, GaugeMode mode,
                           std::mt19937_64& rng) {
    if (t.n != plan.logical.n) {
        throw ValidationError("tableau size does not match the plan");
    }
    if (!plan.graph.connected()) {
        throw ValidationError("plan graph is not connected");
    }
    const auto& g = plan.graph;
    const size_t n = t.n;
    const size_t E = g.edge_count();
    const size_t V = g.vertex_count();

    std::vector<int> vertex_outcomes(V, 1), edge_outcomes(E, 1);

    if (mode == GaugeMode::algorithm1) {
        t.extend_zero(E);
        for (size_t v = 0; v < V; ++v) {
            PauliOp a(n + E);
            if (g.vertex(v).qubit.has_value()) a.x.set(*g.vertex(v).qubit, true);
            for (size_t e : g.incident_edges(v)) a.x.set(n + e, true);
            vertex_outcomes[v] = t.measure(a, rng).outcome;
        }
        for (size_t e = 0; e < E; ++e) {
            edge_outcomes[e] = t.measure(PauliOp::single(n + E, n + e, 'Z'), rng).outcome;
        }
        std::vector<size_t> edge_qubits;
        for (size_t e = 0; e < E; ++e) edge_qubits.push_back(n + e);
        t.discard(edge_qubits);
        return finish(plan, vertex_outcomes, edge_outcomes, n);
    }

    // Circuit mode: dummy vertices are materialized as |+> qubits so that every
    // star reduces to a single-qubit X measurement between two entanglers.
    std::vector<size_t> dummies;
    for (size_t v = 0; v < V; ++v) {
        if (!g.vertex(v).qubit.has_value()) dummies.push_back(v);
    }
    t.extend_zero(E);
    t.extend_plus(dummies.size());
    auto qubit_of = [&](size_t v) -> size_t {
        if (g.vertex(v).qubit.has_value()) return *g.vertex(v).qubit;
        const size_t i = std::find(dummies.begin(), dummies.end(), v) - dummies.begin();
        return n + E + i;
    };
    auto entangle = [&] {
        for (size_t v = 0; v < V; ++v) {
            for (size_t e : g.incident_edges(v)) t.apply_cx(qubit_of(v), n + e);
        }
    };
    entangle();
    for (size_t v = 0; v < V; ++v) {
        vertex_outcomes[v] =
            t.measure(PauliOp::single(t.n, qubit_of(v), 'X'), rng).outcome;
    }
    entangle();
    for (size_t e = 0; e < E; ++e) {
        edge_outcomes[e] = t.measure(PauliOp::single(t.n, n + e, 'Z'), rng).outcome;
    }
    std::vector<size_t> aux;
    for (size_t e = 0; e < E; ++e) aux.push_back(n + e);
    for (size_t i = 0; i < dummies.size(); ++i) aux.push_back(n + E + i);
    t.discard(aux);
    return finish(plan, vertex_outcomes, edge_outcomes, n);
}

std::vector<GaugeOutcome> gauge_measure_parallel(Tableau& t, const ParallelPlanSet& set,
                                                 GaugeMode mode, std::mt19937_64& rng) {
    std::vector<GaugeOutcome> out;
    for (const auto& plan : set.plans) {
        out.push_back(gauge_measure(t, plan, mode, rng));
    }
    return out;
}

std::vector<int> hyper_gauge_measure(Tableau& t, const Hypergraph& hg, std::mt19937_64& rng) {
    const size_t n = t.n;
    const size_t H = hg.hyperedges.size();
    const BitMatrix inc = hg.incidence();
    t.extend_zero(H);
    std::vector<int> outcomes;
    for (size_t v = 0; v < hg.vertices.size(); ++v) {
        PauliOp a(n + H);
        if (hg.vertices[v].qubit.has_value()) a.x.set(*hg.vertices[v].qubit, true);
        for (size_t h = 0; h < H; ++h) {
            if (inc.get(v, h)) a.x.set(n + h, true);
        }
        outcomes.push_back(t.measure(a, rng).outcome);
    }
    return outcomes;
}

Hypergraph css_init_hypergraph(const CssCode& css) {
    Hypergraph hg;
    for (size_t r = 0; r < css.hx.rows; ++r) {
        hg.add_vertex(std::nullopt, "X" + std::to_string(r));
    }
    for (size_t q = 0; q < css.hx.cols; ++q) {
        std::vector<size_t> verts;
        for (size_t r = 0; r < css.hx.rows; ++r) {
            if (css.hx.get(r, q)) verts.push_back(r);
        }
        hg.add_hyperedge(std::move(verts));
    }
    return hg;
}

Tableau css_init_state(const CssCode& css, std::mt19937_64& rng, std::vector<int>* outcomes) {
    const Hypergraph hg = css_init_hypergraph(css);
    Tableau t = Tableau::zero_state(0);
    const auto eps = hyper_gauge_measure(t, hg, rng);
    if (outcomes != nullptr) *outcomes = eps;
    return t;
}

}  // namespace gauging
