#include "gauging/measure.hpp"

#include <gtest/gtest.h>

#include <random>

#include "gauging/errors.hpp"
#include "gauging/small_codes.hpp"
#include "statevector.hpp"

using namespace gauging;
using gauging::testing::state_matches;
using gauging::testing::StateVector;
using gauging::testing::SyncedState;

namespace {

// Random code with Z-type checks of even overlap with supp(L); occasionally a
// redundant product check is appended so some fixtures have dim U > 0.
struct Fixture {
    StabilizerCode code;
    PauliOp logical;
    GaugingPlan plan;
};

PauliOp random_even_z_check(size_t n, const BitVec& lx, std::mt19937_64& rng) {
    while (true) {
        PauliOp p(n);
        for (size_t q = 0; q < n; ++q) p.z.set(q, rng() & 1);
        if (!p.z.any()) continue;
        size_t overlap = 0;
        for (size_t q : lx.ones()) overlap += p.z.get(q);
        if (overlap % 2 == 0) return p;
    }
}

Fixture random_fixture(std::mt19937_64& rng, bool with_dummies) {
    const size_t n = 4 + rng() % 5;        // 4..8 qubits
    const size_t s = 2 + rng() % (n - 1);  // support size 2..n
    std::vector<size_t> pool(n);
    for (size_t q = 0; q < n; ++q) pool[q] = q;
    for (size_t i = 0; i < s; ++i) std::swap(pool[i], pool[i + rng() % (n - i)]);
    std::vector<size_t> support(pool.begin(), pool.begin() + s);
    std::sort(support.begin(), support.end());

    Fixture fx;
    fx.logical = PauliOp::x_on(n, support);
    std::vector<PauliOp> checks;
    const size_t n_checks = 1 + rng() % 3;
    for (size_t j = 0; j < n_checks; ++j) {
        checks.push_back(random_even_z_check(n, fx.logical.x, rng));
    }
    if (checks.size() >= 2 && (rng() & 1)) {
        checks.push_back(checks[0].mul(checks[1]));  // redundant: dim U > 0
    }
    fx.code = StabilizerCode(n, checks);

    GaugingGraph g;
    for (size_t q : support) g.add_vertex(q);
    const size_t dummies = with_dummies ? 1 + rng() % 3 : 0;
    for (size_t i = 0; i < dummies; ++i) g.add_vertex(std::nullopt);
    for (size_t v = 1; v < g.vertex_count(); ++v) g.add_edge(rng() % v, v);
    const size_t extra = rng() % 4;
    for (size_t i = 0; i < extra; ++i) {
        size_t a = rng() % g.vertex_count();
        size_t b = rng() % g.vertex_count();
        if (a != b) g.add_edge(a, b);
    }

    fx.plan = select_flux_checks(plan_with_routed_paths(fx.code, fx.logical, g), fx.code);
    fx.plan.validate_against(fx.code);
    return fx;
}

// Run both modes from the same state and seed, cross-check them, verify the
// post-state against the dense oracle, and return sigma.
int oracle_run(const Fixture& fx, const SyncedState& init, uint64_t seed) {
    Tableau t1 = init.t;
    Tableau t2 = init.t;
    std::mt19937_64 rng1(seed), rng2(seed);
    GaugeOutcome r1 = gauge_measure(t1, fx.plan, GaugeMode::algorithm1, rng1);
    GaugeOutcome r2 = gauge_measure(t2, fx.plan, GaugeMode::circuit, rng2);

    EXPECT_EQ(r1.sigma, r2.sigma);
    EXPECT_EQ(r1.vertex_outcomes, r2.vertex_outcomes);
    EXPECT_EQ(r1.edge_outcomes, r2.edge_outcomes);
    EXPECT_EQ(r1.byproduct, r2.byproduct);
    EXPECT_EQ(t1.canonical(), t2.canonical());

    EXPECT_EQ(t1.n, init.t.n);  // edge qubits measured out and discarded
    EXPECT_TRUE(r1.byproduct.is_x_type());
    for (size_t q : r1.byproduct.x.ones()) EXPECT_TRUE(fx.logical.x.get(q));

    StateVector sv = init.sv;
    double prob = sv.project(fx.logical, r1.sigma);
    EXPECT_GT(prob, 1e-9);
    sv.apply_pauli(r1.byproduct);
    EXPECT_TRUE(state_matches(t1, sv));
    return r1.sigma;
}

}  // namespace

TEST(GaugeMeasure, OracleSuiteRandomCodesAndGraphs) {
    std::mt19937_64 gen(20240811);
    size_t runs = 0;
    for (size_t f = 0; f < 12; ++f) {
        const bool with_dummies = (f % 2 == 1);
        Fixture fx = random_fixture(gen, with_dummies);
        for (size_t r = 0; r < 18; ++r) {
            SyncedState init(fx.code.n);
            init.randomize(gen, 24);
            oracle_run(fx, init, gen());
            ++runs;
        }
    }
    EXPECT_GE(runs, 200u);
}

TEST(GaugeMeasure, OracleSuiteMatchedPlan) {
    // Deterministic matched-edge plan on the distance-3 surface code.
    StabilizerCode code = surface_code_d3().to_stabilizer();
    Fixture fx;
    fx.code = code;
    fx.logical = surface_code_d3_logical_x();
    fx.plan = select_flux_checks(matching_edges(code, fx.logical), code);

    std::mt19937_64 gen(7);
    for (size_t r = 0; r < 25; ++r) {
        SyncedState init(9);
        init.randomize(gen, 40);
        oracle_run(fx, init, gen());
    }
}

TEST(GaugeMeasure, DeterministicWhenLogicalInStabilizer) {
    StabilizerCode code(2, {PauliOp::from_string("ZZ")});
    PauliOp L = PauliOp::from_string("XX");
    GaugingPlan plan = select_flux_checks(matching_edges(code, L), code);

    std::mt19937_64 rng(3);
    Tableau plus = Tableau::plus_state(2);  // XX in the stabilizer
    for (int rep = 0; rep < 20; ++rep) {
        Tableau t = plus;
        GaugeOutcome res = gauge_measure(t, plan, GaugeMode::algorithm1, rng);
        EXPECT_EQ(res.sigma, 1);
        EXPECT_EQ(t.canonical(), plus.canonical());
    }

    Tableau minus = Tableau::plus_state(2);  // |+->: -XX in the stabilizer
    minus.apply_z(1);
    for (int rep = 0; rep < 20; ++rep) {
        Tableau t = minus;
        GaugeOutcome res = gauge_measure(t, plan, GaugeMode::circuit, rng);
        EXPECT_EQ(res.sigma, -1);
        EXPECT_EQ(t.canonical(), minus.canonical());
    }

    // On a Bell state the projection is trivial but the post-state carries the
    // byproduct; applying the reported correction restores the input exactly.
    Tableau bell = Tableau::from_stabilizers(
        {PauliOp::from_string("XX"), PauliOp::from_string("ZZ")});
    bool saw_nontrivial_byproduct = false;
    for (int rep = 0; rep < 40; ++rep) {
        Tableau t = bell;
        GaugeOutcome res = gauge_measure(t, plan, GaugeMode::algorithm1, rng);
        EXPECT_EQ(res.sigma, 1);
        t.apply_pauli(res.byproduct);
        EXPECT_EQ(t.canonical(), bell.canonical());
        if (!res.byproduct.is_identity()) saw_nontrivial_byproduct = true;
    }
    EXPECT_TRUE(saw_nontrivial_byproduct);
}

TEST(GaugeMeasure, SigmaFrequencyBinomial) {
    // |00> is not an eigenstate of XX: sigma must be uniform. 1000 runs, 5
    // binomial standard deviations around 500 gives [421, 579].
    StabilizerCode code(2, {PauliOp::from_string("ZZ")});
    PauliOp L = PauliOp::from_string("XX");
    GaugingPlan plan = select_flux_checks(matching_edges(code, L), code);

    // Same logical through a dummy-augmented graph: outcomes stay uniform.
    GaugingGraph withd;
    withd.add_vertex(0);
    withd.add_vertex(1);
    withd.add_vertex(std::nullopt);
    withd.add_edge(0, 2);
    withd.add_edge(1, 2);
    GaugingPlan dummy_plan =
        select_flux_checks(plan_with_routed_paths(code, L, withd), code);

    std::mt19937_64 rng(99);
    for (const GaugingPlan* p : {&plan, &dummy_plan}) {
        size_t plus = 0;
        for (size_t r = 0; r < 1000; ++r) {
            Tableau t = Tableau::zero_state(2);
            if (gauge_measure(t, *p, GaugeMode::algorithm1, rng).sigma == 1) ++plus;
        }
        EXPECT_GE(plus, 421u);
        EXPECT_LE(plus, 579u);
    }
}

TEST(GaugeMeasure, MeasurementIdempotent) {
    StabilizerCode code = surface_code_d3().to_stabilizer();
    PauliOp L = surface_code_d3_logical_x();
    GaugingPlan plan = select_flux_checks(matching_edges(code, L), code);

    std::mt19937_64 gen(42);
    for (int rep = 0; rep < 10; ++rep) {
        SyncedState init(9);
        init.randomize(gen, 30);
        Tableau t = init.t;
        std::mt19937_64 rng(gen());
        int first = gauge_measure(t, plan, GaugeMode::algorithm1, rng).sigma;
        int second = gauge_measure(t, plan, GaugeMode::algorithm1, rng).sigma;
        EXPECT_EQ(first, second);
    }
}

TEST(GaugeMeasure, ByproductRootInvariant) {
    // Moving the spanning-tree root changes c' by a constant, which only
    // changes the projected state by a phase.
    StabilizerCode code = surface_code_d3().to_stabilizer();
    PauliOp L = surface_code_d3_logical_x();
    GaugingPlan plan = select_flux_checks(matching_edges(code, L), code);
    GaugingPlan rerooted = plan;
    rerooted.graph.root = plan.graph.vertex_count() - 1;

    std::mt19937_64 gen(5);
    for (int rep = 0; rep < 10; ++rep) {
        SyncedState init(9);
        init.randomize(gen, 30);
        uint64_t seed = gen();
        Tableau t1 = init.t;
        Tableau t2 = init.t;
        std::mt19937_64 rng1(seed), rng2(seed);
        GaugeOutcome r1 = gauge_measure(t1, plan, GaugeMode::algorithm1, rng1);
        GaugeOutcome r2 = gauge_measure(t2, rerooted, GaugeMode::algorithm1, rng2);
        EXPECT_EQ(r1.sigma, r2.sigma);
        EXPECT_EQ(t1.canonical(), t2.canonical());
    }
}

TEST(GaugeMeasure, ValidatesInput) {
    StabilizerCode code(2, {PauliOp::from_string("ZZ")});
    GaugingPlan plan =
        select_flux_checks(matching_edges(code, PauliOp::from_string("XX")), code);

    Tableau wrong = Tableau::zero_state(3);
    std::mt19937_64 rng(1);
    EXPECT_THROW(gauge_measure(wrong, plan, GaugeMode::algorithm1, rng), ValidationError);

    // Two components: vertices bound but never connected.
    StabilizerCode code4(4, {PauliOp::from_string("ZZII"), PauliOp::from_string("IIZZ")});
    GaugingPlan split = matching_edges(code4, PauliOp::from_string("XXXX"));
    Tableau t = Tableau::zero_state(4);
    EXPECT_THROW(gauge_measure(t, split, GaugeMode::algorithm1, rng), ValidationError);
}

TEST(GaugeMeasureParallel, DisjointLogicalsOracle) {
    StabilizerCode code(4, {PauliOp::from_string("ZZII"), PauliOp::from_string("IIZZ")});
    std::vector<PauliOp> logicals = {PauliOp::from_string("XXII"),
                                     PauliOp::from_string("IIXX")};
    ParallelPlanSet set = parallel_compose(code, logicals);
    for (auto& p : set.plans) p.validate_against(set.code);

    std::mt19937_64 gen(17);
    for (int rep = 0; rep < 20; ++rep) {
        SyncedState init(4);
        init.randomize(gen, 20);
        Tableau t = init.t;
        std::mt19937_64 rng(gen());
        std::vector<GaugeOutcome> res =
            gauge_measure_parallel(t, set, GaugeMode::algorithm1, rng);
        ASSERT_EQ(res.size(), 2u);

        StateVector sv = init.sv;
        for (size_t i = 0; i < 2; ++i) {
            double prob = sv.project(set.plans[i].logical, res[i].sigma);
            ASSERT_GT(prob, 1e-9);
            sv.apply_pauli(res[i].byproduct);
        }
        EXPECT_TRUE(state_matches(t, sv));
    }
}

TEST(CssInit, MatchesDirectPreparation) {
    for (const CssCode& css : {toy_422(), surface_code_d3()}) {
        std::mt19937_64 rng1(11), rng2(11);
        std::vector<int> outcomes;
        Tableau t = css_init_state(css, rng1, &outcomes);
        EXPECT_EQ(t.n, css.n());

        // Direct preparation: |0...0>, then measure the X checks in row order
        // with the same seed.
        Tableau direct = Tableau::zero_state(css.n());
        std::vector<int> direct_outcomes;
        for (size_t r = 0; r < css.hx.rows; ++r) {
            PauliOp chk(css.n());
            chk.x = css.hx.row(r);
            direct_outcomes.push_back(direct.measure(chk, rng2).outcome);
        }
        EXPECT_EQ(outcomes, direct_outcomes);
        EXPECT_EQ(t.canonical(), direct.canonical());

        // Every Z check survives with a +1 sign.
        for (size_t r = 0; r < css.hz.rows; ++r) {
            PauliOp zc(css.n());
            zc.z = css.hz.row(r);
            EXPECT_TRUE(t.stabilizes(zc));
        }
    }

    // The Z logical of the surface code is +1 as well: gauging from |0>^n
    // prepares the logical zero state.
    std::mt19937_64 rng(4);
    Tableau t = css_init_state(surface_code_d3(), rng);
    EXPECT_TRUE(t.stabilizes(surface_code_d3_logical_z()));

    // The hypergraph itself: one dummy vertex per X check, one hyperedge per
    // qubit, incidence = H_X.
    Hypergraph hg = css_init_hypergraph(surface_code_d3());
    EXPECT_EQ(hg.vertices.size(), surface_code_d3().hx.rows);
    EXPECT_EQ(hg.hyperedges.size(), 9u);
    for (const auto& v : hg.vertices) EXPECT_TRUE(v.is_dummy());
    EXPECT_EQ(hg.incidence(), surface_code_d3().hx);
}
