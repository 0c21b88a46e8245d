#include "gauging/recipes.hpp"

#include <gtest/gtest.h>

#include <random>

#include "gauging/distance.hpp"
#include "gauging/errors.hpp"
#include "gauging/measure.hpp"
#include "gauging/small_codes.hpp"
#include "statevector.hpp"

using namespace gauging;
using gauging::testing::state_matches;
using gauging::testing::SyncedState;

namespace {

size_t row_weight(const BitMatrix& m, size_t r) { return m.row(r).popcount(); }

}  // namespace

TEST(TensorCode, PadsChecksAndPrefixesLabels) {
    StabilizerCode a = toy_422().to_stabilizer();
    StabilizerCode b(2, {PauliOp::from_string("ZZ")}, {"zz"});
    StabilizerCode ab = tensor_code(a, b);
    EXPECT_EQ(ab.n, 6u);
    ASSERT_EQ(ab.checks.size(), 3u);
    EXPECT_EQ(ab.checks[0], PauliOp::from_string("XXXXII"));
    EXPECT_EQ(ab.checks[1], PauliOp::from_string("ZZZZII"));
    EXPECT_EQ(ab.checks[2], PauliOp::from_string("IIIIZZ"));
    EXPECT_EQ(ab.labels[0], "a:X0");
    EXPECT_EQ(ab.labels[1], "a:Z0");
    EXPECT_EQ(ab.labels[2], "b:zz");
    ab.validate();
    EXPECT_EQ(ab.k(), 3u);
}

TEST(RecipeLadder, MergesTwoSurfacePatches) {
    StabilizerCode d3 = surface_code_d3().to_stabilizer();
    PauliOp lx = surface_code_d3_logical_x();
    RecipePlan rp = recipe_ladder(d3, d3, lx, lx);

    EXPECT_EQ(rp.code.n, 18u);
    EXPECT_TRUE(rp.record.is_identity());
    EXPECT_EQ(rp.logical, PauliOp::x_on(18, {0, 3, 6, 9, 12, 15}));

    // Two rails of three support qubits joined by three rungs: the four
    // matched edges already form the rails, so only the rungs are added.
    EXPECT_EQ(rp.plan.graph.vertex_count(), 6u);
    EXPECT_EQ(rp.plan.graph.edge_count(), 7u);
    auto v = [&](size_t q) { return *rp.plan.graph.vertex_for_qubit(q); };
    for (size_t q : {0u, 3u, 6u}) {
        EXPECT_EQ(rp.plan.graph.edges_between(v(q), v(q + 9)).size(), 1u);
    }
    ASSERT_EQ(rp.plan.paths.size(), 4u);
    for (const auto& path : rp.plan.paths) EXPECT_EQ(path.size(), 1u);

    // The two squares of the ladder are the retained flux checks.
    EXPECT_EQ(rp.plan.dim_u, 0u);
    ASSERT_EQ(rp.plan.cycles.rows, 2u);
    EXPECT_EQ(row_weight(rp.plan.cycles, 0), 4u);
    EXPECT_EQ(row_weight(rp.plan.cycles, 1), 4u);

    // Merged code: k = k_A + k_B - 1 and the base distance survives.
    DeformedCode dc = deform(rp.code, rp.plan);
    EXPECT_EQ(dc.code.n, 25u);
    EXPECT_EQ(dc.code.k(), 1u);
    EXPECT_EQ(distance_exact(dc.code, 3), std::optional<size_t>(3));
}

TEST(RecipeLadder, SameBlockPairBecomesSquare) {
    // Both supports in one block: XXII and IIXX multiply to the stabilizer
    // XXXX, so the merge consumes no logical qubit.
    StabilizerCode code = toy_422().to_stabilizer();
    RecipePlan rp =
        recipe_ladder(code, PauliOp::from_string("XXII"), PauliOp::from_string("IIXX"));
    EXPECT_EQ(rp.plan.graph.vertex_count(), 4u);
    EXPECT_EQ(rp.plan.graph.edge_count(), 4u);
    ASSERT_EQ(rp.plan.cycles.rows, 1u);
    EXPECT_EQ(row_weight(rp.plan.cycles, 0), 4u);

    DeformedCode dc = deform(rp.code, rp.plan);
    EXPECT_EQ(dc.code.n, 8u);
    EXPECT_EQ(dc.code.k(), 2u);
}

TEST(RecipeLadder, RejectsBadSupports) {
    StabilizerCode code = toy_422().to_stabilizer();
    try {
        recipe_ladder(code, PauliOp::from_string("XXII"), PauliOp::from_string("XXII"));
        FAIL() << "identical supports must be rejected";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("not distinct"), std::string::npos);
    }
    EXPECT_THROW(
        recipe_ladder(code, PauliOp::from_string("XXII"), PauliOp::from_string("IIIX")),
        ValidationError);
}

TEST(RecipeShor, PendantDummiesAndGhzGraph) {
    StabilizerCode code = toy_422().to_stabilizer();
    PauliOp L = PauliOp::from_string("XXII");
    RecipePlan rp = recipe_shor(code, L, {{0, 1}});

    // Support vertices, one pendant dummy each, and the dummy-dummy edge form
    // a path q0 - d0 - d1 - q1.
    EXPECT_EQ(rp.plan.graph.vertex_count(), 4u);
    EXPECT_EQ(rp.plan.graph.edge_count(), 3u);
    EXPECT_FALSE(rp.plan.graph.vertex(0).is_dummy());
    EXPECT_FALSE(rp.plan.graph.vertex(1).is_dummy());
    EXPECT_TRUE(rp.plan.graph.vertex(2).is_dummy());
    EXPECT_TRUE(rp.plan.graph.vertex(3).is_dummy());
    EXPECT_EQ(rp.plan.cycles.rows, 0u);

    DeformedCode dc = deform(code, rp.plan);
    EXPECT_EQ(dc.code.n, 7u);
    ASSERT_EQ(dc.s_tilde_checks.size(), 1u);
    EXPECT_EQ(dc.code.checks[dc.s_tilde_checks[0]].weight(), 7u);
    EXPECT_EQ(dc.code.k(), 1u);

    // No dummy edges leaves the dummies disconnected; endpoints must be in
    // range; the logical must be X-type.
    EXPECT_THROW(recipe_shor(code, L, {}), ValidationError);
    EXPECT_THROW(recipe_shor(code, L, {{0, 2}}), ValidationError);
    EXPECT_THROW(recipe_shor(code, PauliOp::from_string("ZZII"), {{0, 1}}), ValidationError);
}

TEST(RecipeShor, OutcomesMatchDirectLogicalMeasurement) {
    CssCode toy = toy_422();
    StabilizerCode code = toy.to_stabilizer();
    PauliOp L = PauliOp::from_string("XXII");
    RecipePlan rp = recipe_shor(code, L, {{0, 1}});

    // On random states: whenever the direct measurement of L is deterministic
    // the gauging outcome agrees, and the post-state matches the dense oracle.
    std::mt19937_64 gen(20240812);
    size_t random_states = 0;
    for (int run = 0; run < 40; ++run) {
        SyncedState s(4);
        s.randomize(gen, 24);
        Tableau direct = s.t;
        std::mt19937_64 r1(1000 + run), r2(5000 + run);
        GaugeMode mode = run % 2 ? GaugeMode::circuit : GaugeMode::algorithm1;
        GaugeOutcome out = gauge_measure(s.t, rp.plan, mode, r1);
        MeasureResult mr = direct.measure(L, r2);
        if (mr.deterministic) {
            EXPECT_EQ(out.sigma, mr.outcome);
        } else {
            ++random_states;
        }
        EXPECT_GT(s.sv.project(L, out.sigma), 1e-9);
        s.sv.apply_pauli(out.byproduct);
        EXPECT_TRUE(state_matches(s.t, s.sv));
    }
    EXPECT_GT(random_states, 0u);

    // On the gauged-initialized [[4,2,2]] state L is undetermined: both the
    // gauging measurement and the direct one land near 50/50.
    size_t plus_gauge = 0, plus_direct = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        std::mt19937_64 rng(40000 + rep);
        Tableau t = css_init_state(toy, rng);
        Tableau d = t;
        plus_gauge += gauge_measure(t, rp.plan, GaugeMode::algorithm1, rng).sigma > 0;
        plus_direct += d.measure(L, rng).outcome > 0;
    }
    EXPECT_GE(plus_gauge, 421u);
    EXPECT_LE(plus_gauge, 579u);
    EXPECT_GE(plus_direct, 421u);
    EXPECT_LE(plus_direct, 579u);
}

TEST(CkbbHypergraph, OneLayerMatchesHandBuiltPatch) {
    StabilizerCode code = surface_code_d3().to_stabilizer();
    PauliOp L = surface_code_d3_logical_x();

    Hypergraph hg = ckbb_hypergraph(code, L, 1);
    ASSERT_EQ(hg.vertices.size(), 6u);
    for (size_t i : {0u, 1u, 2u}) EXPECT_FALSE(hg.vertices[i].is_dummy());
    for (size_t i : {3u, 4u, 5u}) EXPECT_TRUE(hg.vertices[i].is_dummy());
    const std::vector<std::vector<size_t>> expected = {
        {0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}};
    EXPECT_EQ(hg.hyperedges, expected);

    DeformedCode via_hyper = hypergraph_deform(code, L, hg);
    EXPECT_EQ(via_hyper.code.n, 16u);
    EXPECT_EQ(via_hyper.code.k(), 0u);

    // The same 16-qubit patch built by hand as a plain graph.
    GaugingGraph g;
    for (size_t q : {0u, 3u, 6u}) g.add_vertex(q);
    for (int i = 0; i < 3; ++i) g.add_vertex(std::nullopt);
    for (const auto& he : expected) g.add_edge(he[0], he[1]);
    GaugingPlan plan = select_flux_checks(plan_with_routed_paths(code, L, std::move(g)), code);
    DeformedCode via_graph = deform(code, plan);

    ASSERT_EQ(via_hyper.code.checks.size(), via_graph.code.checks.size());
    for (size_t j = 0; j < via_graph.code.checks.size(); ++j) {
        EXPECT_EQ(via_hyper.code.checks[j], via_graph.code.checks[j]);
    }
    EXPECT_EQ(tanner_report(via_hyper.code), tanner_report(via_graph.code));
}

TEST(CkbbHypergraph, LayerCountScalesPatch) {
    StabilizerCode code = surface_code_d3().to_stabilizer();
    PauliOp L = surface_code_d3_logical_x();

    // Zero layers is just the restriction hyperedges on the support.
    Hypergraph base = ckbb_hypergraph(code, L, 0);
    EXPECT_EQ(base.vertices.size(), 3u);
    const std::vector<std::vector<size_t>> restrictions = {{0, 1}, {1, 2}};
    EXPECT_EQ(base.hyperedges, restrictions);

    Hypergraph two = ckbb_hypergraph(code, L, 2);
    EXPECT_EQ(two.vertices.size(), 9u);
    EXPECT_EQ(two.hyperedges.size(), 12u);  // 3 restriction copies + 6 line edges
    DeformedCode dc = hypergraph_deform(code, L, two);
    EXPECT_EQ(dc.code.n, 21u);
    EXPECT_EQ(dc.code.k(), 0u);

    EXPECT_THROW(ckbb_hypergraph(code, surface_code_d3_logical_z(), 1), ValidationError);
}
