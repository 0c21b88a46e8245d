#include "gauging/plan.hpp"

#include <gtest/gtest.h>

#include "gauging/errors.hpp"
#include "gauging/graph.hpp"
#include "gauging/small_codes.hpp"

using namespace gauging;

namespace {

// Triangle on qubits 0,1,2 with one extra parallel edge between vertices 0,1.
GaugingGraph triangle_with_parallel() {
    GaugingGraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    g.add_vertex(2);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.add_edge(1, 0);  // parallel to edge 0
    return g;
}

}  // namespace

TEST(GaugingGraph, BasicOps) {
    GaugingGraph g;
    EXPECT_EQ(g.add_vertex(5), 0u);
    EXPECT_EQ(g.add_vertex(std::nullopt), 1u);
    EXPECT_EQ(g.add_vertex(7, "named"), 2u);
    EXPECT_EQ(g.vertex(0).label, "q5");
    EXPECT_EQ(g.vertex(1).label, "d1");
    EXPECT_TRUE(g.vertex(1).is_dummy());
    EXPECT_EQ(g.vertex(2).label, "named");
    EXPECT_THROW(g.add_vertex(5), ValidationError);  // qubit already bound

    g.set_vertex_label(1, "aux");
    EXPECT_EQ(g.vertex(1).label, "aux");

    EXPECT_EQ(g.add_edge(2, 0), 0u);   // stored as (0,2)
    EXPECT_EQ(g.edge(0).u, 0u);
    EXPECT_EQ(g.edge(0).v, 2u);
    EXPECT_THROW(g.add_edge(1, 1), ValidationError);
    EXPECT_THROW(g.add_edge(0, 3), ValidationError);

    EXPECT_EQ(g.vertex_for_qubit(7), std::optional<size_t>(2));
    EXPECT_EQ(g.vertex_for_qubit(6), std::nullopt);
    EXPECT_FALSE(g.connected());  // vertex 1 is isolated
}

TEST(GaugingGraph, IncidenceAndTree) {
    GaugingGraph g = triangle_with_parallel();
    EXPECT_TRUE(g.connected());
    EXPECT_EQ(g.incident_edges(0), (std::vector<size_t>{0, 2, 3}));
    EXPECT_EQ(g.incident_edges(1), (std::vector<size_t>{0, 1, 3}));
    EXPECT_EQ(g.degree(2), 2u);
    EXPECT_EQ(g.edges_between(1, 0), (std::vector<size_t>{0, 3}));

    BitMatrix inc = g.incidence();
    EXPECT_EQ(inc.rows, 3u);
    EXPECT_EQ(inc.cols, 4u);
    for (size_t e = 0; e < 4; ++e) {
        size_t ones = 0;
        for (size_t v = 0; v < 3; ++v) ones += inc.get(v, e);
        EXPECT_EQ(ones, 2u);  // every edge column has exactly two endpoints
    }

    auto tree = g.spanning_tree();
    EXPECT_FALSE(tree[0].has_value());  // root
    EXPECT_EQ(tree[1]->parent, 0u);
    EXPECT_EQ(tree[1]->edge, 0u);  // lowest edge id wins
    EXPECT_EQ(tree[2]->parent, 0u);
    EXPECT_EQ(tree[2]->edge, 2u);

    GaugingGraph split;
    split.add_vertex(0);
    split.add_vertex(1);
    EXPECT_THROW(split.spanning_tree(), ValidationError);
}

TEST(BasisChange, RotatesLogicalToX) {
    // Z and Y support gets rotated; the conjugated checks stay consistent.
    StabilizerCode code(3, {PauliOp::from_string("ZZI"), PauliOp::from_string("XXY")});
    PauliOp L = PauliOp::from_string("XYZ");
    ASSERT_TRUE(L.commutes(code.checks[0]));
    ASSERT_TRUE(L.commutes(code.checks[1]));

    BasisChangeResult res = basis_change_to_x(code, L);
    EXPECT_EQ(res.logical.str(), "+XXX");
    res.code.validate();
    EXPECT_FALSE(res.record.is_identity());
    for (size_t j = 0; j < code.checks.size(); ++j) {
        EXPECT_EQ(res.record.undo(res.code.checks[j]), code.checks[j]);
        EXPECT_EQ(res.record.apply(code.checks[j]), res.code.checks[j]);
    }
    EXPECT_EQ(res.record.undo(res.logical), L);

    // On states: U |psi> has stabilizer U S U^dag.
    Tableau t = Tableau::from_stabilizers({PauliOp::from_string("ZZZ"),
                                           PauliOp::from_string("XXI"),
                                           PauliOp::from_string("IXX")});
    Tableau u = t;
    res.record.apply_to_tableau(u);
    EXPECT_TRUE(u.stabilizes(res.record.apply(PauliOp::from_string("ZZZ"))));
    res.record.undo_on_tableau(u);
    EXPECT_EQ(u.canonical(), t.canonical());

    // A logical anticommuting with a check is rejected.
    PauliOp bad = PauliOp::from_string("XZI");
    EXPECT_THROW(basis_change_to_x(code, bad), ValidationError);
}

TEST(MatchingEdges, PairsRestrictedSupport) {
    // d3 surface, X logical on the left column {0,3,6}. Two Z checks touch it:
    // Z{0,1,3,4} restricts to {0,3}, Z{3,6} restricts to {3,6}.
    StabilizerCode code = surface_code_d3().to_stabilizer();
    PauliOp L = surface_code_d3_logical_x();
    GaugingPlan plan = matching_edges(code, L);

    EXPECT_EQ(plan.graph.vertex_count(), 3u);
    EXPECT_EQ(plan.graph.vertex(0).qubit, std::optional<size_t>(0));
    EXPECT_EQ(plan.graph.vertex(1).qubit, std::optional<size_t>(3));
    EXPECT_EQ(plan.graph.vertex(2).qubit, std::optional<size_t>(6));
    EXPECT_EQ(plan.graph.edge_count(), 2u);
    EXPECT_EQ(plan.deformed_checks.size(), 2u);
    EXPECT_EQ(plan.paths.size(), 2u);
    plan = select_flux_checks(plan, code);
    EXPECT_EQ(plan.cycles.rows, 0u);  // the path graph has no cycles
    EXPECT_EQ(plan.dim_u, 0u);
    plan.validate_against(code);

    // Coincident pairs reuse one edge: both ZZ checks restrict to {0,1}.
    StabilizerCode rep(2, {PauliOp::from_string("ZZ"), PauliOp::from_string("ZZ")});
    GaugingPlan plan2 = matching_edges(rep, PauliOp::from_string("XX"));
    EXPECT_EQ(plan2.graph.edge_count(), 1u);
    EXPECT_EQ(plan2.paths[0], plan2.paths[1]);

    EXPECT_THROW(matching_edges(code, surface_code_d3_logical_z()), ValidationError);
    StabilizerCode odd(3, {PauliOp::from_string("ZZZ")});
    EXPECT_THROW(matching_edges(odd, PauliOp::from_string("XXX")), ValidationError);
}

TEST(CycleBasis, FundamentalAndReduced) {
    GaugingGraph g = triangle_with_parallel();
    BitMatrix cyc = cycle_basis(g);
    EXPECT_EQ(cyc.rows, 2u);  // |E| - |V| + 1 = 4 - 3 + 1
    EXPECT_EQ(cyc.cols, 4u);
    // Weight reduction should find the parallel 2-cycle {0,3}.
    bool has_parallel = false;
    for (size_t r = 0; r < cyc.rows; ++r) {
        if (cyc.row(r) == BitVec::from_string("1001")) has_parallel = true;
        // Every row is a cycle: zero boundary.
        EXPECT_FALSE(g.incidence().mul_vec(cyc.row(r)).any());
    }
    EXPECT_TRUE(has_parallel);
    EXPECT_EQ(cyc.rank(), 2u);

    GaugingGraph path;
    path.add_vertex(0);
    path.add_vertex(1);
    path.add_edge(0, 1);
    EXPECT_EQ(cycle_basis(path).rows, 0u);
}

TEST(BoundaryMaps, ChainComplexConditions) {
    GaugingGraph g = triangle_with_parallel();
    BitMatrix cyc = cycle_basis(g);
    BoundaryMaps maps = boundary_maps(g, cyc);
    EXPECT_EQ(maps.boundary.rows, 3u);
    EXPECT_EQ(maps.coboundary, maps.boundary.transposed());
    EXPECT_EQ(maps.boundary2, cyc.transposed());

    // boundary . boundary2 = 0 and exactness at the edge level:
    // rank(boundary) + rank(boundary2) = |E| for a full cycle basis.
    BitMatrix composed = maps.boundary.mul(maps.boundary2);
    for (size_t r = 0; r < composed.rows; ++r) EXPECT_FALSE(composed.row_any(r));
    EXPECT_EQ(maps.boundary.rank() + maps.boundary2.rank(), g.edge_count());
}

TEST(RedundantCycles, TrivialWithoutRelations) {
    StabilizerCode code = surface_code_d3().to_stabilizer();
    EXPECT_EQ(redundant_cycle_dim(code, surface_code_d3_logical_x()), 0u);
}

TEST(ExpanderEdges, AppendAndSelect) {
    StabilizerCode code = surface_code_d3().to_stabilizer();
    PauliOp L = surface_code_d3_logical_x();
    GaugingPlan plan = matching_edges(code, L);
    plan = add_expander_edges(std::move(plan), {{0, 2}});
    EXPECT_EQ(plan.graph.edge_count(), 3u);
    plan = select_flux_checks(std::move(plan), code);
    EXPECT_EQ(plan.cycles.rows, 1u);   // one triangle, no redundancy
    EXPECT_EQ(plan.cycles.row_weight(0), 3u);
    EXPECT_EQ(plan.full_cycles.rows, 1u);
    EXPECT_EQ(plan.dim_u, 0u);
    plan.validate_against(code);
}

TEST(RouteBoundary, GreedyPairing) {
    // Path 0-1-2-3.
    GaugingGraph g;
    for (size_t q = 0; q < 4; ++q) g.add_vertex(q);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);

    EXPECT_EQ(route_boundary(g, {0, 1}), (std::vector<size_t>{0}));
    EXPECT_EQ(route_boundary(g, {0, 3}), (std::vector<size_t>{0, 1, 2}));
    EXPECT_EQ(route_boundary(g, {0, 1, 2, 3}), (std::vector<size_t>{0, 2}));
    EXPECT_TRUE(route_boundary(g, {}).empty());
    EXPECT_THROW(route_boundary(g, {0, 1, 2}), ValidationError);
}

TEST(RoutedPlan, MatchesRestrictedSupports) {
    // Same d3 logical, but the graph is fixed up front with an extra vertex
    // path through a dummy.
    StabilizerCode code = surface_code_d3().to_stabilizer();
    PauliOp L = surface_code_d3_logical_x();
    GaugingGraph g;
    g.add_vertex(0);
    g.add_vertex(3);
    g.add_vertex(6);
    size_t d = g.add_vertex(std::nullopt);
    g.add_edge(0, d);
    g.add_edge(1, d);
    g.add_edge(2, d);

    GaugingPlan plan = plan_with_routed_paths(code, L, g);
    plan = select_flux_checks(std::move(plan), code);
    plan.validate_against(code);
    EXPECT_EQ(plan.cycles.rows, 0u);
    // Each path's boundary equals the check's restricted support.
    for (size_t i = 0; i < plan.deformed_checks.size(); ++i) {
        BitVec acc(plan.graph.edge_count());
        for (size_t e : plan.paths[i]) acc.flip(e);
        BitVec endpoints = plan.graph.incidence().mul_vec(acc);
        const PauliOp& chk = code.checks[plan.deformed_checks[i]];
        for (size_t v = 0; v < plan.graph.vertex_count(); ++v) {
            const auto& q = plan.graph.vertex(v).qubit;
            bool expect = q.has_value() && L.x.get(*q) && chk.z.get(*q);
            EXPECT_EQ(endpoints.get(v), expect);
        }
    }
}

TEST(PlanValidation, CatchesBrokenPlans) {
    StabilizerCode code = surface_code_d3().to_stabilizer();
    PauliOp L = surface_code_d3_logical_x();
    GaugingPlan good = select_flux_checks(matching_edges(code, L), code);
    good.validate_against(code);

    GaugingPlan wrong_size = good;
    wrong_size.logical = PauliOp(4);
    EXPECT_THROW(wrong_size.validate_against(code), ValidationError);

    GaugingPlan broken_path = good;
    broken_path.paths[0].clear();
    broken_path.matching = BitMatrix(broken_path.matching.rows, broken_path.matching.cols);
    EXPECT_THROW(broken_path.validate_against(code), ValidationError);

    GaugingPlan bad_cycle = good;
    BitVec not_cycle(bad_cycle.graph.edge_count());
    not_cycle.set(0, true);
    bad_cycle.cycles.append_row(not_cycle);
    EXPECT_THROW(bad_cycle.validate_against(code), ValidationError);
}
