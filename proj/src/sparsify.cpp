#include "gauging/sparsify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>
#include <utility>

#include "gauging/errors.hpp"

namespace gauging {

namespace {

constexpr size_t kExactCheegerBudget = 24;

struct SubsetBest {
    uint64_t boundary = 0;
    uint64_t size = 0;
    uint32_t mask = 0;
    bool valid = false;

    // Deterministic preference: smaller |boundary|/|size| (compared exactly by
    // cross-multiplication), then smaller subset mask.
    bool better_than(const SubsetBest& o) const {
        if (!valid || !o.valid) return valid;
        const uint64_t lhs = boundary * o.size;
        const uint64_t rhs = o.boundary * size;
        if (lhs != rhs) return lhs < rhs;
        return mask < o.mask;
    }
};

SubsetBest scan_subsets(const std::vector<GraphEdge>& edges, size_t n, uint32_t lo, uint32_t hi) {
    SubsetBest best;
    for (uint32_t mask = lo; mask < hi; ++mask) {
        const auto size = static_cast<uint64_t>(std::popcount(mask));
        if (size == 0 || 2 * size > n) continue;
        uint64_t boundary = 0;
        for (const auto& e : edges) boundary += ((mask >> e.u) ^ (mask >> e.v)) & 1u;
        const SubsetBest cand{boundary, size, mask, true};
        if (cand.better_than(best)) best = cand;
    }
    return best;
}

CheegerResult cheeger_exact(const GaugingGraph& graph) {
    const size_t n = graph.vertex_count();
    if (n > kExactCheegerBudget) {
        throw BudgetError("exact Cheeger enumeration is limited to " +
                          std::to_string(kExactCheegerBudget) + " vertices; got " +
                          std::to_string(n));
    }
    const uint64_t total = uint64_t(1) << n;
    size_t shards = std::clamp<size_t>(std::thread::hardware_concurrency(), 1, 8);
    if (total < (uint64_t(1) << 16)) shards = 1;
    std::vector<SubsetBest> results(shards);
    if (shards == 1) {
        results[0] = scan_subsets(graph.edges(), n, 1, static_cast<uint32_t>(total));
    } else {
        std::vector<std::thread> pool;
        const uint32_t step = static_cast<uint32_t>(total / shards);
        for (size_t t = 0; t < shards; ++t) {
            const uint32_t lo = t == 0 ? 1 : static_cast<uint32_t>(t) * step;
            const uint32_t hi = t + 1 == shards ? static_cast<uint32_t>(total)
                                                : static_cast<uint32_t>(t + 1) * step;
            pool.emplace_back(
                [&, lo, hi, t] { results[t] = scan_subsets(graph.edges(), n, lo, hi); });
        }
        for (auto& th : pool) th.join();
    }
    SubsetBest best;
    for (const auto& r : results) {
        if (r.better_than(best)) best = r;
    }
    CheegerResult out;
    out.exact = true;
    out.value = static_cast<double>(best.boundary) / static_cast<double>(best.size);
    for (size_t v = 0; v < n; ++v) {
        if ((best.mask >> v) & 1u) out.witness.push_back(v);
    }
    return out;
}

CheegerResult cheeger_spectral(const GaugingGraph& graph) {
    const auto n = static_cast<Eigen::Index>(graph.vertex_count());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : graph.edges()) {
        const auto u = static_cast<Eigen::Index>(e.u);
        const auto v = static_cast<Eigen::Index>(e.v);
        lap(u, u) += 1.0;
        lap(v, v) += 1.0;
        lap(u, v) -= 1.0;
        lap(v, u) -= 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
    CheegerResult out;
    out.value = std::max(0.0, solver.eigenvalues()(1)) / 2.0;
    return out;
}

// Zigzag position sequence 1, N-1, 2, N-2, ... (length N-1); consecutive
// entries are the cellulation chords, prefixing position 0 gives the fan.
std::vector<size_t> zigzag_positions(size_t n) {
    std::vector<size_t> s;
    s.reserve(n - 1);
    for (size_t j = 0; j + 1 < n; ++j) {
        s.push_back(j % 2 == 0 ? 1 + j / 2 : n - 1 - j / 2);
    }
    return s;
}

// A cycle row decomposed into one simple closed walk; edges[i] joins
// vertices[i] and vertices[(i+1) % N].
struct ClosedWalk {
    std::vector<size_t> vertices;
    std::vector<size_t> edges;
};

// Peel a cycle row (every vertex has even degree) into simple closed walks by
// walking lowest-id unused edges and emitting a loop whenever the walk
// revisits a vertex on its path. Deterministic.
std::vector<ClosedWalk> simple_closed_walks(const GaugingGraph& graph, const BitVec& row) {
    std::vector<std::vector<size_t>> incident(graph.vertex_count());
    for (size_t e : row.ones()) {
        incident[graph.edge(e).u].push_back(e);
        incident[graph.edge(e).v].push_back(e);
    }
    std::vector<bool> used(graph.edge_count(), false);
    std::vector<ptrdiff_t> pos(graph.vertex_count(), -1);
    std::vector<ClosedWalk> walks;
    for (size_t seed : row.ones()) {
        if (used[seed]) continue;
        const size_t base = graph.edge(seed).u;
        std::vector<size_t> vs{base};
        std::vector<size_t> es;
        pos[base] = 0;
        size_t cur = base;
        while (true) {
            size_t step = SIZE_MAX;
            for (size_t e : incident[cur]) {
                if (!used[e]) {
                    step = e;
                    break;
                }
            }
            if (step == SIZE_MAX) {
                if (vs.size() != 1) {
                    throw ValidationError("flux row is not a union of closed walks");
                }
                pos[cur] = -1;
                break;
            }
            used[step] = true;
            const auto& ed = graph.edge(step);
            const size_t nxt = ed.u == cur ? ed.v : ed.u;
            if (pos[nxt] >= 0) {
                const auto p = static_cast<size_t>(pos[nxt]);
                ClosedWalk w;
                w.vertices.assign(vs.begin() + static_cast<ptrdiff_t>(p), vs.end());
                w.edges.assign(es.begin() + static_cast<ptrdiff_t>(p), es.end());
                w.edges.push_back(step);
                walks.push_back(std::move(w));
                for (size_t i = p + 1; i < vs.size(); ++i) pos[vs[i]] = -1;
                vs.resize(p + 1);
                es.resize(p);
            } else {
                pos[nxt] = static_cast<ptrdiff_t>(vs.size());
                vs.push_back(nxt);
                es.push_back(step);
            }
            cur = nxt;
        }
    }
    return walks;
}

struct FaceDraft {
    std::vector<size_t> edges;  // lifted edge ids
    size_t cycle = 0;           // source flux row
    bool first_of_walk = false;
};

// Cellulate one walk inside its layer: add chords to the lifted graph and
// emit the faces. Walks of weight <= 3 (<= 4 in square mode) stay whole.
void cellulate_walk(const ClosedWalk& walk, size_t row, size_t layer, CellulationMode mode,
                    const LayeredGraph& lg, GaugingGraph& lifted,
                    std::vector<size_t>& chords_out, std::vector<FaceDraft>& drafts) {
    const size_t n = walk.vertices.size();
    const auto& copies = lg.copy_edges[layer];
    auto side = [&](size_t i) { return copies[walk.edges[i]]; };
    const size_t whole_below = mode == CellulationMode::squares ? 5 : 4;
    if (n < whole_below) {
        FaceDraft f;
        f.cycle = row;
        f.first_of_walk = true;
        for (size_t i = 0; i < n; ++i) f.edges.push_back(side(i));
        drafts.push_back(std::move(f));
        return;
    }
    std::map<std::pair<size_t, size_t>, size_t> chord_id;
    auto add_chord = [&](size_t a, size_t b) {
        const size_t id = lifted.add_edge(lg.layer_vertex(layer, walk.vertices[a]),
                                          lg.layer_vertex(layer, walk.vertices[b]));
        chords_out.push_back(id);
        chord_id[std::minmax(a, b)] = id;
        return id;
    };
    // Positions adjacent along the walk are its (lifted) edges; everything
    // else must be a chord added earlier.
    auto between = [&](size_t a, size_t b) {
        if ((a + 1) % n == b) return side(a);
        if ((b + 1) % n == a) return side(b);
        return chord_id.at(std::minmax(a, b));
    };
    auto emit = [&](const std::vector<size_t>& positions, bool first) {
        FaceDraft f;
        f.cycle = row;
        f.first_of_walk = first;
        for (size_t i = 0; i < positions.size(); ++i) {
            f.edges.push_back(between(positions[i], positions[(i + 1) % positions.size()]));
        }
        drafts.push_back(std::move(f));
    };
    if (mode == CellulationMode::triangles) {
        const auto s = zigzag_positions(n);
        for (size_t j = 0; j + 3 < n; ++j) add_chord(s[j], s[j + 1]);
        emit({0, s[0], s[1]}, true);
        for (size_t j = 0; j + 2 < s.size(); ++j) emit({s[j], s[j + 1], s[j + 2]}, false);
        return;
    }
    // Square mode: peel quads (back, p0, p1, p2) with a chord (back, p2) until
    // at most four positions remain.
    std::vector<size_t> poly(n);
    std::iota(poly.begin(), poly.end(), 0);
    bool first = true;
    while (poly.size() > 4) {
        add_chord(poly.back(), poly[2]);
        emit({poly.back(), poly[0], poly[1], poly[2]}, first);
        first = false;
        poly.erase(poly.begin(), poly.begin() + 2);
    }
    emit(poly, first);
}

BitVec widened(const BitVec& v, size_t cols) {
    BitVec out(cols);
    for (size_t i : v.ones()) out.set(i, true);
    return out;
}

DesiderataReport audit(const GaugingGraph& base, const GaugingPlan& plan,
                       const AuditOptions& opt) {
    DesiderataReport rep;
    rep.kappa_threshold = opt.kappa_threshold;
    rep.weight_threshold = opt.weight_threshold;
    for (const auto& path : plan.paths) rep.kappa = std::max(rep.kappa, path.size());
    const size_t limit = std::min(opt.exact_cheeger_limit, kExactCheegerBudget);
    const CheegerResult h =
        cheeger(base, base.vertex_count() <= limit ? CheegerMode::exact : CheegerMode::spectral);
    rep.cheeger_value = h.value;
    rep.cheeger_exact = h.exact;
    for (size_t r = 0; r < plan.cycles.rows; ++r) {
        rep.max_cycle_weight = std::max(rep.max_cycle_weight, plan.cycles.row_weight(r));
    }
    rep.kappa_ok = rep.kappa <= rep.kappa_threshold;
    rep.cheeger_ok = rep.cheeger_value >= 1.0;
    rep.weight_ok = rep.max_cycle_weight <= rep.weight_threshold;
    return rep;
}

}  // namespace

CheegerResult cheeger(const GaugingGraph& graph, CheegerMode mode) {
    if (graph.vertex_count() < 2) {
        throw ValidationError("expansion needs at least two vertices");
    }
    return mode == CheegerMode::exact ? cheeger_exact(graph) : cheeger_spectral(graph);
}

std::vector<std::array<size_t, 2>> cellulate(const std::vector<size_t>& cycle) {
    const size_t n = cycle.size();
    if (n < 3) {
        throw ValidationError("cellulation needs a cycle of length >= 3");
    }
    const auto s = zigzag_positions(n);
    std::vector<std::array<size_t, 2>> chords;
    for (size_t j = 0; j + 3 < n; ++j) chords.push_back({cycle[s[j]], cycle[s[j + 1]]});
    return chords;
}

size_t LayeredGraph::chord_count() const {
    size_t total = 0;
    for (const auto& layer : layer_chords) total += layer.size();
    return total;
}

LayeredGraph decongest(const GaugingPlan& plan, size_t cap, CellulationMode mode) {
    if (cap == 0) {
        throw ValidationError("cycle-degree cap must be positive");
    }
    LayeredGraph lg;
    lg.base = plan.graph;
    lg.cap = cap;
    lg.mode = mode;
    const size_t V = plan.graph.vertex_count();
    const size_t E = plan.graph.edge_count();
    lg.base_vertices = V;
    lg.base_edges = E;

    // Greedy lowest-layer assignment. Cycles heavier than 4 cannot serve as
    // flux checks unmodified, and layer 0 is never cellulated, so they start
    // looking at layer 1.
    const size_t rows = plan.cycles.rows;
    lg.cycle_layer.assign(rows, 0);
    std::vector<std::vector<uint32_t>> usage(1, std::vector<uint32_t>(E, 0));
    for (size_t r = 0; r < rows; ++r) {
        const auto edges = plan.cycles.row(r).ones();
        size_t layer = plan.cycles.row_weight(r) > 4 ? 1 : 0;
        for (;; ++layer) {
            while (usage.size() <= layer) usage.emplace_back(E, 0);
            bool fits = true;
            for (size_t e : edges) {
                if (usage[layer][e] >= cap) {
                    fits = false;
                    break;
                }
            }
            if (fits) break;
        }
        for (size_t e : edges) ++usage[layer][e];
        lg.cycle_layer[r] = layer;
    }
    const size_t R = lg.cycle_layer.empty()
                         ? 0
                         : *std::max_element(lg.cycle_layer.begin(), lg.cycle_layer.end());
    lg.layers = R;

    // Lifted graph: copies of every vertex and edge per extra layer, stitched
    // by vertical edges, then the cellulation chords.
    GaugingGraph lifted = plan.graph;
    lg.copy_edges.assign(R + 1, {});
    lg.copy_edges[0].resize(E);
    for (size_t e = 0; e < E; ++e) lg.copy_edges[0][e] = e;
    lg.vertical_edges.assign(R, std::vector<size_t>(V, 0));
    for (size_t l = 1; l <= R; ++l) {
        for (size_t v = 0; v < V; ++v) {
            lifted.add_vertex(std::nullopt,
                              plan.graph.vertex(v).label + "~" + std::to_string(l));
        }
        for (size_t v = 0; v < V; ++v) {
            lg.vertical_edges[l - 1][v] =
                lifted.add_edge(lg.layer_vertex(l - 1, v), lg.layer_vertex(l, v));
        }
        lg.copy_edges[l].resize(E);
        for (size_t e = 0; e < E; ++e) {
            const auto& ed = plan.graph.edge(e);
            lg.copy_edges[l][e] =
                lifted.add_edge(lg.layer_vertex(l, ed.u), lg.layer_vertex(l, ed.v));
        }
    }
    lg.layer_chords.assign(R + 1, {});
    std::vector<FaceDraft> drafts;
    for (size_t r = 0; r < rows; ++r) {
        const size_t layer = lg.cycle_layer[r];
        if (layer == 0) continue;
        for (const auto& walk : simple_closed_walks(plan.graph, plan.cycles.row(r))) {
            cellulate_walk(walk, r, layer, mode, lg, lifted, lg.layer_chords[layer], drafts);
        }
    }

    const size_t cols = lifted.edge_count();
    lg.layer0_cycles = BitMatrix(0, cols);
    for (size_t r = 0; r < rows; ++r) {
        if (lg.cycle_layer[r] == 0) lg.layer0_cycles.append_row(widened(plan.cycles.row(r), cols));
    }
    lg.squares = BitMatrix(0, cols);
    for (size_t t = 0; t < R; ++t) {
        for (size_t e = 0; e < E; ++e) {
            BitVec row(cols);
            row.set(lg.copy_edges[t][e], true);
            row.set(lg.copy_edges[t + 1][e], true);
            row.set(lg.vertical_edges[t][plan.graph.edge(e).u], true);
            row.set(lg.vertical_edges[t][plan.graph.edge(e).v], true);
            lg.squares.append_row(row);
        }
    }
    lg.faces = BitMatrix(0, cols);
    lg.face_cycle.clear();
    BitMatrix strip_faces(0, cols);  // all faces except each walk's first
    for (const auto& draft : drafts) {
        BitVec row(cols);
        for (size_t e : draft.edges) row.set(e, true);
        lg.faces.append_row(row);
        lg.face_cycle.push_back(draft.cycle);
        if (!draft.first_of_walk) strip_faces.append_row(row);
    }

    GaugingPlan out;
    out.logical = plan.logical;
    out.graph = std::move(lifted);
    out.deformed_checks = plan.deformed_checks;
    out.paths = plan.paths;
    out.matching = BitMatrix(plan.matching.rows, cols);
    for (size_t r = 0; r < plan.matching.rows; ++r) {
        for (size_t c : plan.matching.row(r).ones()) out.matching.set(r, c, true);
    }
    out.cycles = BitMatrix(0, cols);
    for (size_t r = 0; r < lg.layer0_cycles.rows; ++r) out.cycles.append_row(lg.layer0_cycles.row(r));
    for (size_t r = 0; r < lg.squares.rows; ++r) out.cycles.append_row(lg.squares.row(r));
    for (size_t r = 0; r < lg.faces.rows; ++r) out.cycles.append_row(lg.faces.row(r));
    if (R == 0) {
        out.full_cycles = plan.full_cycles;
    } else {
        // Basis of the lifted cycle space: the base basis, every square, and
        // each walk's faces minus the first (one new dimension per chord).
        const BitMatrix base_full =
            plan.full_cycles.rows > 0 ? plan.full_cycles : cycle_basis(plan.graph);
        out.full_cycles = BitMatrix(0, cols);
        for (size_t r = 0; r < base_full.rows; ++r) {
            out.full_cycles.append_row(widened(base_full.row(r), cols));
        }
        for (size_t r = 0; r < lg.squares.rows; ++r) out.full_cycles.append_row(lg.squares.row(r));
        for (size_t r = 0; r < strip_faces.rows; ++r) out.full_cycles.append_row(strip_faces.row(r));
    }
    out.dim_u = plan.dim_u;
    lg.plan = std::move(out);
    return lg;
}

DeformedCode sparsified_deform(const StabilizerCode& code, const LayeredGraph& layered) {
    for (size_t r = 0; r < layered.plan.cycles.rows; ++r) {
        if (layered.plan.cycles.row_weight(r) > 4) {
            throw ValidationError("lifted flux row " + std::to_string(r) +
                                  " exceeds weight 4; decongest the plan first");
        }
    }
    return deform(code, layered.plan);
}

std::string DesiderataReport::str() const {
    std::ostringstream os;
    os.precision(4);
    os << std::fixed;
    os << "kappa=" << kappa << " (<=" << kappa_threshold << ": " << (kappa_ok ? "ok" : "FLAG")
       << ") | h=" << cheeger_value << (cheeger_exact ? " exact" : " spectral-bound") << " (>=1: "
       << (cheeger_ok ? "ok" : "FLAG") << ") | max_cycle_weight=" << max_cycle_weight << " (<="
       << weight_threshold << ": " << (weight_ok ? "ok" : "FLAG") << ")";
    return os.str();
}

DesiderataReport audit_desiderata(const GaugingPlan& plan, const AuditOptions& opt) {
    return audit(plan.graph, plan, opt);
}

DesiderataReport audit_desiderata(const LayeredGraph& layered, const AuditOptions& opt) {
    return audit(layered.base, layered.plan, opt);
}

}  // namespace gauging
