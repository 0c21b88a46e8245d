#include "gauging/graph.hpp"

#include <algorithm>

#include "gauging/errors.hpp"

namespace gauging {

size_t GaugingGraph::add_vertex(std::optional<size_t> qubit, std::string label) {
    if (qubit.has_value()) {
        for (const auto& v : vertices_) {
            if (v.qubit == qubit) {
                throw ValidationError("vertex for qubit " + std::to_string(*qubit) +
                                      " already exists");
            }
        }
    }
    if (label.empty()) {
        label = qubit.has_value() ? "q" + std::to_string(*qubit)
                                  : "d" + std::to_string(vertices_.size());
    }
    vertices_.push_back({qubit, std::move(label)});
    return vertices_.size() - 1;
}

size_t GaugingGraph::add_edge(size_t u, size_t v) {
    if (u >= vertices_.size() || v >= vertices_.size()) {
        throw ValidationError("edge endpoint out of range");
    }
    if (u == v) {
        throw ValidationError("self-loop edges are not allowed");
    }
    edges_.push_back({std::min(u, v), std::max(u, v)});
    return edges_.size() - 1;
}

std::vector<size_t> GaugingGraph::incident_edges(size_t v) const {
    std::vector<size_t> out;
    for (size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].u == v || edges_[e].v == v) out.push_back(e);
    }
    return out;
}

std::vector<size_t> GaugingGraph::edges_between(size_t u, size_t v) const {
    const size_t a = std::min(u, v), b = std::max(u, v);
    std::vector<size_t> out;
    for (size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].u == a && edges_[e].v == b) out.push_back(e);
    }
    return out;
}

std::optional<size_t> GaugingGraph::vertex_for_qubit(size_t qubit) const {
    for (size_t v = 0; v < vertices_.size(); ++v) {
        if (vertices_[v].qubit == qubit) return v;
    }
    return std::nullopt;
}

bool GaugingGraph::connected() const {
    if (vertices_.empty()) return true;
    std::vector<bool> seen(vertices_.size(), false);
    std::vector<size_t> queue{root};
    seen[root] = true;
    size_t head = 0, count = 1;
    while (head < queue.size()) {
        const size_t u = queue[head++];
        for (const auto& e : edges_) {
            const size_t other = e.u == u ? e.v : (e.v == u ? e.u : u);
            if (other != u && !seen[other]) {
                seen[other] = true;
                queue.push_back(other);
                ++count;
            }
        }
    }
    return count == vertices_.size();
}

BitMatrix GaugingGraph::incidence() const {
    BitMatrix m(vertices_.size(), edges_.size());
    for (size_t e = 0; e < edges_.size(); ++e) {
        m.set(edges_[e].u, e, true);
        m.set(edges_[e].v, e, true);
    }
    return m;
}

std::vector<std::optional<GaugingGraph::TreeLink>> GaugingGraph::spanning_tree() const {
    std::vector<std::optional<TreeLink>> parent(vertices_.size());
    if (vertices_.empty()) return parent;
    std::vector<bool> seen(vertices_.size(), false);
    std::vector<size_t> queue{root};
    seen[root] = true;
    size_t head = 0;
    while (head < queue.size()) {
        const size_t u = queue[head++];
        for (size_t e = 0; e < edges_.size(); ++e) {
            const auto& ed = edges_[e];
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
                parent[other] = TreeLink{u, e};
                queue.push_back(other);
            }
        }
    }
    for (bool s : seen) {
        if (!s) throw ValidationError("graph is not connected");
    }
    return parent;
}

}  // namespace gauging
