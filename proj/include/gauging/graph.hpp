#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gauging/bitmat.hpp"

namespace gauging {

/// A graph vertex. Real vertices bind a qubit of the base code; dummy
/// vertices bind none (their X factor is the classical constant +1).
struct GraphVertex {
    std::optional<size_t> qubit;
    std::string label;

    bool is_dummy() const { return !qubit.has_value(); }
};

/// Undirected edge between two vertex indices. Parallel edges are allowed and
/// are distinguished purely by their edge id.
struct GraphEdge {
    size_t u = 0;
    size_t v = 0;

    bool operator==(const GraphEdge&) const = default;
};

/// Multigraph used by the gauging procedure: one auxiliary qubit per edge, one
/// star check per vertex. Edge ids are stable (insertion order).
class GaugingGraph {
  public:
    size_t root = 0;

    size_t add_vertex(std::optional<size_t> qubit, std::string label = "");
    /// Adds an edge; self-loops are rejected. Returns the new edge id.
    size_t add_edge(size_t u, size_t v);
    void set_vertex_label(size_t v, std::string label) { vertices_.at(v).label = std::move(label); }

    size_t vertex_count() const { return vertices_.size(); }
    size_t edge_count() const { return edges_.size(); }
    const std::vector<GraphVertex>& vertices() const { return vertices_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    const GraphVertex& vertex(size_t v) const { return vertices_.at(v); }
    const GraphEdge& edge(size_t e) const { return edges_.at(e); }

    /// Edge ids incident to v, ascending.
    std::vector<size_t> incident_edges(size_t v) const;
    size_t degree(size_t v) const { return incident_edges(v).size(); }
    /// Edge ids joining u and v (all parallel copies), ascending.
    std::vector<size_t> edges_between(size_t u, size_t v) const;
    std::optional<size_t> vertex_for_qubit(size_t qubit) const;

    bool connected() const;
    /// |V| x |E| vertex-edge incidence matrix.
    BitMatrix incidence() const;

    /// BFS tree from the root; entry v holds the parent vertex and connecting
    /// edge id (nullopt for the root). Throws ValidationError if disconnected.
    struct TreeLink {
        size_t parent = 0;
        size_t edge = 0;
    };
    std::vector<std::optional<TreeLink>> spanning_tree() const;

  private:
    std::vector<GraphVertex> vertices_;
    std::vector<GraphEdge> edges_;
};

}  // namespace gauging
