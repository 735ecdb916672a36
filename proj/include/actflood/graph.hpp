#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace actflood {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

enum class NodeType : std::uint8_t { Active = 1, Passive = 2 };

enum class EdgeType : std::uint8_t { AA = 11, AP = 12, PP = 22 };

int edge_type_code(EdgeType type);
EdgeType edge_type_from_code(int code);

struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    EdgeType type = EdgeType::AA;

    bool operator==(const Edge&) const = default;
};

struct Incidence {
    NodeId neighbor;
    EdgeId edge;
};

/// Node-typed multigraph. Active nodes occupy ids [0, n1), passive nodes
/// [n1, n1 + n2). Self-loops appear twice in their node's incidence list.
class TypedMultigraph {
public:
    TypedMultigraph() = default;

    /// Throws PreconditionError if an endpoint is out of range or an edge's
    /// type disagrees with its endpoint types.
    TypedMultigraph(std::size_t n1, std::size_t n2, std::vector<Edge> edges);

    std::size_t n1() const noexcept { return n1_; }
    std::size_t n2() const noexcept { return n2_; }
    std::size_t node_count() const noexcept { return n1_ + n2_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    NodeType type_of(NodeId v) const noexcept {
        return v < n1_ ? NodeType::Active : NodeType::Passive;
    }
    bool is_active(NodeId v) const noexcept { return v < n1_; }
    /// Index of v within its own type class.
    std::size_t original_index(NodeId v) const noexcept { return v < n1_ ? v : v - n1_; }

    /// The edge type implied by the endpoint types.
    EdgeType implied_type(NodeId u, NodeId v) const noexcept;

    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge& edge(EdgeId id) const { return edges_[id]; }
    std::span<const Incidence> incident(NodeId v) const {
        return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
    }

    /// Incident edge count of v restricted to one edge type (self-loops twice).
    std::size_t typed_degree(NodeId v, EdgeType type) const;

    /// Same graph with edges sorted by (min endpoint, max endpoint, type) and
    /// each edge stored as (min, max).
    TypedMultigraph canonical() const;

    /// Copy with every type-22 edge removed.
    TypedMultigraph without_passive_edges() const;

    bool operator==(const TypedMultigraph& other) const {
        return n1_ == other.n1_ && n2_ == other.n2_ && edges_ == other.edges_;
    }

private:
    std::size_t n1_ = 0;
    std::size_t n2_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Incidence> incidence_;
};

}  // namespace actflood
