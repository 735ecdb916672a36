#include "actflood/graph.hpp"

#include <algorithm>
#include <string>

#include "actflood/errors.hpp"

namespace actflood {

int edge_type_code(EdgeType type) { return static_cast<int>(type); }

EdgeType edge_type_from_code(int code) {
    switch (code) {
        case 11: return EdgeType::AA;
        case 12: return EdgeType::AP;
        case 22: return EdgeType::PP;
        default: throw PreconditionError("unknown edge type " + std::to_string(code));
    }
}

TypedMultigraph::TypedMultigraph(std::size_t n1, std::size_t n2, std::vector<Edge> edges)
    : n1_(n1), n2_(n2), edges_(std::move(edges)) {
    const std::size_t n = n1_ + n2_;
    if (edges_.size() > 0xFFFFFFFFu || n > 0xFFFFFFFFu) {
        throw PreconditionError("graph too large for 32-bit ids");
    }
    std::vector<std::size_t> degree(n, 0);
    for (const auto& e : edges_) {
        if (e.u >= n || e.v >= n) {
            throw PreconditionError("edge endpoint out of range");
        }
        if (implied_type(e.u, e.v) != e.type) {
            throw PreconditionError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    "} has type " + std::to_string(edge_type_code(e.type)) +
                                    " but its endpoints imply " +
                                    std::to_string(edge_type_code(implied_type(e.u, e.v))));
        }
        ++degree[e.u];
        ++degree[e.v];
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
    incidence_.resize(offsets_[n]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        const auto& e = edges_[id];
        incidence_[cursor[e.u]++] = {e.v, id};
        incidence_[cursor[e.v]++] = {e.u, id};
    }
}

EdgeType TypedMultigraph::implied_type(NodeId u, NodeId v) const noexcept {
    const bool au = is_active(u);
    const bool av = is_active(v);
    if (au && av) return EdgeType::AA;
    if (au || av) return EdgeType::AP;
    return EdgeType::PP;
}

std::size_t TypedMultigraph::typed_degree(NodeId v, EdgeType type) const {
    std::size_t count = 0;
    for (const auto& inc : incident(v)) {
        if (edges_[inc.edge].type == type) ++count;
    }
    return count;
}

TypedMultigraph TypedMultigraph::canonical() const {
    std::vector<Edge> sorted = edges_;
    for (auto& e : sorted) {
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(sorted.begin(), sorted.end(), [](const Edge& x, const Edge& y) {
        if (x.u != y.u) return x.u < y.u;
        if (x.v != y.v) return x.v < y.v;
        return x.type < y.type;
    });
    return TypedMultigraph(n1_, n2_, std::move(sorted));
}

TypedMultigraph TypedMultigraph::without_passive_edges() const {
    std::vector<Edge> kept;
    kept.reserve(edges_.size());
    std::copy_if(edges_.begin(), edges_.end(), std::back_inserter(kept),
                 [](const Edge& e) { return e.type != EdgeType::PP; });
    return TypedMultigraph(n1_, n2_, std::move(kept));
}

}  // namespace actflood
