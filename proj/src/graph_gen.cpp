#include "actflood/graph_gen.hpp"

#include <algorithm>
#include <numeric>

#include "actflood/errors.hpp"

namespace actflood {

namespace {

std::vector<NodeId> stubs_of(std::span<const Degree> degrees, NodeId first_id) {
    std::vector<NodeId> stubs;
    stubs.reserve(std::accumulate(degrees.begin(), degrees.end(), std::size_t{0}));
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        stubs.insert(stubs.end(), degrees[i], static_cast<NodeId>(first_id + i));
    }
    return stubs;
}

void shuffle(std::vector<NodeId>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(items[i - 1], items[j]);
    }
}

std::uint64_t pair_key(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (std::uint64_t{u} << 32) | v;
}

}  // namespace

std::size_t type_slot(EdgeType type) {
    switch (type) {
        case EdgeType::AA: return 0;
        case EdgeType::AP: return 1;
        case EdgeType::PP: return 2;
    }
    return 0;
}

TypedMultigraph match_halfedges(const DegreeSpec& spec, Rng& rng) {
    spec.check_shape();
    auto s11 = stubs_of(spec.d11, 0);
    auto s12 = stubs_of(spec.d12, 0);
    auto s21 = stubs_of(spec.d21, static_cast<NodeId>(spec.n1));
    auto s22 = stubs_of(spec.d22, static_cast<NodeId>(spec.n1));
    if (s11.size() % 2 != 0) throw PreconditionError("sum(d11) is odd");
    if (s22.size() % 2 != 0) throw PreconditionError("sum(d22) is odd");
    if (s12.size() != s21.size()) throw PreconditionError("sum(d12) != sum(d21)");

    std::vector<Edge> edges;
    edges.reserve(s11.size() / 2 + s22.size() / 2 + s12.size());

    shuffle(s11, rng);
    for (std::size_t i = 0; i < s11.size(); i += 2) edges.push_back({s11[i], s11[i + 1], EdgeType::AA});
    shuffle(s22, rng);
    for (std::size_t i = 0; i < s22.size(); i += 2) edges.push_back({s22[i], s22[i + 1], EdgeType::PP});
    shuffle(s21, rng);
    for (std::size_t i = 0; i < s12.size(); ++i) edges.push_back({s12[i], s21[i], EdgeType::AP});

    return TypedMultigraph(spec.n1, spec.n2, std::move(edges));
}

SimplicityReport check_simple(const TypedMultigraph& graph) {
    SimplicityReport report;
    std::array<std::vector<std::uint64_t>, 3> keys;
    for (const auto& e : graph.edges()) {
        const auto slot = type_slot(e.type);
        if (e.u == e.v) {
            ++report.self_loops[slot];
        } else {
            keys[slot].push_back(pair_key(e.u, e.v));
        }
    }
    for (std::size_t slot = 0; slot < 3; ++slot) {
        auto& k = keys[slot];
        std::sort(k.begin(), k.end());
        for (std::size_t i = 1; i < k.size(); ++i) {
            if (k[i] == k[i - 1]) ++report.parallel_edges[slot];
        }
    }
    report.is_simple = report.total_self_loops() == 0 && report.total_parallel_edges() == 0;
    return report;
}

namespace {

TypedMultigraph erase(const TypedMultigraph& graph) {
    std::vector<Edge> kept;
    std::vector<std::uint64_t> seen;
    const auto canon = graph.canonical();
    for (const auto& e : canon.edges()) {
        if (e.u == e.v) continue;
        const auto key = pair_key(e.u, e.v);
        if (!seen.empty() && seen.back() == key) continue;
        seen.push_back(key);
        kept.push_back(e);
    }
    return TypedMultigraph(graph.n1(), graph.n2(), std::move(kept));
}

}  // namespace

Generation generate_simple(const DegreeSpec& spec, Rng& rng, std::size_t max_attempts,
                           SimplicityMode mode) {
    if (mode == SimplicityMode::Erase) {
        return {erase(match_halfedges(spec, rng)), 1, mode};
    }
    SimplicityReport last;
    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
        auto graph = match_halfedges(spec, rng);
        last = check_simple(graph);
        if (last.is_simple) return {std::move(graph), attempt, mode};
    }
    throw SaturationError(max_attempts, last.total_self_loops(), last.total_parallel_edges());
}

}  // namespace actflood
