#include "actflood/fpp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <string>

#include "actflood/errors.hpp"

namespace actflood {

WeightedGraph::WeightedGraph(TypedMultigraph graph, std::vector<double> weights)
    : graph_(std::move(graph)), weights_(std::move(weights)) {
    if (weights_.size() != graph_.edge_count()) {
        throw PreconditionError("weight vector has " + std::to_string(weights_.size()) +
                                " entries for " + std::to_string(graph_.edge_count()) + " edges");
    }
    const auto edges = graph_.edges();
    for (std::size_t id = 0; id < edges.size(); ++id) {
        if (edges[id].type == EdgeType::PP) {
            weights_[id] = std::numeric_limits<double>::quiet_NaN();
        } else if (!(weights_[id] > 0.0) || !std::isfinite(weights_[id])) {
            throw PreconditionError("edge " + std::to_string(id) +
                                    " needs a finite positive weight");
        }
    }
}

WeightedGraph WeightedGraph::without_passive_edges() const {
    std::vector<Edge> kept;
    std::vector<double> kept_weights;
    const auto edges = graph_.edges();
    for (std::size_t id = 0; id < edges.size(); ++id) {
        if (edges[id].type == EdgeType::PP) continue;
        kept.push_back(edges[id]);
        kept_weights.push_back(weights_[id]);
    }
    return WeightedGraph(TypedMultigraph(graph_.n1(), graph_.n2(), std::move(kept)),
                         std::move(kept_weights));
}

WeightedGraph sample_weights(const TypedMultigraph& graph, double lambda11, double lambda12,
                             Rng& rng) {
    if (!(lambda11 > 0.0) || !(lambda12 > 0.0)) {
        throw PreconditionError("edge-weight rates must be positive");
    }
    std::vector<double> weights(graph.edge_count(), std::numeric_limits<double>::quiet_NaN());
    const auto edges = graph.edges();
    for (std::size_t id = 0; id < edges.size(); ++id) {
        switch (edges[id].type) {
            case EdgeType::AA: weights[id] = rng.exponential(lambda11); break;
            case EdgeType::AP: weights[id] = rng.exponential(lambda12); break;
            case EdgeType::PP: break;
        }
    }
    return WeightedGraph(graph, std::move(weights));
}

namespace {

void check_source(const TypedMultigraph& graph, NodeId source) {
    if (source >= graph.node_count()) {
        throw PreconditionError("source " + std::to_string(source) + " is not a node");
    }
    if (!graph.is_active(source)) {
        throw PreconditionError("source " + std::to_string(source) + " is passive");
    }
}

void summarize(const TypedMultigraph& graph, FppResult& result) {
    result.flood1 = 0.0;
    result.flood2 = 0.0;
    result.flood_reachable = 0.0;
    result.unreachable_count = 0;
    for (NodeId v = 0; v < result.tau.size(); ++v) {
        const double t = result.tau[v];
        auto& slot = graph.is_active(v) ? result.flood1 : result.flood2;
        slot = std::max(slot, t);
        if (std::isinf(t)) {
            ++result.unreachable_count;
        } else {
            result.flood_reachable = std::max(result.flood_reachable, t);
        }
    }
    result.flood = std::max(result.flood1, result.flood2);
}

}  // namespace

FppResult walkable_fpp(const WeightedGraph& wg, NodeId source) {
    const auto& graph = wg.graph();
    check_source(graph, source);

    FppResult result;
    result.source = source;
    result.tau.assign(graph.node_count(), kInf);
    result.tau[source] = 0.0;

    using Label = std::pair<double, NodeId>;
    std::priority_queue<Label, std::vector<Label>, std::greater<>> frontier;
    frontier.push({0.0, source});
    while (!frontier.empty()) {
        const auto [dist, node] = frontier.top();
        frontier.pop();
        if (dist > result.tau[node] || !graph.is_active(node)) continue;
        for (const auto& inc : graph.incident(node)) {
            if (graph.edge(inc.edge).type == EdgeType::PP) continue;
            const double candidate = dist + wg.weight(inc.edge);
            if (candidate < result.tau[inc.neighbor]) {
                result.tau[inc.neighbor] = candidate;
                frontier.push({candidate, inc.neighbor});
            }
        }
    }
    summarize(graph, result);
    return result;
}

FppResult flooding(const WeightedGraph& wg, NodeId source, bool want_reach_curve) {
    auto result = walkable_fpp(wg, source);
    if (want_reach_curve) {
        std::vector<double> active;
        for (NodeId v = 0; v < wg.graph().n1(); ++v) {
            if (std::isfinite(result.tau[v])) active.push_back(result.tau[v]);
        }
        std::sort(active.begin(), active.end());
        // active[0] is the source itself at time 0.
        result.reach_curve.assign(active.begin() + 1, active.end());
    }
    return result;
}

FppResult brute_force_fpp(const WeightedGraph& wg, NodeId source) {
    const auto& graph = wg.graph();
    if (graph.node_count() > kBruteForceNodeCap) {
        throw RefusalError("brute-force FPP is capped at " + std::to_string(kBruteForceNodeCap) +
                           " nodes");
    }
    check_source(graph, source);

    FppResult result;
    result.source = source;
    result.tau.assign(graph.node_count(), kInf);
    result.tau[source] = 0.0;

    std::vector<bool> on_path(graph.node_count(), false);
    on_path[source] = true;
    std::function<void(NodeId, double)> extend = [&](NodeId node, double dist) {
        for (const auto& inc : graph.incident(node)) {
            const NodeId next = inc.neighbor;
            if (on_path[next] || graph.edge(inc.edge).type == EdgeType::PP) continue;
            const double total = dist + wg.weight(inc.edge);
            result.tau[next] = std::min(result.tau[next], total);
            if (graph.is_active(next)) {
                on_path[next] = true;
                extend(next, total);
                on_path[next] = false;
            }
        }
    };
    extend(source, 0.0);
    summarize(graph, result);
    return result;
}

ScaleParameters scale_parameters(std::size_t n1, const DegreeStats& stats) {
    if (n1 < 2) throw PreconditionError("scale parameters need n1 >= 2");
    if (!(stats.nu11 > 1.0)) throw SubcriticalError("scale parameters need nu11 > 1");
    const double log_n1 = std::log(static_cast<double>(n1));
    ScaleParameters scale;
    scale.alpha = static_cast<std::uint64_t>(std::floor(log_n1 * log_n1 * log_n1));
    scale.beta = static_cast<std::uint64_t>(std::floor(
        3.0 * std::sqrt(stats.mu11 / (stats.nu11 - 1.0) * static_cast<double>(n1) * log_n1)));
    return scale;
}

ReachDiagnostics reach_diagnostics(const FppResult& result, const ScaleParameters& scale) {
    auto at = [&](std::uint64_t k) {
        if (k == 0) return 0.0;
        return k <= result.reach_curve.size() ? result.reach_curve[k - 1] : kInf;
    };
    ReachDiagnostics diag;
    diag.t_alpha = at(scale.alpha);
    diag.t_beta = at(scale.beta);
    diag.t_alpha_beta = std::isinf(diag.t_beta) ? kInf : diag.t_beta - diag.t_alpha;
    return diag;
}

}  // namespace actflood
