#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "actflood/degree_model.hpp"
#include "actflood/graph.hpp"
#include "actflood/rng.hpp"

namespace actflood {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A typed graph with a transmission time on every 11 and 12 edge. Type-22
/// edges are kept for structure only; their weight slot holds NaN.
class WeightedGraph {
public:
    /// `weights` is indexed by edge id. Throws PreconditionError unless every
    /// 11/12 weight is finite and strictly positive.
    WeightedGraph(TypedMultigraph graph, std::vector<double> weights);

    const TypedMultigraph& graph() const noexcept { return graph_; }
    double weight(EdgeId id) const { return weights_[id]; }
    std::span<const double> weights() const noexcept { return weights_; }

    /// Same weights on the graph with every type-22 edge removed.
    WeightedGraph without_passive_edges() const;

private:
    TypedMultigraph graph_;
    std::vector<double> weights_;
};

/// Independent Exp(lambda11) weights on 11 edges and Exp(lambda12) on 12
/// edges, drawn in edge-id order.
WeightedGraph sample_weights(const TypedMultigraph& graph, double lambda11, double lambda12,
                             Rng& rng);

struct FppResult {
    NodeId source = 0;
    std::vector<double> tau;   // first passage time per node, kInf if unreachable
    double flood1 = 0.0;       // max over active targets
    double flood2 = 0.0;       // max over passive targets (0 with no passive nodes)
    double flood = 0.0;        // max(flood1, flood2)
    double flood_reachable = 0.0;  // max over reachable targets only
    std::size_t unreachable_count = 0;
    std::vector<double> reach_curve;  // reach_curve[k - 1] = T_source(k)
};

/// First passage times over walkable paths: every node before the endpoint is
/// active. Label-setting search that labels passive nodes but never expands
/// them; heap ties are broken by node id. Throws PreconditionError if
/// `source` is passive or out of range.
FppResult walkable_fpp(const WeightedGraph& graph, NodeId source);

/// walkable_fpp plus, on request, the reach curve
/// T(k) = min{t : |B1(source, t)| >= k + 1} for k = 1 .. (reachable actives - 1).
FppResult flooding(const WeightedGraph& graph, NodeId source, bool want_reach_curve);

inline constexpr std::size_t kBruteForceNodeCap = 12;

/// Exhaustive enumeration of simple walkable paths. Reference oracle for
/// walkable_fpp; throws RefusalError above kBruteForceNodeCap nodes.
FppResult brute_force_fpp(const WeightedGraph& graph, NodeId source);

struct ScaleParameters {
    std::uint64_t alpha = 0;  // floor(ln(n1)^3)
    std::uint64_t beta = 0;   // floor(3 sqrt(mu11 / (nu11 - 1) * n1 ln n1))
};

/// Throws PreconditionError for n1 < 2 and SubcriticalError for nu11 <= 1.
ScaleParameters scale_parameters(std::size_t n1, const DegreeStats& stats);

struct ReachDiagnostics {
    double t_alpha = kInf;
    double t_beta = kInf;
    double t_alpha_beta = kInf;  // T(beta) - T(alpha)
};

/// Reads T(alpha), T(beta) off a result that carries a reach curve. Values
/// past the end of the curve are kInf.
ReachDiagnostics reach_diagnostics(const FppResult& result, const ScaleParameters& scale);

}  // namespace actflood
