#pragma once

#include <array>
#include <cstddef>

#include "actflood/degree_model.hpp"
#include "actflood/graph.hpp"
#include "actflood/rng.hpp"

namespace actflood {

/// Counts indexed by edge type: [0] = 11, [1] = 12, [2] = 22.
struct SimplicityReport {
    std::array<std::size_t, 3> self_loops{};
    std::array<std::size_t, 3> parallel_edges{};  // copies beyond the first
    bool is_simple = true;

    std::size_t total_self_loops() const { return self_loops[0] + self_loops[1] + self_loops[2]; }
    std::size_t total_parallel_edges() const {
        return parallel_edges[0] + parallel_edges[1] + parallel_edges[2];
    }
};

std::size_t type_slot(EdgeType type);

/// Uniform configuration-model matching: a perfect matching of type-11 stubs,
/// one of type-22 stubs, and a uniform bijection between type-12 and type-21
/// stubs, each realized as a Fisher-Yates shuffle followed by sequential
/// pairing. Throws PreconditionError if the parity or balance rule fails.
TypedMultigraph match_halfedges(const DegreeSpec& spec, Rng& rng);

SimplicityReport check_simple(const TypedMultigraph& graph);

enum class SimplicityMode {
    Reject,  // resample the whole matching until it is simple (the model)
    Erase,   // single matching, drop loops and merge parallel edges (off-model)
};

inline constexpr std::size_t kDefaultMaxAttempts = 1000;

struct Generation {
    TypedMultigraph graph;
    std::size_t attempts = 0;
    SimplicityMode mode = SimplicityMode::Reject;
};

/// Simple graph with the given typed degrees, uniform among all such graphs in
/// Reject mode. Throws SaturationError after `max_attempts` failed matchings.
Generation generate_simple(const DegreeSpec& spec, Rng& rng,
                           std::size_t max_attempts = kDefaultMaxAttempts,
                           SimplicityMode mode = SimplicityMode::Reject);

}  // namespace actflood
