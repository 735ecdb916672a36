#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "actflood/degree_model.hpp"
#include "actflood/experiment.hpp"
#include "actflood/fpp.hpp"
#include "actflood/graph.hpp"

namespace actflood {

/// Shortest round-trip decimal for finite values, "inf" / "-inf" / "nan" otherwise.
std::string format_double(double x);

/// Inverse of format_double. Throws StructuralError on garbage.
double parse_double(std::string_view text);

// Degree spec text:
//   # comment
//   regime: theorem        (optional; "general" is the default)
//   d11: 3 3 3 3
//   d12: 0 0 0 0
//   d21:
//   d22:
DegreeSpec read_spec(std::istream& in);
void write_spec(std::ostream& out, const DegreeSpec& spec);

struct EdgeListHeader {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::uint64_t seed = 0;
    std::size_t attempts = 0;
};

struct LoadedGraph {
    EdgeListHeader header;
    TypedMultigraph graph;
    std::optional<std::vector<double>> weights;  // present when 11/12 lines carry a weight
};

// Edge list: "# actflood-edges n1=.. n2=.. seed=.. attempts=.." then one
// "u v type [weight]" line per edge in the graph's edge order. Type-22 lines
// never carry a weight.
void write_edge_list(std::ostream& out, const TypedMultigraph& graph, const EdgeListHeader& header,
                     std::span<const double> weights = {});
LoadedGraph read_edge_list(std::istream& in);

void write_fpp_header(std::ostream& out);
void write_fpp_row(std::ostream& out, const FppResult& result);
void write_reach_curve(std::ostream& out, std::span<const double> curve);

void write_records_csv(std::ostream& out, std::span<const ReplicateRecord> records);
std::vector<ReplicateRecord> read_records_csv(std::istream& in);
void write_summary_csv(std::ostream& out, std::span<const KappaSummary> summaries);

/// Flat "key = value" plan file. Unknown keys, duplicates and missing
/// required keys (family, kappa_grid, replicates, lambda11, lambda12) raise
/// ConfigError naming the key.
ExperimentPlan read_plan(std::istream& in);
void write_plan(std::ostream& out, const ExperimentPlan& plan);

}  // namespace actflood
