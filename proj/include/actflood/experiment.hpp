#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "actflood/degree_model.hpp"
#include "actflood/errors.hpp"
#include "actflood/graph_gen.hpp"

namespace actflood {

/// Default base seed for every entry point that takes one.
inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct ExperimentPlan {
    FamilyParams family;
    std::vector<std::uint64_t> kappa_grid;
    std::size_t replicates = 0;
    double lambda11 = 1.0;
    double lambda12 = 1.0;
    std::uint64_t base_seed = kDefaultSeed;
    bool discard_unreachable = true;
    std::size_t max_attempts = kDefaultMaxAttempts;
    SimplicityMode simplicity = SimplicityMode::Reject;
    std::optional<double> check_band;  // max |median - limit| allowed at the largest kappa
    bool record_wall_time = false;     // off: wall_time is written as 0 for reproducible output

    /// Throws ConfigError describing the first violated rule.
    void validate() const;
};

enum class ReplicateStatus { Ok, Failed, Discarded };

std::string to_string(ReplicateStatus status);
ReplicateStatus status_from_string(std::string_view text);

struct ReplicateRecord {
    std::uint64_t kappa = 0;
    std::size_t replicate = 0;
    std::uint64_t seed = 0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::size_t attempt_count = 0;
    std::uint32_t source = 0;
    double flood = 0.0;
    double flood1 = 0.0;
    double flood2 = 0.0;
    double normalized = 0.0;  // flood / ln(kappa)
    std::size_t unreachable_count = 0;
    double wall_time = 0.0;  // seconds
    ReplicateStatus status = ReplicateStatus::Ok;
};

struct KappaSummary {
    std::uint64_t kappa = 0;
    std::size_t n_success = 0;
    std::size_t n_failed = 0;
    std::size_t n_discarded = 0;
    double median_norm = 0.0;
    double mean_norm = 0.0;
    double q10 = 0.0;
    double q90 = 0.0;
    double limit = 0.0;
    double abs_gap = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(n_success)
};

struct ExperimentResult {
    std::vector<ReplicateRecord> records;  // sorted by (kappa, replicate)
    std::vector<KappaSummary> summaries;   // one per kappa, grid order
};

/// Thrown when more than half the replicates at some kappa fail to generate.
class ExperimentAborted : public Error {
public:
    ExperimentAborted(std::string what, std::vector<KappaSummary> table)
        : Error(std::move(what)), table_(std::move(table)) {}

    const std::vector<KappaSummary>& table() const noexcept { return table_; }

private:
    std::vector<KappaSummary> table_;
};

/// Degree spec used at `kappa`; drawn from the kSpecStream child seed.
DegreeSpec plan_spec(const ExperimentPlan& plan, std::uint64_t kappa);

/// Limit of Flood(A)/ln(kappa) computed from the realized spec at `kappa`.
double plan_limit(const ExperimentPlan& plan, std::uint64_t kappa);

/// Runs one replicate. Saturation yields a Failed record instead of throwing.
ReplicateRecord run_replicate(const ExperimentPlan& plan, const DegreeSpec& spec,
                              std::uint64_t kappa, std::size_t replicate);

/// All replicates over the grid, on `threads` workers. The output does not
/// depend on the thread count.
ExperimentResult run_experiment(const ExperimentPlan& plan, std::size_t threads = 1);

/// Linear-interpolation sample quantile (R type 7) of sorted values.
double quantile_sorted(std::span<const double> sorted, double q);

/// Per-kappa summary of records; `limits` is aligned with `kappa_grid`.
std::vector<KappaSummary> summarize(std::span<const ReplicateRecord> records,
                                    std::span<const std::uint64_t> kappa_grid,
                                    std::span<const double> limits);

struct ConvergenceRow {
    std::uint64_t kappa = 0;
    std::size_t n_success = 0;
    double median_norm = 0.0;
    double limit = 0.0;
    double abs_gap = 0.0;
    double std_error = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    std::size_t inversions = 0;  // steps where the gap grows
    bool trend_pass = false;     // at most one inversion
    std::optional<bool> band_pass;
    bool verdict = false;        // trend_pass and (band_pass or no band)
};

inline constexpr std::size_t kMinConvergenceReplicates = 30;

/// Trend verdict over summaries in grid order. Throws RefusalError with fewer
/// than two kappa values or any kappa below kMinConvergenceReplicates.
ConvergenceReport convergence_report(std::span<const KappaSummary> summaries,
                                     std::optional<double> band = std::nullopt);

}  // namespace actflood
