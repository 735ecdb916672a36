#include "actflood/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "actflood/fpp.hpp"
#include "actflood/rng.hpp"

namespace actflood {

void ExperimentPlan::validate() const {
    if (kappa_grid.empty()) throw ConfigError("kappa_grid is empty");
    for (std::size_t i = 0; i < kappa_grid.size(); ++i) {
        if (kappa_grid[i] < 10) throw ConfigError("kappa_grid entries must be >= 10");
        if (i > 0 && kappa_grid[i] <= kappa_grid[i - 1]) {
            throw ConfigError("kappa_grid must be strictly increasing");
        }
    }
    if (replicates < 1) throw ConfigError("replicates must be >= 1");
    if (!(lambda11 > 0.0) || !(lambda12 > 0.0)) throw ConfigError("lambda11 and lambda12 must be > 0");
    if (max_attempts < 1) throw ConfigError("max_attempts must be >= 1");
    if (check_band && !(*check_band >= 0.0)) throw ConfigError("check_band must be >= 0");
}

std::string to_string(ReplicateStatus status) {
    switch (status) {
        case ReplicateStatus::Ok: return "ok";
        case ReplicateStatus::Failed: return "failed";
        case ReplicateStatus::Discarded: return "discarded";
    }
    return "unknown";
}

ReplicateStatus status_from_string(std::string_view text) {
    if (text == "ok") return ReplicateStatus::Ok;
    if (text == "failed") return ReplicateStatus::Failed;
    if (text == "discarded") return ReplicateStatus::Discarded;
    throw StructuralError("unknown replicate status '" + std::string(text) + "'");
}

DegreeSpec plan_spec(const ExperimentPlan& plan, std::uint64_t kappa) {
    return make_family(plan.family, kappa, child_seed(plan.base_seed, kappa, kSpecStream));
}

double plan_limit(const ExperimentPlan& plan, std::uint64_t kappa) {
    return theoretical_limit(compute_stats(plan_spec(plan, kappa)), plan.lambda11, plan.lambda12);
}

ReplicateRecord run_replicate(const ExperimentPlan& plan, const DegreeSpec& spec,
                              std::uint64_t kappa, std::size_t replicate) {
    const auto started = std::chrono::steady_clock::now();
    ReplicateRecord rec;
    rec.kappa = kappa;
    rec.replicate = replicate;
    rec.seed = child_seed(plan.base_seed, kappa, replicate);
    rec.n1 = spec.n1;
    rec.n2 = spec.n2;

    Rng rng(rec.seed);
    try {
        auto generated = generate_simple(spec, rng, plan.max_attempts, plan.simplicity);
        rec.attempt_count = generated.attempts;
        const auto weighted = sample_weights(generated.graph, plan.lambda11, plan.lambda12, rng);
        rec.source = static_cast<std::uint32_t>(rng.below(spec.n1));
        const auto result = flooding(weighted, rec.source, false);
        rec.flood = result.flood;
        rec.flood1 = result.flood1;
        rec.flood2 = result.flood2;
        rec.unreachable_count = result.unreachable_count;
        rec.normalized = result.flood / std::log(static_cast<double>(kappa));
        if (result.unreachable_count > 0 && plan.discard_unreachable) {
            rec.status = ReplicateStatus::Discarded;
        }
    } catch (const SaturationError& err) {
        rec.attempt_count = err.attempts();
        rec.status = ReplicateStatus::Failed;
    }
    if (plan.record_wall_time) {
        rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }
    return rec;
}

ExperimentResult run_experiment(const ExperimentPlan& plan, std::size_t threads) {
    plan.validate();
    std::vector<DegreeSpec> specs;
    std::vector<double> limits;
    for (auto kappa : plan.kappa_grid) {
        specs.push_back(plan_spec(plan, kappa));
        limits.push_back(theoretical_limit(compute_stats(specs.back()), plan.lambda11, plan.lambda12));
    }

    const std::size_t total = plan.kappa_grid.size() * plan.replicates;
    ExperimentResult result;
    result.records.resize(total);

    // Each task writes only its own slot, so output order is fixed.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t task = next++; task < total; task = next++) {
            const std::size_t k = task / plan.replicates;
            const std::size_t r = task % plan.replicates;
            result.records[task] = run_replicate(plan, specs[k], plan.kappa_grid[k], r);
        }
    };
    threads = std::clamp<std::size_t>(threads, 1, total);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    result.summaries = summarize(result.records, plan.kappa_grid, limits);
    for (const auto& s : result.summaries) {
        if (2 * s.n_failed > plan.replicates) {
            throw ExperimentAborted("more than half of the replicates at kappa=" +
                                        std::to_string(s.kappa) + " hit generation saturation",
                                    result.summaries);
        }
    }
    return result;
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0 || sorted[lo] == sorted[hi]) return sorted[lo];
    if (std::isinf(sorted[hi])) return sorted[hi];
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<KappaSummary> summarize(std::span<const ReplicateRecord> records,
                                    std::span<const std::uint64_t> kappa_grid,
                                    std::span<const double> limits) {
    std::vector<KappaSummary> out;
    for (std::size_t k = 0; k < kappa_grid.size(); ++k) {
        KappaSummary s;
        s.kappa = kappa_grid[k];
        s.limit = limits[k];
        std::vector<double> values;
        for (const auto& rec : records) {
            if (rec.kappa != s.kappa) continue;
            switch (rec.status) {
                case ReplicateStatus::Ok: values.push_back(rec.normalized); break;
                case ReplicateStatus::Failed: ++s.n_failed; break;
                case ReplicateStatus::Discarded: ++s.n_discarded; break;
            }
        }
        std::sort(values.begin(), values.end());
        s.n_success = values.size();
        const double nan = std::numeric_limits<double>::quiet_NaN();
        if (values.empty()) {
            s.median_norm = s.mean_norm = s.q10 = s.q90 = s.abs_gap = s.std_error = nan;
        } else {
            const auto n = static_cast<double>(values.size());
            s.median_norm = quantile_sorted(values, 0.5);
            s.q10 = quantile_sorted(values, 0.1);
            s.q90 = quantile_sorted(values, 0.9);
            s.mean_norm = std::accumulate(values.begin(), values.end(), 0.0) / n;
            s.abs_gap = std::abs(s.median_norm - s.limit);
            double ss = 0.0;
            for (double v : values) ss += (v - s.mean_norm) * (v - s.mean_norm);
            s.std_error = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : nan;
        }
        out.push_back(s);
    }
    return out;
}

ConvergenceReport convergence_report(std::span<const KappaSummary> summaries,
                                     std::optional<double> band) {
    if (summaries.size() < 2) {
        throw RefusalError("convergence report needs at least two kappa values");
    }
    ConvergenceReport report;
    for (const auto& s : summaries) {
        if (s.n_success < kMinConvergenceReplicates) {
            throw RefusalError("kappa=" + std::to_string(s.kappa) + " has " +
                               std::to_string(s.n_success) + " successful replicates, need " +
                               std::to_string(kMinConvergenceReplicates));
        }
        report.rows.push_back({s.kappa, s.n_success, s.median_norm, s.limit, s.abs_gap, s.std_error});
    }
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        if (!(report.rows[i].abs_gap <= report.rows[i - 1].abs_gap)) ++report.inversions;
    }
    report.trend_pass = report.inversions <= 1;
    if (band) report.band_pass = report.rows.back().abs_gap <= *band;
    report.verdict = report.trend_pass && report.band_pass.value_or(true);
    return report;
}

}  // namespace actflood
