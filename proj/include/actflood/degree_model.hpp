#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace actflood {

using Degree = std::uint32_t;

/// Largest admissible single degree and total bipartite stub count.
inline constexpr Degree kMaxDegree = 0x7FFFFFFF;
inline constexpr std::uint64_t kMaxStubs = std::uint64_t{1} << 40;

/// The four typed degree sequences of a two-type configuration model.
/// Node ids: active nodes are 0..n1-1, passive nodes n1..n1+n2-1.
struct DegreeSpec {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::vector<Degree> d11;  // active -> active, length n1
    std::vector<Degree> d12;  // active -> passive, length n1
    std::vector<Degree> d21;  // passive -> active, length n2
    std::vector<Degree> d22;  // passive -> passive, length n2
    // When set, validation also demands min(d11) >= 3 and min(d21) >= 1.
    bool theorem_regime = false;

    /// Builds a spec whose node counts are taken from the sequence lengths.
    static DegreeSpec from_sequences(std::vector<Degree> d11, std::vector<Degree> d12,
                                     std::vector<Degree> d21, std::vector<Degree> d22,
                                     bool theorem_regime = false);

    /// Throws StructuralError unless the lengths are n1, n1, n2, n2 and every
    /// entry and stub total is within the documented caps.
    void check_shape() const;

    bool operator==(const DegreeSpec&) const = default;
};

struct RuleResult {
    std::string id;
    std::string description;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<RuleResult> rules;

    bool all_passed() const;
    /// nullptr when no rule has that id.
    const RuleResult* find(std::string_view id) const;
};

/// Erdos-Gallai test, including the even-sum requirement. Order-insensitive.
bool erdos_gallai(std::span<const Degree> degrees);

/// Gale-Ryser test for a bipartite graph with the given row and column margins.
bool gale_ryser(std::span<const Degree> rows, std::span<const Degree> cols);

/// Runs every realizability rule on `spec`. Throws StructuralError on a shape
/// problem; rule failures are reported, never thrown.
ValidationReport validate_spec(const DegreeSpec& spec);

struct DegreeStats {
    std::map<Degree, double> p11;  // fraction of active nodes with d11 == j
    std::map<Degree, double> p21;  // fraction of passive nodes with d21 == j
    double mu11 = 0.0;
    double nu11 = 0.0;  // (1/mu11) * sum_j j(j-1) p11(j)
    Degree delta11 = 0;
    std::optional<Degree> delta21;  // empty when there are no passive nodes
    std::uint64_t bipartite_stubs = 0;  // N = sum(d12) = sum(d21)
};

/// Empirical degree distributions and their moments. Throws
/// DegenerateSpecError when every d11 entry is zero.
DegreeStats compute_stats(const DegreeSpec& spec);

/// Limit of Flood(A) / ln(kappa) for a uniformly chosen active source:
///   1 / (lambda11 (nu11 - 1)) + 1 / min(lambda11 delta11, lambda12 delta21).
/// Without passive nodes the minimum reduces to lambda11 delta11.
/// Throws SubcriticalError if nu11 <= 1, PreconditionError on a bad rate.
double theoretical_limit(const DegreeStats& stats, double lambda11, double lambda12);

struct TailFractions {
    std::uint64_t m = 0;
    double active_side = 0.0;   // (sum_{i = t ^ m}^{n1} s_i) / N
    double passive_side = 0.0;  // (sum_{i = s ^ m}^{n2} t_i) / N
};

struct ConditionDiagnostics {
    double bs_ratio1 = 0.0;  // sum_i sum_j s_i(s_i-1) t_j(t_j-1) / N^2
    std::vector<TailFractions> bs_tail_fractions;
    double second_moment_proxy_11 = 0.0;  // sum_j j^(2+eps) p11(j)
    double second_moment_proxy_21 = 0.0;  // sum_j j^(2+eps) p21(j)
    double epsilon = 0.1;
    bool numeric_ok = true;  // false if any quantity came out NaN or infinite
};

/// Finite-kappa values of the regularity and bipartite-balance conditions.
/// s and t are d12 and d21 sorted decreasingly; tail sums use 1-based indices
/// and an empty range sums to zero. Requires N > 0.
ConditionDiagnostics condition_diagnostics(const DegreeSpec& spec, double epsilon,
                                           std::span<const std::uint64_t> m_grid);

enum class Family { Biregular, TruncatedPowerlaw };

std::string to_string(Family family);
Family family_from_string(std::string_view name);

struct FamilyParams {
    Family family = Family::Biregular;
    double n1_per_kappa = 1.0;
    double n2_per_kappa = 1.0;
    Degree a = 3;   // d11 (biregular)
    Degree c1 = 1;  // d12
    Degree c2 = 1;  // d21
    Degree e = 0;   // d22
    double exponent = 3.5;          // truncated power law: P(j) ~ j^-exponent on [3, j_max]
    std::optional<Degree> j_max;    // default floor(kappa^(1/3)), at least 3
};

/// Deterministic preset families. Biregular ignores `seed`. Throws
/// ConstructionError on infeasible parameters or a failed repair.
DegreeSpec make_family(const FamilyParams& params, std::uint64_t kappa, std::uint64_t seed);

}  // namespace actflood
