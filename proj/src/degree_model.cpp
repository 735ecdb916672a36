#include "actflood/degree_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "actflood/errors.hpp"
#include "actflood/rng.hpp"

namespace actflood {

namespace {

std::uint64_t total(std::span<const Degree> seq) {
    return std::accumulate(seq.begin(), seq.end(), std::uint64_t{0});
}

std::vector<Degree> sorted_desc(std::span<const Degree> seq) {
    std::vector<Degree> out(seq.begin(), seq.end());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::map<Degree, double> empirical(std::span<const Degree> seq) {
    std::map<Degree, std::size_t> counts;
    for (Degree d : seq) ++counts[d];
    std::map<Degree, double> p;
    const auto n = static_cast<double>(seq.size());
    for (const auto& [j, c] : counts) p[j] = static_cast<double>(c) / n;
    return p;
}

std::string min_detail(std::span<const Degree> seq) {
    if (seq.empty()) return "no nodes";
    return "min = " + std::to_string(*std::min_element(seq.begin(), seq.end()));
}

}  // namespace

DegreeSpec DegreeSpec::from_sequences(std::vector<Degree> d11, std::vector<Degree> d12,
                                      std::vector<Degree> d21, std::vector<Degree> d22,
                                      bool theorem_regime) {
    DegreeSpec spec;
    spec.n1 = d11.size();
    spec.n2 = d21.size();
    spec.d11 = std::move(d11);
    spec.d12 = std::move(d12);
    spec.d21 = std::move(d21);
    spec.d22 = std::move(d22);
    spec.theorem_regime = theorem_regime;
    spec.check_shape();
    return spec;
}

void DegreeSpec::check_shape() const {
    auto expect = [](std::string_view name, std::size_t got, std::size_t want) {
        if (got != want) {
            throw StructuralError(std::string(name) + " has " + std::to_string(got) +
                                  " entries, expected " + std::to_string(want));
        }
    };
    expect("d11", d11.size(), n1);
    expect("d12", d12.size(), n1);
    expect("d21", d21.size(), n2);
    expect("d22", d22.size(), n2);
    for (const auto* seq : {&d11, &d12, &d21, &d22}) {
        for (Degree d : *seq) {
            if (d > kMaxDegree) throw StructuralError("degree exceeds 2^31 - 1");
        }
    }
    if (total(d12) > kMaxStubs || total(d21) > kMaxStubs) {
        throw StructuralError("bipartite stub count exceeds 2^40");
    }
}

bool ValidationReport::all_passed() const {
    return std::all_of(rules.begin(), rules.end(), [](const RuleResult& r) { return r.passed; });
}

const RuleResult* ValidationReport::find(std::string_view id) const {
    for (const auto& r : rules) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

bool erdos_gallai(std::span<const Degree> degrees) {
    if (total(degrees) % 2 != 0) return false;
    const auto d = sorted_desc(degrees);
    const std::size_t n = d.size();

    // suffix[i] = d[i] + ... + d[n-1]
    std::vector<std::uint64_t> suffix(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + d[i];

    // reach = number of entries with d >= k; shrinks as k grows.
    std::size_t reach = n;
    std::uint64_t lhs = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        lhs += d[k - 1];
        while (reach > 0 && d[reach - 1] < k) --reach;
        const std::size_t split = std::max(k, reach);
        const std::uint64_t rhs = std::uint64_t{k} * (k - 1) + std::uint64_t{k} * (split - k) + suffix[split];
        if (lhs > rhs) return false;
    }
    return true;
}

bool gale_ryser(std::span<const Degree> rows, std::span<const Degree> cols) {
    if (total(rows) != total(cols)) return false;
    const auto a = sorted_desc(rows);
    auto b = std::vector<Degree>(cols.begin(), cols.end());
    std::sort(b.begin(), b.end());

    // sum_j min(b_j, k) = (sum of b_j below k) + k * #(b_j >= k)
    std::size_t below = 0;
    std::uint64_t below_sum = 0;
    std::uint64_t lhs = 0;
    for (std::size_t k = 1; k <= a.size(); ++k) {
        lhs += a[k - 1];
        while (below < b.size() && b[below] < k) below_sum += b[below++];
        const std::uint64_t rhs = below_sum + std::uint64_t{k} * (b.size() - below);
        if (lhs > rhs) return false;
    }
    return true;
}

ValidationReport validate_spec(const DegreeSpec& spec) {
    spec.check_shape();
    ValidationReport report;
    auto add = [&](std::string id, std::string description, bool passed, std::string detail) {
        report.rules.push_back({std::move(id), std::move(description), passed, std::move(detail)});
    };

    const auto s11 = total(spec.d11);
    const auto s12 = total(spec.d12);
    const auto s21 = total(spec.d21);
    const auto s22 = total(spec.d22);

    add("parity_d11", "(i) sum(d11) is even", s11 % 2 == 0, "sum = " + std::to_string(s11));
    add("parity_d22", "(i) sum(d22) is even", s22 % 2 == 0, "sum = " + std::to_string(s22));
    add("balance_d12_d21", "(ii) sum(d12) == sum(d21)", s12 == s21,
        std::to_string(s12) + " vs " + std::to_string(s21));
    add("erdos_gallai_d11", "d11 is graphical (Erdos-Gallai)", erdos_gallai(spec.d11), "");
    add("erdos_gallai_d22", "d22 is graphical (Erdos-Gallai)", erdos_gallai(spec.d22), "");
    add("gale_ryser_d12_d21", "(d12, d21) is bigraphical (Gale-Ryser)",
        gale_ryser(spec.d12, spec.d21), "");
    if (spec.theorem_regime) {
        const bool min11 = spec.d11.empty() ||
                           *std::min_element(spec.d11.begin(), spec.d11.end()) >= 3;
        const bool min21 = spec.d21.empty() ||
                           *std::min_element(spec.d21.begin(), spec.d21.end()) >= 1;
        add("min_d11", "min(d11) >= 3", min11, min_detail(spec.d11));
        add("min_d21", "min(d21) >= 1", min21, min_detail(spec.d21));
    }
    return report;
}

DegreeStats compute_stats(const DegreeSpec& spec) {
    spec.check_shape();
    if (spec.n1 == 0 || total(spec.d11) == 0) {
        throw DegenerateSpecError("mu11 = 0: no active-active half-edges");
    }
    DegreeStats stats;
    stats.p11 = empirical(spec.d11);
    stats.p21 = empirical(spec.d21);
    double factorial_moment = 0.0;
    for (const auto& [j, p] : stats.p11) {
        const auto x = static_cast<double>(j);
        stats.mu11 += x * p;
        factorial_moment += x * (x - 1.0) * p;
    }
    stats.nu11 = factorial_moment / stats.mu11;
    stats.delta11 = *std::min_element(spec.d11.begin(), spec.d11.end());
    if (!spec.d21.empty()) stats.delta21 = *std::min_element(spec.d21.begin(), spec.d21.end());
    stats.bipartite_stubs = total(spec.d12);
    return stats;
}

double theoretical_limit(const DegreeStats& stats, double lambda11, double lambda12) {
    if (!(lambda11 > 0.0) || !(lambda12 > 0.0) || !std::isfinite(lambda11) ||
        !std::isfinite(lambda12)) {
        throw PreconditionError("edge-weight rates must be positive and finite");
    }
    if (!(stats.nu11 > 1.0)) {
        throw SubcriticalError("nu11 = " + std::to_string(stats.nu11) +
                               " <= 1; the flooding limit needs nu11 > 1");
    }
    double slowest_edge = lambda11 * stats.delta11;
    if (stats.delta21) slowest_edge = std::min(slowest_edge, lambda12 * *stats.delta21);
    return 1.0 / (lambda11 * (stats.nu11 - 1.0)) + 1.0 / slowest_edge;
}

ConditionDiagnostics condition_diagnostics(const DegreeSpec& spec, double epsilon,
                                           std::span<const std::uint64_t> m_grid) {
    spec.check_shape();
    if (!(epsilon > 0.0)) throw PreconditionError("epsilon must be positive");
    const auto s = sorted_desc(spec.d12);
    const auto t = sorted_desc(spec.d21);
    const auto n_stubs = static_cast<double>(total(s));
    if (n_stubs == 0.0) throw PreconditionError("condition diagnostics need N > 0");

    ConditionDiagnostics diag;
    diag.epsilon = epsilon;

    // The double sum factorizes into (sum_i s_i(s_i-1)) * (sum_j t_j(t_j-1)).
    auto falling = [](const std::vector<Degree>& seq) {
        double acc = 0.0;
        for (Degree d : seq) acc += static_cast<double>(d) * (static_cast<double>(d) - 1.0);
        return acc;
    };
    diag.bs_ratio1 = falling(s) * falling(t) / (n_stubs * n_stubs);

    auto tail = [&](const std::vector<Degree>& seq, std::uint64_t start) {
        // 1-based start; start beyond the end is an empty sum.
        double acc = 0.0;
        for (std::uint64_t i = std::max<std::uint64_t>(start, 1); i <= seq.size(); ++i) {
            acc += seq[i - 1];
        }
        return acc / n_stubs;
    };
    const std::uint64_t s_max = s.empty() ? 0 : s.front();
    const std::uint64_t t_max = t.empty() ? 0 : t.front();
    for (std::uint64_t m : m_grid) {
        diag.bs_tail_fractions.push_back(
            {m, tail(s, std::min(t_max, m)), tail(t, std::min(s_max, m))});
    }

    auto proxy = [epsilon](std::span<const Degree> seq) {
        if (seq.empty()) return 0.0;
        double acc = 0.0;
        for (const auto& [j, p] : empirical(seq)) acc += std::pow(static_cast<double>(j), 2.0 + epsilon) * p;
        return acc;
    };
    diag.second_moment_proxy_11 = proxy(spec.d11);
    diag.second_moment_proxy_21 = proxy(spec.d21);

    auto finite = [](double x) { return std::isfinite(x); };
    diag.numeric_ok = finite(diag.bs_ratio1) && finite(diag.second_moment_proxy_11) &&
                      finite(diag.second_moment_proxy_21);
    for (const auto& tf : diag.bs_tail_fractions) {
        diag.numeric_ok = diag.numeric_ok && finite(tf.active_side) && finite(tf.passive_side);
    }
    return diag;
}

std::string to_string(Family family) {
    switch (family) {
        case Family::Biregular: return "biregular";
        case Family::TruncatedPowerlaw: return "truncated-powerlaw";
    }
    return "unknown";
}

Family family_from_string(std::string_view name) {
    if (name == "biregular") return Family::Biregular;
    if (name == "truncated-powerlaw") return Family::TruncatedPowerlaw;
    throw ConfigError("unknown family '" + std::string(name) + "'");
}

namespace {

std::size_t scaled_count(double per_kappa, std::uint64_t kappa) {
    if (!(per_kappa >= 0.0) || !std::isfinite(per_kappa)) {
        throw ConstructionError("node ratios must be finite and nonnegative");
    }
    return static_cast<std::size_t>(std::llround(per_kappa * static_cast<double>(kappa)));
}

// Bump the first entry so the sequence sum becomes even.
void repair_parity(std::vector<Degree>& seq) {
    if (!seq.empty() && total(seq) % 2 != 0) ++seq.front();
}

// Make sum(d12) == sum(d21) by raising one entry on the lighter side.
void repair_balance(std::vector<Degree>& d12, std::vector<Degree>& d21) {
    const auto s12 = total(d12);
    const auto s21 = total(d21);
    if (s12 == s21) return;
    auto& lighter = s12 < s21 ? d12 : d21;
    const auto gap = s12 < s21 ? s21 - s12 : s12 - s21;
    if (lighter.empty()) {
        throw ConstructionError("cannot balance bipartite stubs: one side has no nodes");
    }
    lighter.front() += static_cast<Degree>(gap);
}

std::vector<Degree> sample_truncated_powerlaw(std::size_t n, double exponent, Degree lo,
                                              Degree hi, Rng& rng) {
    std::vector<double> cdf;
    double acc = 0.0;
    for (Degree j = lo; j <= hi; ++j) {
        acc += std::pow(static_cast<double>(j), -exponent);
        cdf.push_back(acc);
    }
    std::vector<Degree> out(n);
    for (auto& d : out) {
        const double u = rng.uniform_open() * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        d = lo + static_cast<Degree>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
    }
    return out;
}

}  // namespace

DegreeSpec make_family(const FamilyParams& params, std::uint64_t kappa, std::uint64_t seed) {
    if (kappa < 10) throw ConstructionError("kappa must be at least 10");
    const std::size_t n1 = scaled_count(params.n1_per_kappa, kappa);
    const std::size_t n2 = scaled_count(params.n2_per_kappa, kappa);
    if (n1 < 2) throw ConstructionError("family needs at least two active nodes");
    if (n2 == 0 && params.c1 != 0) {
        throw ConstructionError("c1 must be 0 when there are no passive nodes");
    }
    if (n2 > 0 && params.c2 < 1) throw ConstructionError("c2 must be >= 1 (delta21 >= 1)");
    // Nominal balance must hold up to rounding; repair only absorbs the rounding.
    const double nominal12 = params.n1_per_kappa * params.c1;
    const double nominal21 = params.n2_per_kappa * params.c2;
    if (std::abs(nominal12 - nominal21) > 1e-9 * std::max({1.0, nominal12, nominal21})) {
        throw ConstructionError("n1_per_kappa * c1 must equal n2_per_kappa * c2");
    }

    DegreeSpec spec;
    spec.n1 = n1;
    spec.n2 = n2;
    spec.theorem_regime = true;
    spec.d12.assign(n1, params.c1);
    spec.d21.assign(n2, params.c2);
    spec.d22.assign(n2, params.e);

    switch (params.family) {
        case Family::Biregular:
            if (params.a < 3) throw ConstructionError("a must be >= 3 (delta11 >= 3)");
            spec.d11.assign(n1, params.a);
            break;
        case Family::TruncatedPowerlaw: {
            if (!(params.exponent > 0.0) || !std::isfinite(params.exponent)) {
                throw ConstructionError("power-law exponent must be positive");
            }
            const auto default_max =
                static_cast<Degree>(std::floor(std::cbrt(static_cast<double>(kappa)) + 1e-9));
            const Degree hi = std::max<Degree>(3, params.j_max.value_or(default_max));
            Rng rng(seed);
            spec.d11 = sample_truncated_powerlaw(n1, params.exponent, 3, hi, rng);
            break;
        }
    }

    repair_parity(spec.d11);
    repair_parity(spec.d22);
    repair_balance(spec.d12, spec.d21);
    spec.check_shape();

    const auto report = validate_spec(spec);
    for (const auto& rule : report.rules) {
        if (!rule.passed) {
            throw ConstructionError("family spec fails " + rule.id + " after repair");
        }
    }
    return spec;
}

}  // namespace actflood
