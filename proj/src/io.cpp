#include "actflood/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "actflood/errors.hpp"

namespace actflood {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, std::string_view seps) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto start = s.find_first_not_of(seps, pos);
        if (start == std::string_view::npos) break;
        const auto end = s.find_first_of(seps, start);
        out.push_back(s.substr(start, end == std::string_view::npos ? s.npos : end - start));
        pos = end == std::string_view::npos ? s.size() : end;
    }
    return out;
}

template <typename T>
std::optional<T> parse_uint(std::string_view text) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
    return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    text = trim(text);
    if (text == "inf") return kInf;
    if (text == "-inf") return -kInf;
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw StructuralError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

DegreeSpec read_spec(std::istream& in) {
    std::map<std::string, std::vector<Degree>> seqs;
    bool theorem_regime = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = trim(std::string_view(line).substr(0, line.find('#')));
        if (body.empty()) continue;
        const auto colon = body.find(':');
        if (colon == std::string_view::npos) throw ParseError(lineno, "expected '<header>: <values>'");
        const std::string key(trim(body.substr(0, colon)));
        const auto rest = body.substr(colon + 1);
        if (key == "regime") {
            const auto value = trim(rest);
            if (value == "theorem") {
                theorem_regime = true;
            } else if (value == "general") {
                theorem_regime = false;
            } else {
                throw ParseError(lineno, "regime must be 'theorem' or 'general'");
            }
            continue;
        }
        if (key != "d11" && key != "d12" && key != "d21" && key != "d22") {
            throw ParseError(lineno, "unknown header '" + key + "'");
        }
        if (seqs.count(key)) throw ParseError(lineno, "duplicate header '" + key + "'");
        auto& seq = seqs[key];
        for (auto token : split(rest, " \t\r")) {
            const auto value = parse_uint<std::uint64_t>(token);
            if (!value || *value > kMaxDegree) {
                throw ParseError(lineno, "bad degree '" + std::string(token) + "'");
            }
            seq.push_back(static_cast<Degree>(*value));
        }
    }
    for (const char* key : {"d11", "d12", "d21", "d22"}) {
        if (!seqs.count(key)) throw ParseError(lineno + 1, std::string("missing header '") + key + ":'");
    }
    DegreeSpec spec;
    spec.n1 = seqs["d11"].size();
    spec.n2 = seqs["d21"].size();
    spec.d11 = std::move(seqs["d11"]);
    spec.d12 = std::move(seqs["d12"]);
    spec.d21 = std::move(seqs["d21"]);
    spec.d22 = std::move(seqs["d22"]);
    spec.theorem_regime = theorem_regime;
    spec.check_shape();
    return spec;
}

void write_spec(std::ostream& out, const DegreeSpec& spec) {
    if (spec.theorem_regime) out << "regime: theorem\n";
    auto line = [&](const char* name, const std::vector<Degree>& seq) {
        out << name << ':';
        for (Degree d : seq) out << ' ' << d;
        out << '\n';
    };
    line("d11", spec.d11);
    line("d12", spec.d12);
    line("d21", spec.d21);
    line("d22", spec.d22);
}

void write_edge_list(std::ostream& out, const TypedMultigraph& graph, const EdgeListHeader& header,
                     std::span<const double> weights) {
    if (!weights.empty() && weights.size() != graph.edge_count()) {
        throw PreconditionError("weight count does not match edge count");
    }
    out << "# actflood-edges n1=" << graph.n1() << " n2=" << graph.n2() << " seed=" << header.seed
        << " attempts=" << header.attempts << '\n';
    const auto edges = graph.edges();
    for (std::size_t id = 0; id < edges.size(); ++id) {
        const auto& e = edges[id];
        out << e.u << ' ' << e.v << ' ' << edge_type_code(e.type);
        if (!weights.empty() && e.type != EdgeType::PP) out << ' ' << format_double(weights[id]);
        out << '\n';
    }
}

LoadedGraph read_edge_list(std::istream& in) {
    LoadedGraph loaded;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    std::vector<double> weights;
    std::size_t weighted = 0;
    std::size_t weightable = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = trim(line);
        if (body.empty()) continue;
        if (!have_header) {
            const auto tokens = split(body, " \t");
            if (tokens.size() < 2 || tokens[0] != "#" || tokens[1] != "actflood-edges") {
                throw ParseError(lineno, "expected '# actflood-edges' header");
            }
            std::set<std::string> seen;
            for (std::size_t i = 2; i < tokens.size(); ++i) {
                const auto eq = tokens[i].find('=');
                if (eq == std::string_view::npos) throw ParseError(lineno, "bad header field");
                const std::string key(tokens[i].substr(0, eq));
                const auto value = parse_uint<std::uint64_t>(tokens[i].substr(eq + 1));
                if (!value) throw ParseError(lineno, "bad value for '" + key + "'");
                if (key == "n1") loaded.header.n1 = *value;
                else if (key == "n2") loaded.header.n2 = *value;
                else if (key == "seed") loaded.header.seed = *value;
                else if (key == "attempts") loaded.header.attempts = *value;
                else throw ParseError(lineno, "unknown header field '" + key + "'");
                seen.insert(key);
            }
            if (!seen.count("n1") || !seen.count("n2")) throw ParseError(lineno, "header needs n1 and n2");
            have_header = true;
            continue;
        }
        if (body.front() == '#') continue;
        const auto tokens = split(body, " \t");
        if (tokens.size() != 3 && tokens.size() != 4) throw ParseError(lineno, "expected 'u v type [weight]'");
        const auto u = parse_uint<NodeId>(tokens[0]);
        const auto v = parse_uint<NodeId>(tokens[1]);
        const auto code = parse_uint<int>(tokens[2]);
        if (!u || !v || !code) throw ParseError(lineno, "bad edge fields");
        const std::size_t n = loaded.header.n1 + loaded.header.n2;
        if (*u >= n || *v >= n) throw ParseError(lineno, "endpoint out of range");
        Edge e{*u, *v, EdgeType::AA};
        try {
            e.type = edge_type_from_code(*code);
        } catch (const PreconditionError& err) {
            throw ParseError(lineno, err.what());
        }
        double w = std::numeric_limits<double>::quiet_NaN();
        if (e.type != EdgeType::PP) ++weightable;
        if (tokens.size() == 4) {
            if (e.type == EdgeType::PP) throw ParseError(lineno, "type-22 edges carry no weight");
            try {
                w = parse_double(tokens[3]);
            } catch (const StructuralError& err) {
                throw ParseError(lineno, err.what());
            }
            ++weighted;
        }
        edges.push_back(e);
        weights.push_back(w);
    }
    if (!have_header) throw ParseError(lineno + 1, "empty edge list");
    if (weighted != 0 && weighted != weightable) {
        throw ParseError(lineno, "either all or none of the 11/12 edges must carry a weight");
    }
    try {
        loaded.graph = TypedMultigraph(loaded.header.n1, loaded.header.n2, std::move(edges));
    } catch (const PreconditionError& err) {
        throw StructuralError(err.what());
    }
    if (weighted > 0) loaded.weights = std::move(weights);
    return loaded;
}

void write_fpp_header(std::ostream& out) { out << "source,flood1,flood2,flood,unreachable_count\n"; }

void write_fpp_row(std::ostream& out, const FppResult& r) {
    out << r.source << ',' << format_double(r.flood1) << ',' << format_double(r.flood2) << ','
        << format_double(r.flood) << ',' << r.unreachable_count << '\n';
}

void write_reach_curve(std::ostream& out, std::span<const double> curve) {
    out << "k,T(k)\n";
    for (std::size_t k = 1; k <= curve.size(); ++k) out << k << ',' << format_double(curve[k - 1]) << '\n';
}

namespace {

constexpr const char* kRecordsHeader =
    "kappa,replicate,seed,n1,n2,attempt_count,source,flood,flood1,flood2,normalized,"
    "unreachable_count,wall_time,status";

}  // namespace

void write_records_csv(std::ostream& out, std::span<const ReplicateRecord> records) {
    out << kRecordsHeader << '\n';
    for (const auto& r : records) {
        out << r.kappa << ',' << r.replicate << ',' << r.seed << ',' << r.n1 << ',' << r.n2 << ','
            << r.attempt_count << ',' << r.source << ',' << format_double(r.flood) << ','
            << format_double(r.flood1) << ',' << format_double(r.flood2) << ','
            << format_double(r.normalized) << ',' << r.unreachable_count << ','
            << format_double(r.wall_time) << ',' << to_string(r.status) << '\n';
    }
}

std::vector<ReplicateRecord> read_records_csv(std::istream& in) {
    std::vector<ReplicateRecord> records;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line) || trim(line) != kRecordsHeader) {
        throw ParseError(1, "records header must be '" + std::string(kRecordsHeader) + "'");
    }
    ++lineno;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 14) throw ParseError(lineno, "expected 14 columns");
        auto u64 = [&](std::string_view s) {
            const auto v = parse_uint<std::uint64_t>(s);
            if (!v) throw ParseError(lineno, "bad integer '" + std::string(s) + "'");
            return *v;
        };
        try {
            ReplicateRecord r;
            r.kappa = u64(f[0]);
            r.replicate = u64(f[1]);
            r.seed = u64(f[2]);
            r.n1 = u64(f[3]);
            r.n2 = u64(f[4]);
            r.attempt_count = u64(f[5]);
            r.source = static_cast<std::uint32_t>(u64(f[6]));
            r.flood = parse_double(f[7]);
            r.flood1 = parse_double(f[8]);
            r.flood2 = parse_double(f[9]);
            r.normalized = parse_double(f[10]);
            r.unreachable_count = u64(f[11]);
            r.wall_time = parse_double(f[12]);
            r.status = status_from_string(f[13]);
            records.push_back(r);
        } catch (const ParseError&) {
            throw;
        } catch (const StructuralError& err) {
            throw ParseError(lineno, err.what());
        }
    }
    return records;
}

void write_summary_csv(std::ostream& out, std::span<const KappaSummary> summaries) {
    out << "kappa,n_success,median_norm,mean_norm,q10,q90,limit,abs_gap\n";
    for (const auto& s : summaries) {
        out << s.kappa << ',' << s.n_success << ',' << format_double(s.median_norm) << ','
            << format_double(s.mean_norm) << ',' << format_double(s.q10) << ','
            << format_double(s.q90) << ',' << format_double(s.limit) << ','
            << format_double(s.abs_gap) << '\n';
    }
}

namespace {

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("key '" + std::string(key) + "': expected true/false");
}

}  // namespace

ExperimentPlan read_plan(std::istream& in) {
    ExperimentPlan plan;
    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = trim(std::string_view(line).substr(0, line.find('#')));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key(trim(body.substr(0, eq)));
        const auto value = trim(body.substr(eq + 1));
        if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");

        auto real = [&] {
            try {
                return parse_double(value);
            } catch (const StructuralError&) {
                throw ConfigError("key '" + key + "': expected a number");
            }
        };
        auto uint = [&] {
            const auto v = parse_uint<std::uint64_t>(value);
            if (!v) throw ConfigError("key '" + key + "': expected a nonnegative integer");
            return *v;
        };
        auto degree = [&] {
            const auto v = uint();
            if (v > kMaxDegree) throw ConfigError("key '" + key + "': degree too large");
            return static_cast<Degree>(v);
        };

        if (key == "family") plan.family.family = family_from_string(value);
        else if (key == "n1_per_kappa") plan.family.n1_per_kappa = real();
        else if (key == "n2_per_kappa") plan.family.n2_per_kappa = real();
        else if (key == "a") plan.family.a = degree();
        else if (key == "c1") plan.family.c1 = degree();
        else if (key == "c2") plan.family.c2 = degree();
        else if (key == "e") plan.family.e = degree();
        else if (key == "exponent") plan.family.exponent = real();
        else if (key == "j_max") plan.family.j_max = degree();
        else if (key == "kappa_grid") {
            for (auto token : split(value, " ,\t")) {
                const auto v = parse_uint<std::uint64_t>(token);
                if (!v) throw ConfigError("key 'kappa_grid': bad entry '" + std::string(token) + "'");
                plan.kappa_grid.push_back(*v);
            }
        }
        else if (key == "replicates") plan.replicates = uint();
        else if (key == "lambda11") plan.lambda11 = real();
        else if (key == "lambda12") plan.lambda12 = real();
        else if (key == "base_seed") plan.base_seed = uint();
        else if (key == "discard_unreachable") plan.discard_unreachable = parse_bool(key, value);
        else if (key == "max_attempts") plan.max_attempts = uint();
        else if (key == "simplicity") {
            if (value == "reject") plan.simplicity = SimplicityMode::Reject;
            else if (value == "erase") plan.simplicity = SimplicityMode::Erase;
            else throw ConfigError("key 'simplicity': expected reject or erase");
        }
        else if (key == "check_band") plan.check_band = real();
        else if (key == "record_wall_time") plan.record_wall_time = parse_bool(key, value);
        else throw ConfigError("unknown key '" + key + "'");
    }
    for (const char* required : {"family", "kappa_grid", "replicates", "lambda11", "lambda12"}) {
        if (!seen.count(required)) throw ConfigError("missing required key '" + std::string(required) + "'");
    }
    plan.validate();
    return plan;
}

void write_plan(std::ostream& out, const ExperimentPlan& plan) {
    const auto& f = plan.family;
    out << "family = " << to_string(f.family) << '\n'
        << "n1_per_kappa = " << format_double(f.n1_per_kappa) << '\n'
        << "n2_per_kappa = " << format_double(f.n2_per_kappa) << '\n'
        << "a = " << f.a << '\n'
        << "c1 = " << f.c1 << '\n'
        << "c2 = " << f.c2 << '\n'
        << "e = " << f.e << '\n'
        << "exponent = " << format_double(f.exponent) << '\n';
    if (f.j_max) out << "j_max = " << *f.j_max << '\n';
    out << "kappa_grid =";
    for (auto k : plan.kappa_grid) out << ' ' << k;
    out << '\n'
        << "replicates = " << plan.replicates << '\n'
        << "lambda11 = " << format_double(plan.lambda11) << '\n'
        << "lambda12 = " << format_double(plan.lambda12) << '\n'
        << "base_seed = " << plan.base_seed << '\n'
        << "discard_unreachable = " << (plan.discard_unreachable ? "true" : "false") << '\n'
        << "max_attempts = " << plan.max_attempts << '\n'
        << "simplicity = " << (plan.simplicity == SimplicityMode::Reject ? "reject" : "erase") << '\n';
    if (plan.check_band) out << "check_band = " << format_double(*plan.check_band) << '\n';
    out << "record_wall_time = " << (plan.record_wall_time ? "true" : "false") << '\n';
}

}  // namespace actflood
