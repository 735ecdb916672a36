#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <cmath>
#include <unistd.h>

#include "actflood/experiment.hpp"
#include "actflood/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("actflood_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path put(const std::string& name, const std::string& text) {
    const auto p = scratch() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

Run run(const std::string& args) {
    const auto out = scratch() / "stdout.txt";
    const auto err = scratch() / "stderr.txt";
    const std::string cmd = std::string("\"") + ACTFLOOD_CLI_PATH + "\" " + args + " >\"" + out.string() +
                            "\" 2>\"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

const char* kK4 = "d11: 3 3 3 3\nd12: 0 0 0 0\nd21:\nd22:\n";

}  // namespace

TEST_CASE("validate") {
    const auto good = put("good.spec", "d11: 3 3 3 3\nd12: 1 1 0 0\nd21: 1 1\nd22: 1 1\n");
    auto r = run("validate " + good.string() + " --out " + (scratch() / "report.json").string());
    CHECK(r.code == 0);
    CHECK(contains(slurp(scratch() / "report.json"), "\"balance_d12_d21\""));

    const auto unbalanced = put("unbalanced.spec", "d11: 3 3 3 3\nd12: 1 1 1 0\nd21: 1 1\nd22: 0 0\n");
    r = run("validate " + unbalanced.string());
    CHECK(r.code == 1);
    CHECK(contains(r.out, "(ii)"));
    CHECK(contains(r.out, "FAIL"));

    const auto malformed = put("malformed.spec", "d11: 3 3 3 3\nd12: 0 zero 0 0\nd21:\nd22:\n");
    r = run("validate " + malformed.string());
    CHECK(r.code == 2);
    CHECK(contains(r.err, "line 2"));

    CHECK(run("validate " + (scratch() / "nope.spec").string()).code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("generate") {
    const auto k4 = put("k4.spec", kK4);
    const auto a = run("generate " + k4.string() + " --seed 5");
    REQUIRE(a.code == 0);
    int edges = 0;
    std::istringstream lines(a.out);
    for (std::string line; std::getline(lines, line);)
        if (!line.empty() && line[0] != '#') ++edges;
    CHECK(edges == 6);

    const auto spec = put("mixed.spec", "d11: 3 3 3 3 3 3\nd12: 1 1 1 1 1 1\nd21: 2 2 2\nd22: 2 2 2\n");
    const auto f1 = scratch() / "g1.txt";
    const auto f2 = scratch() / "g2.txt";
    REQUIRE(run("generate " + spec.string() + " --seed 9 --out " + f1.string()).code == 0);
    REQUIRE(run("generate " + spec.string() + " --seed 9 --out " + f2.string()).code == 0);
    CHECK(slurp(f1) == slurp(f2));

    const auto loop = put("loop.spec", "d11: 2\nd12: 0\nd21:\nd22:\n");
    const auto r = run("generate " + loop.string() + " --max-attempts 20");
    CHECK(r.code == 3);
    CHECK(contains(r.err, "20"));
}

TEST_CASE("flood") {
    // Star: active centre 0, active leaves 1..3, passive leaf 4 hanging off node 1.
    const auto star = put("star.txt",
                          "# actflood-edges n1=4 n2=1\n0 1 11 0.25\n0 2 11 0.5\n0 3 11 0.375\n1 4 12 0.5\n");
    auto r = run("flood --graph " + star.string() + " --source 0");
    REQUIRE(r.code == 0);
    CHECK(r.out == "source,flood1,flood2,flood,unreachable_count\n0,0.5,0.75,0.75,0\n");

    const auto passive_star =
        put("pstar.txt", "# actflood-edges n1=1 n2=3\n0 1 12 0.2\n0 2 12 0.5\n0 3 12 0.9\n");
    r = run("flood --graph " + passive_star.string() + " --source 0");
    REQUIRE(r.code == 0);
    CHECK(r.out == "source,flood1,flood2,flood,unreachable_count\n0,0,0.9,0.9,0\n");

    const auto curve = scratch() / "curve.csv";
    r = run("flood --graph " + star.string() + " --source 0 --reach-curve " + curve.string());
    CHECK(r.code == 0);
    CHECK(contains(slurp(curve), "k,T(k)"));

    CHECK(run("flood --graph " + star.string() + " --source 4").code != 0);

    const auto spec = put("mixed.spec", "d11: 3 3 3 3 3 3\nd12: 1 1 1 1 1 1\nd21: 2 2 2\nd22: 2 2 2\n");
    const auto a = run("flood --spec " + spec.string() + " --seed 11 --source uniform");
    const auto b = run("flood --spec " + spec.string() + " --seed 11 --source uniform");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    const auto split = put("split.txt", "# actflood-edges n1=3 n2=0\n0 1 11 1.0\n");
    CHECK(run("flood --graph " + split.string() + " --source 0").code == 1);
    r = run("flood --graph " + split.string() + " --source 0 --keep-unreachable");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "inf"));

    CHECK(run("flood --graph " + star.string() + " --spec " + spec.string()).code == 2);
}

TEST_CASE("experiment") {
    const auto plan = put("small.plan",
                          "family = biregular\nkappa_grid = 40 80\nreplicates = 4\nlambda11 = 1\nlambda12 = 1\n");
    const auto dir = scratch() / "exp";
    auto r = run("experiment --config " + plan.string() + " --out " + dir.string());
    REQUIRE(r.code == 0);
    CHECK(contains(slurp(dir / "records.csv"), "kappa,replicate,seed"));
    CHECK(contains(slurp(dir / "summary.csv"), "kappa,n_success,median_norm"));
    CHECK(contains(r.out, "verdict:"));

    // Synthetic records sitting exactly on the limit of 2.
    std::ostringstream recs;
    recs << "kappa,replicate,seed,n1,n2,attempt_count,source,flood,flood1,flood2,normalized,"
            "unreachable_count,wall_time,status\n";
    for (int k : {1000, 3000}) {
        const double lk = std::log(static_cast<double>(k));
        for (int i = 0; i < 40; ++i)
            recs << k << ',' << i << ",1," << k << ',' << k << ",1,0," << 2 * lk << ',' << 2 * lk << ",0,2,0,0,ok\n";
    }
    const auto csv = put("records.csv", recs.str());
    const auto grid_plan =
        put("grid.plan", "family = biregular\nkappa_grid = 1000 3000\nreplicates = 40\nlambda11 = 1\nlambda12 = 1\n");
    r = run("experiment --config " + grid_plan.string() + " --out " + (scratch() / "chk").string() +
            " --records " + csv.string() + " --check");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "verdict: PASS"));

    const auto missing = put("missing.plan", "family = biregular\nkappa_grid = 40\nlambda11 = 1\nlambda12 = 1\n");
    r = run("experiment --config " + missing.string() + " --out " + dir.string());
    CHECK(r.code == 2);
    CHECK(contains(r.err, "replicates"));
}

TEST_CASE("shipped plans parse") {
    for (const auto& entry : fs::directory_iterator(fs::path(ACTFLOOD_SOURCE_DIR) / "plans")) {
        std::ifstream in(entry.path());
        INFO(entry.path().string());
        const auto plan = actflood::read_plan(in);
        CHECK_NOTHROW(plan.validate());
        CHECK_NOTHROW(actflood::plan_spec(plan, plan.kappa_grid.front()));
    }
}
