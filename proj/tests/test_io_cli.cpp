#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "instances.hpp"
#include "ndeq/cli.hpp"
#include "ndeq/errors.hpp"
#include "ndeq/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace ndeq;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("ndeq_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    [[nodiscard]] std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

void write_file(const std::string& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_file(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"ndeq"};
    argv.insert(argv.end(), args.begin(), args.end());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace

TEST_CASE("problem JSON round trip") {
    const auto prob = golden_example();
    const auto j = problem_to_json(prob);
    const auto back = problem_from_json(j);
    CHECK(problem_to_json(back) == j);
    CHECK(back.k == 3);
    CHECK(back.gamma.get() == RationalExponent(1, 3));
    CHECK(back.r.kind() == SequenceSpec::Kind::alternating);
    CHECK(back.f.is_polynomial());
}

TEST_CASE("problem JSON rejects malformed documents") {
    auto good = problem_to_json(golden_example());

    auto extra = good;
    extra["surprise"] = 1;
    CHECK_THROWS_AS(problem_from_json(extra), io_error);

    auto missing = good;
    missing.erase("q");
    CHECK_THROWS_AS(problem_from_json(missing), io_error);

    auto bad_gamma = good;
    bad_gamma["gamma"] = {{"num", 2}, {"den", 3}};  // even numerator
    CHECK_THROWS_AS(problem_from_json(bad_gamma), io_error);

    auto bad_seq = good;
    bad_seq["a"] = {{"kind", "geometric"}, {"c", 1.0}};  // ratio missing
    CHECK_THROWS_AS(problem_from_json(bad_seq), io_error);

    auto bad_extend = good;
    bad_extend["a"] = {{"kind", "table"}, {"values", {1.0}}, {"extend", "wrap"}};
    CHECK_THROWS_AS(problem_from_json(bad_extend), io_error);

    auto bad_k = good;
    bad_k["k"] = 0;
    CHECK_THROWS_AS(problem_from_json(bad_k), io_error);
}

TEST_CASE("window CSV round trip reproduces residuals bit-identically") {
    const auto prob = golden_example();
    const auto rep = check_hypotheses(prob, 1.0, 400, 1e-12);
    const SolveResult res = solve(prob, rep, 60, 1e-10, 100);

    SolutionWindow noisy = res.window;
    noisy.at(20) = 0.123456789012345678;  // not representable, exercises rounding
    std::stringstream ss;
    write_window_csv(ss, noisy);
    const SolutionWindow back = read_window_csv(ss);
    REQUIRE(back.values.size() == noisy.values.size());
    for (std::size_t i = 0; i < back.values.size(); ++i)
        CHECK(back.values[i] == noisy.values[i]);

    const ResidualReport r1 = residual_report(prob, noisy);
    const ResidualReport r2 = residual_report(prob, back);
    REQUIRE(r1.residuals.size() == r2.residuals.size());
    for (std::size_t i = 0; i < r1.residuals.size(); ++i)
        CHECK(r1.residuals[i] == r2.residuals[i]);
}

TEST_CASE("window JSON round trip") {
    SolutionWindow w;
    w.start = 2;
    w.values = {0.1, -0.25, 1.0 / 3.0};
    w.n3 = 4;
    w.d = 1.0;
    w.trunc_tol = 1e-9;
    w.trunc_error = 2.5e-16;
    const SolutionWindow back = window_from_json(window_to_json(w));
    CHECK(back.start == w.start);
    CHECK(back.values == w.values);
    CHECK(back.n3 == w.n3);
    CHECK(back.trunc_error == w.trunc_error);
    auto j = window_to_json(w);
    j["oops"] = 1;
    CHECK_THROWS_AS(window_from_json(j), io_error);
}

TEST_CASE("cli output is deterministic for identical inputs") {
    TempDir tmp;
    const std::string prob_path = tmp.file("problem.json");
    write_file(prob_path, problem_to_json(golden_example()).dump());
    const std::string out1 = tmp.file("r1.json"), out2 = tmp.file("r2.json");
    CHECK(run({"check", prob_path.c_str(), "--out", out1.c_str()}) == 0);
    CHECK(run({"check", prob_path.c_str(), "--out", out2.c_str()}) == 0);
    CHECK(read_file(out1) == read_file(out2));

    const std::string w1 = tmp.file("w1.csv"), w2 = tmp.file("w2.csv");
    const std::string t = tmp.file("t.json");
    CHECK(run({"solve", prob_path.c_str(), "--window", w1.c_str(), "--trace", t.c_str()}) == 0);
    CHECK(run({"solve", prob_path.c_str(), "--window", w2.c_str(), "--trace", t.c_str()}) == 0);
    CHECK(read_file(w1) == read_file(w2));
}

TEST_CASE("window CSV rejects malformed input") {
    std::stringstream no_header("0,1\n1,2\n");
    CHECK_THROWS_AS(read_window_csv(no_header), io_error);
    std::stringstream gap("n,x\n0,1\n2,3\n");
    CHECK_THROWS_AS(read_window_csv(gap), io_error);
    std::stringstream junk("n,x\n0,abc\n");
    CHECK_THROWS_AS(read_window_csv(junk), io_error);
    std::stringstream empty("n,x\n");
    CHECK_THROWS_AS(read_window_csv(empty), io_error);
}

TEST_CASE("cli: check, solve, verify, simulate round trip") {
    TempDir tmp;
    const std::string prob_path = tmp.file("problem.json");
    write_file(prob_path, problem_to_json(golden_example()).dump());

    const std::string report = tmp.file("report.json");
    CHECK(run({"check", prob_path.c_str(), "--d", "1", "--out", report.c_str()}) == 0);
    const auto rep_json = nlohmann::json::parse(read_file(report));
    CHECK(rep_json.at("schema") == "v1");
    CHECK(rep_json.at("P") == 0.5);
    CHECK(rep_json.at("n3") == 6);
    CHECK(rep_json.at("C") == 0.0625);

    const std::string window = tmp.file("window.csv");
    const std::string trace = tmp.file("trace.json");
    CHECK(run({"solve", prob_path.c_str(), "--horizon", "60", "--tol", "1e-10",
               "--recover-memory", "--window", window.c_str(), "--trace", trace.c_str()}) == 0);
    const auto trace_json = nlohmann::json::parse(read_file(trace));
    CHECK(trace_json.at("converged") == true);
    CHECK(trace_json.at("memory_recovered") == true);

    const std::string rres = tmp.file("residuals.json");
    CHECK(run({"verify", prob_path.c_str(), "--window", window.c_str(), "--report",
               rres.c_str()}) == 0);
    const auto rres_json = nlohmann::json::parse(read_file(rres));
    CHECK(rres_json.at("max_abs_residual").get<double>() <= 1e-8);

    const std::string traj = tmp.file("traj.csv");
    CHECK(run({"simulate", prob_path.c_str(), "--init", "1,-1,1,-1,1", "--horizon", "50",
               "--out", traj.c_str()}) == 0);
    std::ifstream tin(traj);
    const SolutionWindow sim = read_window_csv(tin);
    for (std::size_t n = 0; n <= 50; ++n)
        CHECK(std::abs(sim.at(n) - ((n % 2 == 0) ? 1.0 : -1.0)) <= 1e-12);
}

TEST_CASE("cli: stability run writes block csv and report") {
    TempDir tmp;
    const std::string prob_path = tmp.file("st.json");
    write_file(prob_path, problem_to_json(testing::make_st()).dump());
    const std::string csv = tmp.file("blocks.csv");
    const std::string rep = tmp.file("stability.json");
    CHECK(run({"stability", prob_path.c_str(), "--perturbation", "1e-2", "--epsilon", "1e-6",
               "--blocks", "60", "--csv", csv.c_str(), "--report", rep.c_str()}) == 0);
    const auto j = nlohmann::json::parse(read_file(rep));
    CHECK(j.at("schema") == "v1");
    CHECK(j.at("passed") == false);  // the perturbed orbit plateaus; see README
    CHECK(j.at("theta").get<double>() == doctest::Approx(0.5208333333).epsilon(1e-6));
    CHECK(read_file(csv).rfind("block,sup_diff\n", 0) == 0);
}

TEST_CASE("cli: exit codes") {
    TempDir tmp;

    CHECK(run({"check", tmp.file("absent.json").c_str()}) == 3);

    const std::string bad = tmp.file("bad.json");
    write_file(bad, "{ not json");
    CHECK(run({"check", bad.c_str()}) == 3);

    const std::string unknown = tmp.file("unknown.json");
    auto j = problem_to_json(golden_example());
    j["extra"] = true;
    write_file(unknown, j.dump());
    CHECK(run({"check", unknown.c_str()}) == 3);

    const std::string p1 = tmp.file("p1.json");
    auto jp = problem_to_json(golden_example());
    jp["p"] = {{"kind", "constant"}, {"c", 1.0}};
    write_file(p1, jp.dump());
    CHECK(run({"check", p1.c_str()}) == 1);  // hypothesis failure

    const std::string diverging = tmp.file("div.json");
    auto jd = problem_to_json(golden_example());
    jd["a"] = {{"kind", "constant"}, {"c", 0.5}};
    write_file(diverging, jd.dump());
    CHECK(run({"check", diverging.c_str()}) == 1);
}

TEST_CASE("cli: example subcommand asserts the built-in fixture") {
    CHECK(run({"example"}) == 0);
}
