#include "ndeq/cli.hpp"

#include "ndeq/errors.hpp"
#include "ndeq/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace ndeq {

namespace {

bool log_enabled() {
    const char* v = std::getenv("NF_LOG");
    return v != nullptr && *v != '\0' && std::string(v) != "0";
}

void log_note(const std::string& msg) {
    if (log_enabled()) std::cerr << "[ndeq] " << msg << "\n";
}

ProblemSpec load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open problem file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw io_error("problem file " + path + ": " + e.what());
    }
    return problem_from_json(j);
}

// "-" targets stdout / stdin
void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw io_error("cannot write: " + path);
    out << text;
    log_note("wrote " + path);
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::vector<double> parse_init_list(const std::string& csv) {
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            vals.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw io_error("--init: cannot parse \"" + item + "\" as a number");
        }
    }
    if (vals.empty()) throw io_error("--init: empty list");
    return vals;
}

struct CommonOpts {
    std::string problem_path;
    double d = 1.0;
    std::size_t horizon = 60;
    double tol = 1e-10;
};

int cmd_check(const CommonOpts& o, const std::string& out_path) {
    const ProblemSpec prob = load_problem(o.problem_path);
    const HypothesisReport rep = check_hypotheses(prob, o.d, o.horizon, o.tol);
    write_text(out_path, json_text(report_to_json(rep)));
    return 0;
}

int cmd_solve(const CommonOpts& o, std::size_t max_iter, bool recover,
              const std::string& window_path, const std::string& trace_path) {
    const ProblemSpec prob = load_problem(o.problem_path);
    const HypothesisReport rep = check_hypotheses(prob, o.d, std::max(o.horizon, std::size_t{400}), o.tol);
    log_note("n3 = " + std::to_string(rep.n3) + ", theta_hat = " + std::to_string(rep.theta_hat));
    SolveResult res = solve(prob, rep, o.horizon, o.tol, max_iter);
    log_note("converged in " + std::to_string(res.trace.iterations) + " iterations");

    nlohmann::json trace = trace_to_json(res.trace);
    if (recover) {
        const MemoryRecovery mem = recover_memory(prob, res.window, rep);
        res.window = mem.window;
        trace["memory_recovered"] = mem.recovered;
        if (!mem.note.empty()) trace["memory_note"] = mem.note;
    }

    std::ostringstream csv;
    write_window_csv(csv, res.window);
    write_text(window_path, csv.str());
    write_text(trace_path, json_text(trace));
    return 0;
}

int cmd_verify(const std::string& problem_path, const std::string& window_path,
               const std::string& report_path) {
    const ProblemSpec prob = load_problem(problem_path);
    SolutionWindow w;
    if (window_path == "-") {
        w = read_window_csv(std::cin);
    } else {
        std::ifstream in(window_path);
        if (!in) throw io_error("cannot open window CSV: " + window_path);
        w = read_window_csv(in);
    }
    const ResidualReport rep = residual_report(prob, w);
    write_text(report_path, json_text(residuals_to_json(rep)));
    return 0;
}

int cmd_simulate(const std::string& problem_path, const std::string& init_csv,
                 std::size_t start, std::size_t N, const std::string& out_path) {
    const ProblemSpec prob = load_problem(problem_path);
    const std::vector<double> init = parse_init_list(init_csv);
    const Simulation sim = forward_simulate(prob, init, N, start);
    std::ostringstream csv;
    write_window_csv(csv, sim.window);
    write_text(out_path, csv.str());
    if (sim.diverged) {
        std::cerr << "trajectory flagged unbounded at index " << sim.window.last_index()
                  << "; partial output written\n";
        return 2;
    }
    return 0;
}

int cmd_stability(const CommonOpts& o, double perturbation, double epsilon,
                  std::size_t blocks, const std::string& csv_path,
                  const std::string& report_path) {
    const ProblemSpec prob = load_problem(o.problem_path);
    const HypothesisReport rep = check_hypotheses(prob, o.d, 400, o.tol);
    const std::size_t N = std::max(o.horizon, rep.n3 + blocks * prob.k + 2);
    const SolveResult res = solve(prob, rep, N, o.tol, 200);
    const StabilityReport st =
        stability_experiment(prob, res.window, rep, perturbation, epsilon, N);

    std::ostringstream csv;
    csv << "block,sup_diff\n";
    for (std::size_t b = 0; b < st.sup_diff_by_block.size(); ++b) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", b, st.sup_diff_by_block[b]);
        csv << buf;
    }
    write_text(csv_path, csv.str());
    write_text(report_path, json_text(stability_to_json(st)));
    return 0;
}

// The built-in demonstration: verify the known alternating solution, run the
// checker/solver end to end, then report the stability experiment outcome
// (its hypotheses fail on this instance, which the report flags).
int cmd_example() {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const ProblemSpec prob = golden_example();
    bool ok = true;

    SolutionWindow alternating;
    alternating.start = 0;
    alternating.values.resize(53);
    for (std::size_t n = 0; n < alternating.values.size(); ++n)
        alternating.values[n] = (n % 2 == 0) ? 1.0 : -1.0;
    alternating.d = 1.0;
    double max_res = 0.0;
    for (std::size_t n = 3; n <= 50; ++n)
        max_res = std::max(max_res, std::abs(residual(prob, alternating, n)));
    std::cout << "residual of x_n = (-1)^n on [3, 50]: max " << max_res
              << (max_res <= 1e-12 ? "  (<= 1e-12)" : "  EXCEEDS 1e-12") << "\n";
    ok = ok && max_res <= 1e-12;

    const std::vector<double> seed{1.0, -1.0, 1.0, -1.0, 1.0};
    const Simulation sim = forward_simulate(prob, seed, 50);
    double sim_err = 0.0;
    for (std::size_t n = 0; n <= 50; ++n)
        sim_err = std::max(sim_err, std::abs(sim.window.at(n) - ((n % 2 == 0) ? 1.0 : -1.0)));
    std::cout << "forward simulation from the alternating seed: max deviation " << sim_err << "\n";
    ok = ok && !sim.diverged && sim_err <= 1e-12;

    const HypothesisReport rep = check_hypotheses(prob, 1.0, 400, 1e-12);
    std::cout << "hypothesis report: P = " << rep.P << ", C = " << rep.C << ", n1 = " << rep.n1
              << ", n2 = " << rep.n2 << ", n3 = " << rep.n3 << ", theta_hat = " << rep.theta_hat
              << "\n";
    ok = ok && rep.P == 0.5 && rep.n3 == 6;

    const SolveResult res = solve(prob, rep, 60, 1e-10, 200);
    const ResidualReport rres = residual_report(prob, res.window, rep.n3, 58);
    std::cout << "solver: converged in " << res.trace.iterations
              << " iteration(s), observed ratio " << res.trace.observed_ratio
              << ", max residual on [" << rep.n3 << ", 58] = " << rres.max_abs_residual << "\n";
    ok = ok && res.trace.converged && rres.max_abs_residual <= 1e-8;

    const MemoryRecovery mem = recover_memory(prob, res.window, rep);
    double junction = 0.0;
    for (std::size_t n = rep.n3 - 2; n < rep.n3 + prob.k; ++n)
        junction = std::max(junction, std::abs(residual(prob, mem.window, n)));
    std::cout << "memory recovery: " << (mem.recovered ? "recovered" : mem.note)
              << ", junction residual " << junction << "\n";
    ok = ok && mem.recovered && junction <= 1e-8;

    const StabilityReport st = stability_experiment(prob, res.window, rep, 1e-2, 1e-6, 400);
    std::cout << "stability experiment (hypotheses";
    for (const auto& v : st.hypothesis_violations) std::cout << " [" << v << "]";
    std::cout << (st.hypothesis_violations.empty() ? " hold" : " violated") << "): ";
    if (st.epsilon_index)
        std::cout << "diff stays <= 1e-06 from index " << *st.epsilon_index;
    else
        std::cout << "diff never settles below 1e-06 (last block sup "
                  << (st.sup_diff_by_block.empty() ? 0.0 : st.sup_diff_by_block.back()) << ")";
    std::cout << (st.y_diverged ? "; perturbed orbit diverged" : "") << "\n";

    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count();
    std::cout << (ok ? "example OK" : "example FAILED") << " (" << ms << " ms)\n";
    return ok ? 0 : 2;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"bounded-solution solver and verifier for second-order nonlinear "
                 "neutral difference equations with memory"};
    app.require_subcommand(1);

    CommonOpts check_o, solve_o, stab_o;
    check_o.horizon = 400;
    std::string check_out = "-";

    auto* check = app.add_subcommand("check", "verify the existence hypotheses, report constants");
    check->add_option("problem", check_o.problem_path, "problem JSON file")->required();
    check->add_option("--d", check_o.d, "ball radius d > 0");
    check->add_option("--tol", check_o.tol, "tail tolerance");
    check->add_option("--horizon", check_o.horizon, "index horizon for sup checks");
    check->add_option("--out", check_out, "report destination (- for stdout)");

    std::size_t max_iter = 200;
    bool recover = false;
    std::string window_out = "window.csv", trace_out = "trace.json";
    auto* solvec = app.add_subcommand("solve", "fixed-point iteration to a bounded solution");
    solvec->add_option("problem", solve_o.problem_path, "problem JSON file")->required();
    solvec->add_option("--d", solve_o.d, "ball radius d > 0");
    solvec->add_option("--horizon", solve_o.horizon, "last window index N");
    solvec->add_option("--tol", solve_o.tol, "fixed-point tolerance");
    solvec->add_option("--max-iter", max_iter, "iteration cap");
    solvec->add_flag("--recover-memory", recover, "back-fill the k memory slots below n3");
    solvec->add_option("--window", window_out, "window CSV destination (- for stdout)");
    solvec->add_option("--trace", trace_out, "trace JSON destination (- for stdout)");

    std::string verify_problem, verify_window = "-", verify_report = "-";
    auto* verifyc = app.add_subcommand("verify", "residual report for a window CSV");
    verifyc->add_option("problem", verify_problem, "problem JSON file")->required();
    verifyc->add_option("--window", verify_window, "window CSV (- for stdin)");
    verifyc->add_option("--report", verify_report, "report destination (- for stdout)");

    std::string sim_problem, sim_init, sim_out = "-";
    std::size_t sim_start = 0, sim_N = 60;
    auto* simc = app.add_subcommand("simulate", "forward recursion from k+2 seed values");
    simc->add_option("problem", sim_problem, "problem JSON file")->required();
    simc->add_option("--init", sim_init, "comma-separated seed values")->required();
    simc->add_option("--start", sim_start, "index of the first seed value");
    simc->add_option("--horizon", sim_N, "last index to simulate");
    simc->add_option("--out", sim_out, "trajectory CSV destination (- for stdout)");

    double perturbation = 1e-2, epsilon = 1e-6;
    std::size_t blocks = 40;
    std::string stab_csv = "stability_blocks.csv", stab_report = "-";
    auto* stabc = app.add_subcommand("stability", "perturb the solved orbit and track the gap");
    stabc->add_option("problem", stab_o.problem_path, "problem JSON file")->required();
    stabc->add_option("--d", stab_o.d, "ball radius d > 0");
    stabc->add_option("--tol", stab_o.tol, "fixed-point tolerance");
    stabc->add_option("--horizon", stab_o.horizon, "last window index N");
    stabc->add_option("--perturbation", perturbation, "seed perturbation size");
    stabc->add_option("--epsilon", epsilon, "target gap");
    stabc->add_option("--blocks", blocks, "number of k-blocks to track");
    stabc->add_option("--csv", stab_csv, "block-sup CSV destination");
    stabc->add_option("--report", stab_report, "report JSON destination (- for stdout)");

    app.add_subcommand("example", "run the built-in demonstration instance end to end");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (check->parsed()) return cmd_check(check_o, check_out);
        if (solvec->parsed()) return cmd_solve(solve_o, max_iter, recover, window_out, trace_out);
        if (verifyc->parsed()) return cmd_verify(verify_problem, verify_window, verify_report);
        if (simc->parsed()) return cmd_simulate(sim_problem, sim_init, sim_start, sim_N, sim_out);
        if (stabc->parsed())
            return cmd_stability(stab_o, perturbation, epsilon, blocks, stab_csv, stab_report);
        return cmd_example();
    } catch (const hypothesis_error& e) {
        std::cerr << "hypothesis failure: " << e.what() << "\n";
        return 1;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace ndeq
