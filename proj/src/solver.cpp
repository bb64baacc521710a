#include "ndeq/solver.hpp"

#include "ndeq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ndeq {

namespace {

constexpr double kOrbitCap = 1e9;
constexpr double kRatioFloor = 1e-14;

double geometric_mean_ratio(const std::vector<double>& sup_changes) {
    double log_sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i + 1 < sup_changes.size(); ++i) {
        if (sup_changes[i] > kRatioFloor && sup_changes[i + 1] > 0.0) {
            log_sum += std::log(sup_changes[i + 1] / sup_changes[i]);
            ++count;
        }
    }
    return count == 0 ? 0.0 : std::exp(log_sum / static_cast<double>(count));
}

} // namespace

SolveResult solve(const ProblemSpec& problem, const HypothesisReport& report,
                  std::size_t N, double tol, std::size_t max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("solve: tol must be positive");
    if (max_iter == 0) throw std::invalid_argument("solve: max_iter must be positive");
    if (N < report.n3 + problem.k + 2)
        throw std::invalid_argument("solve: horizon must be at least n3 + k + 2 = " +
                                    std::to_string(report.n3 + problem.k + 2));

    SolutionWindow x;
    x.start = 0;
    x.values.assign(N + 1, 0.0);
    x.n3 = report.n3;
    x.d = report.d;
    x.trunc_tol = tol;

    const bool contraction_known = report.certified && !report.theta_warning;
    const double stop = contraction_known ? tol * (1.0 - report.theta_hat) : tol;

    IterationTrace trace;
    for (std::size_t m = 0; m < max_iter; ++m) {
        SolutionWindow next = apply_T(problem, x, report);
        double change = 0.0;
        for (std::size_t n = report.n3; n <= N; ++n)
            change = std::max(change, std::abs(next.at(n) - x.at(n)));
        trace.sup_changes.push_back(change);
        x = std::move(next);
        if (change <= stop) {
            trace.converged = true;
            break;
        }
        if (report.theta_warning && trace.sup_changes.size() >= 10) {
            const auto& s = trace.sup_changes;
            bool nondecreasing = true;
            for (std::size_t i = s.size() - 9; i < s.size(); ++i)
                nondecreasing = nondecreasing && s[i] >= s[i - 1];
            if (nondecreasing)
                throw numeric_error("solve: theta_hat >= 1 and sup changes are non-decreasing "
                                    "over 10 iterations; the iteration is not contracting");
        }
    }
    trace.iterations = trace.sup_changes.size();
    trace.observed_ratio = geometric_mean_ratio(trace.sup_changes);
    if (!trace.converged)
        throw numeric_error("solve: no convergence within " + std::to_string(max_iter) +
                            " iterations; last sup change " +
                            std::to_string(trace.sup_changes.back()));
    return {std::move(x), std::move(trace)};
}

MemoryRecovery recover_memory(const ProblemSpec& problem, const SolutionWindow& x,
                              const HypothesisReport& report) {
    const std::size_t n3 = x.n3;
    const std::size_t k = problem.k;
    if (n3 < k || x.start > n3 - k)
        throw std::invalid_argument("recover_memory: window does not reach down to n3 - k");

    for (std::size_t l = 0; l < k; ++l) {
        if (problem.p.term(n3 + l) == 0.0) {
            return {x, false,
                    "memory not recoverable: p vanishes at index " + std::to_string(n3 + l)};
        }
    }

    const OperatorTails tails = operator_tail_sums(problem, x, report);
    MemoryRecovery out{x, true, ""};
    for (std::size_t l = 0; l < k; ++l) {
        const std::size_t n = n3 + l;
        out.window.at(n - k) = (-x.at(n) - tails.outer[n - n3]) / problem.p.term(n);
    }
    return out;
}

double residual(const ProblemSpec& problem, const SolutionWindow& x, std::size_t n) {
    const std::size_t k = problem.k;
    if (n < x.start + k || n + 2 > x.last_index())
        throw std::out_of_range("residual: index " + std::to_string(n) +
                                " needs window values at n-k .. n+2");
    auto u = [&](std::size_t m) {
        return x.at(m + 1) + problem.p.term(m + 1) * x.at(m + 1 - k) - x.at(m) -
               problem.p.term(m) * x.at(m - k);
    };
    const auto& g = problem.gamma.get();
    return problem.r.term(n + 1) * rpow(u(n + 1), g) - problem.r.term(n) * rpow(u(n), g) +
           problem.q.term(n) * rpow(x.at(n), problem.alpha.get()) +
           problem.a.term(n) * problem.f.eval(x.at(n + 1));
}

ResidualReport residual_report(const ProblemSpec& problem, const SolutionWindow& x,
                               std::size_t n_lo, std::size_t n_hi) {
    if (n_lo < x.start + problem.k || n_hi + 2 > x.last_index() || n_hi < n_lo)
        throw std::invalid_argument("residual_report: range [" + std::to_string(n_lo) + ", " +
                                    std::to_string(n_hi) + "] is not checkable on this window");
    ResidualReport rep;
    rep.n_lo = n_lo;
    rep.n_hi = n_hi;
    rep.residuals.reserve(n_hi - n_lo + 1);
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        const double res = residual(problem, x, n);
        rep.residuals.push_back(res);
        rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(res));
    }
    return rep;
}

ResidualReport residual_report(const ProblemSpec& problem, const SolutionWindow& x) {
    const std::size_t n_lo = x.start + problem.k;
    const std::size_t N = x.last_index();
    if (N < n_lo + 2) throw std::invalid_argument("residual_report: window too short");
    return residual_report(problem, x, n_lo, N - 2);
}

Simulation forward_simulate(const ProblemSpec& problem, std::span<const double> init,
                            std::size_t N, std::size_t start) {
    const std::size_t k = problem.k;
    if (init.size() != k + 2)
        throw std::invalid_argument("forward_simulate: need exactly k + 2 = " +
                                    std::to_string(k + 2) + " seed values");
    if (N < start + k + 2)
        throw std::invalid_argument("forward_simulate: horizon must reach past the seed");
    verify_r_nonzero(problem.r, N + 1);

    Simulation sim;
    SolutionWindow& x = sim.window;
    x.start = start;
    x.values.assign(N - start + 1, 0.0);
    std::copy(init.begin(), init.end(), x.values.begin());
    x.n3 = start;

    const auto& g = problem.gamma.get();
    const RationalExponent inv_g = problem.inv_gamma();
    auto p = [&](std::size_t m) { return problem.p.term(m); };

    // quasi-difference v_n = r_n u_n^gamma seeded from the init segment
    std::size_t n = start + k;
    double u = x.at(n + 1) + p(n + 1) * x.at(n + 1 - k) - x.at(n) - p(n) * x.at(n - k);
    double v = problem.r.term(n) * rpow(u, g);

    std::size_t filled = start + k + 1;
    for (n = start + k; n + 2 <= N; ++n) {
        v -= problem.q.term(n) * rpow(x.at(n), problem.alpha.get()) +
             problem.a.term(n) * problem.f.eval(x.at(n + 1));
        u = rpow(v / problem.r.term(n + 1), inv_g);
        const double next = u + x.at(n + 1) + p(n + 1) * x.at(n + 1 - k) - p(n + 2) * x.at(n + 2 - k);
        if (!(std::abs(next) <= kOrbitCap)) {
            sim.diverged = true;
            break;
        }
        x.at(n + 2) = next;
        filled = n + 2;
    }
    if (sim.diverged) x.values.resize(filled - start + 1);

    double scale = 0.0;
    for (double val : x.values) scale = std::max(scale, std::abs(val));
    x.d = scale;
    return sim;
}

} // namespace ndeq
