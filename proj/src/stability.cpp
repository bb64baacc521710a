#include "ndeq/stability.hpp"

#include "ndeq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ndeq {

namespace {

constexpr std::size_t kThetaSearchCap = 2000;
constexpr double kSeriesTol = 1e-13;

std::vector<std::string> theorem_violations(const ProblemSpec& problem) {
    std::vector<std::string> v;
    if (!problem.q.is_zero()) v.push_back("q is not identically zero");
    if (!problem.f.global_lipschitz())
        v.push_back("f has no global Lipschitz constant");
    return v;
}

} // namespace

ThetaResult compute_theta(const ProblemSpec& problem, const HypothesisReport& report,
                          std::size_t n) {
    for (const auto& why : theorem_violations(problem))
        throw hypothesis_error("compute_theta: " + why);
    const double D = *problem.f.global_lipschitz();
    const RationalExponent inv_g = problem.inv_gamma();

    ThetaResult out;
    const TailResult tail = comparison_series(problem.r, problem.a, inv_g, n, kSeriesTol);
    out.theta = std::abs(problem.p.term(n)) + report.L_gamma * D * tail.upper();
    out.certified = tail.certified;

    for (std::size_t m = report.n3; m < report.n3 + kThetaSearchCap; ++m) {
        const auto sup_p = problem.p.sup_abs_from(m);
        if (!sup_p) {
            out.certified = false;
            break;
        }
        const TailResult t = comparison_series(problem.r, problem.a, inv_g, m, kSeriesTol);
        out.certified = out.certified && t.certified;
        if (*sup_p + report.L_gamma * D * t.upper() < 1.0) {
            out.n4 = m;
            break;
        }
    }
    return out;
}

StabilityReport stability_experiment(const ProblemSpec& problem, const SolutionWindow& x,
                                     const HypothesisReport& report, double perturbation,
                                     double epsilon, std::size_t N) {
    if (epsilon <= 0.0) throw std::invalid_argument("stability_experiment: epsilon must be positive");
    const std::size_t k = problem.k;
    const std::size_t n3 = x.n3;
    if (N > x.last_index()) N = x.last_index();
    if (N < n3 + 2 * k) throw std::invalid_argument("stability_experiment: horizon too short");

    StabilityReport rep;
    rep.perturbation = perturbation;
    rep.epsilon = epsilon;
    rep.block_len = k;
    rep.hypothesis_violations = theorem_violations(problem);
    if (rep.hypothesis_violations.empty()) {
        const ThetaResult th = compute_theta(problem, report, n3);
        rep.theta = th.theta;
        rep.n4 = th.n4;
    }

    // the perturbed companion orbit, seeded where x starts solving the equation
    const std::size_t seed_start = n3 - k;
    std::vector<double> init(k + 2);
    for (std::size_t i = 0; i < init.size(); ++i)
        init[i] = x.at(seed_start + i) + (i % 2 == 0 ? perturbation : -perturbation);
    const Simulation sim = forward_simulate(problem, init, N, seed_start);
    rep.y_diverged = sim.diverged;

    const std::size_t y_end = sim.window.last_index();
    std::vector<double> diff;
    for (std::size_t n = n3; n <= std::min(N, y_end); ++n)
        diff.push_back(std::abs(x.at(n) - sim.window.at(n)));
    if (diff.empty()) {
        rep.passed = false;
        return rep;
    }

    for (std::size_t b = 0; b * k < diff.size(); ++b) {
        double m = 0.0;
        for (std::size_t i = b * k; i < std::min((b + 1) * k, diff.size()); ++i)
            m = std::max(m, diff[i]);
        rep.sup_diff_by_block.push_back(m);
    }

    // first index whose running suffix-sup stays below epsilon
    double suffix = 0.0;
    std::optional<std::size_t> eps_idx;
    for (std::size_t i = diff.size(); i-- > 0;) {
        suffix = std::max(suffix, diff[i]);
        if (suffix <= epsilon) eps_idx = n3 + i;
    }
    rep.epsilon_index = eps_idx;

    // contraction of block sups once past the noise floor; the delay couples
    // two previous blocks, so compare against the larger of the two
    bool ratios_ok = true;
    if (rep.theta) {
        const double floor = std::max(1e-14, 1e-3 * epsilon);
        const double bound = *rep.theta + 0.05;
        const auto& s = rep.sup_diff_by_block;
        for (std::size_t m = 1; m + 1 < s.size(); ++m) {
            const double prev = std::max(s[m], s[m - 1]);
            if (prev > floor && s[m + 1] > bound * prev) {
                ratios_ok = false;
                break;
            }
        }
    }

    rep.passed = !rep.y_diverged && rep.epsilon_index.has_value() && ratios_ok;
    return rep;
}

} // namespace ndeq
