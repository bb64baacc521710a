#include "ndeq/operator.hpp"

#include "ndeq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ndeq {

double SolutionWindow::at(std::size_t n) const {
    if (n < start || n > last_index())
        throw std::out_of_range("window index " + std::to_string(n) + " outside [" +
                                std::to_string(start) + ", " + std::to_string(last_index()) + "]");
    return values[n - start];
}

double& SolutionWindow::at(std::size_t n) {
    if (n < start || n > last_index())
        throw std::out_of_range("window index " + std::to_string(n) + " outside [" +
                                std::to_string(start) + ", " + std::to_string(last_index()) + "]");
    return values[n - start];
}

TailResult inner_series(const ProblemSpec& problem, const SolutionWindow& x,
                        std::size_t j, double tol) {
    const std::size_t N = x.last_index();
    if (j + 1 > N) throw std::out_of_range("inner_series: window too short, need j <= N-1");
    double sum = 0.0;
    for (std::size_t i = j; i < N; ++i) {
        sum += problem.a.term(i) * problem.f.eval(x.at(i + 1)) +
               problem.q.term(i) * rpow(x.at(i), problem.alpha.get());
    }
    const TailResult ta = tail_abs_sum(problem.a, N, tol);
    const TailResult tq = tail_abs_sum(problem.q, N, tol);
    const double M_d = problem.f.bound_on(x.d);
    const double d_alpha = rpow(x.d, problem.alpha.get());
    return {sum, M_d * ta.upper() + d_alpha * tq.upper(), ta.certified && tq.certified};
}

OperatorTails operator_tail_sums(const ProblemSpec& problem, const SolutionWindow& x,
                                 const HypothesisReport& report) {
    const std::size_t N = x.last_index();
    const std::size_t n3 = x.n3;
    if (N < n3 + 1) throw std::invalid_argument("operator_tail_sums: window ends before n3 + 1");

    const RationalExponent inv_g = problem.inv_gamma();
    const double d_alpha = rpow(x.d, problem.alpha.get());
    const double tail_tol = std::max(1e-14, 1e-3 * x.trunc_tol);

    // Everything the window edge cut from the inner sums, uniform over j.
    const TailResult ta = tail_abs_sum(problem.a, N, tail_tol);
    const TailResult tq = tail_abs_sum(problem.q, N, tail_tol);
    const double inner_cut = report.M_d * ta.upper() + d_alpha * tq.upper();

    // Truncated inner sums by suffix accumulation: S[j - n3], S_N = 0.
    std::vector<double> inner(N - n3 + 2, 0.0);
    for (std::size_t j = N; j-- > n3;) {
        const double g = problem.a.term(j) * problem.f.eval(x.at(j + 1)) +
                         problem.q.term(j) * rpow(x.at(j), problem.alpha.get());
        inner[j - n3] = inner[j - n3 + 1] + g;
    }

    // Outer suffix sums and the per-term truncation error. The Lipschitz
    // step needs |S_j| and |S_j| + inner_cut within [-c*, c*], which holds
    // for j >= n3 >= n1 by the choice of c*.
    OperatorTails tails;
    tails.j0 = n3;
    tails.outer.assign(N - n3 + 2, 0.0);
    double err = 0.0;
    for (std::size_t j = N + 1; j-- > n3;) {
        const double rj = problem.r.term(j);
        if (rj == 0.0) throw numeric_error("r vanishes at index " + std::to_string(j));
        const double w = rpow(inner[j - n3] / rj, inv_g);
        tails.outer[j - n3] = tails.outer[j - n3 + 1] + w;
        err += report.L_gamma * rpow(1.0 / std::abs(rj), inv_g) * inner_cut;
    }

    // Tail of the outer series past N, split termwise by the power-mean
    // inequality into the two remainders.
    const auto& g = problem.gamma.get();
    const double two_factor = rpow(2.0, RationalExponent(g.den() - g.num(), g.num()));
    const TailResult rem_a = remainder_alpha(problem.r, problem.a, inv_g, N + 1, tail_tol);
    const TailResult rem_q = remainder_beta(problem.r, problem.q, inv_g, N + 1, tail_tol);
    const double outer_tail = two_factor * (rpow(report.M_d, inv_g) * rem_a.upper() +
                                            rpow(d_alpha, inv_g) * rem_q.upper());

    tails.ledger = err + outer_tail;
    return tails;
}

SolutionWindow apply_T(const ProblemSpec& problem, const SolutionWindow& x,
                       const HypothesisReport& report) {
    const std::size_t N = x.last_index();
    const std::size_t n3 = x.n3;
    if (x.start > (n3 >= problem.k ? n3 - problem.k : 0))
        throw std::invalid_argument("apply_T: window must start at or before n3 - k");
    if (N < n3 + problem.k + 2)
        throw std::invalid_argument("apply_T: window must extend to at least n3 + k + 2");

    const double slack = x.trunc_tol + 1e-12 * std::max(1.0, x.d);
    for (double v : x.values)
        if (!(std::abs(v) <= x.d + slack))
            throw std::domain_error("apply_T: window leaves the ball |x_n| <= d");

    const OperatorTails tails = operator_tail_sums(problem, x, report);
    if (tails.ledger > x.trunc_tol)
        throw numeric_error("apply_T: truncation error " + std::to_string(tails.ledger) +
                            " exceeds the budget " + std::to_string(x.trunc_tol) +
                            "; enlarge the horizon");

    SolutionWindow out = x;  // indices below n3 carry over verbatim
    for (std::size_t n = n3; n <= N; ++n)
        out.at(n) = -problem.p.term(n) * x.at(n - problem.k) - tails.outer[n - n3];
    out.trunc_error = tails.ledger;
    return out;
}

} // namespace ndeq
