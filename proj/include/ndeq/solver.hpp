#pragma once

#include "ndeq/operator.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ndeq {

/// Per-iteration sup-norm changes of the fixed-point iteration.
struct IterationTrace {
    std::vector<double> sup_changes;
    std::size_t iterations = 0;
    bool converged = false;
    /// Geometric mean of consecutive sup-change ratios above the noise floor.
    double observed_ratio = 0.0;
};

struct SolveResult {
    SolutionWindow window;
    IterationTrace trace;
};

/// Picard iteration x <- T(x) from the zero window until the a-posteriori
/// contraction bound sup_change <= tol * (1 - theta_hat) holds (plain
/// sup_change <= tol when theta_hat is uncertified or >= 1). Throws
/// numeric_error on non-convergence.
SolveResult solve(const ProblemSpec& problem, const HypothesisReport& report,
                  std::size_t N, double tol, std::size_t max_iter);

struct MemoryRecovery {
    SolutionWindow window;
    bool recovered = false;
    std::string note;
};

/// Recovers the k memory slots x_{n3-k} .. x_{n3-1} from the fixed-point
/// relation, x_{n3+l-k} = (-x_{n3+l} - Sum_{j>=n3+l} W_j) / p_{n3+l}.
/// When p vanishes at a needed index the window is returned unchanged with a
/// "memory not recoverable" note (consistent with p == 0 making the equation
/// memoryless).
MemoryRecovery recover_memory(const ProblemSpec& problem, const SolutionWindow& x,
                              const HypothesisReport& report);

/// Left-hand side of the equation at index n on the window:
///   r_{n+1} u_{n+1}^gamma - r_n u_n^gamma + q_n x_n^alpha + a_n f(x_{n+1}),
///   u_n = x_{n+1} + p_{n+1} x_{n+1-k} - x_n - p_n x_{n-k}.
/// Zero iff the window solves the equation at n. Needs indices n-k .. n+2.
double residual(const ProblemSpec& problem, const SolutionWindow& x, std::size_t n);

/// Residuals over [n_lo, n_hi]; the checkable range of a window is
/// [start + k, N - 2] (the stencil needs x_{n-k} through x_{n+2}).
struct ResidualReport {
    std::size_t n_lo = 0, n_hi = 0;
    std::vector<double> residuals;
    double max_abs_residual = 0.0;
};

ResidualReport residual_report(const ProblemSpec& problem, const SolutionWindow& x);
ResidualReport residual_report(const ProblemSpec& problem, const SolutionWindow& x,
                               std::size_t n_lo, std::size_t n_hi);

/// Direct recursion oracle: rearranges the equation to march x_{n+2} forward
/// from k+2 seed values at indices [start, start + k + 1]. The residual of
/// the output vanishes to rounding at every interior index by construction.
struct Simulation {
    SolutionWindow window;
    bool diverged = false;  // |x_n| crossed the cap; window holds the partial orbit
};

Simulation forward_simulate(const ProblemSpec& problem, std::span<const double> init,
                            std::size_t N, std::size_t start = 0);

} // namespace ndeq
