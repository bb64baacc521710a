#pragma once

#include "ndeq/hypotheses.hpp"
#include "ndeq/problem.hpp"

#include <cstddef>
#include <vector>

namespace ndeq {

/// Finite-horizon values x_n for n in [start, start + values.size() - 1].
///
/// Inside the solver the window represents an element of the ball B
/// (|x_n| <= d); trunc_error accumulates the certified bound on everything
/// the finite horizon cut off.
struct SolutionWindow {
    std::size_t start = 0;
    std::vector<double> values;
    std::size_t n3 = 0;
    double d = 1.0;
    double trunc_tol = 1e-9;
    double trunc_error = 0.0;

    [[nodiscard]] std::size_t last_index() const noexcept {
        return start + (values.empty() ? 0 : values.size() - 1);
    }
    [[nodiscard]] double at(std::size_t n) const;
    [[nodiscard]] double& at(std::size_t n);
};

/// Truncated inner sum of the operator at start index j:
///   Sum_{i=j}^{N-1} ( a_i f(x_{i+1}) + q_i x_i^alpha ),
/// with the cut tail bounded by M_d * tail|a|(N) + d^alpha * tail|q|(N).
TailResult inner_series(const ProblemSpec& problem, const SolutionWindow& x,
                        std::size_t j, double tol);

/// Suffix sums of the operator's outer series over the window,
/// outer[j - n3] = Sum_{j'=j}^{N} ( (1/r_j') S_j' )^(1/gamma), plus the
/// certified truncation ledger (inner-cut Lipschitz term + outer tail).
struct OperatorTails {
    std::size_t j0 = 0;
    std::vector<double> outer;
    double ledger = 0.0;
};

OperatorTails operator_tail_sums(const ProblemSpec& problem, const SolutionWindow& x,
                                 const HypothesisReport& report);

/// One application of the fixed-point map:
///   (Tx)_n = -p_n x_{n-k} - Sum_{j>=n} ( (1/r_j) S_j )^(1/gamma)  for n >= n3,
///   (Tx)_n = x_n                                                  for n <  n3.
/// Requires x in B; throws numeric_error when r vanishes on the window or the
/// truncation ledger exceeds x.trunc_tol.
SolutionWindow apply_T(const ProblemSpec& problem, const SolutionWindow& x,
                       const HypothesisReport& report);

} // namespace ndeq
