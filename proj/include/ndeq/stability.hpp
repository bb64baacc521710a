#pragma once

#include "ndeq/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ndeq {

/// The contraction/stability factor
///   theta(n) = |p_n| + L_gamma * D * Sum_{j>=n} |1/r_j|^(1/gamma) Sum_{i>=j} |a_i|
/// for instances with q identically zero and globally D-Lipschitz f.
struct ThetaResult {
    double theta = 0.0;
    /// Smallest index m >= n3 where the tail-uniform bound
    /// sup_{n>=m}|p_n| + L_gamma D tail(m) drops below 1, when one exists
    /// within the search cap.
    std::optional<std::size_t> n4;
    bool certified = false;
};

/// Throws hypothesis_error when q is not identically zero or f has no global
/// Lipschitz constant.
ThetaResult compute_theta(const ProblemSpec& problem, const HypothesisReport& report,
                          std::size_t n);

struct StabilityReport {
    std::optional<double> theta;
    std::optional<std::size_t> n4;
    double perturbation = 0.0;
    double epsilon = 0.0;
    std::size_t block_len = 1;
    /// sup |x_n - y_n| over consecutive index blocks of length k from n3
    std::vector<double> sup_diff_by_block;
    /// first index from which the running sup of |x - y| stays <= epsilon
    std::optional<std::size_t> epsilon_index;
    bool y_diverged = false;
    bool passed = false;
    /// empty when the stability theorem's hypotheses hold for this instance
    std::vector<std::string> hypothesis_violations;
};

/// Perturbs x's seed segment [n3-k, n3+1] by alternating +-perturbation,
/// forward-simulates the perturbed solution y, and measures how sup|x - y|
/// behaves over blocks of length k.
///
/// The experiment runs even when the stability hypotheses fail; violations
/// are recorded in the report and the block-ratio check is skipped when no
/// theta is available.
StabilityReport stability_experiment(const ProblemSpec& problem, const SolutionWindow& x,
                                     const HypothesisReport& report, double perturbation,
                                     double epsilon, std::size_t N);

} // namespace ndeq
