#pragma once

#include "ndeq/problem.hpp"

#include <cstddef>

namespace ndeq {

/// Result of bounding |p_n| away from 1 on a tail [n0, inf).
struct PEstimate {
    double P = 0.0;
    std::size_t n0 = 0;
    bool certified = false;
};

/// Smallest n0 <= horizon with P = sup_{n >= n0} |p_n| < 1. The sup is exact
/// for every catalog kind except tables with the `fail` extension rule, which
/// fall back to horizon sampling and are flagged uncertified. Throws
/// hypothesis_error when no such n0 exists within the horizon.
PEstimate estimate_P(const SequenceSpec& p, std::size_t horizon);

/// Smallest n1 with certified Sum_{i>=n1} |a_i| < 1.
std::size_t find_n1(const SequenceSpec& a, double tol);

/// Maximal admissible ball constant,
///   C = (d - P d) / ( 2^(1/gamma - 1) ( M_d^(1/gamma) + (d^alpha)^(1/gamma) ) ).
double compute_C(double d, double P, double M_d, const AlphaExponent& alpha,
                 const GammaExponent& gamma);

/// Smallest n2 with remainder_alpha(n2) <= C and remainder_beta(n2) <= C,
/// comparing error-inflated values.
std::size_t find_n2(const SequenceSpec& r, const SequenceSpec& a, const SequenceSpec& q,
                    const RationalExponent& inv_gamma, double C, double tol);

/// Every constant of the existence argument for one problem instance.
struct HypothesisReport {
    double P = 0.0;
    std::size_t n0 = 0, n1 = 0, n2 = 0, n3 = 0;
    double d = 1.0;
    double M_d = 0.0;
    double C = 0.0;
    double c_star = 0.0;
    double L_gamma = 0.0, L_d = 0.0, L_alpha = 0.0;
    double alpha_n3 = 0.0, beta_n3 = 0.0;
    double c1 = 0.0, c2 = 0.0;
    double theta_hat = 0.0;
    bool theta_warning = false;  // theta_hat >= 1; retry with a larger horizon/d
    bool z1 = false, z2 = false, z3 = false, add_series = false;
    bool certified = false;
};

/// Runs every hypothesis check and computes the full constant set.
///
/// Hard failures (divergent coefficient series, |p| not eventually below 1)
/// throw hypothesis_error. theta_hat >= 1 is only a warning: the existence
/// argument guarantees contraction just for sufficiently large indices.
HypothesisReport check_hypotheses(const ProblemSpec& problem, double d,
                                  std::size_t horizon, double tol);

} // namespace ndeq
