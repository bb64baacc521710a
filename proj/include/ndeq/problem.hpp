#pragma once

#include "ndeq/function.hpp"
#include "ndeq/rational.hpp"
#include "ndeq/sequence.hpp"

#include <cstddef>

namespace ndeq {

/// One full equation instance
///   Delta( r_n (Delta(x_n + p_n x_{n-k}))^gamma ) + q_n x_n^alpha + a_n f(x_{n+1}) = 0.
struct ProblemSpec {
    SequenceSpec r;
    SequenceSpec p;
    SequenceSpec q;
    SequenceSpec a;
    FunctionSpec f;
    GammaExponent gamma;
    AlphaExponent alpha;
    std::size_t k = 1;

    [[nodiscard]] RationalExponent inv_gamma() const { return invert(gamma); }
};

/// The built-in demonstration instance with known bounded solution (-1)^n:
/// r_n = (-1)^n, p = 1/2, a_n = q_n = 2^-n, f(x) = x^5, gamma = 1/3,
/// alpha = 5, k = 3.
ProblemSpec golden_example();

/// Throws hypothesis_error when r is structurally zero somewhere (zero
/// extension, zero ratio, ...) or vanishes at any index in [0, horizon].
void verify_r_nonzero(const SequenceSpec& r, std::size_t horizon);

} // namespace ndeq
