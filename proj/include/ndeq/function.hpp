#pragma once

#include "ndeq/rational.hpp"

#include <optional>
#include <vector>

namespace ndeq {

enum class NamedFunction { sin, tanh, identity, zero };

/// The nonlinearity f, restricted to a catalog over which the sup bound M_d
/// and the Lipschitz constant L_d on [-d, d] are computed exactly: the
/// polynomial extrema come from the real critical points, the named kinds
/// from closed forms.
class FunctionSpec {
public:
    /// Coefficients in ascending powers: coeffs[i] * x^i.
    static FunctionSpec polynomial(std::vector<double> coeffs);
    static FunctionSpec named(NamedFunction g, double scale);

    [[nodiscard]] double eval(double x) const;

    /// M_d with |f(x)| <= M_d on [-d, d]; requires d > 0.
    [[nodiscard]] double bound_on(double d) const;

    /// L_d = max |f'| on [-d, d]; requires d > 0.
    [[nodiscard]] double lipschitz_on(double d) const;

    /// sup over the reals of |f'| when finite, nullopt otherwise
    /// (polynomials of degree >= 2 have none).
    [[nodiscard]] std::optional<double> global_lipschitz() const;

    [[nodiscard]] bool is_polynomial() const noexcept { return is_poly_; }
    [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] NamedFunction which() const noexcept { return named_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }

private:
    FunctionSpec() = default;

    bool is_poly_ = true;
    std::vector<double> coeffs_{0.0};
    NamedFunction named_ = NamedFunction::zero;
    double scale_ = 0.0;
};

/// Lipschitz constant of x -> x^alpha on [-d, d]: alpha * d^(alpha - 1).
/// Sharp because |d/dx x^alpha| = alpha |x|^(alpha-1) is even and
/// nondecreasing in |x| for alpha >= 1.
double alpha_power_lipschitz(const AlphaExponent& alpha, double d);

/// Lipschitz constant of t -> t^(1/gamma) on [-c, c] for c >= 0:
/// (1/gamma) * c^(1/gamma - 1), by the same monotone-derivative argument.
double gamma_root_lipschitz(const GammaExponent& gamma, double c);

} // namespace ndeq
