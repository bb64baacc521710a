#include "ndeq/function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ndeq {

namespace {

std::vector<double> stripped(std::vector<double> c) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    return c;
}

std::vector<double> derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
    return d;
}

double horner(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

// All real roots inside [lo, hi], found by recursing on critical points:
// between consecutive critical points the polynomial is monotone, so a sign
// change pins exactly one root for bisection.
std::vector<double> roots_in(const std::vector<double>& coeffs, double lo, double hi) {
    const auto c = stripped(coeffs);
    if (c.size() <= 1) return {};
    if (c.size() == 2) {
        const double root = -c[0] / c[1];
        if (root >= lo && root <= hi) return {root};
        return {};
    }
    auto breaks = roots_in(derivative(c), lo, hi);
    breaks.push_back(lo);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());

    std::vector<double> roots;
    auto push = [&](double x) {
        if (roots.empty() || std::abs(roots.back() - x) > 1e-12 * (hi - lo + 1.0)) roots.push_back(x);
    };
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double a = breaks[i];
        double b = breaks[i + 1];
        double fa = horner(c, a);
        double fb = horner(c, b);
        if (fa == 0.0) push(a);
        if (fa * fb < 0.0) {
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = horner(c, mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if (fa * fm < 0.0) {
                    b = mid;
                    fb = fm;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            push(0.5 * (a + b));
        }
    }
    if (horner(c, hi) == 0.0) push(hi);
    return roots;
}

double max_abs_on(const std::vector<double>& c, double d) {
    double m = std::max(std::abs(horner(c, -d)), std::abs(horner(c, d)));
    for (double x : roots_in(derivative(stripped(c)), -d, d))
        m = std::max(m, std::abs(horner(c, x)));
    return m;
}

} // namespace

FunctionSpec FunctionSpec::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    FunctionSpec f;
    f.is_poly_ = true;
    f.coeffs_ = std::move(coeffs);
    return f;
}

FunctionSpec FunctionSpec::named(NamedFunction g, double scale) {
    FunctionSpec f;
    f.is_poly_ = false;
    f.named_ = g;
    f.scale_ = scale;
    return f;
}

double FunctionSpec::eval(double x) const {
    if (is_poly_) return horner(coeffs_, x);
    switch (named_) {
    case NamedFunction::sin: return scale_ * std::sin(x);
    case NamedFunction::tanh: return scale_ * std::tanh(x);
    case NamedFunction::identity: return scale_ * x;
    case NamedFunction::zero: return 0.0;
    }
    throw std::logic_error("unreachable function kind");
}

double FunctionSpec::bound_on(double d) const {
    if (d <= 0.0) throw std::invalid_argument("bound_on: d must be positive");
    if (is_poly_) return max_abs_on(coeffs_, d);
    switch (named_) {
    case NamedFunction::sin:
        return std::abs(scale_) * (d >= std::numbers::pi / 2.0 ? 1.0 : std::sin(d));
    case NamedFunction::tanh: return std::abs(scale_) * std::tanh(d);
    case NamedFunction::identity: return std::abs(scale_) * d;
    case NamedFunction::zero: return 0.0;
    }
    throw std::logic_error("unreachable function kind");
}

double FunctionSpec::lipschitz_on(double d) const {
    if (d <= 0.0) throw std::invalid_argument("lipschitz_on: d must be positive");
    if (is_poly_) return max_abs_on(derivative(stripped(coeffs_)), d);
    switch (named_) {
    case NamedFunction::sin:
    case NamedFunction::tanh:
    case NamedFunction::identity:
        // derivative magnitude peaks at the origin, always inside [-d, d]
        return std::abs(scale_);
    case NamedFunction::zero: return 0.0;
    }
    throw std::logic_error("unreachable function kind");
}

std::optional<double> FunctionSpec::global_lipschitz() const {
    if (is_poly_) {
        const auto c = stripped(coeffs_);
        if (c.size() == 1) return 0.0;
        if (c.size() == 2) return std::abs(c[1]);
        return std::nullopt;
    }
    switch (named_) {
    case NamedFunction::sin:
    case NamedFunction::tanh:
    case NamedFunction::identity:
        return std::abs(scale_);
    case NamedFunction::zero: return 0.0;
    }
    throw std::logic_error("unreachable function kind");
}

double alpha_power_lipschitz(const AlphaExponent& alpha, double d) {
    if (d <= 0.0) throw std::invalid_argument("alpha_power_lipschitz: d must be positive");
    const auto& e = alpha.get();
    if (e.num() == e.den()) return 1.0;
    return e.value() * rpow(d, RationalExponent(e.num() - e.den(), e.den()));
}

double gamma_root_lipschitz(const GammaExponent& gamma, double c) {
    if (c < 0.0) throw std::invalid_argument("gamma_root_lipschitz: interval radius must be >= 0");
    const auto& e = gamma.get();
    if (e.num() == e.den()) return 1.0;
    const RationalExponent inv_minus_one(e.den() - e.num(), e.num());
    return (static_cast<double>(e.den()) / static_cast<double>(e.num())) * rpow(c, inv_minus_one);
}

} // namespace ndeq
