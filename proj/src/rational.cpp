#include "ndeq/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ndeq {

namespace {

bool odd(std::int64_t v) { return v % 2 != 0; }

std::string show(const RationalExponent& e) {
    return std::to_string(e.num()) + "/" + std::to_string(e.den());
}

// Binary powering: exact whenever all intermediates are exactly representable
// (notably for bases that are powers of two and for |base| == 1).
double int_pow(double base, std::int64_t n) {
    double result = 1.0;
    double b = base;
    for (auto m = static_cast<std::uint64_t>(n); m != 0; m >>= 1) {
        if (m & 1u) result *= b;
        b *= b;
    }
    return result;
}

} // namespace

RationalExponent::RationalExponent(std::int64_t num, std::int64_t den)
    : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("RationalExponent: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

GammaExponent validate_gamma(const RationalExponent& e) {
    if (!odd(e.num()) || !odd(e.den()))
        throw std::domain_error("gamma exponent must be a ratio of odd integers, got " + show(e));
    if (e.num() <= 0 || e.num() > e.den())
        throw std::domain_error("gamma exponent must lie in (0, 1], got " + show(e));
    return GammaExponent(e);
}

AlphaExponent validate_alpha(const RationalExponent& e) {
    if (!odd(e.den()))
        throw std::domain_error("alpha exponent must have an odd denominator, got " + show(e));
    if (e.num() < e.den())
        throw std::domain_error("alpha exponent must be >= 1, got " + show(e));
    return AlphaExponent(e);
}

RationalExponent invert(const GammaExponent& g) {
    return {g.get().den(), g.get().num()};
}

double rpow(double t, const RationalExponent& e) {
    const std::int64_t num = e.num();
    const std::int64_t den = e.den();
    if (t == 0.0) {
        if (num < 0) throw std::domain_error("rpow: zero base with negative exponent " + show(e));
        return num == 0 ? 1.0 : 0.0;
    }
    double sign = 1.0;
    double base = t;
    if (t < 0.0) {
        if (!odd(den))
            throw std::domain_error("rpow: negative base needs an odd denominator, got exponent " + show(e));
        sign = odd(num) ? -1.0 : 1.0;
        base = -t;
    }
    const std::int64_t n = num < 0 ? -num : num;
    double mag;
    if (den == 1) {
        mag = int_pow(base, n);
    } else if (n == 1 && den == 3) {
        mag = std::cbrt(base);
    } else {
        mag = std::pow(base, static_cast<double>(n) / static_cast<double>(den));
    }
    if (num < 0) mag = 1.0 / mag;
    return sign * mag;
}

} // namespace ndeq
