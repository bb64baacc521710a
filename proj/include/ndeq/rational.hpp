#pragma once

#include <cstdint>

namespace ndeq {

/// An exact rational exponent num/den, stored in lowest terms with den >= 1.
///
/// The equation's exponents are constrained by parity: the outer exponent
/// gamma is a ratio of odd integers in (0, 1], the inner exponent alpha has
/// an odd denominator and is >= 1. Those parities are what make the signed
/// real power rpow() below total on negative bases.
class RationalExponent {
public:
    RationalExponent(std::int64_t num, std::int64_t den);

    [[nodiscard]] std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] std::int64_t den() const noexcept { return den_; }
    [[nodiscard]] double value() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend bool operator==(const RationalExponent&, const RationalExponent&) = default;

private:
    std::int64_t num_;
    std::int64_t den_;
};

/// An exponent that passed validate_gamma: odd/odd, in (0, 1].
class GammaExponent {
public:
    [[nodiscard]] const RationalExponent& get() const noexcept { return e_; }
    [[nodiscard]] double value() const noexcept { return e_.value(); }

private:
    friend GammaExponent validate_gamma(const RationalExponent&);
    explicit GammaExponent(const RationalExponent& e) : e_(e) {}
    RationalExponent e_;
};

/// An exponent that passed validate_alpha: odd denominator, >= 1.
class AlphaExponent {
public:
    [[nodiscard]] const RationalExponent& get() const noexcept { return e_; }
    [[nodiscard]] double value() const noexcept { return e_.value(); }

private:
    friend AlphaExponent validate_alpha(const RationalExponent&);
    explicit AlphaExponent(const RationalExponent& e) : e_(e) {}
    RationalExponent e_;
};

/// Checks num odd, den odd, 0 < num/den <= 1. Throws std::domain_error.
GammaExponent validate_gamma(const RationalExponent& e);

/// Checks den odd and num/den >= 1. Throws std::domain_error.
AlphaExponent validate_alpha(const RationalExponent& e);

/// den/num of a validated gamma; again odd/odd, with value >= 1.
RationalExponent invert(const GammaExponent& g);

/// Signed real power t^(num/den).
///
/// Negative bases evaluate the real odd root, sign(t)^num * |t|^(num/den),
/// which requires an odd denominator. rpow(0, e) is 0 for num > 0 and an
/// error for num < 0. Integer exponents and cube roots take exact paths so
/// that e.g. rpow(-1, 5/1) == -1 holds without rounding.
double rpow(double t, const RationalExponent& e);

} // namespace ndeq
