#include "ndeq/sequence.hpp"

#include "ndeq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ndeq {

namespace {

constexpr double kDivergenceCap = 1e12;
constexpr std::size_t kMaxSeriesTerms = 200000;
constexpr int kQuietRunNeeded = 50;

double ipow(double base, std::size_t n) {
    double result = 1.0;
    double b = base;
    for (std::size_t m = n; m != 0; m >>= 1) {
        if (m & 1u) result *= b;
        b *= b;
    }
    return result;
}

} // namespace

SequenceSpec SequenceSpec::constant(double c) {
    SequenceSpec s;
    s.kind_ = Kind::constant;
    s.c_ = c;
    return s;
}

SequenceSpec SequenceSpec::geometric(double c, double ratio) {
    SequenceSpec s;
    s.kind_ = Kind::geometric;
    s.c_ = c;
    s.ratio_ = ratio;
    return s;
}

SequenceSpec SequenceSpec::alternating(double c) {
    SequenceSpec s;
    s.kind_ = Kind::alternating;
    s.c_ = c;
    return s;
}

SequenceSpec SequenceSpec::power(double c, double s_exponent) {
    SequenceSpec s;
    s.kind_ = Kind::power;
    s.c_ = c;
    s.s_ = s_exponent;
    return s;
}

SequenceSpec SequenceSpec::table(std::vector<double> values, Extend extend) {
    if (values.empty()) throw std::invalid_argument("table sequence needs at least one value");
    SequenceSpec s;
    s.kind_ = Kind::table;
    s.values_ = std::move(values);
    s.extend_ = extend;
    return s;
}

double SequenceSpec::term(std::size_t n) const {
    switch (kind_) {
    case Kind::constant: return c_;
    case Kind::geometric: return c_ * ipow(ratio_, n);
    case Kind::alternating: return (n % 2 == 0) ? c_ : -c_;
    case Kind::power: return c_ * std::pow(static_cast<double>(n + 1), -s_);
    case Kind::table:
        if (n < values_.size()) return values_[n];
        switch (extend_) {
        case Extend::zero: return 0.0;
        case Extend::repeat_last: return values_.back();
        case Extend::fail:
            throw numeric_error("table sequence evaluated at index " + std::to_string(n) +
                                " past its " + std::to_string(values_.size()) +
                                " stored values (extension rule is 'error')");
        }
    }
    throw std::logic_error("unreachable sequence kind");
}

bool SequenceSpec::is_zero() const {
    if (kind_ == Kind::table) {
        if (extend_ == Extend::fail) return false;
        return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
    }
    return c_ == 0.0;
}

std::optional<double> SequenceSpec::sup_abs_from(std::size_t n0) const {
    switch (kind_) {
    case Kind::constant:
    case Kind::alternating:
        return std::abs(c_);
    case Kind::geometric: {
        if (c_ == 0.0) return 0.0;
        const double rho = std::abs(ratio_);
        if (rho < 1.0) return std::abs(c_) * ipow(rho, n0);
        if (rho == 1.0) return std::abs(c_);
        return std::nullopt;
    }
    case Kind::power:
        if (c_ == 0.0) return 0.0;
        if (s_ >= 0.0) return std::abs(c_) * std::pow(static_cast<double>(n0 + 1), -s_);
        return std::nullopt;
    case Kind::table: {
        if (extend_ == Extend::fail) return std::nullopt;
        double m = 0.0;
        for (std::size_t i = n0; i < values_.size(); ++i) m = std::max(m, std::abs(values_[i]));
        if (extend_ == Extend::repeat_last) m = std::max(m, std::abs(values_.back()));
        return m;
    }
    }
    throw std::logic_error("unreachable sequence kind");
}

TailResult tail_abs_sum(const SequenceSpec& s, std::size_t from, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("tail_abs_sum: tol must be positive");
    if (s.is_zero()) return {0.0, 0.0, true};

    switch (s.kind()) {
    case SequenceSpec::Kind::constant:
    case SequenceSpec::Kind::alternating:
        throw numeric_error("tail_abs_sum: terms do not decay, the series of absolute values diverges");

    case SequenceSpec::Kind::geometric: {
        const double rho = std::abs(s.ratio());
        if (rho >= 1.0)
            throw numeric_error("tail_abs_sum: geometric ratio has magnitude >= 1, series diverges");
        return {std::abs(s.c()) * ipow(rho, from) / (1.0 - rho), 0.0, true};
    }

    case SequenceSpec::Kind::power: {
        const double sx = s.s();
        if (sx <= 1.0)
            throw numeric_error("tail_abs_sum: power-law exponent <= 1, series diverges");
        // Integral-test enclosure: sum_{m>=M} m^-s lies in
        // [M^(1-s)/(s-1), M^-s + M^(1-s)/(s-1)].
        const double c = std::abs(s.c());
        double partial = 0.0;
        const std::size_t m_cap = from + 1 + 20'000'000;
        std::size_t m = from + 1;
        while (m < m_cap && c * std::pow(static_cast<double>(m), -sx) > 2.0 * tol) {
            partial += std::pow(static_cast<double>(m), -sx);
            ++m;
        }
        const double integral = std::pow(static_cast<double>(m), 1.0 - sx) / (sx - 1.0);
        const double width = std::pow(static_cast<double>(m), -sx);
        return {c * (partial + integral + 0.5 * width), 0.5 * c * width, true};
    }

    case SequenceSpec::Kind::table: {
        const auto& v = s.values();
        if (s.extend() == Extend::repeat_last && v.back() != 0.0)
            throw numeric_error("tail_abs_sum: table repeats a nonzero value, series diverges");
        if (s.extend() == Extend::fail)
            throw numeric_error("tail_abs_sum: table extension rule 'error' leaves the tail undefined");
        double sum = 0.0;
        for (std::size_t i = from; i < v.size(); ++i) sum += std::abs(v[i]);
        return {sum, 0.0, true};
    }
    }
    throw std::logic_error("unreachable sequence kind");
}

namespace {

// term(j) <= scale * ratio^j for all j >= 0
struct Envelope {
    double scale = 0.0;
    double ratio = 0.0;
};

// Certified structure of the absolute tail A_j = Sum_{i>=j} |term_i|.
struct TailShape {
    enum class Class { zero, finite, geometric, none } cls = Class::none;
    Envelope env;            // geometric: A_j == scale * ratio^j exactly
    std::size_t cutoff = 0;  // finite: A_j == 0 for j >= cutoff
};

TailShape tail_shape(const SequenceSpec& s) {
    TailShape shape;
    if (s.is_zero()) {
        shape.cls = TailShape::Class::zero;
        return shape;
    }
    switch (s.kind()) {
    case SequenceSpec::Kind::geometric: {
        const double rho = std::abs(s.ratio());
        if (rho < 1.0) {
            shape.cls = TailShape::Class::geometric;
            shape.env = {std::abs(s.c()) / (1.0 - rho), rho};
        }
        return shape;
    }
    case SequenceSpec::Kind::table:
        if (s.extend() == Extend::zero ||
            (s.extend() == Extend::repeat_last && s.values().back() == 0.0)) {
            shape.cls = TailShape::Class::finite;
            shape.cutoff = s.values().size();
        }
        return shape;
    default:
        return shape;
    }
}

// |1/r_j| <= scale * ratio^j for all j >= 0, when such a bound exists.
std::optional<Envelope> inverse_abs_envelope(const SequenceSpec& r) {
    switch (r.kind()) {
    case SequenceSpec::Kind::constant:
    case SequenceSpec::Kind::alternating:
        if (r.c() == 0.0) return std::nullopt;
        return Envelope{1.0 / std::abs(r.c()), 1.0};
    case SequenceSpec::Kind::geometric:
        if (r.c() == 0.0 || r.ratio() == 0.0) return std::nullopt;
        return Envelope{1.0 / std::abs(r.c()), 1.0 / std::abs(r.ratio())};
    case SequenceSpec::Kind::table: {
        if (r.extend() != Extend::repeat_last) return std::nullopt;
        double m = 0.0;
        for (double v : r.values()) {
            if (v == 0.0) return std::nullopt;
            m = std::max(m, 1.0 / std::abs(v));
        }
        return Envelope{m, 1.0};
    }
    default:
        return std::nullopt;  // power-law r grows/decays polynomially
    }
}

// Shared engine for the two series shapes over j:
//   remainder:  ( |1/r_j| * A_j )^(1/gamma)
//   comparison: |1/r_j|^(1/gamma) * A_j
TailResult tail_series(const SequenceSpec& r, const SequenceSpec& seq,
                       const RationalExponent& inv_g, std::size_t from, double tol,
                       bool power_on_product) {
    if (tol <= 0.0) throw std::invalid_argument("tail series: tol must be positive");
    const TailShape shape = tail_shape(seq);
    if (shape.cls == TailShape::Class::zero) return {0.0, 0.0, true};

    auto inv_r_abs = [&](std::size_t j) {
        const double rj = r.term(j);
        if (rj == 0.0)
            throw numeric_error("r vanishes at index " + std::to_string(j));
        return 1.0 / std::abs(rj);
    };
    auto term_at = [&](std::size_t j, double tail_value) {
        return power_on_product ? rpow(inv_r_abs(j) * tail_value, inv_g)
                                : rpow(inv_r_abs(j), inv_g) * tail_value;
    };

    if (shape.cls == TailShape::Class::finite) {
        // A_j vanishes past the stored data; the sum is finite and exact.
        double sum = 0.0;
        double err = 0.0;
        bool certified = true;
        for (std::size_t j = from; j < shape.cutoff; ++j) {
            const TailResult A = tail_abs_sum(seq, j, tol);
            const double hi = term_at(j, A.upper());
            const double lo = term_at(j, std::max(A.value - A.error_bound, 0.0));
            sum += 0.5 * (hi + lo);
            err += 0.5 * (hi - lo);
            certified = certified && A.certified;
        }
        return {sum, err, certified};
    }

    if (shape.cls == TailShape::Class::geometric) {
        if (const auto inv_env = inverse_abs_envelope(r)) {
            const double sigma = power_on_product
                                     ? rpow(inv_env->ratio * shape.env.ratio, inv_g)
                                     : rpow(inv_env->ratio, inv_g) * shape.env.ratio;
            if (sigma < 1.0) {
                const double w0 = power_on_product
                                      ? rpow(inv_env->scale * shape.env.scale, inv_g)
                                      : rpow(inv_env->scale, inv_g) * shape.env.scale;
                double sum = 0.0;
                std::size_t j = from;
                double tail_bound = w0 * ipow(sigma, j) / (1.0 - sigma);
                while (tail_bound > tol && j < from + kMaxSeriesTerms) {
                    sum += term_at(j, tail_abs_sum(seq, j, tol).value);
                    ++j;
                    tail_bound = w0 * ipow(sigma, j) / (1.0 - sigma);
                }
                return {sum + 0.5 * tail_bound, 0.5 * tail_bound, true};
            }
        }
    }

    // Adaptive fallback: sum until a long run of terms is negligible. The
    // inner tail is downdated term by term and refreshed periodically so
    // power-law inner sums stay affordable.
    TailResult inner = tail_abs_sum(seq, from, 0.01 * tol);
    double inner_value = inner.value;
    double sum = 0.0;
    int quiet = 0;
    std::size_t steps = 0;
    for (std::size_t j = from;; ++j, ++steps) {
        if (steps >= kMaxSeriesTerms)
            throw numeric_error("series did not settle within " + std::to_string(kMaxSeriesTerms) +
                                " terms; convergence cannot be established");
        if (steps > 0 && steps % 1024 == 0) inner_value = tail_abs_sum(seq, j, 0.01 * tol).value;
        const double w = term_at(j, std::max(inner_value, 0.0));
        sum += w;
        if (sum > kDivergenceCap)
            throw numeric_error("partial sums exceeded the divergence cap of 1e12");
        quiet = (w < tol / 100.0) ? quiet + 1 : 0;
        if (quiet >= kQuietRunNeeded) break;
        inner_value -= std::abs(seq.term(j));
    }
    return {sum, tol, false};
}

} // namespace

TailResult remainder_alpha(const SequenceSpec& r, const SequenceSpec& a,
                           const RationalExponent& inv_gamma, std::size_t n, double tol) {
    return tail_series(r, a, inv_gamma, n, tol, true);
}

TailResult remainder_beta(const SequenceSpec& r, const SequenceSpec& q,
                          const RationalExponent& inv_gamma, std::size_t n, double tol) {
    return tail_series(r, q, inv_gamma, n, tol, true);
}

TailResult comparison_series(const SequenceSpec& r, const SequenceSpec& seq,
                             const RationalExponent& inv_gamma, std::size_t from, double tol) {
    return tail_series(r, seq, inv_gamma, from, tol, false);
}

} // namespace ndeq
