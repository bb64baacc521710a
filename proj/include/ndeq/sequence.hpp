#pragma once

#include "ndeq/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace ndeq {

/// How a table sequence continues past its stored values.
enum class Extend { zero, repeat_last, fail };

/// A real sequence over n >= 0, restricted to a catalog of closed forms.
///
/// The catalog exists so that absolute tail sums Sum_{i>=n} |term(i)| carry
/// certified bounds wherever the form admits one; table sequences must
/// declare an extension rule because the sums are infinite.
class SequenceSpec {
public:
    enum class Kind { constant, geometric, alternating, power, table };

    static SequenceSpec constant(double c);
    /// c * ratio^n
    static SequenceSpec geometric(double c, double ratio);
    /// c * (-1)^n
    static SequenceSpec alternating(double c);
    /// c * (n+1)^(-s); shifted by one so the term at n = 0 is defined
    static SequenceSpec power(double c, double s);
    static SequenceSpec table(std::vector<double> values, Extend extend);

    [[nodiscard]] double term(std::size_t n) const;

    /// True when every term is zero (tables with a `fail` rule never qualify).
    [[nodiscard]] bool is_zero() const;

    /// Exact sup of |term| over [n0, inf); nullopt when unbounded or when the
    /// table extension rule is `fail`.
    [[nodiscard]] std::optional<double> sup_abs_from(std::size_t n0) const;

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double c() const noexcept { return c_; }
    [[nodiscard]] double ratio() const noexcept { return ratio_; }
    [[nodiscard]] double s() const noexcept { return s_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] Extend extend() const noexcept { return extend_; }

private:
    SequenceSpec() = default;

    Kind kind_ = Kind::constant;
    double c_ = 0.0;
    double ratio_ = 0.0;
    double s_ = 0.0;
    std::vector<double> values_;
    Extend extend_ = Extend::zero;
};

/// Finite evaluation of an infinite sum together with an error bound.
/// certified is true only when the bound derives from a closed form.
struct TailResult {
    double value = 0.0;
    double error_bound = 0.0;
    bool certified = false;

    [[nodiscard]] double upper() const noexcept { return value + error_bound; }
};

/// Sum_{i>=from} |term(i)|.
///
/// Closed-form kinds return a certified result with error_bound <= tol
/// (exactly 0 for geometric and table tails). Non-summable data throws
/// numeric_error, as do table sequences with the `fail` extension rule.
TailResult tail_abs_sum(const SequenceSpec& s, std::size_t from, double tol);

/// Remainder of the comparison series built from 1/r and a:
///   Sum_{j>=n} ( |1/r_j| * Sum_{i>=j} |a_i| )^(1/gamma).
/// Certified when both factors admit geometric envelopes with a contracting
/// product; otherwise summed adaptively and flagged uncertified. Divergence
/// (or failure to settle within the term cap) throws numeric_error.
TailResult remainder_alpha(const SequenceSpec& r, const SequenceSpec& a,
                           const RationalExponent& inv_gamma, std::size_t n, double tol);

/// The identical remainder with q in place of a.
TailResult remainder_beta(const SequenceSpec& r, const SequenceSpec& q,
                          const RationalExponent& inv_gamma, std::size_t n, double tol);

/// The summability series with the power on 1/r only:
///   Sum_{j>=from} |1/r_j|^(1/gamma) * Sum_{i>=j} |seq_i|.
TailResult comparison_series(const SequenceSpec& r, const SequenceSpec& seq,
                             const RationalExponent& inv_gamma, std::size_t from, double tol);

} // namespace ndeq
