#include "ndeq/hypotheses.hpp"

#include "ndeq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ndeq {

namespace {

constexpr std::size_t kIndexSearchCap = 100000;

[[noreturn]] void fail_check(const char* check, const std::string& why) {
    throw hypothesis_error(std::string("hypothesis ") + check + " failed: " + why);
}

} // namespace

PEstimate estimate_P(const SequenceSpec& p, std::size_t horizon) {
    for (std::size_t n0 = 0; n0 <= horizon; ++n0) {
        if (const auto sup = p.sup_abs_from(n0)) {
            if (*sup < 1.0) return {*sup, n0, true};
        } else {
            // no exact sup (table with 'error' extension): sample the horizon
            double m = 0.0;
            for (std::size_t n = n0; n <= horizon && n < p.values().size(); ++n)
                m = std::max(m, std::abs(p.term(n)));
            if (m < 1.0) return {m, n0, false};
        }
    }
    fail_check("(z3)", "no index n0 within the horizon has sup |p_n| < 1 on [n0, inf)");
}

std::size_t find_n1(const SequenceSpec& a, double tol) {
    for (std::size_t n = 0; n <= kIndexSearchCap; ++n) {
        if (tail_abs_sum(a, n, tol).upper() < 1.0) return n;
    }
    throw numeric_error("find_n1: tail of |a| never certified below 1 within the search cap");
}

double compute_C(double d, double P, double M_d, const AlphaExponent& alpha,
                 const GammaExponent& gamma) {
    if (d <= 0.0) throw std::invalid_argument("compute_C: d must be positive");
    if (P < 0.0 || P >= 1.0) throw std::invalid_argument("compute_C: P must lie in [0, 1)");
    const RationalExponent inv_g = invert(gamma);
    const auto& g = gamma.get();
    const double two_factor = rpow(2.0, RationalExponent(g.den() - g.num(), g.num()));
    const double d_alpha = rpow(d, alpha.get());
    const double denom = two_factor * (rpow(M_d, inv_g) + rpow(d_alpha, inv_g));
    if (denom == 0.0) throw numeric_error("compute_C: degenerate denominator (M_d = 0 and d = 0)");
    return (d - P * d) / denom;
}

std::size_t find_n2(const SequenceSpec& r, const SequenceSpec& a, const SequenceSpec& q,
                    const RationalExponent& inv_gamma, double C, double tol) {
    for (std::size_t n = 0; n <= kIndexSearchCap; ++n) {
        const TailResult al = remainder_alpha(r, a, inv_gamma, n, tol);
        const TailResult be = remainder_beta(r, q, inv_gamma, n, tol);
        if (al.upper() <= C && be.upper() <= C) return n;
    }
    throw numeric_error("find_n2: remainders did not decay below C within the search cap");
}

HypothesisReport check_hypotheses(const ProblemSpec& problem, double d,
                                  std::size_t horizon, double tol) {
    if (d <= 0.0) throw std::invalid_argument("check_hypotheses: d must be positive");
    if (horizon < problem.k) throw std::invalid_argument("check_hypotheses: horizon must be >= k");
    verify_r_nonzero(problem.r, horizon);

    HypothesisReport rep;
    rep.d = d;
    rep.z1 = true;  // the function catalog is locally Lipschitz by construction
    const RationalExponent inv_g = problem.inv_gamma();

    bool certified = true;

    // (add_series): absolute summability of a and q
    TailResult tail_a0;
    TailResult tail_q0;
    try {
        tail_a0 = tail_abs_sum(problem.a, 0, tol);
        tail_q0 = tail_abs_sum(problem.q, 0, tol);
    } catch (const numeric_error& e) {
        fail_check("(add_series)", e.what());
    }
    rep.add_series = true;
    certified = certified && tail_a0.certified && tail_q0.certified;

    // (z2): the weighted comparison series for a and q converge
    try {
        certified = certified && comparison_series(problem.r, problem.a, inv_g, 0, tol).certified;
        certified = certified && comparison_series(problem.r, problem.q, inv_g, 0, tol).certified;
    } catch (const numeric_error& e) {
        fail_check("(z2)", e.what());
    }
    rep.z2 = true;

    // (z3): |p| eventually bounded below 1
    const PEstimate pe = estimate_P(problem.p, horizon);
    rep.P = pe.P;
    rep.n0 = pe.n0;
    rep.z3 = true;
    certified = certified && pe.certified;

    try {
        rep.n1 = find_n1(problem.a, tol);
        rep.M_d = problem.f.bound_on(d);
        rep.C = compute_C(d, rep.P, rep.M_d, problem.alpha, problem.gamma);
        rep.n2 = find_n2(problem.r, problem.a, problem.q, inv_g, rep.C, tol);
    } catch (const numeric_error& e) {
        fail_check("(z2)", e.what());
    }
    rep.n3 = std::max(rep.n1, rep.n2) + problem.k;

    // c* bounds |inner sums| for every index the operator touches (j >= n3 > n1,
    // and the tail sums are nonincreasing in the start index).
    const TailResult ta = tail_abs_sum(problem.a, rep.n1, tol);
    const TailResult tq = tail_abs_sum(problem.q, rep.n1, tol);
    const double d_alpha = rpow(d, problem.alpha.get());
    rep.c_star = rep.M_d * ta.upper() + d_alpha * tq.upper();
    certified = certified && ta.certified && tq.certified;

    rep.L_gamma = gamma_root_lipschitz(problem.gamma, rep.c_star);
    rep.L_d = problem.f.lipschitz_on(d);
    rep.L_alpha = alpha_power_lipschitz(problem.alpha, d);

    const TailResult al = remainder_alpha(problem.r, problem.a, inv_g, rep.n3, tol);
    const TailResult be = remainder_beta(problem.r, problem.q, inv_g, rep.n3, tol);
    rep.alpha_n3 = al.upper();
    rep.beta_n3 = be.upper();
    certified = certified && al.certified && be.certified;

    rep.c1 = rep.L_gamma * rep.L_d * rep.alpha_n3;
    rep.c2 = rep.L_gamma * rep.L_alpha * rep.beta_n3;
    rep.theta_hat = rep.P + rep.c1 + rep.c2;
    rep.theta_warning = !(rep.theta_hat < 1.0);
    rep.certified = certified;
    return rep;
}

} // namespace ndeq
