#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "instances.hpp"
#include "ndeq/errors.hpp"
#include "ndeq/solver.hpp"

#include <cmath>
#include <vector>

using namespace ndeq;

namespace {

SolutionWindow alternating_window(std::size_t N) {
    SolutionWindow w;
    w.start = 0;
    w.values.resize(N + 1);
    for (std::size_t n = 0; n <= N; ++n) w.values[n] = (n % 2 == 0) ? 1.0 : -1.0;
    w.n3 = 0;
    w.d = 1.0;
    return w;
}

} // namespace

TEST_CASE("residual identifies the known alternating solution") {
    const auto prob = golden_example();
    const auto w = alternating_window(60);
    for (std::size_t n = 3; n <= 58; ++n) CHECK(std::abs(residual(prob, w, n)) <= 1e-12);
    CHECK_THROWS_AS(residual(prob, w, 2), std::out_of_range);
    CHECK_THROWS_AS(residual(prob, w, 59), std::out_of_range);
}

TEST_CASE("residual trivial cases") {
    const auto prob = golden_example();
    SolutionWindow zero;
    zero.values.assign(30, 0.0);
    zero.d = 1.0;
    for (std::size_t n = 3; n <= 27; ++n) CHECK(residual(prob, zero, n) == 0.0);

    // constants solve the homogeneous equation when p, q, a all vanish
    ProblemSpec hom = prob;
    hom.p = SequenceSpec::constant(0.0);
    hom.q = SequenceSpec::constant(0.0);
    hom.a = SequenceSpec::constant(0.0);
    SolutionWindow c;
    c.values.assign(30, 0.7);
    c.d = 1.0;
    for (std::size_t n = 3; n <= 27; ++n) CHECK(residual(hom, c, n) == 0.0);
}

TEST_CASE("residual_report covers exactly the checkable range") {
    const auto prob = golden_example();
    const auto w = alternating_window(40);
    const ResidualReport rep = residual_report(prob, w);
    CHECK(rep.n_lo == 3);
    CHECK(rep.n_hi == 38);
    CHECK(rep.residuals.size() == 36);
    CHECK(rep.max_abs_residual <= 1e-12);
}

TEST_CASE("forward_simulate reproduces the alternating solution exactly") {
    const auto prob = golden_example();
    const std::vector<double> seed{1.0, -1.0, 1.0, -1.0, 1.0};
    const Simulation sim = forward_simulate(prob, seed, 50);
    CHECK_FALSE(sim.diverged);
    for (std::size_t n = 0; n <= 50; ++n)
        CHECK(std::abs(sim.window.at(n) - ((n % 2 == 0) ? 1.0 : -1.0)) <= 1e-12);
}

TEST_CASE("forward_simulate trivial and error cases") {
    const auto prob = golden_example();
    const std::vector<double> zeros(prob.k + 2, 0.0);
    const Simulation sim = forward_simulate(prob, zeros, 30);
    for (std::size_t n = 0; n <= 30; ++n) CHECK(sim.window.at(n) == 0.0);

    CHECK_THROWS_AS(forward_simulate(prob, std::vector<double>{1.0, 2.0}, 30),
                    std::invalid_argument);
}

TEST_CASE("forward_simulate flags unbounded trajectories") {
    // decaying r with gamma = 1/3 triples the growth exponent each step
    const ProblemSpec blowup{
        SequenceSpec::geometric(1.0, 0.5),
        SequenceSpec::constant(0.0),
        SequenceSpec::constant(0.0),
        SequenceSpec::constant(0.0),
        FunctionSpec::named(NamedFunction::zero, 0.0),
        validate_gamma(RationalExponent(1, 3)),
        validate_alpha(RationalExponent(1, 1)),
        1,
    };
    const Simulation sim = forward_simulate(blowup, std::vector<double>{0.0, 1.0, 3.0}, 80);
    CHECK(sim.diverged);
    CHECK(sim.window.last_index() < 80);  // partial orbit returned
}

TEST_CASE("solve: trivial coefficients converge to zero immediately") {
    ProblemSpec trivial = golden_example();
    trivial.a = SequenceSpec::constant(0.0);
    trivial.q = SequenceSpec::constant(0.0);
    const auto rep = check_hypotheses(trivial, 1.0, 400, 1e-12);
    const SolveResult res = solve(trivial, rep, 40, 1e-10, 50);
    CHECK(res.trace.converged);
    CHECK(res.trace.iterations <= 2);
    for (std::size_t n = rep.n3; n <= 40; ++n) CHECK(res.window.at(n) == 0.0);
}

TEST_CASE("solve on the demonstration instance") {
    const auto prob = golden_example();
    const auto rep = check_hypotheses(prob, 1.0, 400, 1e-12);
    const SolveResult res = solve(prob, rep, 60, 1e-10, 200);
    CHECK(res.trace.converged);
    CHECK(res.trace.observed_ratio <= rep.theta_hat + 0.05);
    const ResidualReport rr = residual_report(prob, res.window, rep.n3, 58);
    CHECK(rr.max_abs_residual <= 1e-8);
    for (std::size_t n = rep.n3; n <= 60; ++n) CHECK(std::abs(res.window.at(n)) <= 1.0 + 1e-9);
    CHECK_THROWS_AS(solve(prob, rep, rep.n3 + prob.k, 1e-10, 50), std::invalid_argument);
}

TEST_CASE("solve on instances with nonzero fixed points") {
    for (const auto& prob : {testing::make_nt1(), testing::make_nt2(), testing::make_eszz_affine()}) {
        const auto rep = check_hypotheses(prob, 1.0, 400, 1e-12);
        const SolveResult res = solve(prob, rep, 60, 1e-13, 200);
        CHECK(res.trace.converged);
        CHECK(res.trace.iterations > 1);  // genuinely iterates
        CHECK(std::abs(res.window.at(rep.n3)) > 1e-9);
        CHECK(res.trace.observed_ratio <= rep.theta_hat + 0.05);

        // fixed-point property: one more application moves nothing
        const SolutionWindow again = apply_T(prob, res.window, rep);
        double move = 0.0;
        for (std::size_t n = rep.n3; n <= 60; ++n)
            move = std::max(move, std::abs(again.at(n) - res.window.at(n)));
        CHECK(move <= 1e-11 + res.window.trunc_error);

        // the first index past n3 is well conditioned on every instance
        CHECK(std::abs(residual(prob, res.window, rep.n3)) <= 1e-8);

        // solution property with the conditioning-aware local factor: the
        // gamma-root map is only Hoelder near zero, so the admissible
        // residual at n scales with |r_n| delta^gamma, where delta is the
        // fixed-point distance amplified through the stencil
        const double delta = (2.0 + 2.0 * rep.P) * (1e-13 + res.window.trunc_error);
        const double holder = 2.0 * rpow(delta, prob.gamma.get());
        for (std::size_t n = rep.n3; n + 2 <= 60; ++n) {
            const double local =
                (std::abs(prob.r.term(n)) + std::abs(prob.r.term(n + 1))) * holder +
                (std::abs(prob.q.term(n)) * rep.L_alpha + std::abs(prob.a.term(n)) * rep.L_d) *
                    delta +
                1e-13;
            CHECK(std::abs(residual(prob, res.window, n)) <= local);
        }
    }
}

TEST_CASE("oracle equivalence: simulating from the fixed point's own segment") {
    for (const auto& prob : {golden_example(), testing::make_nt1(), testing::make_nt2()}) {
        const auto rep = check_hypotheses(prob, 1.0, 400, 1e-12);
        const SolveResult res = solve(prob, rep, 60, 1e-12, 200);
        std::vector<double> seed;
        for (std::size_t i = rep.n3 - prob.k; i <= rep.n3 + 1; ++i)
            seed.push_back(res.window.at(i));
        const Simulation sim = forward_simulate(prob, seed, 60, rep.n3 - prob.k);
        CHECK_FALSE(sim.diverged);
        double worst = 0.0;
        for (std::size_t n = rep.n3; n <= std::min<std::size_t>(rep.n3 + 30, 60); ++n)
            worst = std::max(worst, std::abs(sim.window.at(n) - res.window.at(n)));
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("recover_memory") {
    const auto prob = golden_example();
    const auto rep = check_hypotheses(prob, 1.0, 400, 1e-12);

    SUBCASE("zero solution recovers zero memory") {
        const SolveResult res = solve(prob, rep, 60, 1e-10, 200);
        const MemoryRecovery mem = recover_memory(prob, res.window, rep);
        CHECK(mem.recovered);
        for (std::size_t l = 0; l < prob.k; ++l)
            CHECK(std::abs(mem.window.at(rep.n3 - prob.k + l)) <= 1e-12);
        // junction residuals: the equation instances that read the recovered slots
        for (std::size_t n = rep.n3 - 2; n < rep.n3 + prob.k; ++n)
            CHECK(std::abs(residual(prob, mem.window, n)) <= 1e-8);
    }

    SUBCASE("nontrivial fixed point stays consistent at the junction") {
        const auto nt = testing::make_nt1();
        const auto nrep = check_hypotheses(nt, 1.0, 400, 1e-12);
        const SolveResult res = solve(nt, nrep, 60, 1e-12, 200);
        const MemoryRecovery mem = recover_memory(nt, res.window, nrep);
        CHECK(mem.recovered);
        for (std::size_t n = nrep.n3; n < nrep.n3 + nt.k; ++n)
            CHECK(std::abs(residual(nt, mem.window, n)) <= 1e-9);
    }

    SUBCASE("p == 0 reports memory not recoverable") {
        ProblemSpec memoryless = prob;
        memoryless.p = SequenceSpec::constant(0.0);
        const auto mrep = check_hypotheses(memoryless, 1.0, 400, 1e-12);
        const SolveResult res = solve(memoryless, mrep, 60, 1e-10, 200);
        const MemoryRecovery mem = recover_memory(memoryless, res.window, mrep);
        CHECK_FALSE(mem.recovered);
        CHECK(mem.note.find("not recoverable") != std::string::npos);
        for (std::size_t n = 0; n <= 60; ++n) CHECK(mem.window.at(n) == res.window.at(n));
    }
}

TEST_CASE("memoryless special case solves with a clean residual") {
    const auto prob = testing::make_eszz_affine();
    const auto rep = check_hypotheses(prob, 1.0, 400, 1e-12);
    const SolveResult res = solve(prob, rep, 80, 1e-12, 200);
    CHECK(res.trace.converged);
    // the fixed point solves the equation from n3 on; with gamma = 1 there is
    // no root amplification and the residual stays at rounding level
    const ResidualReport rr = residual_report(prob, res.window, rep.n3, 78);
    CHECK(rr.max_abs_residual <= 1e-12);
}
