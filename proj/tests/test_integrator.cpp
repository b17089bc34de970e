#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "kq/errors.hpp"
#include "kq/integrator.hpp"
#include "kq/propagators.hpp"

using namespace kq;

namespace {

constexpr double kPi = std::numbers::pi;

double p2(const Mat2& u) { return probabilities(u, QubitState::on()).p2; }

double final_p2(const PulseSequence& seq, double tf)
{
    return p2(rk4_propagator(seq, SystemParams::hydrogen_2s2p(), 0.0, tf));
}

// Reference values from an independent DOP853 integration (rtol 1e-12) of the
// hydrogen scenarios with T_ΔE = 972 ps, untruncated gaussians, starting at t = 0.
constexpr double kFig1Tau10 = 0.9976840741525521;
constexpr double kFig1Tau100 = 0.8196049007317199;
constexpr double kFig2Tau10 = 1.4382090596767107e-05;
constexpr double kFig2Tau100 = 0.19687263168429722;
constexpr double kFig3Tau10 = 0.9995553481991155;
constexpr double kFig3Tau100 = 0.9362598378206404;

} // namespace

TEST_SUITE("integrator")
{
    TEST_CASE("default time step")
    {
        const auto h = SystemParams::hydrogen_2s2p();
        CHECK(default_time_step(PulseSequence{Pulse::gaussian(1.0, 10.0, 0.0)}, h, 300.0) == doctest::Approx(0.2));
        CHECK(default_time_step(PulseSequence{Pulse::gaussian(1.0, 1000.0, 0.0)}, h, 300.0) ==
              doctest::Approx(972.0 / 2000.0));
        CHECK(default_time_step(PulseSequence{}, SystemParams::from_gamma(0.0), 300.0) == doctest::Approx(0.3));
        CHECK(default_time_step(PulseSequence{}, SystemParams::from_gamma(0.0), 0.0) == 1.0);
    }

    TEST_CASE("hydrogen scenarios against the frozen reference values")
    {
        CHECK(std::abs(final_p2({Pulse::gaussian(kPi / 2, 10.0, 150.0)}, 300.0) - kFig1Tau10) < 1e-9);
        CHECK(std::abs(final_p2({Pulse::gaussian(kPi / 2, 100.0, 150.0)}, 300.0) - kFig1Tau100) < 1e-9);
        auto pair = [](double alpha, double tau) {
            return PulseSequence::kick_antikick(PulseShape::gaussian, alpha, tau, 100.0, 586.0);
        };
        CHECK(std::abs(final_p2(pair(kPi / 2, 10.0), 700.0) - kFig2Tau10) < 1e-10);
        CHECK(std::abs(final_p2(pair(kPi / 2, 100.0), 700.0) - kFig2Tau100) < 1e-9);
        CHECK(std::abs(final_p2(pair(kPi / 4, 10.0), 700.0) - kFig3Tau10) < 1e-9);
        CHECK(std::abs(final_p2(pair(kPi / 4, 100.0), 700.0) - kFig3Tau100) < 1e-9);
    }

    TEST_CASE("RK4 propagator matches an adaptive Dormand-Prince reference")
    {
        const double g = 0.8;
        const auto sys = SystemParams::from_gamma(g);
        const PulseSequence seq{Pulse::gaussian(1.2, 0.5, 2.0), Pulse::gaussian(-0.7, 0.3, 4.0)};
        auto v = [](double t) { return oracle::gaussian(1.2, 0.5, 2.0, t) + oracle::gaussian(-0.7, 0.3, 4.0, t); };
        const Mat2 ref = oracle::evolve(g, v, 0.0, 6.0, {2.0, 4.0});
        IntegratorConfig cfg;
        cfg.dt = 1e-3;
        CHECK(oracle::max_diff(rk4_propagator(seq, sys, 0.0, 6.0, cfg), ref) < 1e-10);
        CHECK(oracle::max_diff(rk4_propagator(seq, sys, 0.0, 6.0), ref) < 1e-7);
    }

    TEST_CASE("sampled trajectories")
    {
        const auto sys = SystemParams::hydrogen_2s2p();
        const PulseSequence seq{Pulse::gaussian(kPi / 2, 10.0, 150.0)};
        const std::vector<double> times{0.0, 50.0, 150.0, 150.0, 220.0, 300.0};
        const auto ts = rk4_evolve_at(seq, sys, QubitState::on(), times);
        REQUIRE(ts.size() == times.size());
        CHECK(ts.times == times);
        CHECK(ts.p2[0] == 0.0);
        CHECK(ts.p2[1] == doctest::Approx(0.0));
        CHECK(ts.p2[2] == ts.p2[3]);
        CHECK(ts.p2.back() == doctest::Approx(kFig1Tau10).epsilon(1e-9));
        for (std::size_t i = 0; i < ts.size(); ++i) {
            CHECK(ts.p1[i] + ts.p2[i] == doctest::Approx(1.0).epsilon(1e-10));
        }

        const auto us = rk4_propagator_at(seq, sys, times);
        REQUIRE(us.u.size() == times.size());
        CHECK(max_norm(us.u.back() - rk4_propagator(seq, sys, 0.0, 300.0)) < 1e-13);
        CHECK(std::abs(std::norm(us.u[4].m21) - ts.p2[4]) < 1e-13);

        const std::vector<double> unsorted{0.0, 5.0, 2.0};
        CHECK_THROWS_AS(rk4_evolve_at(seq, sys, QubitState::on(), unsorted), InputError);
        CHECK_THROWS_AS(rk4_evolve_at(seq, sys, QubitState::on(), std::vector<double>{}), InputError);
    }

    TEST_CASE("every-step trajectory")
    {
        const auto sys = SystemParams::unit();
        const PulseSequence seq{Pulse::gaussian(0.9, 0.4, 2.0)};
        IntegratorConfig cfg;
        cfg.dt = 0.01;
        const auto ts = rk4_evolve(seq, sys, QubitState::on(), 0.0, 5.0, cfg);
        CHECK(ts.times.front() == 0.0);
        CHECK(ts.times.back() == 5.0);
        CHECK(std::is_sorted(ts.times.begin(), ts.times.end()));
        CHECK(ts.size() > 400);
        for (const auto& s : ts.states) {
            CHECK(norm_squared(s) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }

    TEST_CASE("ideal kicks are exact and left-continuous")
    {
        // Degenerate qubit: P2 jumps from 0 to 1 at the kick.
        const auto dit = SystemParams::from_gamma(0.0);
        const PulseSequence kick{Pulse::kick(kPi / 2, 10.0)};
        const std::vector<double> times{0.0, 9.0, 10.0, 10.5, 20.0};
        const auto ts = rk4_evolve_at(kick, dit, QubitState::on(), times);
        CHECK(ts.p2[1] == 0.0);
        CHECK(ts.p2[2] == 0.0);
        CHECK(ts.p2[3] == doctest::Approx(1.0));
        CHECK(ts.p2[4] == doctest::Approx(1.0));

        const auto sys = SystemParams::hydrogen_2s2p();
        const Mat2 u = rk4_propagator(kick, sys, 0.0, 300.0);
        CHECK(max_norm(u - kicked_propagator(kPi / 2, sys.gamma(), 10.0, 300.0)) < 1e-13);
        const PulseSequence pair{Pulse::kick(0.7, 100.0), Pulse::kick(-0.7, 586.0)};
        CHECK(max_norm(rk4_propagator(pair, sys, 0.0, 700.0) -
                       kick_antikick_propagator(0.7, sys.gamma(), DoubleKickParams::make(100.0, 586.0), 700.0)) <
              1e-13);
    }

    TEST_CASE("backward integration undoes forward integration")
    {
        const auto sys = SystemParams::hydrogen_2s2p();
        const PulseSequence seq{Pulse::gaussian(kPi / 2, 10.0, 150.0), Pulse::kick(0.4, 200.0)};
        const Mat2 fwd = rk4_propagator(seq, sys, 0.0, 300.0);
        const Mat2 bwd = rk4_propagator(seq, sys, 300.0, 0.0);
        CHECK(max_norm(bwd * fwd - Mat2::identity()) < 1e-9);
        const auto back = rk4_evolve(seq, sys, fwd * QubitState::on(), 300.0, 0.0);
        CHECK(back.times.back() == 0.0);
        CHECK(back.p1.back() == doctest::Approx(1.0).epsilon(1e-9));
    }

    TEST_CASE("a step that is far too large is reported")
    {
        const auto sys = SystemParams::hydrogen_2s2p();
        const PulseSequence seq{Pulse::gaussian(kPi / 2, 1.0, 150.0)};
        IntegratorConfig cfg;
        cfg.dt = 2.0;
        CHECK_THROWS_AS(rk4_propagator(seq, sys, 0.0, 300.0, cfg), NumericalFailure);
        cfg.dt = -1.0;
        CHECK_NOTHROW(rk4_propagator(seq, sys, 0.0, 300.0, cfg));
        CHECK(convergence_check(seq, sys, 300.0) < 1e-9);
        IntegratorConfig coarse;
        coarse.dt = 2.0;
        CHECK(convergence_check(seq, sys, 300.0, coarse) > 1e-3);
    }

    TEST_CASE("global error is fourth order")
    {
        const auto sys = SystemParams::hydrogen_2s2p();
        const PulseSequence seq{Pulse::gaussian(kPi / 2, 10.0, 150.0)};
        auto v = [](double t) { return oracle::gaussian(kPi / 2, 10.0, 150.0, t); };
        const Mat2 ref = oracle::evolve(sys.gamma(), v, 0.0, 300.0, {150.0});
        std::vector<double> steps;
        std::vector<double> errors;
        for (double h : {2.0, 1.0, 0.5, 0.25}) {
            IntegratorConfig cfg;
            cfg.dt = h;
            cfg.unitarity_tolerance = 1.0;
            steps.push_back(h);
            errors.push_back(oracle::max_diff(rk4_propagator(seq, sys, 0.0, 300.0, cfg), ref));
        }
        CHECK(oracle::loglog_slope(steps, errors) == doctest::Approx(4.0).epsilon(0.05));
    }

    TEST_CASE("numerical pulse integrals")
    {
        const auto sys = SystemParams::hydrogen_2s2p();
        const PulseSequence seq{Pulse::gaussian(0.9, 12.0, 200.0), Pulse::kick(0.2, 50.0),
                                Pulse::rectangular(0.3, 20.0, 400.0)};
        for (double t : {50.0, 190.0, 395.0, 600.0}) {
            CHECK(integrated_strength_numeric(seq, 0.0, t) ==
                  doctest::Approx(integrated_strength(seq, 0.0, t)).epsilon(1e-10));
        }
        CHECK_THROWS_AS(integrated_strength_numeric(seq, 2.0, 1.0), InputError);

        const auto p = Pulse::gaussian(0.9, 12.0, 200.0);
        const auto num = interaction_average_numeric(sys, PulseSequence{p}, 500.0);
        const auto ana = averaged_interaction_single(sys, p, 500.0);
        CHECK(max_norm(num - ana) < 1e-10);
        CHECK(max_norm(interaction_average_numeric(sys, PulseSequence{p}, 0.0)) == 0.0);
    }

    TEST_CASE("numerical no-time-ordering evolutions")
    {
        const auto sys = SystemParams::hydrogen_2s2p();
        const double g = sys.gamma();
        const auto p = Pulse::gaussian(kPi / 2, 10.0, 150.0);
        const PulseSequence seq{p};
        for (double t : {100.0, 150.0, 300.0}) {
            const Mat2 num = evolve_no_to_schrodinger_numeric(seq, sys, t);
            CHECK(max_norm(num - no_to_schrodinger(integrated_strength(seq, 0.0, t), g * t)) < 1e-9);
        }
        const Mat2 ni = evolve_no_to_interaction_numeric(seq, sys, 300.0);
        CHECK(max_norm(ni - no_to_interaction_single(kPi / 2, g * 10.0, g * 150.0)) < 1e-9);

        const auto dk = DoubleKickParams::make(100.0, 586.0);
        const auto pair = PulseSequence::kick_antikick(PulseShape::gaussian, kPi / 4, 10.0, dk.t1, dk.t2);
        CHECK(max_norm(evolve_no_to_interaction_numeric(pair, sys, 700.0) -
                       no_to_interaction_double(kPi / 4, g * 10.0, g, dk)) < 1e-9);
        CHECK(p2(evolve_no_to_schrodinger_numeric(pair, sys, 700.0)) < 1e-12);
    }
}
