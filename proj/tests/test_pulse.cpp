#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "kq/errors.hpp"
#include "kq/pulse.hpp"

using namespace kq;

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

TEST_SUITE("pulse")
{
    TEST_CASE("system parameters")
    {
        const auto h = SystemParams::hydrogen_2s2p();
        CHECK(h.rabi_time() == 972.0);
        CHECK(h.gamma() == doctest::Approx(kPi / 972.0));
        CHECK(h.splitting() == doctest::Approx(2.0 * kPi / 972.0));
        CHECK(SystemParams::unit().gamma() == 1.0);
        CHECK(SystemParams::from_rabi_time(std::numeric_limits<double>::infinity()).gamma() == 0.0);
        CHECK(SystemParams::from_gamma(0.0).rabi_time() == std::numeric_limits<double>::infinity());
        // A 4.37e-6 eV splitting gives 2πħ/ΔE ≈ 946 ps, not the 972 ps of the preset.
        CHECK(SystemParams::from_splitting_ev(4.37e-6).rabi_time() == doctest::Approx(946.4).epsilon(1e-3));
        CHECK_THROWS_AS(SystemParams::from_gamma(-1.0), InputError);
        CHECK_THROWS_AS(SystemParams::from_rabi_time(0.0), InputError);
        CHECK_THROWS_AS(SystemParams::from_splitting_ev(std::nan("")), InputError);
    }

    TEST_CASE("shape names")
    {
        CHECK(parse_pulse_shape("gaussian") == PulseShape::gaussian);
        CHECK(parse_pulse_shape("gauss") == PulseShape::gaussian);
        CHECK(parse_pulse_shape("rect") == PulseShape::rectangular);
        CHECK(parse_pulse_shape("kick") == PulseShape::ideal_kick);
        CHECK(parse_pulse_shape("delta") == PulseShape::ideal_kick);
        CHECK(to_string(PulseShape::rectangular) == "rectangular");
        CHECK_THROWS_AS(parse_pulse_shape("sech"), InputError);
    }

    TEST_CASE("pulse validation")
    {
        CHECK_THROWS_AS(Pulse::gaussian(1.0, 0.0, 1.0), InputError);
        CHECK_THROWS_AS(Pulse::rectangular(1.0, -1.0, 1.0), InputError);
        CHECK_THROWS_AS(Pulse::gaussian(std::nan(""), 1.0, 1.0), InputError);
        CHECK_NOTHROW(Pulse::kick(1.0, 0.0));
    }

    TEST_CASE("gaussian integrates to alpha and matches the written-out envelope")
    {
        const auto p = Pulse::gaussian(0.8, 3.0, 10.0);
        for (double t : {0.0, 7.0, 10.0, 12.5}) {
            CHECK(p.value(t) == doctest::Approx(oracle::gaussian(0.8, 3.0, 10.0, t)).epsilon(1e-15));
        }
        const double total = oracle::simpson([&](double t) { return p.value(t); }, -20.0, 40.0);
        CHECK(total == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(p.strength_between(-1e9, 1e9) == doctest::Approx(0.8).epsilon(1e-15));
        const double part = oracle::simpson([&](double t) { return p.value(t); }, 8.0, 14.0);
        CHECK(p.strength_between(8.0, 14.0) == doctest::Approx(part).epsilon(1e-12));
        const double moment = oracle::simpson([&](double t) { return (t - 10.0) * p.value(t); }, 5.0, 30.0);
        CHECK(p.first_moment_between(5.0, 30.0) == doctest::Approx(moment).epsilon(1e-10));
        const double h = 1e-5;
        CHECK(p.derivative(11.0) == doctest::Approx((p.value(11.0 + h) - p.value(11.0 - h)) / (2 * h)).epsilon(1e-8));
    }

    TEST_CASE("rectangular pulse")
    {
        const auto p = Pulse::rectangular(2.0, 4.0, 10.0);
        CHECK(p.value(10.0) == 0.5);
        CHECK(p.value(8.0) == 0.5);
        CHECK(p.value(12.5) == 0.0);
        CHECK(p.derivative(9.0) == 0.0);
        CHECK(p.strength_between(0.0, 20.0) == doctest::Approx(2.0));
        CHECK(p.strength_between(9.0, 11.0) == doctest::Approx(1.0));
        CHECK(p.first_moment_between(0.0, 20.0) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(p.first_moment_between(10.0, 20.0) == doctest::Approx(0.5 * 0.5 * 4.0));
        const auto [lo, hi] = p.support();
        CHECK(lo == 8.0);
        CHECK(hi == 12.0);
    }

    TEST_CASE("kick is left-continuous and has no pointwise value")
    {
        const auto k = Pulse::kick(0.3, 5.0);
        CHECK_THROWS_AS(k.value(5.0), UnsupportedEvaluation);
        CHECK_THROWS_AS(k.derivative(5.0), UnsupportedEvaluation);
        CHECK(k.strength_between(0.0, 5.0) == 0.0);
        CHECK(k.strength_between(5.0, 6.0) == 0.3);
        CHECK(k.strength_between(0.0, 10.0) == 0.3);
        const PulseSequence seq{k};
        CHECK_THROWS_AS(v_of_t(seq, 1.0), UnsupportedEvaluation);
        CHECK(seq.windowed_value(5.0) == 0.0);
        CHECK(seq.has_kicks());
        CHECK_FALSE(seq.has_finite_pulses());
        CHECK(seq.min_tau() == std::numeric_limits<double>::infinity());
    }

    TEST_CASE("sequences")
    {
        const auto seq = PulseSequence::kick_antikick(PulseShape::gaussian, 0.5, 2.0, 30.0, 80.0);
        REQUIRE(seq.pulses().size() == 2);
        CHECK(seq.pulses()[1].alpha == -0.5);
        CHECK(std::abs(integrated_strength(seq, 0.0, 200.0)) < 1e-15);
        CHECK(integrated_strength(seq, 0.0, 55.0) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK_THROWS_AS(integrated_strength(seq, 5.0, 4.0), InputError);
        // Supports are [18, 42] and [68, 92].
        CHECK_FALSE(seq.active_between(0.0, 18.0));
        CHECK(seq.active_between(0.0, 18.0 + 1e-9));
        CHECK_FALSE(seq.active_between(42.0, 68.0));
        CHECK(seq.min_tau() == 2.0);
        CHECK(seq.windowed_value(30.0 + 12.1) == 0.0);
        CHECK(seq.windowed_value(30.0 + 11.9) > 0.0);
        CHECK(v_of_t(seq, 42.1) > 0.0);

        const PulseSequence rect{Pulse::rectangular(1.0, 2.0, 5.0)};
        // At an edge, the probe decides which side of the discontinuity is meant.
        CHECK(rect.segment_value(6.0, 5.5) == 0.5);
        CHECK(rect.segment_value(6.0, 6.5) == 0.0);
        CHECK_THROWS_AS(DoubleKickParams::make(2.0, 1.0), InputError);
        const auto dk = DoubleKickParams::make(100.0, 586.0);
        CHECK(dk.ts() == 486.0);
        CHECK(dk.tbar() == 343.0);
        CHECK(dk.zeta(0.5, 700.0) == doctest::Approx(0.5 * (700.0 - 486.0)));
    }

    TEST_CASE("phase angles")
    {
        const auto h = SystemParams::hydrogen_2s2p();
        const auto a = phase_angles(h, Pulse::gaussian(kPi / 2, 10.0, 150.0), 300.0);
        CHECK(a.alpha == kPi / 2);
        CHECK(a.beta == doctest::Approx(kPi * 10.0 / 972.0));
        CHECK(a.gamma_t == doctest::Approx(kPi * 300.0 / 972.0));
        CHECK(a.xi == doctest::Approx(std::hypot(a.alpha, a.gamma_t)));
        CHECK(a.alpha_prime == doctest::Approx(std::hypot(a.alpha, a.beta)));
        CHECK(phase_angles(h, Pulse::kick(1.0, 1.0), 2.0).beta == 0.0);
    }

    TEST_CASE("interaction-picture potential matches the frame rotation")
    {
        const auto sys = SystemParams::from_gamma(0.7);
        const PulseSequence seq{Pulse::gaussian(1.1, 0.8, 2.0)};
        for (double t : {0.3, 1.7, 2.0, 4.2}) {
            const double v = oracle::gaussian(1.1, 0.8, 2.0, t);
            // e^{iH0t} V e^{−iH0t} with H0 = −γσz.
            const auto rot = oracle::expm(oracle::C(0, -0.7 * t) * oracle::sz());
            const oracle::Matrix expect = rot * (v * oracle::sx()) * rot.adjoint();
            CHECK(oracle::max_diff(to_matrix(v_interaction_picture(sys, seq, t)), oracle::from_eigen(expect)) <
                  1e-15);
        }
    }

    TEST_CASE("averaged interaction, single pulse")
    {
        const auto sys = SystemParams::hydrogen_2s2p();
        const double g = sys.gamma();
        const auto p = Pulse::gaussian(kPi / 2, 30.0, 300.0);
        const double t = 600.0;
        const auto avg = averaged_interaction_single(sys, p, t);
        const double cx = oracle::simpson([&](double s) { return p.value(s) * std::cos(2 * g * s); }, 0.0, t);
        const double cy = oracle::simpson([&](double s) { return p.value(s) * std::sin(2 * g * s); }, 0.0, t);
        CHECK(std::abs(avg.cx.real() - cx) < 1e-10);
        CHECK(std::abs(avg.cy.real() - cy) < 1e-10);

        const auto k = averaged_interaction_single(sys, Pulse::kick(0.4, 100.0), 200.0);
        CHECK(k.cx.real() == doctest::Approx(0.4 * std::cos(2 * g * 100.0)));
        CHECK_THROWS_AS(averaged_interaction_single(sys, Pulse::kick(0.4, 100.0), 100.0), DomainError);
        CHECK_THROWS_AS(averaged_interaction_single(sys, Pulse::gaussian(1.0, 30.0, 100.0), 600.0), DomainError);
        CHECK_THROWS_AS(averaged_interaction_single(sys, Pulse::rectangular(1.0, 3.0, 100.0), 600.0), InputError);
    }

    TEST_CASE("averaged interaction, pulse pair")
    {
        const auto sys = SystemParams::hydrogen_2s2p();
        const double g = sys.gamma();
        const double tau = 20.0;
        const double alpha = 3 * kPi / 8;
        const auto dk = DoubleKickParams::make(200.0, 530.0);
        const auto seq = PulseSequence::kick_antikick(PulseShape::gaussian, alpha, tau, dk.t1, dk.t2);
        const double t = 800.0;
        const auto avg = averaged_interaction_double(sys, dk, alpha, g * tau);
        const double cx = oracle::simpson([&](double s) { return v_of_t(seq, s) * std::cos(2 * g * s); }, 0.0, t);
        const double cy = oracle::simpson([&](double s) { return v_of_t(seq, s) * std::sin(2 * g * s); }, 0.0, t);
        CHECK(std::abs(avg.cx.real() - cx) < 1e-10);
        CHECK(std::abs(avg.cy.real() - cy) < 1e-10);
        CHECK(averaged_interaction_schrodinger(seq, t).cx.real() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(averaged_interaction_schrodinger(seq, 365.0).cx.real() == doctest::Approx(alpha));
    }
}
