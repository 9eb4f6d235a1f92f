#include <cmath>

#include <doctest.h>

#include "optocat/constants.hpp"
#include "optocat/dynamics.hpp"
#include "optocat/errors.hpp"
#include "optocat/oracle.hpp"
#include "optocat/presets.hpp"
#include "../support/generators.hpp"

using namespace optocat;
using namespace optocat::constants;
using optocat::testing::Gen;

namespace {

ExperimentParams regime_a(FreqConvention c = FreqConvention::paper_plain)
{
	return preset_params("regime-a", c);
}

} // namespace

TEST_SUITE("dynamics") {

TEST_CASE("validate rejects each invariant violation")
{
	const ExperimentParams good = regime_a();
	CHECK_NOTHROW(good.validate());
	auto bad = [&](auto mutate) {
		ExperimentParams p = good;
		mutate(p);
		return p;
	};
	CHECK_THROWS_AS(bad([](auto& p) { p.omega_0 = 0.0; }).validate(), InvalidArgument);
	CHECK_THROWS_AS(bad([](auto& p) { p.omega_m = -1.0; }).validate(), InvalidArgument);
	CHECK_THROWS_AS(bad([](auto& p) { p.length_L = 0.0; }).validate(), InvalidArgument);
	CHECK_THROWS_AS(bad([](auto& p) { p.mass_m = 0.0; }).validate(), InvalidArgument);
	CHECK_THROWS_AS(bad([](auto& p) { p.gamma_a = -1e-9; }).validate(), InvalidArgument);
	CHECK_THROWS_AS(bad([](auto& p) { p.gamma_m = -1.0; }).validate(), InvalidArgument);
	CHECK_THROWS_AS(bad([](auto& p) { p.theta_env = -1.0; }).validate(), InvalidArgument);
	CHECK_THROWS_AS(bad([](auto& p) { p.T_mirror = -1.0; }).validate(), InvalidArgument);
	CHECK_THROWS_AS(bad([](auto& p) { p.n_fock = 0; }).validate(), InvalidArgument);
	CHECK_THROWS_AS(bad([](auto& p) { p.density_D = 0.0; }).validate(), InvalidArgument);
	CHECK_THROWS_AS(bad([](auto& p) { p.omega_0 = std::nan(""); }).validate(), InvalidArgument);
	CHECK_THROWS_AS((void)derive_couplings(bad([](auto& p) { p.mass_m = 0.0; })), InvalidArgument);
}

TEST_CASE("convention names")
{
	CHECK(parse_freq_convention("angular") == FreqConvention::angular);
	CHECK(parse_freq_convention("paper-plain") == FreqConvention::paper_plain);
	CHECK(to_string(FreqConvention::paper_plain) == "paper-plain");
	CHECK_THROWS_AS((void)parse_freq_convention("hz"), InvalidArgument);
}

TEST_CASE("coupling in both conventions")
{
	const auto plain = derive_couplings(regime_a(FreqConvention::paper_plain));
	CHECK(plain.kappa == doctest::Approx(0.73).epsilon(0.01));
	CHECK(plain.x_zp == doctest::Approx(std::sqrt(hbar / (2.0 * 1e-6 * 1e4))).epsilon(1e-14));
	CHECK(plain.g == doctest::Approx(1e15 / 1e-5 * plain.x_zp).epsilon(1e-14));
	CHECK(plain.kappa == doctest::Approx(plain.g / 1e4).epsilon(1e-15));
	const auto angular = derive_couplings(regime_a(FreqConvention::angular));
	CHECK(angular.kappa == doctest::Approx(0.29).epsilon(0.01));
	// kappa ~ omega_0 omega_m^{-3/2}: the 2 pi factors leave (2 pi)^{-1/2}
	CHECK(angular.kappa / plain.kappa == doctest::Approx(1.0 / std::sqrt(two_pi)).epsilon(1e-13));
}

TEST_CASE("derived couplings are bitwise reproducible and scale as documented")
{
	Gen gen(21);
	for(int trial = 0; trial < 200; ++trial) {
		ExperimentParams p = gen.params();
		const auto a = derive_couplings(p);
		const auto b = derive_couplings(p);
		CHECK(a.g == b.g);
		CHECK(a.kappa == b.kappa);
		CHECK(a.x_zp == b.x_zp);
		CHECK(a.g > 0.0);
		CHECK(a.x_zp > 0.0);
		CHECK(a.kappa > 0.0);
		CHECK(a.lambda_th == doctest::Approx(hbar / std::sqrt(2.0 * p.mass_m * k_boltzmann * p.theta_env)));
		ExperimentParams heavy = p;
		heavy.mass_m *= 2.0;
		CHECK(derive_couplings(heavy).x_zp == doctest::Approx(a.x_zp / std::sqrt(2.0)).epsilon(1e-14));
	}
	ExperimentParams cold = regime_a();
	cold.theta_env = 0.0;
	CHECK(std::isinf(derive_couplings(cold).lambda_th));
}

TEST_CASE("with_kappa hits the target")
{
	Gen gen(22);
	for(int trial = 0; trial < 100; ++trial) {
		const ExperimentParams p = gen.params();
		const double target = gen.log_uniform(1e-2, 10.0);
		const ExperimentParams q = with_kappa(p, target);
		CHECK(derive_couplings(q).kappa == doctest::Approx(target).epsilon(1e-14));
		CHECK(q.omega_m == p.omega_m);
		CHECK(q.mass_m == p.mass_m);
	}
}

TEST_CASE("mirror trajectory examples")
{
	const CoherentLabel beta{0.7, -1.2};
	const double w = 3.0e4;
	const double kappa = 0.73;
	CHECK(mirror_trajectory(beta, 2, kappa, w, 0.0) == beta);
	for(int n = 0; n <= 3; ++n) {
		const complex back = mirror_trajectory(beta, n, kappa, w, two_pi / w).value();
		CHECK(std::abs(back - beta.value()) < 1e-14);
	}
	Gen gen(23);
	for(int trial = 0; trial < 100; ++trial) {
		const double t = gen.uniform(0.0, 5.0 * two_pi / w);
		const complex free = beta.value() * std::exp(complex{0.0, -w * t});
		CHECK(std::abs(mirror_trajectory(beta, 0, kappa, w, t).value() - free) < 1e-14);
	}
}

TEST_CASE("trajectory periodicity and linearity in beta")
{
	Gen gen(24);
	for(int trial = 0; trial < 500; ++trial) {
		const CoherentLabel beta = gen.beta(10.0);
		const int n = gen.integer(0, 4);
		const double kappa = gen.uniform(0.0, 3.0);
		const double w = gen.log_uniform(1e-2, 1e8);
		const double t = gen.uniform(0.0, 3.0) * two_pi / w;
		const complex a = mirror_trajectory(beta, n, kappa, w, t).value();
		const complex b = mirror_trajectory(beta, n, kappa, w, t + two_pi / w).value();
		CHECK(std::abs(a - b) < 1e-11 * (1.0 + std::abs(a)));
		const complex diff = a - mirror_trajectory(beta, 0, kappa, w, t).value();
		const complex want = kappa * n * (1.0 - std::exp(complex{0.0, -w * t}));
		CHECK(std::abs(diff - want) < 1e-12 * (1.0 + std::abs(beta.value()) + kappa * n));
		CHECK(std::abs(diff) == doctest::Approx(2.0 * kappa * n * std::abs(std::sin(w * t / 2.0)))
		                            .epsilon(1e-9)
		                            .scale(1e-12));
	}
}

TEST_CASE("kerr phase examples")
{
	const double w = 1e4;
	CHECK(kerr_phase(1, 0.73, w, 0.0) == 0.0);
	CHECK(kerr_phase(2, 0.73, w, two_pi / w) == doctest::Approx(two_pi * 0.73 * 0.73 * 4.0).epsilon(1e-14));
	CHECK(kerr_phase(0, 0.73, w, 1.234) == 0.0);
	// unwrapped: three periods accumulate three times the per-period angle
	CHECK(kerr_phase(1, 1.3, w, 3.0 * two_pi / w) == doctest::Approx(3.0 * two_pi * 1.69).epsilon(1e-13));
}

TEST_CASE("displacement phase vanishes at whole periods and for beta = 0")
{
	Gen gen(25);
	for(int trial = 0; trial < 200; ++trial) {
		const CoherentLabel beta = gen.beta(3.0);
		const double w = gen.log_uniform(1.0, 1e6);
		const double t = gen.uniform(0.0, two_pi / w);
		CHECK(displacement_phase(CoherentLabel{0.0}, 1, 0.7, w, t) == 0.0);
		CHECK(std::abs(displacement_phase(beta, 2, 0.7, w, two_pi / w)) < 1e-14);
		const double want = 0.7 * 2 * std::imag(beta.value() * (1.0 - std::exp(complex{0.0, -w * t})));
		CHECK(displacement_phase(beta, 2, 0.7, w, t) == doctest::Approx(want).scale(1e-14));
	}
}

TEST_CASE("separation examples")
{
	const ExperimentParams p = regime_a();
	const auto c = derive_couplings(p);
	CHECK(separation(1, c, 0.0) == 0.0);
	const double half = std::acos(-1.0) / c.omega_m;
	CHECK(separation(1, c, half) == doctest::Approx(4.0 * c.kappa * c.x_zp).epsilon(1e-14));
	CHECK(separation(1, c, half) == doctest::Approx(2.1e-16).epsilon(0.02));
	CHECK(separation(1, c, half) == doctest::Approx(4.0 * 0.73 * 7.26e-17).epsilon(0.02));
	Gen gen(26);
	for(int trial = 0; trial < 200; ++trial) {
		const double t = gen.uniform(0.0, 4.0 * half);
		const double dx = separation(gen.integer(0, 3), c, t);
		CHECK(dx >= 0.0);
		CHECK(dx <= 4.0 * 3.0 * c.kappa * c.x_zp * (1.0 + 1e-15));
	}
}

TEST_CASE("joint blocks at t = 0 and at the full period")
{
	const ExperimentParams p = regime_a();
	const auto c = derive_couplings(p);
	const CoherentLabel beta{1.1, 0.4};
	const auto b0 = joint_blocks(beta, p, 0.0);
	CHECK(b0.phi_0 == beta);
	CHECK(b0.phi_n == beta);
	CHECK(b0.kerr_angle == 0.0);
	for(const complex w : {b0.w_00, b0.w_0n, b0.w_n0, b0.w_nn}) {
		CHECK(std::abs(w) == doctest::Approx(0.5).epsilon(1e-15));
	}
	const auto bt = joint_blocks(beta, p, full_period(p));
	CHECK(std::abs(bt.phi_0.value() - beta.value()) < 1e-14);
	CHECK(std::abs(bt.phi_n.value() - beta.value()) < 1e-14);
	CHECK(bt.kerr_angle == doctest::Approx(two_pi * c.kappa * c.kappa).epsilon(1e-13));
}

TEST_CASE("joint blocks are Hermitian with real non-negative diagonals")
{
	Gen gen(27);
	for(int trial = 0; trial < 500; ++trial) {
		ExperimentParams p = gen.params();
		p.n_fock = gen.integer(1, 3);
		const double t = gen.uniform(0.0, 2.0) * full_period(p);
		const auto b = joint_blocks(gen.beta(5.0), p, t);
		CHECK(b.w_0n == std::conj(b.w_n0));
		CHECK(b.w_00.imag() == 0.0);
		CHECK(b.w_nn.imag() == 0.0);
		CHECK(b.w_00.real() >= 0.0);
		CHECK(b.w_nn.real() >= 0.0);
		CHECK(std::abs(b.w_0n) == doctest::Approx(0.5).epsilon(1e-15));
	}
}

TEST_CASE("ideal field state")
{
	ExperimentParams p = regime_a();
	p = with_kappa(p, 1.0);
	auto s = ideal_field_state(p);
	CHECK(std::abs(s.rho(1, 0) - complex{-0.5, 0.0}) < 1e-13);
	CHECK(s.purity() == doctest::Approx(1.0).epsilon(1e-15));

	p = with_kappa(p, 0.73);
	s = ideal_field_state(p);
	const double angle = two_pi * 0.73 * 0.73;
	CHECK(angle == doctest::Approx(3.35).epsilon(1e-3));
	CHECK(std::abs(wrap_angle(std::arg(-s.rho(1, 0)) - angle)) < 1e-12);
	CHECK(s.rho(0, 1) == std::conj(s.rho(1, 0)));

	Gen gen(28);
	for(int trial = 0; trial < 300; ++trial) {
		ExperimentParams q = gen.params();
		q.n_fock = gen.integer(1, 4);
		const auto a = ideal_field_state(q);
		CHECK(std::abs(a.purity() - 1.0) <= 1e-12);
		CHECK(std::abs(a.trace() - 1.0) <= 1e-15);
		ExperimentParams warmer = q;
		warmer.T_mirror = q.T_mirror * 7.0 + 1.0;
		CHECK(ideal_field_state(warmer).rho == a.rho);
	}
}

}
