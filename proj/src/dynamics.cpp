#include "optocat/dynamics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "optocat/constants.hpp"
#include "optocat/errors.hpp"

namespace optocat {

std::string_view to_string(FreqConvention convention)
{
	switch(convention) {
	case FreqConvention::angular:
		return "angular";
	case FreqConvention::paper_plain:
		return "paper-plain";
	}
	return "unknown";
}

FreqConvention parse_freq_convention(std::string_view text)
{
	if(text == "angular") {
		return FreqConvention::angular;
	}
	if(text == "paper-plain") {
		return FreqConvention::paper_plain;
	}
	throw InvalidArgument("unknown frequency convention '" + std::string(text) +
	                      "' (expected angular or paper-plain)");
}

namespace {

void require(bool ok, const char* what)
{
	if(!ok) {
		throw InvalidArgument(std::string("invalid parameters: ") + what);
	}
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }
bool non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

} // namespace

void ExperimentParams::validate() const
{
	require(positive(omega_0), "omega_0 must be > 0");
	require(positive(omega_m), "omega_m must be > 0");
	require(positive(length_L), "length_L must be > 0");
	require(positive(mass_m), "mass_m must be > 0");
	require(non_negative(gamma_a), "gamma_a must be >= 0");
	require(non_negative(gamma_m), "gamma_m must be >= 0");
	require(non_negative(theta_env), "theta_env must be >= 0");
	require(non_negative(T_mirror), "T_mirror must be >= 0");
	require(positive(density_D), "density_D must be > 0");
	require(n_fock >= 1, "n_fock must be >= 1");
}

DerivedCouplings derive_couplings(const ExperimentParams& p)
{
	p.validate();
	DerivedCouplings c;
	c.omega_m = p.omega_m;
	c.x_zp = std::sqrt(constants::hbar / (2.0 * p.mass_m * p.omega_m));
	c.g = p.omega_0 / p.length_L * c.x_zp;
	c.kappa = c.g / p.omega_m;
	c.nbar = nbar_from_temperature(p.omega_m, p.T_mirror);
	c.lambda_th = p.theta_env > 0.0
	                  ? constants::hbar / std::sqrt(2.0 * p.mass_m * constants::k_boltzmann * p.theta_env)
	                  : std::numeric_limits<double>::infinity();
	return c;
}

double full_period(const ExperimentParams& p)
{
	return constants::two_pi / p.omega_m;
}

ExperimentParams with_kappa(const ExperimentParams& p, double kappa)
{
	if(!(kappa > 0.0) || !std::isfinite(kappa)) {
		throw InvalidArgument("with_kappa: kappa must be finite and > 0");
	}
	ExperimentParams q = p;
	const double x_zp = std::sqrt(constants::hbar / (2.0 * p.mass_m * p.omega_m));
	q.omega_0 = kappa * p.omega_m * p.length_L / x_zp;
	return q;
}

CoherentLabel mirror_trajectory(CoherentLabel beta, int n, double kappa, double omega_m, double t)
{
	const complex rot = std::polar(1.0, -omega_m * t);
	return CoherentLabel{beta.value() * rot + kappa * static_cast<double>(n) * (1.0 - rot)};
}

double kerr_phase(int n, double kappa, double omega_m, double t)
{
	const double u = omega_m * t;
	const double kn = kappa * static_cast<double>(n);
	return kn * kn * (u - std::sin(u));
}

double displacement_phase(CoherentLabel beta, int n, double kappa, double omega_m, double t)
{
	const complex rot = std::polar(1.0, -omega_m * t);
	return kappa * static_cast<double>(n) * std::imag(beta.value() * (1.0 - rot));
}

double separation(int n, const DerivedCouplings& c, double t)
{
	return c.x_zp * 2.0 * c.kappa * static_cast<double>(n) * (1.0 - std::cos(c.omega_m * t));
}

JointBlocks joint_blocks(CoherentLabel beta, const ExperimentParams& p, double t)
{
	if(!(t >= 0.0)) {
		throw InvalidArgument("joint_blocks: t must be >= 0");
	}
	const DerivedCouplings c = derive_couplings(p);
	JointBlocks b;
	b.beta = beta;
	b.t = t;
	b.phi_0 = mirror_trajectory(beta, 0, c.kappa, p.omega_m, t);
	b.phi_n = mirror_trajectory(beta, p.n_fock, c.kappa, p.omega_m, t);
	b.kerr_angle = kerr_phase(p.n_fock, c.kappa, p.omega_m, t);
	b.displacement_angle = displacement_phase(beta, p.n_fock, c.kappa, p.omega_m, t);
	b.w_00 = 0.5;
	b.w_nn = 0.5;
	b.w_0n = std::polar(0.5, -(b.kerr_angle + b.displacement_angle));
	b.w_n0 = std::conj(b.w_0n);
	return b;
}

CavityQubitState ideal_field_state(const ExperimentParams& p)
{
	const DerivedCouplings c = derive_couplings(p);
	const double kn = c.kappa * static_cast<double>(p.n_fock);
	const double phase = constants::two_pi * kn * kn;
	CavityQubitState s;
	s.rho(0, 0) = 0.5;
	s.rho(1, 1) = 0.5;
	s.rho(1, 0) = -std::polar(0.5, phase);
	s.rho(0, 1) = std::conj(s.rho(1, 0));
	return s;
}

} // namespace optocat
