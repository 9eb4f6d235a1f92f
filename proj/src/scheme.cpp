#include "optocat/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "optocat/constants.hpp"
#include "optocat/errors.hpp"
#include "optocat/rates.hpp"

namespace optocat {

std::string_view to_string(GammaSource source)
{
	switch(source) {
	case GammaSource::external:
		return "external";
	case GammaSource::eid_model:
		return "eid-model";
	case GammaSource::or_model:
		return "or-model";
	}
	return "unknown";
}

GammaSource parse_gamma_source(std::string_view text)
{
	if(text == "external") {
		return GammaSource::external;
	}
	if(text == "eid-model") {
		return GammaSource::eid_model;
	}
	if(text == "or-model") {
		return GammaSource::or_model;
	}
	throw InvalidArgument("unknown gamma source '" + std::string(text) +
	                      "' (expected external, eid-model or or-model)");
}

DecoherenceInputs DecoherenceInputs::resolve(GammaSource source, const ExperimentParams& p, double external_rate)
{
	DecoherenceInputs d;
	d.source = source;
	switch(source) {
	case GammaSource::external:
		d.gamma_m_rate = external_rate;
		break;
	case GammaSource::eid_model:
		d.gamma_m_rate = eid_rate(p);
		break;
	case GammaSource::or_model:
		d.gamma_m_rate = or_rate(p);
		break;
	}
	if(!(d.gamma_m_rate >= 0.0)) {
		throw InvalidArgument("decoherence rate must be >= 0");
	}
	return d;
}

namespace {

void require_single_photon(const ExperimentParams& p, const char* op)
{
	if(p.n_fock != 1) {
		throw UnsupportedFockNumber(std::string(op) + ": only n_fock = 1 is supported");
	}
}

void require_rate(const DecoherenceInputs& d)
{
	if(!(d.gamma_m_rate >= 0.0)) {
		throw InvalidArgument("decoherence rate must be >= 0");
	}
}

} // namespace

BranchProbabilities branch_probabilities(double gamma_a, double t)
{
	if(!(gamma_a >= 0.0) || !(t >= 0.0)) {
		throw InvalidArgument("branch_probabilities: gamma_a and t must be >= 0");
	}
	const double survive = std::exp(-gamma_a * t);
	BranchProbabilities b;
	b.p_noloss = 0.5 * (1.0 + survive);
	b.p_loss = -0.5 * std::expm1(-gamma_a * t);
	return b;
}

JointBlocks evolve_with_decoherence(CoherentLabel beta, const ExperimentParams& p, const DecoherenceInputs& d, double t)
{
	require_single_photon(p, "evolve_with_decoherence");
	require_rate(d);
	JointBlocks b = joint_blocks(beta, p, t);

	const double survive = std::exp(-p.gamma_a * t);
	const double norm = 1.0 / (1.0 + survive);
	double coherence = std::exp(-(0.5 * p.gamma_a + d.gamma_m_rate) * t);
	if(std::isinf(d.gamma_m_rate) && t == 0.0) {
		coherence = 1.0;
	}
	b.w_00 = norm;
	b.w_nn = survive * norm;
	b.w_0n = std::polar(coherence * norm, -(b.kerr_angle + b.displacement_angle));
	b.w_n0 = std::conj(b.w_0n);
	return b;
}

double instantaneous_eid_suppression(const ExperimentParams& p, double t)
{
	if(!(t >= 0.0)) {
		throw InvalidArgument("instantaneous_eid_suppression: t must be >= 0");
	}
	const DerivedCouplings c = derive_couplings(p);
	const double kn = c.kappa * static_cast<double>(p.n_fock);
	// 1/t_D = 2 m gamma_m k_B theta dx^2 / hbar^2 with dx = 2 x_zp kappa n (1 - cos u)
	const double rate_scale = 2.0 * p.mass_m * p.gamma_m * constants::k_boltzmann * p.theta_env /
	                          (constants::hbar * constants::hbar) * 4.0 * c.x_zp * c.x_zp * kn * kn;
	const double u = p.omega_m * t;
	// integral_0^u (1 - cos v)^2 dv
	const double shape = 1.5 * u - 2.0 * std::sin(u) + 0.25 * std::sin(2.0 * u);
	return std::exp(-rate_scale * shape / p.omega_m);
}

CavityQubitState final_cavity_state(const ExperimentParams& p, const DecoherenceInputs& d)
{
	require_single_photon(p, "final_cavity_state");
	require_rate(d);
	const DerivedCouplings c = derive_couplings(p);
	const double x = 2.0 * p.gamma_a * constants::pi / p.omega_m;
	const double eid = std::exp(-d.gamma_m_rate * constants::two_pi / p.omega_m);
	const double phase = constants::two_pi * c.kappa * c.kappa;

	CavityQubitState s;
	s.rho(0, 0) = 1.0 - 0.5 * std::exp(-x);
	s.rho(1, 1) = 0.5 * std::exp(-x);
	s.rho(1, 0) = -std::polar(0.5 * std::exp(-0.5 * x) * eid, phase);
	s.rho(0, 1) = std::conj(s.rho(1, 0));
	return s;
}

CavityQubitState reduced_field_state(CoherentLabel beta, const ExperimentParams& p, const DecoherenceInputs& d,
                                     double t)
{
	const JointBlocks b = evolve_with_decoherence(beta, p, d, t);
	const BranchProbabilities branch = branch_probabilities(p.gamma_a, t);

	CavityQubitState s;
	s.rho(0, 0) = branch.p_noloss * b.w_00.real() + branch.p_loss;
	s.rho(1, 1) = branch.p_noloss * b.w_nn.real();
	s.rho(1, 0) = -branch.p_noloss * b.w_n0 * coherent_overlap(b.phi_0, b.phi_n);
	s.rho(0, 1) = std::conj(s.rho(1, 0));
	return s;
}

double AtomReadout::discrepancy() const
{
	return std::abs(closed_form - projection);
}

AtomReadout atom_readout(const ExperimentParams& p, const DecoherenceInputs& d)
{
	require_single_photon(p, "atom_plus_probability");
	require_rate(d);
	const DerivedCouplings c = derive_couplings(p);

	AtomReadout r;
	const double contrast = std::exp(-(constants::pi / p.omega_m) * (p.gamma_a + 2.0 * d.gamma_m_rate));
	r.closed_form = 0.5 * (1.0 - contrast * std::cos(constants::two_pi * c.kappa * c.kappa));

	// |+> = (|g> + |e>)/sqrt(2) with |g> <- |0>, |e> <- |1>
	const CavityQubitState s = final_cavity_state(p, d);
	const double h = 1.0 / std::numbers::sqrt2;
	const Eigen::Vector2cd plus(h, h);
	r.projection = (plus.adjoint() * s.rho * plus)(0, 0).real();
	return r;
}

double atom_plus_probability(const ExperimentParams& p, const DecoherenceInputs& d)
{
	return atom_readout(p, d).closed_form;
}

InferredRate infer_gamma_m(double p_measured, const ExperimentParams& p, std::optional<double> p_sigma)
{
	require_single_photon(p, "infer_gamma_m");
	if(!std::isfinite(p_measured) || p_measured < 0.0 || p_measured > 1.0) {
		throw InfeasibleMeasurementError("measured probability must lie in [0, 1]");
	}
	if(p_sigma && !(*p_sigma >= 0.0)) {
		throw InvalidArgument("infer_gamma_m: sigma must be >= 0");
	}
	const DerivedCouplings c = derive_couplings(p);
	const double cosine = std::cos(constants::two_pi * c.kappa * c.kappa);
	if(std::abs(cosine) < 1e-12) {
		throw UnidentifiableError("cos(2 pi kappa^2) vanishes; the readout does not depend on Gamma_m");
	}
	const double signal = 1.0 - 2.0 * p_measured;
	const double arg = signal / cosine;
	if(!(arg > 0.0) || arg > 1.0 + 1e-12) {
		throw InfeasibleMeasurementError("measured probability is inconsistent with the readout model");
	}
	double gamma = -(p.omega_m / constants::two_pi) * std::log(arg) - 0.5 * p.gamma_a;
	const double tolerance = std::max(1e-9, 1e-12 * p.omega_m);
	if(gamma < -tolerance) {
		throw InfeasibleMeasurementError("measured probability implies a negative decoherence rate");
	}
	gamma = std::max(gamma, 0.0);

	InferredRate out{gamma, std::nullopt};
	if(p_sigma) {
		out.sigma = std::abs(p.omega_m / (constants::pi * signal)) * *p_sigma;
	}
	return out;
}

} // namespace optocat
