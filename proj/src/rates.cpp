#include "optocat/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "optocat/constants.hpp"
#include "optocat/errors.hpp"

namespace optocat {

namespace {

// n^2 omega_0^2 / (L^2 omega_m^4 m), common to both rate models
double separation_scale(const ExperimentParams& p)
{
	const double n = static_cast<double>(p.n_fock);
	const double w2 = p.omega_m * p.omega_m;
	return n * n * p.omega_0 * p.omega_0 / (p.length_L * p.length_L * w2 * w2 * p.mass_m);
}

// (1/2pi) integral_0^{2pi} (1 - cos u)^2 du times the 2 from 1/t_D's prefactor
constexpr double period_average_factor = 3.0;

} // namespace

double eid_rate(const ExperimentParams& p)
{
	p.validate();
	return period_average_factor * separation_scale(p) * constants::k_boltzmann * p.theta_env * p.gamma_m;
}

Timescale decoherence_timescale(const ExperimentParams& p, double dx)
{
	p.validate();
	if(!(dx > 0.0) || !std::isfinite(dx)) {
		throw InvalidArgument("decoherence_timescale: dx must be finite and > 0");
	}
	const double denom = 2.0 * p.mass_m * p.gamma_m * constants::k_boltzmann * p.theta_env * dx * dx;
	Timescale out;
	out.t_d = denom > 0.0 ? constants::hbar * constants::hbar / denom : std::numeric_limits<double>::infinity();
	out.valid = dx > derive_couplings(p).lambda_th;
	return out;
}

double or_rate(const ExperimentParams& p)
{
	p.validate();
	return period_average_factor * separation_scale(p) * constants::gravitational * constants::hbar * p.density_D;
}

double mirror_radius(const ExperimentParams& p)
{
	p.validate();
	return std::cbrt(p.mass_m / p.density_D);
}

OrThreshold or_dominance_threshold(const ExperimentParams& p)
{
	p.validate();
	OrThreshold out;
	out.theta_gamma_product = p.theta_env * p.gamma_m;
	out.threshold = constants::gravitational * constants::hbar * p.density_D / constants::k_boltzmann;
	out.dominant = out.threshold > out.theta_gamma_product;
	return out;
}

RateReport rate_report(const ExperimentParams& p)
{
	const DerivedCouplings c = derive_couplings(p);
	RateReport r;
	r.gamma_m_eid = eid_rate(p);
	r.gamma_or = or_rate(p);
	r.lambda_th = c.lambda_th;
	r.dx_max = separation(p.n_fock, c, constants::pi / p.omega_m);
	const Timescale ts = decoherence_timescale(p, r.dx_max);
	r.t_d_at = ts.t_d;
	r.t_d_valid = ts.valid;
	r.radius_R = mirror_radius(p);
	r.or_applicable = r.dx_max < r.radius_R;
	r.ratio_or_over_eid =
	    r.gamma_m_eid > 0.0 ? r.gamma_or / r.gamma_m_eid : std::numeric_limits<double>::infinity();
	r.threshold = or_dominance_threshold(p);
	return r;
}

std::string_view to_string(Verdict v)
{
	switch(v) {
	case Verdict::pass:
		return "pass";
	case Verdict::marginal:
		return "marginal";
	case Verdict::fail:
		return "fail";
	}
	return "unknown";
}

Verdict constraint1_verdict(double ratio_wm, double ratio_ga)
{
	if(ratio_ga >= 1.0 && ratio_wm >= 1e-2 && ratio_wm <= 1e2) {
		return Verdict::pass;
	}
	if(ratio_ga >= 0.1 && ratio_wm >= 1e-3 && ratio_wm <= 1e3) {
		return Verdict::marginal;
	}
	return Verdict::fail;
}

Verdict constraint2_verdict(double value)
{
	if(value >= 1e2) {
		return Verdict::pass;
	}
	if(value >= 10.0) {
		return Verdict::marginal;
	}
	return Verdict::fail;
}

Verdict constraint3_verdict(double kappa)
{
	if(kappa >= 1.0) {
		return Verdict::pass;
	}
	if(kappa >= 0.3) {
		return Verdict::marginal;
	}
	return Verdict::fail;
}

ConstraintReport check_constraints(const ExperimentParams& p, std::optional<double> gamma_m_override)
{
	const DerivedCouplings c = derive_couplings(p);
	if(gamma_m_override && !(*gamma_m_override >= 0.0)) {
		throw InvalidArgument("check_constraints: Gamma_m must be >= 0");
	}
	ConstraintReport r;
	r.gamma_m = gamma_m_override ? *gamma_m_override : eid_rate(p);
	r.c1_ratio_wm = r.gamma_m / p.omega_m;
	if(p.gamma_a > 0.0) {
		r.c1_ratio_ga = r.gamma_m / p.gamma_a;
	} else {
		r.c1_ratio_ga = std::numeric_limits<double>::infinity();
	}
	const double w2 = p.omega_m * p.omega_m;
	r.c2_value = p.omega_0 * p.omega_0 / (p.length_L * p.length_L * w2 * w2 * p.mass_m) * constants::k_boltzmann *
	             p.theta_env;
	r.c3_kappa = c.kappa;
	r.c1 = constraint1_verdict(r.c1_ratio_wm, r.c1_ratio_ga);
	r.c2 = constraint2_verdict(r.c2_value);
	r.c3 = constraint3_verdict(r.c3_kappa);
	return r;
}

double solve_omega_m_for_kappa(const ExperimentParams& p, double target)
{
	p.validate();
	if(!(target > 0.0) || !std::isfinite(target)) {
		throw InvalidArgument("solve_omega_m_for_kappa: target must be finite and > 0");
	}
	auto excess = [&](double log_w) {
		ExperimentParams q = p;
		q.omega_m = std::exp(log_w);
		return std::log(derive_couplings(q).kappa) - std::log(target);
	};
	// kappa is strictly decreasing in omega_m; bracket in log space
	double lo = std::log(p.omega_m);
	double hi = lo;
	while(excess(lo) < 0.0) {
		lo -= 10.0;
	}
	while(excess(hi) > 0.0) {
		hi += 10.0;
	}
	for(int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++i) {
		const double mid = 0.5 * (lo + hi);
		if(excess(mid) > 0.0) {
			lo = mid;
		} else {
			hi = mid;
		}
	}
	return std::exp(0.5 * (lo + hi));
}

} // namespace optocat
