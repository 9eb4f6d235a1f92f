#include "optocat/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

#include "optocat/constants.hpp"
#include "optocat/errors.hpp"

namespace optocat {

CoherentLabel::CoherentLabel(complex value) : value_(value)
{
	if(!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
		throw InvalidArgument("coherent label must be finite");
	}
}

complex inner_product(const FockVector& a, const FockVector& b)
{
	if(a.dim() != b.dim()) {
		throw InvalidArgument("inner_product: dimension mismatch");
	}
	return a.amps.dot(b.amps); // Eigen's dot conjugates the left operand
}

TruncatedCoherent coherent_vector(CoherentLabel beta, std::size_t dim)
{
	if(dim < 1) {
		throw InvalidArgument("coherent_vector: dim must be >= 1");
	}
	const double r2 = beta.norm();
	const double phase = std::arg(beta.value());

	TruncatedCoherent out{FockVector{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim))}, 0.0};

	if(r2 == 0.0) {
		out.state.amps[0] = 1.0;
		return out;
	}

	// log|<k|beta>| = -|beta|^2/2 + k log|beta| - log(k!)/2, accumulated term by term
	const double log_r = 0.5 * std::log(r2);
	double log_mag = -0.5 * r2;
	for(std::size_t k = 0; k < dim; ++k) {
		if(k > 0) {
			log_mag += log_r - 0.5 * std::log(static_cast<double>(k));
		}
		out.state.amps[static_cast<Eigen::Index>(k)] =
		    std::polar(std::exp(log_mag), static_cast<double>(k) * phase);
	}

	// Poisson tail sum_{k >= dim} exp(-r2) r2^k / k!, continuing the same recurrence.
	double log_p = 2.0 * log_mag;
	double tail = 0.0;
	for(std::size_t k = dim;; ++k) {
		log_p += std::log(r2) - std::log(static_cast<double>(k));
		const double term = std::exp(log_p);
		tail += term;
		const bool past_peak = static_cast<double>(k) > r2;
		if(past_peak && (term <= tail * 1e-17 || term < 1e-300)) {
			break;
		}
	}
	out.deficit = tail;
	return out;
}

complex coherent_overlap(CoherentLabel alpha, CoherentLabel beta)
{
	const complex a = alpha.value();
	const complex b = beta.value();
	return std::exp(-0.5 * (std::norm(a) + std::norm(b)) + std::conj(a) * b);
}

std::size_t truncation_dim(double beta_abs, double kappa, int n)
{
	// the trajectory reaches |beta| + 2 kappa n at half period
	const double reach = std::abs(beta_abs) + 2.0 * std::abs(kappa) * std::abs(n) + 6.0;
	return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(reach * reach)));
}

std::string_view to_string(SamplingScheme scheme)
{
	switch(scheme) {
	case SamplingScheme::monte_carlo:
		return "monte-carlo";
	case SamplingScheme::radial_quadrature:
		return "radial-quadrature";
	}
	return "unknown";
}

SamplingScheme parse_sampling_scheme(std::string_view text)
{
	if(text == "monte-carlo") {
		return SamplingScheme::monte_carlo;
	}
	if(text == "radial-quadrature") {
		return SamplingScheme::radial_quadrature;
	}
	throw InvalidArgument("unknown sampling scheme '" + std::string(text) +
	                      "' (expected monte-carlo or radial-quadrature)");
}

double ThermalEnsemble::mean_occupation() const
{
	double acc = 0.0;
	for(std::size_t i = 0; i < labels.size(); ++i) {
		acc += weights[i] * labels[i].norm();
	}
	return acc;
}

namespace {

// Uniform on [0, 1) from the top 53 bits; independent of the standard library's distributions.
double uniform01(std::mt19937_64& rng)
{
	return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

CoherentLabel polar_label(double nbar, double exp_deviate, double angle)
{
	return CoherentLabel{std::polar(std::sqrt(nbar * exp_deviate), angle)};
}

ThermalEnsemble monte_carlo_ensemble(double nbar, std::size_t size, std::uint64_t seed)
{
	std::mt19937_64 rng(seed);
	ThermalEnsemble out;
	out.nbar = nbar;
	out.labels.reserve(size);

	// |beta|^2 / nbar ~ Exp(1) with uniform phase is the same law as sqrt(nbar)(g1 + i g2)/sqrt(2).
	// The exponential deviate is stratified over the pairs; each pair is (beta, -beta).
	const std::size_t pairs = size / 2;
	for(std::size_t k = 0; k < pairs; ++k) {
		const double u = (static_cast<double>(k) + uniform01(rng)) / static_cast<double>(pairs);
		const double s = -std::log1p(-u);
		const double angle = constants::two_pi * uniform01(rng);
		const CoherentLabel beta = polar_label(nbar, s, angle);
		out.labels.push_back(beta);
		out.labels.emplace_back(-beta.value());
	}
	if(size % 2 == 1) {
		const double s = -std::log1p(-uniform01(rng));
		out.labels.push_back(polar_label(nbar, s, constants::two_pi * uniform01(rng)));
	}
	out.weights.assign(out.labels.size(), 1.0 / static_cast<double>(out.labels.size()));
	return out;
}

ThermalEnsemble quadrature_ensemble(double nbar, std::size_t size, std::uint64_t seed)
{
	std::mt19937_64 rng(seed);
	const double offset = constants::two_pi * uniform01(rng) / static_cast<double>(quadrature_ring_points);
	const GaussLaguerre rule = gauss_laguerre(size);
	const double total = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);

	ThermalEnsemble out;
	out.nbar = nbar;
	for(std::size_t i = 0; i < rule.nodes.size(); ++i) {
		for(std::size_t j = 0; j < quadrature_ring_points; ++j) {
			const double angle =
			    offset + constants::two_pi * static_cast<double>(j) / static_cast<double>(quadrature_ring_points);
			out.labels.push_back(polar_label(nbar, rule.nodes[i], angle));
			out.weights.push_back(rule.weights[i] / total / static_cast<double>(quadrature_ring_points));
		}
	}
	return out;
}

} // namespace

ThermalEnsemble thermal_ensemble(double nbar, SamplingScheme scheme, std::size_t size, std::uint64_t seed)
{
	if(!(nbar >= 0.0) || !std::isfinite(nbar)) {
		throw InvalidArgument("thermal_ensemble: nbar must be finite and >= 0");
	}
	if(size == 0) {
		throw InvalidArgument("thermal_ensemble: size must be >= 1");
	}
	if(nbar == 0.0) {
		return ThermalEnsemble{{CoherentLabel{}}, {1.0}, 0.0};
	}
	switch(scheme) {
	case SamplingScheme::monte_carlo:
		return monte_carlo_ensemble(nbar, size, seed);
	case SamplingScheme::radial_quadrature:
		return quadrature_ensemble(nbar, size, seed);
	}
	throw InvalidArgument("thermal_ensemble: unknown scheme");
}

double nbar_from_temperature(double omega_m, double temperature)
{
	if(!(omega_m > 0.0)) {
		throw InvalidArgument("nbar_from_temperature: omega_m must be > 0");
	}
	if(!(temperature >= 0.0)) {
		throw InvalidArgument("nbar_from_temperature: temperature must be >= 0");
	}
	if(temperature == 0.0) {
		return 0.0;
	}
	const double x = constants::hbar * omega_m / (constants::k_boltzmann * temperature);
	return 1.0 / std::expm1(x);
}

GaussLaguerre gauss_laguerre(std::size_t order)
{
	constexpr std::size_t max_order = 512;
	if(order == 0 || order > max_order) {
		throw InvalidArgument("gauss_laguerre: order must be in [1, 512]");
	}
	const auto n = static_cast<Eigen::Index>(order);
	Eigen::VectorXd diag(n);
	Eigen::VectorXd sub(std::max<Eigen::Index>(n - 1, 0));
	for(Eigen::Index i = 0; i < n; ++i) {
		diag[i] = 2.0 * static_cast<double>(i) + 1.0;
		if(i + 1 < n) {
			sub[i] = static_cast<double>(i) + 1.0;
		}
	}

	GaussLaguerre out;
	if(n == 1) {
		out.nodes = {1.0};
		out.weights = {1.0};
		return out;
	}

	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
	solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
	if(solver.info() != Eigen::Success) {
		throw std::runtime_error("gauss_laguerre: eigensolver failed");
	}
	out.nodes.resize(order);
	out.weights.resize(order);
	for(Eigen::Index i = 0; i < n; ++i) {
		out.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
		const double v0 = solver.eigenvectors()(0, i);
		out.weights[static_cast<std::size_t>(i)] = v0 * v0; // mu_0 = 1 for exp(-s)
	}
	return out;
}

} // namespace optocat
