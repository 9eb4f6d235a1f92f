#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace optocat {

using complex = std::complex<double>;

/// Complex amplitude labelling a coherent state of the mirror.
class CoherentLabel {
public:
	CoherentLabel() = default;
	CoherentLabel(double re, double im = 0.0) : CoherentLabel(complex{re, im}) {}
	CoherentLabel(complex value); // throws InvalidArgument on non-finite parts

	[[nodiscard]] complex value() const noexcept { return value_; }
	[[nodiscard]] double abs() const noexcept { return std::abs(value_); }
	[[nodiscard]] double norm() const noexcept { return std::norm(value_); }

	friend bool operator==(const CoherentLabel&, const CoherentLabel&) = default;

private:
	complex value_{0.0, 0.0};
};

/// State vector over a truncated Fock basis {|0>, ..., |dim-1>}.
struct FockVector {
	Eigen::VectorXcd amps;

	[[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(amps.size()); }
	[[nodiscard]] double norm() const { return amps.norm(); }
};

/// <a|b> over the common truncation.
[[nodiscard]] complex inner_product(const FockVector& a, const FockVector& b);

struct TruncatedCoherent {
	FockVector state;
	/// Probability weight beyond the truncation, 1 - sum |amps|^2, summed directly from the tail.
	double deficit;
};

/// Fock expansion <k|beta> = exp(-|beta|^2/2) beta^k / sqrt(k!), k < dim.
[[nodiscard]] TruncatedCoherent coherent_vector(CoherentLabel beta, std::size_t dim);

/// Analytic overlap <alpha|beta>.
[[nodiscard]] complex coherent_overlap(CoherentLabel alpha, CoherentLabel beta);

/// Smallest dim keeping the Poisson tail of every state on an n-sector trajectory below ~1e-10.
[[nodiscard]] std::size_t truncation_dim(double beta_abs, double kappa, int n);

enum class SamplingScheme { monte_carlo, radial_quadrature };

[[nodiscard]] std::string_view to_string(SamplingScheme scheme);
[[nodiscard]] SamplingScheme parse_sampling_scheme(std::string_view text);

/// Discretisation of the thermal P-function exp(-|beta|^2/nbar)/(pi nbar).
struct ThermalEnsemble {
	std::vector<CoherentLabel> labels;
	std::vector<double> weights;
	double nbar = 0.0;

	[[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
	/// Weighted mean of |beta|^2.
	[[nodiscard]] double mean_occupation() const;
};

/// Ring of phase points attached to every radial node of the quadrature scheme.
inline constexpr std::size_t quadrature_ring_points = 8;

/// Monte-Carlo: `size` labels in stratified antithetic pairs, equal weights.
/// Radial quadrature: `size` Gauss-Laguerre nodes in |beta|^2/nbar, each with a
/// ring of quadrature_ring_points phases; the seed rotates the ring.
/// nbar == 0 always yields the single label 0 with weight 1.
[[nodiscard]] ThermalEnsemble thermal_ensemble(double nbar, SamplingScheme scheme, std::size_t size,
                                               std::uint64_t seed);

/// Bose-Einstein occupation 1/(exp(hbar omega_m / k_B T) - 1).
[[nodiscard]] double nbar_from_temperature(double omega_m, double temperature);

/// Gauss-Laguerre nodes and weights for weight exp(-s) on [0, inf), via the Jacobi matrix.
struct GaussLaguerre {
	std::vector<double> nodes;
	std::vector<double> weights;
};
[[nodiscard]] GaussLaguerre gauss_laguerre(std::size_t order);

} // namespace optocat
