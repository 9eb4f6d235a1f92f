#pragma once

#include <optional>
#include <string_view>

#include "optocat/dynamics.hpp"

namespace optocat {

/// Period-averaged EID rate 3 n^2 omega_0^2 / (L^2 omega_m^4 m) k_B theta gamma_m,
/// i.e. the mean of 1/t_D over one mirror period.
[[nodiscard]] double eid_rate(const ExperimentParams& p);

struct Timescale {
	double t_d = 0.0;
	/// dx exceeds the thermal de Broglie wavelength, where the formula applies.
	bool valid = false;
};

/// t_D = hbar^2 / (2 m gamma_m k_B theta dx^2). Infinite when gamma_m or theta is zero.
[[nodiscard]] Timescale decoherence_timescale(const ExperimentParams& p, double dx);

/// Gravitational collapse rate estimate with the same (1 - cos)^2 period average
/// as eid_rate: 3 n^2 omega_0^2 / (L^2 omega_m^4 m) G hbar D. Spherical mirror,
/// R^3 = m / D, no 4 pi / 3 factor: an order-of-magnitude figure.
[[nodiscard]] double or_rate(const ExperimentParams& p);

/// Mirror radius (m / D)^{1/3} used by the collapse estimate.
[[nodiscard]] double mirror_radius(const ExperimentParams& p);

struct OrThreshold {
	double theta_gamma_product = 0.0; ///< theta gamma_m, K/s
	double threshold = 0.0;           ///< G hbar D / k_B, K/s
	bool dominant = false;            ///< threshold > theta gamma_m
};

[[nodiscard]] OrThreshold or_dominance_threshold(const ExperimentParams& p);

struct RateReport {
	double gamma_m_eid = 0.0;
	double t_d_at = 0.0;    ///< t_D at dx_max
	bool t_d_valid = false; ///< dx_max > lambda_th
	double gamma_or = 0.0;
	double lambda_th = 0.0;
	double dx_max = 0.0;
	double radius_R = 0.0;
	bool or_applicable = false; ///< dx_max < R
	double ratio_or_over_eid = 0.0;
	OrThreshold threshold;
};

[[nodiscard]] RateReport rate_report(const ExperimentParams& p);

enum class Verdict { pass, marginal, fail };

[[nodiscard]] std::string_view to_string(Verdict v);

struct ConstraintReport {
	double gamma_m = 0.0;      ///< rate fed into constraint 1
	double c1_ratio_wm = 0.0;  ///< Gamma_m / omega_m
	double c1_ratio_ga = 0.0;  ///< Gamma_m / gamma_a, infinite when gamma_a = 0
	double c2_value = 0.0;     ///< omega_0^2 / (L^2 omega_m^4 m) k_B theta
	double c3_kappa = 0.0;
	Verdict c1 = Verdict::fail;
	Verdict c2 = Verdict::fail;
	Verdict c3 = Verdict::fail;
};

/// Verdict thresholds.
///   c1: pass when Gamma_m >= gamma_a and Gamma_m/omega_m in [1e-2, 1e2];
///       marginal when Gamma_m >= gamma_a/10 and Gamma_m/omega_m in [1e-3, 1e3].
///   c2: pass >= 1e2, marginal in [10, 1e2).
///   c3: pass kappa >= 1, marginal in [0.3, 1).
[[nodiscard]] Verdict constraint1_verdict(double ratio_wm, double ratio_ga);
[[nodiscard]] Verdict constraint2_verdict(double value);
[[nodiscard]] Verdict constraint3_verdict(double kappa);

/// Evaluates the three constraints. Constraint 1 uses eid_rate(p) unless an
/// externally supplied Gamma_m is given.
[[nodiscard]] ConstraintReport check_constraints(const ExperimentParams& p,
                                                 std::optional<double> gamma_m_override = std::nullopt);

/// omega_m at which kappa reaches `target`, all else fixed; kappa falls as omega_m^{-3/2}.
[[nodiscard]] double solve_omega_m_for_kappa(const ExperimentParams& p, double target);

} // namespace optocat
