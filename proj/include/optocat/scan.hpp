#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "optocat/dynamics.hpp"
#include "optocat/rates.hpp"
#include "optocat/scheme.hpp"

namespace optocat {

/// ExperimentParams fields that can be swept.
enum class ParamField { omega_0, omega_m, length_L, mass_m, gamma_a, gamma_m, theta_env, T_mirror, density_D };

[[nodiscard]] std::string_view field_name(ParamField field);
[[nodiscard]] ParamField parse_field_name(std::string_view name);
[[nodiscard]] double& field_ref(ExperimentParams& p, ParamField field);

struct ScanAxis {
	ParamField field;
	std::vector<double> values; ///< resolved values, as stored in ExperimentParams
};

/// `points` values from lo to hi spaced evenly in log10; endpoints exact.
[[nodiscard]] std::vector<double> log_spaced(double lo, double hi, std::size_t points);

struct GridSpec {
	ExperimentParams base;
	std::vector<ScanAxis> axes;
	GammaSource gamma_source = GammaSource::eid_model;
	double external_gamma_m = 0.0; ///< used when gamma_source is external
};

struct ScanRow {
	std::vector<double> coordinates; ///< one value per axis, in axis order
	DerivedCouplings couplings;
	RateReport rates;
	ConstraintReport constraints;
	double gamma_m_used = 0.0; ///< rate fed into the readout
	double p_plus = 0.0;       ///< NaN when n_fock != 1
};

struct ScanTable {
	std::vector<std::string> axis_names;
	std::vector<std::vector<double>> axis_values;
	std::vector<ScanRow> rows;
};

/// One row per grid point, first axis varying slowest. Rows are evaluated
/// concurrently but always returned in that order.
[[nodiscard]] ScanTable scan(const GridSpec& grid);

} // namespace optocat
