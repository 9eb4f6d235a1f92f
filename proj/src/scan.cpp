#include "optocat/scan.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "optocat/errors.hpp"
#include "parallel.hpp"

namespace optocat {

namespace {

struct FieldEntry {
	ParamField field;
	std::string_view name;
};

constexpr FieldEntry field_table[] = {
    {ParamField::omega_0, "omega_0"},     {ParamField::omega_m, "omega_m"},     {ParamField::length_L, "length_L"},
    {ParamField::mass_m, "mass_m"},       {ParamField::gamma_a, "gamma_a"},     {ParamField::gamma_m, "gamma_m"},
    {ParamField::theta_env, "theta_env"}, {ParamField::T_mirror, "T_mirror"}, {ParamField::density_D, "density_D"},
};

} // namespace

std::string_view field_name(ParamField field)
{
	for(const auto& e : field_table) {
		if(e.field == field) {
			return e.name;
		}
	}
	return "unknown";
}

ParamField parse_field_name(std::string_view name)
{
	for(const auto& e : field_table) {
		if(e.name == name) {
			return e.field;
		}
	}
	throw InvalidArgument("unknown parameter field '" + std::string(name) + "'");
}

double& field_ref(ExperimentParams& p, ParamField field)
{
	switch(field) {
	case ParamField::omega_0:
		return p.omega_0;
	case ParamField::omega_m:
		return p.omega_m;
	case ParamField::length_L:
		return p.length_L;
	case ParamField::mass_m:
		return p.mass_m;
	case ParamField::gamma_a:
		return p.gamma_a;
	case ParamField::gamma_m:
		return p.gamma_m;
	case ParamField::theta_env:
		return p.theta_env;
	case ParamField::T_mirror:
		return p.T_mirror;
	case ParamField::density_D:
		return p.density_D;
	}
	throw InvalidArgument("unknown parameter field");
}

std::vector<double> log_spaced(double lo, double hi, std::size_t points)
{
	if(!(lo > 0.0) || !(hi > 0.0) || !std::isfinite(lo) || !std::isfinite(hi)) {
		throw InvalidArgument("log_spaced: bounds must be finite and > 0");
	}
	if(points < 2) {
		throw InvalidArgument("log_spaced: need at least 2 points");
	}
	std::vector<double> out(points);
	const double a = std::log10(lo);
	const double b = std::log10(hi);
	for(std::size_t i = 0; i < points; ++i) {
		const double f = static_cast<double>(i) / static_cast<double>(points - 1);
		out[i] = std::pow(10.0, a + (b - a) * f);
	}
	out.front() = lo;
	out.back() = hi;
	return out;
}

ScanTable scan(const GridSpec& grid)
{
	if(grid.axes.empty() || grid.axes.size() > 3) {
		throw InvalidArgument("scan: between 1 and 3 axes are required");
	}
	std::set<ParamField> seen;
	std::size_t total = 1;
	ScanTable table;
	for(const auto& axis : grid.axes) {
		if(!seen.insert(axis.field).second) {
			throw InvalidArgument("scan: axis '" + std::string(field_name(axis.field)) + "' given twice");
		}
		if(axis.values.size() < 2) {
			throw InvalidArgument("scan: axis '" + std::string(field_name(axis.field)) + "' needs >= 2 points");
		}
		for(double v : axis.values) {
			if(!std::isfinite(v)) {
				throw InvalidArgument("scan: axis '" + std::string(field_name(axis.field)) + "' has a non-finite value");
			}
		}
		total *= axis.values.size();
		table.axis_names.emplace_back(field_name(axis.field));
		table.axis_values.push_back(axis.values);
	}

	table.rows.resize(total);
	detail::parallel_for(total, [&](std::size_t index) {
		// decompose index with the last axis varying fastest
		std::vector<std::size_t> digits(grid.axes.size());
		std::size_t rest = index;
		for(std::size_t a = grid.axes.size(); a-- > 0;) {
			digits[a] = rest % grid.axes[a].values.size();
			rest /= grid.axes[a].values.size();
		}

		ExperimentParams p = grid.base;
		ScanRow row;
		for(std::size_t a = 0; a < grid.axes.size(); ++a) {
			const double v = grid.axes[a].values[digits[a]];
			field_ref(p, grid.axes[a].field) = v;
			row.coordinates.push_back(v);
		}
		row.couplings = derive_couplings(p);
		row.rates = rate_report(p);
		const DecoherenceInputs d = DecoherenceInputs::resolve(grid.gamma_source, p, grid.external_gamma_m);
		row.gamma_m_used = d.gamma_m_rate;
		row.constraints = check_constraints(
		    p, grid.gamma_source == GammaSource::eid_model ? std::nullopt : std::optional<double>(d.gamma_m_rate));
		row.p_plus = p.n_fock == 1 ? atom_plus_probability(p, d) : std::numeric_limits<double>::quiet_NaN();
		table.rows[index] = std::move(row);
	});
	return table;
}

} // namespace optocat
