#include "optocat/presets.hpp"

#include <string>

#include "optocat/config.hpp"
#include "optocat/errors.hpp"

namespace optocat {

namespace {

using Entries = std::vector<std::pair<std::string_view, std::string_view>>;

const Entries regime_a = {
    {"omega_0_hz", "1e15"},    {"omega_m_hz", "1e4"},    {"length_l_m", "1e-5"},
    {"mass_m_kg", "1e-6"},     {"gamma_a_per_s", "1e4"}, {"gamma_m_per_s", "1e-2"},
    {"theta_env_k", "0.1"},    {"t_mirror_k", "0.1"},    {"n_fock", "1"},
    {"density_d_kg_m3", "1e3"},
};

const Entries regime_b = {
    {"omega_0_hz", "1e15"},    {"omega_m_hz", "1e7"},    {"length_l_m", "1e-5"},
    {"mass_m_kg", "1e-15"},    {"gamma_a_per_s", "1e7"}, {"gamma_m_per_s", "100"},
    {"theta_env_k", "10"},     {"t_mirror_k", "10"},     {"n_fock", "1"},
    {"density_d_kg_m3", "1e3"},
};

const Entries microwave = {
    {"omega_0_hz", "1e10"},    {"omega_m_hz", "1e-2"},   {"length_l_m", "1e-2"},
    {"mass_m_kg", "1e-4"},     {"gamma_a_per_s", "10"},  {"gamma_m_per_s", "1e-2"},
    {"theta_env_k", "0.1"},    {"t_mirror_k", "0.1"},    {"n_fock", "1"},
    {"density_d_kg_m3", "1e3"},
};

} // namespace

const Entries& preset_entries(std::string_view name)
{
	if(name == "regime-a") {
		return regime_a;
	}
	if(name == "regime-b") {
		return regime_b;
	}
	if(name == "microwave") {
		return microwave;
	}
	throw InvalidArgument("unknown preset '" + std::string(name) + "' (expected regime-a, regime-b or microwave)");
}

std::vector<std::string_view> preset_names()
{
	return {"regime-a", "regime-b", "microwave"};
}

ExperimentParams preset_params(std::string_view name, FreqConvention convention)
{
	const std::string text = "freq_convention = " + std::string(to_string(convention)) + "\npreset = " +
	                         std::string(name) + "\n";
	return parse_config(text).params;
}

} // namespace optocat
