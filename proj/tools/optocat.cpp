// Command-line front end: simulate, rates, constraints, scan, invert, oracle-check.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "optocat/config.hpp"
#include "optocat/errors.hpp"
#include "optocat/report.hpp"

namespace {

struct CommonOptions {
	std::string config_path;
	std::string output_path;
	std::string format;
	std::string preset;
	std::string freq_convention;
	std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, CommonOptions& o)
{
	sub->add_option("--config", o.config_path, "Configuration file (key = value lines)");
	sub->add_option("--output", o.output_path, "Write the report here instead of standard output");
	sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
	sub->add_option("--preset", o.preset, "Parameter preset")
	    ->check(CLI::IsMember({"regime-a", "regime-b", "microwave"}));
	sub->add_option("--freq-convention", o.freq_convention,
	                "Frequency convention; defaults to paper-plain when no --config is given")
	    ->check(CLI::IsMember({"angular", "paper-plain"}));
	sub->add_option("--seed", o.seed, "Seed of the thermal ensemble");
}

optocat::RunConfig load_config(const CommonOptions& o)
{
	std::string text;
	if(!o.config_path.empty()) {
		std::ifstream in(o.config_path, std::ios::binary);
		if(!in) {
			throw optocat::ConfigError("cannot read configuration file '" + o.config_path + "'");
		}
		std::ostringstream buf;
		buf << in.rdbuf();
		text = buf.str();
	}

	std::vector<optocat::ConfigOverride> overrides;
	if(!o.preset.empty()) {
		overrides.push_back({"preset", o.preset});
	}
	if(!o.freq_convention.empty()) {
		overrides.push_back({"freq_convention", o.freq_convention});
	} else if(o.config_path.empty() && !o.preset.empty()) {
		overrides.push_back({"freq_convention", "paper-plain"});
	}
	if(o.seed) {
		overrides.push_back({"seed", std::to_string(*o.seed)});
	}
	if(!o.format.empty()) {
		overrides.push_back({"output_format", o.format});
	}
	if(!o.output_path.empty()) {
		overrides.push_back({"output_path", o.output_path});
	}
	return optocat::parse_config(text, overrides);
}

int emit(const optocat::Report& report, const optocat::RunConfig& cfg)
{
	for(const auto& w : report.warnings) {
		std::cerr << "warning: " << w << '\n';
	}
	const std::string text = optocat::render(report, cfg, cfg.format);
	if(cfg.output_path.empty()) {
		std::cout << text;
		std::cout.flush();
	} else {
		std::ofstream out(cfg.output_path, std::ios::binary | std::ios::trunc);
		if(!out) {
			std::cerr << "error: cannot write '" << cfg.output_path << "'\n";
			return optocat::exit_failure;
		}
		out << text;
	}
	if(report.exit_code == optocat::exit_contract_violation) {
		std::cerr << "error: oracle contract violated (see summary table)\n";
	}
	return report.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Cavity-field / movable-mirror decoherence simulator and feasibility calculator"};
	app.require_subcommand(1);

	CommonOptions common;
	double p_plus = 0.0;
	std::optional<double> p_sigma;

	auto* simulate = app.add_subcommand("simulate", "Closed-form evolution and atom readout over one mirror period");
	auto* rates = app.add_subcommand("rates", "EID and gravitational-collapse rate estimates");
	auto* constraints = app.add_subcommand("constraints", "Evaluate the three feasibility constraints");
	auto* scan = app.add_subcommand("scan", "Sweep parameters given as scan.<key> entries");
	auto* invert = app.add_subcommand("invert", "Infer Gamma_m from a measured |+> probability");
	auto* oracle = app.add_subcommand("oracle-check", "Check the closed form against truncated-space propagation");
	for(auto* sub : {simulate, rates, constraints, scan, invert, oracle}) {
		add_common(sub, common);
	}
	invert->add_option("--p-plus", p_plus, "Measured probability of |+>")->required();
	invert->add_option("--p-sigma", p_sigma, "Standard error of the measured probability");

	try {
		app.parse(argc, argv);
	} catch(const CLI::ParseError& e) {
		const int code = app.exit(e);
		return code == 0 ? 0 : optocat::exit_config_error;
	}

	try {
		const optocat::RunConfig cfg = load_config(common);
		optocat::Report report;
		if(simulate->parsed()) {
			report = optocat::run_simulate(cfg);
		} else if(rates->parsed()) {
			report = optocat::run_rates(cfg);
		} else if(constraints->parsed()) {
			report = optocat::run_constraints(cfg);
		} else if(scan->parsed()) {
			report = optocat::run_scan(cfg);
		} else if(invert->parsed()) {
			report = optocat::run_invert(cfg, p_plus, p_sigma);
		} else {
			report = optocat::run_oracle_check(cfg);
		}
		return emit(report, cfg);
	} catch(const optocat::ConfigError& e) {
		std::cerr << "config error: " << e.what() << '\n';
		return optocat::exit_config_error;
	} catch(const optocat::InversionError& e) {
		std::cerr << "inversion failed: " << e.what() << '\n';
		return optocat::exit_infeasible_inversion;
	} catch(const optocat::InvalidArgument& e) {
		std::cerr << "invalid input: " << e.what() << '\n';
		return optocat::exit_config_error;
	} catch(const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return optocat::exit_failure;
	}
}
