#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "optocat/dynamics.hpp"
#include "optocat/hilbert.hpp"
#include "optocat/scan.hpp"
#include "optocat/scheme.hpp"

namespace optocat {

enum class OutputFormat { csv, json };

[[nodiscard]] std::string_view to_string(OutputFormat format);
[[nodiscard]] OutputFormat parse_output_format(std::string_view text);

struct EnsembleSpec {
	SamplingScheme scheme = SamplingScheme::monte_carlo;
	std::size_t size = 4096;
	std::uint64_t seed = 0;
};

struct OracleSettings {
	double nbar_max = 10.0;  ///< ensemble occupation is clipped to this
	double spot_beta = 3.0;  ///< extra label checked on top of the ensemble
	std::size_t dim = 0;     ///< 0 selects the truncation heuristic
};

struct RunConfig {
	ExperimentParams params;
	DecoherenceInputs decoherence;
	std::vector<double> times; ///< sample instants, s
	EnsembleSpec ensemble;
	OracleSettings oracle;
	std::vector<ScanAxis> scan_axes;
	OutputFormat format = OutputFormat::csv;
	std::string output_path; ///< empty: standard output
	/// Every key with its effective value, in canonical order, defaults included.
	std::vector<std::pair<std::string, std::string>> effective;
};

/// A key = value assignment from outside the file (e.g. command-line flags).
/// It replaces any assignment of the same key in the text.
struct ConfigOverride {
	std::string key;
	std::string value;
};

/// Parses the flat `key = value` format ('#' starts a comment). Units are SI and
/// implied by the key suffix. Throws ConfigError naming key and line.
[[nodiscard]] RunConfig parse_config(std::string_view text, const std::vector<ConfigOverride>& overrides = {});

/// Keys that must be present unless a preset supplies them.
[[nodiscard]] std::vector<std::string_view> mandatory_keys();

} // namespace optocat
