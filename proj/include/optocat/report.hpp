#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "optocat/config.hpp"

namespace optocat {

inline constexpr int schema_version = 1;
inline constexpr std::string_view program_name = "optocat";
inline constexpr std::string_view program_version = "1.0.0";

/// Process exit codes of the command-line tool.
enum ExitCode : int {
	exit_ok = 0,
	exit_failure = 1,
	exit_config_error = 2,
	exit_contract_violation = 3,
	exit_infeasible_inversion = 4,
};

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
	std::string name;
	std::vector<std::string> columns;
	std::vector<std::vector<Cell>> rows;
};

struct Report {
	std::string command;
	std::vector<std::string> warnings;
	std::vector<Table> tables;
	/// Non-zero when the run finished but a checked contract failed.
	int exit_code = exit_ok;
};

/// Per-time closed-form evolution plus the final cavity state and readout at one
/// full period. Requires n_fock == 1.
[[nodiscard]] Report run_simulate(const RunConfig& cfg);
[[nodiscard]] Report run_rates(const RunConfig& cfg);
[[nodiscard]] Report run_constraints(const RunConfig& cfg);
/// Throws ConfigError when the configuration has no scan axes.
[[nodiscard]] Report run_scan(const RunConfig& cfg);
/// Propagates InversionError subclasses unchanged.
[[nodiscard]] Report run_invert(const RunConfig& cfg, double p_plus, std::optional<double> p_sigma);
/// Sets exit_code to exit_contract_violation when any row misses the contract
/// or the truncation budget.
[[nodiscard]] Report run_oracle_check(const RunConfig& cfg);

/// CSV: '#'-prefixed header (schema, version, constants, effective config,
/// warnings), then each table as '# table: <name>', a column row and data rows.
/// JSON: one object with the same content. Both are byte-deterministic.
[[nodiscard]] std::string render(const Report& report, const RunConfig& cfg, OutputFormat format);

} // namespace optocat
