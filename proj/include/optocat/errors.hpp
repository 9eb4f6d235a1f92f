#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace optocat {

/// Precondition or invariant violation on a physical input.
class InvalidArgument : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

/// Operation only defined for a single photon in the cavity.
class UnsupportedFockNumber : public InvalidArgument {
public:
	using InvalidArgument::InvalidArgument;
};

/// Base for failures of the readout inversion.
class InversionError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// cos(2 pi kappa^2) vanishes, so the readout carries no information on the rate.
class UnidentifiableError : public InversionError {
public:
	using InversionError::InversionError;
};

/// The measured probability cannot be produced by the model for any rate >= 0.
class InfeasibleMeasurementError : public InversionError {
public:
	using InversionError::InversionError;
};

/// Configuration problem. Carries the offending key and 1-based line (0 when not tied to a line).
class ConfigError : public std::runtime_error {
public:
	ConfigError(const std::string& message, std::string key = {}, std::size_t line = 0)
	    : std::runtime_error(format(message, key, line)), key_(std::move(key)), line_(line)
	{
	}

	[[nodiscard]] const std::string& key() const noexcept { return key_; }
	[[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
	static std::string format(const std::string& message, const std::string& key, std::size_t line)
	{
		std::string out;
		if(line > 0) {
			out += "line " + std::to_string(line) + ": ";
		}
		if(!key.empty()) {
			out += "'" + key + "': ";
		}
		return out + message;
	}

	std::string key_;
	std::size_t line_;
};

} // namespace optocat
