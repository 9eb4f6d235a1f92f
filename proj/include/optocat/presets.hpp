#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "optocat/dynamics.hpp"

namespace optocat {

/// Named parameter sets as configuration entries (key, value), with frequencies
/// in the `_hz` keys so that the chosen convention decides their resolution.
///   regime-a:  optical cavity, 1 mg mirror at 10 kHz, theta = 0.1 K.
///   regime-b:  optical cavity, 1e-15 kg mirror at 10 MHz, theta = 10 K.
///   microwave: 1 cm cavity, 0.1 g mirror, mirror frequency at the kappa ~ 1 bound.
[[nodiscard]] const std::vector<std::pair<std::string_view, std::string_view>>& preset_entries(std::string_view name);

[[nodiscard]] std::vector<std::string_view> preset_names();

/// Resolved parameters of a preset under the given convention.
[[nodiscard]] ExperimentParams preset_params(std::string_view name, FreqConvention convention);

} // namespace optocat
