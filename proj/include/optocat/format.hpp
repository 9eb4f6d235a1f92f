#pragma once

#include <string>

namespace optocat {

/// Shortest decimal string that reads back to the same double ("nan", "inf", "-inf" otherwise).
[[nodiscard]] std::string format_double(double value);

} // namespace optocat
