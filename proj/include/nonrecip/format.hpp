#pragma once

#include <string>

namespace nonrecip {

/// Shortest decimal string that round-trips to the same double; locale independent.
std::string format_number(double value);

}  // namespace nonrecip
