#pragma once

#include <string_view>
#include <vector>

namespace poltyrev::cli {

/// Parses "a", "a,b,c", "a:b" (unit step), "a:b:step", and "a:b:xG" (geometric,
/// ratio G). Endpoints are inclusive. Throws std::invalid_argument on bad syntax.
std::vector<double> parse_real_range(std::string_view text);

/// Integer form; geometric terms are rounded and deduplicated.
std::vector<int> parse_int_range(std::string_view text);

}  // namespace poltyrev::cli
