#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mdnls::detail {

std::string_view trim(std::string_view s);

/// Splits on `sep` outside parentheses.
std::vector<std::string_view> split(std::string_view s, char sep);

/// Locale-independent parse of a real literal. Accepts "inf" and "exp(x)".
double parse_double(std::string_view s);

/// Shortest representation that round-trips.
std::string format_shortest(double x);

/// 17 significant digits.
std::string format_17(double x);

}  // namespace mdnls::detail
