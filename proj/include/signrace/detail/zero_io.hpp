#pragma once

#include <optional>
#include <string>

namespace signrace::detail {

/// Parses one ordinate line: a decimal with at least 9 fractional digits.
/// Throws ParseError carrying `lineno`.
double parse_ordinate(const std::string& text, long lineno);

/// Value of `key=<number>` inside a comment line, if present.
std::optional<double> comment_value(const std::string& line, const std::string& key);

std::string format_ordinate(double gamma);

}  // namespace signrace::detail
