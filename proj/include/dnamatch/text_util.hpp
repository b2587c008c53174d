#pragma once

// Small string helpers shared by the CSV/TSV readers and the CLI.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dnamatch {

std::string_view trim(std::string_view s);

/// Splits on `sep`, trimming each field. Empty fields are kept.
std::vector<std::string_view> split(std::string_view s, char sep);

bool parse_double(std::string_view s, double& out);
bool parse_uint(std::string_view s, std::uint64_t& out);

/// printf("%.*g") with `digits` significant digits.
std::string format_double(double v, int digits = 6);

} // namespace dnamatch
