#pragma once

#include <string>

namespace lrlssvm {

/// Shortest decimal form that parses back to the same double. Locale-free.
std::string format_roundtrip(double value);

/// Rounds to `digits` significant digits (for human-facing reports).
double round_significant(double value, int digits);

} // namespace lrlssvm
