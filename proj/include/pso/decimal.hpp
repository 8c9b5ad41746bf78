#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace pso {

// Shortest decimal rendering that round-trips through a double.
// Integral magnitudes keep an explicit fraction: 7200 renders as "7200.0".
std::string render_decimal(double value);

// Strict decimal parser: accepts what render_decimal produces plus ordinary
// fixed/scientific literals. Returns nullopt for junk, overflow or trailing
// garbage.
std::optional<double> parse_decimal(std::string_view text);

} // namespace pso
