#include "pso/decimal.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace pso {

std::string render_decimal(double value) {
    if (value == 0.0) {
        return "0.0"; // normalises -0.0 as well
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    std::string out(buf, res.ptr);
    if (out.find('.') == std::string::npos && out.find('e') == std::string::npos) {
        out += ".0";
    }
    return out;
}

std::optional<double> parse_decimal(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
        return std::nullopt;
    }
    if (!std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

} // namespace pso
