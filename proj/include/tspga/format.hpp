#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace tspga {

/// Shortest decimal representation that parses back to the same double.
/// Locale independent.
inline std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf, ptr);
}

} // namespace tspga
