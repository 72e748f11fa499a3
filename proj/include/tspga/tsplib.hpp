#pragma once

/// @file tsplib.hpp
/// @brief Reader and writer for the EUC_2D subset of the TSPLIB text format.
///
/// Supported: "KEY : VALUE" specification lines (NAME, TYPE, COMMENT,
/// DIMENSION, EDGE_WEIGHT_TYPE), a NODE_COORD_SECTION of "id x y" lines, and
/// an optional EOF terminator. Parsed instances use the rounded metric.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "format.hpp"
#include "tsp_core.hpp"

namespace tspga {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
    T value{};
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

inline std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

} // namespace detail

/// Parses a TSPLIB document. Throws ParseError (with the offending line) on
/// malformed input and UnsupportedFormatError for anything other than a
/// symmetric EUC_2D node-coordinate instance.
inline Instance parse_tsplib(std::string_view text) {
    std::optional<std::string> name;
    std::optional<std::size_t> dimension;
    std::optional<std::string> weight_type;
    std::vector<std::optional<City>> slots;
    std::size_t coord_count = 0;
    bool in_coords = false;
    bool saw_coords = false;
    std::size_t line_no = 0;
    std::size_t section_line = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::string_view line = detail::trim(raw);
        if (line.empty()) {
            continue;
        }
        if (line == "EOF") {
            break;
        }

        if (in_coords) {
            const auto fields = detail::split_ws(line);
            const auto id = detail::parse_number<long long>(fields[0]);
            if (!id && fields.size() != 3) {
                // a keyword line ends the section
                in_coords = false;
            } else {
                if (fields.size() != 3) {
                    throw ParseError(line_no, "expected \"id x y\", got \"" + std::string(line) + "\"");
                }
                if (!id) {
                    throw ParseError(line_no, "non-numeric city id \"" + std::string(fields[0]) + "\"");
                }
                const auto x = detail::parse_number<double>(fields[1]);
                const auto y = detail::parse_number<double>(fields[2]);
                if (!x || !y) {
                    throw ParseError(line_no, "non-numeric coordinate in \"" + std::string(line) + "\"");
                }
                if (*id < 1 || static_cast<std::size_t>(*id) > *dimension) {
                    throw ParseError(line_no, "city id " + std::to_string(*id) + " outside 1.." +
                                                  std::to_string(*dimension));
                }
                auto& slot = slots[static_cast<std::size_t>(*id - 1)];
                if (slot) {
                    throw ParseError(line_no, "duplicate city id " + std::to_string(*id));
                }
                slot = City{static_cast<CityId>(*id), *x, *y};
                ++coord_count;
                continue;
            }
        }

        const std::string word = detail::upper(detail::split_ws(line)[0]);
        if (word == "NODE_COORD_SECTION" || word == "NODE_COORD_SECTION:") {
            if (!dimension) {
                throw ParseError(line_no, "NODE_COORD_SECTION before DIMENSION");
            }
            if (!weight_type) {
                throw ParseError(line_no, "NODE_COORD_SECTION before EDGE_WEIGHT_TYPE");
            }
            if (saw_coords) {
                throw ParseError(line_no, "repeated NODE_COORD_SECTION");
            }
            in_coords = saw_coords = true;
            section_line = line_no;
            slots.assign(*dimension, std::nullopt);
            continue;
        }
        if (word.ends_with("_SECTION")) {
            throw UnsupportedFormatError(line_no, "unsupported section " + word);
        }

        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError(line_no, "expected \"KEY : VALUE\", got \"" + std::string(line) + "\"");
        }
        const std::string key = detail::upper(detail::trim(line.substr(0, colon)));
        const std::string_view value = detail::trim(line.substr(colon + 1));

        if (key == "NAME") {
            name = std::string(value);
        } else if (key == "TYPE") {
            if (detail::upper(value) != "TSP") {
                throw UnsupportedFormatError(line_no, "unsupported problem TYPE " + std::string(value));
            }
        } else if (key == "DIMENSION") {
            const auto d = detail::parse_number<long long>(value);
            if (!d || *d < 1) {
                throw ParseError(line_no, "invalid DIMENSION \"" + std::string(value) + "\"");
            }
            dimension = static_cast<std::size_t>(*d);
        } else if (key == "EDGE_WEIGHT_TYPE") {
            if (detail::upper(value) != "EUC_2D") {
                throw UnsupportedFormatError(line_no, "unsupported EDGE_WEIGHT_TYPE " + std::string(value));
            }
            weight_type = "EUC_2D";
        } else if (key == "COMMENT" || key == "NODE_COORD_TYPE" || key == "DISPLAY_DATA_TYPE") {
            // informational
        } else {
            throw UnsupportedFormatError(line_no, "unsupported keyword " + key);
        }
    }

    if (!name) {
        throw ParseError(0, "missing NAME");
    }
    if (!dimension) {
        throw ParseError(0, "missing DIMENSION");
    }
    if (!weight_type) {
        throw ParseError(0, "missing EDGE_WEIGHT_TYPE");
    }
    if (!saw_coords) {
        throw ParseError(0, "missing NODE_COORD_SECTION");
    }
    if (coord_count != *dimension) {
        throw ParseError(section_line, "NODE_COORD_SECTION has " + std::to_string(coord_count) +
                                           " cities but DIMENSION is " + std::to_string(*dimension));
    }

    std::vector<City> cities;
    cities.reserve(slots.size());
    for (auto& c : slots) {
        cities.push_back(*c);
    }
    return Instance(*name, std::move(cities), Metric::EuclideanRounded);
}

/// Reads and parses a TSPLIB file. I/O failures raise IoError.
inline Instance load_tsplib(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path.string(), "cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError(path.string(), "read failed");
    }
    return parse_tsplib(buf.str());
}

/// Serializes an instance as a TSPLIB EUC_2D document. Coordinates use the
/// shortest round-trip decimal form, so parse(write(i)) reproduces the
/// coordinates exactly.
inline std::string write_tsplib(const Instance& inst) {
    std::string out;
    out += "NAME: " + inst.name() + "\n";
    out += "TYPE: TSP\n";
    out += "DIMENSION: " + std::to_string(inst.size()) + "\n";
    out += "EDGE_WEIGHT_TYPE: EUC_2D\n";
    out += "NODE_COORD_SECTION\n";
    for (const City& c : inst.cities()) {
        out += std::to_string(c.id) + " " + format_number(c.x) + " " + format_number(c.y) + "\n";
    }
    out += "EOF\n";
    return out;
}

} // namespace tspga
