#pragma once

#include <array>
#include <charconv>
#include <string>

namespace brierdecomp {

/// Shortest decimal text that parses back to exactly `value`.
inline std::string format_number(double value)
{
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

}  // namespace brierdecomp
