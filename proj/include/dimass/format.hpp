#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include "error.hpp"

namespace dimass {

//! Formatting is locale-independent: everything goes through <charconv>.
inline constexpr int default_significant_digits = 6;

//! Shortest text that parses back to exactly the same double.
inline std::string format_shortest(double value)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{})
    {
        throw InvalidInput("cannot format number");
    }
    return std::string(buf.data(), end);
}

//! General ("%g") formatting with a fixed number of significant digits.
inline std::string format_significant(double value,
                                      int digits = default_significant_digits)
{
    if (digits < 1 || digits > 17)
    {
        throw InvalidInput("significant digits must be in 1..17");
    }
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(),
                                   buf.data() + buf.size(),
                                   value,
                                   std::chars_format::general,
                                   digits);
    if (ec != std::errc{})
    {
        throw InvalidInput("cannot format number");
    }
    return std::string(buf.data(), end);
}

//! 17 significant digits: the fixed-width exact representation of a double.
inline std::string format_exact(double value)
{
    return format_significant(value, 17);
}

//! Parse a full decimal literal; rejects trailing garbage and empty input.
inline std::optional<double> parse_double(std::string_view text)
{
    if (text.empty())
    {
        return std::nullopt;
    }
    // from_chars rejects a leading '+', which users reasonably type
    if (text.front() == '+')
    {
        text.remove_prefix(1);
    }
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
    {
        return std::nullopt;
    }
    return value;
}

//! Round to the given number of significant decimal digits.
inline double round_significant(double value, int digits)
{
    if (value == 0 || !std::isfinite(value))
    {
        return value;
    }
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(),
                                   buf.data() + buf.size(),
                                   value,
                                   std::chars_format::scientific,
                                   digits - 1);
    if (ec != std::errc{})
    {
        throw InvalidInput("cannot round number");
    }
    return *parse_double(std::string_view(buf.data(), end - buf.data()));
}

}  // namespace dimass
