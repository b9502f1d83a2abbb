#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "format.hpp"

namespace dimass {

enum class OutputFormat
{
    markdown,
    csv,
    json
};

inline std::optional<OutputFormat> parse_output_format(std::string_view s) noexcept
{
    if (s == "markdown" || s == "md")
        return OutputFormat::markdown;
    if (s == "csv")
        return OutputFormat::csv;
    if (s == "json")
        return OutputFormat::json;
    return std::nullopt;
}

//! Empty cell (rendered as "-", "" or null).
struct Null
{
};

using Cell = std::variant<Null, std::string, double, std::int64_t, bool>;

//! A flat rectangular table: the single intermediate for every text output.
struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row)
    {
        if (row.size() != columns.size())
        {
            throw InvalidInput("row width does not match the column count");
        }
        rows.push_back(std::move(row));
    }
};

namespace detail {
inline std::string cell_text(Cell const& cell, int digits, std::string_view null_text)
{
    struct Visitor
    {
        int digits;
        std::string_view null_text;
        std::string operator()(Null) const { return std::string(null_text); }
        std::string operator()(std::string const& s) const { return s; }
        std::string operator()(double v) const
        {
            return format_significant(v, digits);
        }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(Visitor{digits, null_text}, cell);
}

inline std::string csv_escape(std::string const& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
    {
        return s;
    }
    std::string out = "\"";
    for (char ch : s)
    {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

inline std::string markdown_escape(std::string const& s)
{
    std::string out;
    for (char ch : s)
    {
        if (ch == '|')
            out += '\\';
        out += ch;
    }
    return out;
}

inline std::string render_markdown(Table const& t, int digits)
{
    std::string out = "|";
    for (auto const& c : t.columns)
    {
        out += " " + markdown_escape(c) + " |";
    }
    out += "\n|";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
    {
        out += "---|";
    }
    out += "\n";
    for (auto const& row : t.rows)
    {
        out += "|";
        for (auto const& cell : row)
        {
            out += " " + markdown_escape(cell_text(cell, digits, "-")) + " |";
        }
        out += "\n";
    }
    return out;
}

inline std::string render_csv(Table const& t, int digits)
{
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i)
    {
        out += (i ? "," : "") + csv_escape(t.columns[i]);
    }
    out += "\n";
    for (auto const& row : t.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            out += (i ? "," : "") + csv_escape(cell_text(row[i], digits, ""));
        }
        out += "\n";
    }
    return out;
}

inline std::string render_json(Table const& t, int digits)
{
    auto array = nlohmann::ordered_json::array();
    for (auto const& row : t.rows)
    {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            auto const& key = t.columns[i];
            std::visit(
                [&](auto const& v) {
                    using V = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<V, Null>)
                        obj[key] = nullptr;
                    else if constexpr (std::is_same_v<V, double>)
                        obj[key] = round_significant(v, digits);
                    else
                        obj[key] = v;
                },
                row[i]);
        }
        array.push_back(std::move(obj));
    }
    return array.dump(2) + "\n";
}
}  // namespace detail

//! Deterministic text rendering; numbers use \c digits significant figures.
inline std::string
render(Table const& t, OutputFormat format, int digits = default_significant_digits)
{
    switch (format)
    {
        case OutputFormat::markdown:
            return detail::render_markdown(t, digits);
        case OutputFormat::csv:
            return detail::render_csv(t, digits);
        case OutputFormat::json:
            return detail::render_json(t, digits);
    }
    return {};
}

}  // namespace dimass
