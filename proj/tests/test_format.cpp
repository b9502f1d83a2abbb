#include <dimass/format.hpp>
#include <dimass/table.hpp>

#include <json.hpp>

#include "test_util.hpp"

namespace dimass {
namespace {

TEST(FormatTest, significant_digits)
{
    EXPECT_EQ("105.549", format_significant(105.54888674365421));
    EXPECT_EQ("1.13387e+19", format_significant(1.1338684260539057e19));
    EXPECT_EQ("0", format_significant(0.0));
    EXPECT_EQ("1.1e+19", format_significant(1.1338684260539057e19, 2));
    EXPECT_THROW(format_significant(1, 0), InvalidInput);
    EXPECT_THROW(format_significant(1, 18), InvalidInput);
}

TEST(FormatTest, shortest_and_exact_round_trip)
{
    for (double v : {0.1, 1.0 / 3.0, 176.0, 1.2e19, 5e-324, 14.120342769037382})
    {
        EXPECT_EQ(v, parse_double(format_shortest(v)).value());
        EXPECT_EQ(v, parse_double(format_exact(v)).value());
    }
    EXPECT_EQ("176", format_shortest(176));
    EXPECT_EQ("1.2e+19", format_shortest(1.2e19));
}

TEST(FormatTest, parse_double)
{
    EXPECT_EQ(1.5, parse_double("1.5").value());
    EXPECT_EQ(2.0, parse_double("+2").value());
    EXPECT_EQ(-3e4, parse_double("-3e4").value());
    EXPECT_FALSE(parse_double(""));
    EXPECT_FALSE(parse_double("1.5x"));
    EXPECT_FALSE(parse_double(" 1"));
    EXPECT_FALSE(parse_double("1,5"));
}

TEST(FormatTest, round_significant)
{
    EXPECT_EQ(1.7e6, round_significant(1712200.578195809, 2));
    EXPECT_EQ(7e-2, round_significant(0.070025258495769471, 1));
    EXPECT_EQ(6.0e14, round_significant(6.0380029535589847e14, 2));
    EXPECT_EQ(0.0, round_significant(0.0, 3));
}

TEST(TableTest, render_all_formats)
{
    Table t;
    t.columns = {"name", "value", "n", "flag", "empty"};
    t.add_row({"a,b", 1.23456789, std::int64_t{7}, true, Null{}});
    t.add_row({"pipe|q\"", 2e-10, std::int64_t{-1}, false, Null{}});
    EXPECT_THROW(t.add_row({"short"}), InvalidInput);

    EXPECT_EQ("name,value,n,flag,empty\n"
              "\"a,b\",1.23457,7,true,\n"
              "\"pipe|q\"\"\",2e-10,-1,false,\n",
              render(t, OutputFormat::csv));
    EXPECT_EQ("| name | value | n | flag | empty |\n"
              "|---|---|---|---|---|\n"
              "| a,b | 1.23457 | 7 | true | - |\n"
              "| pipe\\|q\" | 2e-10 | -1 | false | - |\n",
              render(t, OutputFormat::markdown));
    auto const j = nlohmann::json::parse(render(t, OutputFormat::json, 3));
    ASSERT_EQ(2u, j.size());
    EXPECT_EQ(1.23, j[0]["value"].get<double>());
    EXPECT_TRUE(j[0]["empty"].is_null());
    EXPECT_EQ(7, j[0]["n"].get<int>());
}

TEST(TableTest, output_format_names)
{
    EXPECT_EQ(OutputFormat::markdown, parse_output_format("md"));
    EXPECT_EQ(OutputFormat::json, parse_output_format("json"));
    EXPECT_FALSE(parse_output_format("xml"));
}

}  // namespace
}  // namespace dimass
