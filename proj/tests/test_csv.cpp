#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "dualfit/csv.hpp"

namespace dualfit::csv {
namespace {

Dataset parse(const std::string& text, std::optional<ColumnRef> x = std::nullopt,
              std::optional<ColumnRef> y = std::nullopt) {
    std::istringstream in(text);
    return parse_csv(in, x, y);
}

void expect_points(const Dataset& d, std::initializer_list<Point> expected) {
    ASSERT_EQ(d.size(), expected.size());
    std::size_t i = 0;
    for (const auto& p : expected) {
        EXPECT_EQ(d[i].x, p.x) << "row " << i;
        EXPECT_EQ(d[i].y, p.y) << "row " << i;
        ++i;
    }
}

Error parse_error(const std::string& text, std::optional<ColumnRef> x = std::nullopt,
                  std::optional<ColumnRef> y = std::nullopt) {
    try {
        parse(text, x, y);
    } catch (const Error& e) {
        return e;
    }
    ADD_FAILURE() << "no error for: " << text;
    return Error(ErrorKind::InvalidInput, "none");
}

TEST(ParseCsv, HeaderDetected) { expect_points(parse("x,y\n0,0\n0,0\n1,0\n1,1"), {{0, 0}, {0, 0}, {1, 0}, {1, 1}}); }

TEST(ParseCsv, Headerless) { expect_points(parse("0,0\n1,1"), {{0, 0}, {1, 1}}); }

TEST(ParseCsv, BlankLinesWhitespaceAndCrlf) {
    expect_points(parse("\r\n x , y \r\n\r\n 1.5 , -2e1\r\n   \n+3,4\r\n"), {{1.5, -20}, {3, 4}});
}

TEST(ParseCsv, HeaderNamesLocateColumns) {
    expect_points(parse("id,y,x\n1,10,0\n2,20,1\n"), {{0, 10}, {1, 20}});
    expect_points(parse("a,b,c\n1,10,0\n2,20,1\n", ColumnRef::named("c"), ColumnRef::named("a")), {{0, 1}, {1, 2}});
}

TEST(ParseCsv, IndexSelection) {
    expect_points(parse("1,10,0\n2,20,1\n", ColumnRef::at(2), ColumnRef::at(0)), {{0, 1}, {1, 2}});
    EXPECT_EQ(ColumnRef::parse("2").index, 2u);
    EXPECT_FALSE(ColumnRef::parse("2").by_name);
    EXPECT_TRUE(ColumnRef::parse("gpa").by_name);
}

TEST(ParseCsv, UnknownHeaderDefaultsToFirstTwoColumns) { expect_points(parse("sat,gpa\n1200,3.1\n1400,3.6\n"), {{1200, 3.1}, {1400, 3.6}}); }

TEST(ParseCsv, MalformedRowNamesLine) {
    const auto e = parse_error("x,y\n0,0\n1,abc\n2,2\n");
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
}

TEST(ParseCsv, ShortRowIsParseError) {
    const auto e = parse_error("0,0\n1,1\n5\n");
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
}

TEST(ParseCsv, NonFiniteIsParseError) { EXPECT_EQ(parse_error("0,0\n1,inf\n").kind(), ErrorKind::ParseError); }

TEST(ParseCsv, MissingNamedColumn) {
    EXPECT_EQ(parse_error("x,y\n0,0\n1,1\n", ColumnRef::named("z")).kind(), ErrorKind::InvalidInput);
}

TEST(ParseCsv, TooFewRows) {
    EXPECT_EQ(parse_error("x,y\n1,1\n").kind(), ErrorKind::InvalidInput);
    EXPECT_EQ(parse_error("").kind(), ErrorKind::InvalidInput);
}

TEST(ParseNumber, Strictness) {
    EXPECT_EQ(parse_number(" 2.5 "), 2.5);
    EXPECT_EQ(parse_number("-1e-3"), -1e-3);
    EXPECT_FALSE(parse_number("1.2.3"));
    EXPECT_FALSE(parse_number("12abc"));
    EXPECT_FALSE(parse_number(""));
    EXPECT_FALSE(parse_number("+"));
}

}  // namespace
}  // namespace dualfit::csv
