#include "jsonelim/json.hpp"

#include <doctest.h>

using namespace jsonelim;

TEST_CASE("decimal parsing keeps exact values") {
    CHECK(decimal::parse("1.0") == decimal(1));
    CHECK(decimal::parse("10") == decimal::parse("1e1"));
    CHECK(decimal::parse("-0") == decimal(0));
    CHECK(decimal::parse("0.1").exponent() == -1);
    CHECK(decimal::parse("123456789012345678901234567890").to_string() == "1.2345678901234567890123456789e29");
    CHECK_FALSE(decimal::parse("1.5").is_integer());
    CHECK(decimal::parse("2.50e1").is_integer());
}

TEST_CASE("leading zeros in the fraction are not octal") {
    CHECK(decimal::parse("0.12").to_string() == "0.12");
    CHECK(decimal::parse("0.09").to_string() == "0.09");
    CHECK(decimal::parse("0.0078").mantissa() == 78);
}

TEST_CASE("decimal comparison and multipleOf") {
    CHECK(decimal::parse("0.3") < decimal::parse("0.31"));
    CHECK(decimal::parse("-2") < decimal::parse("-1.5"));
    CHECK(decimal::parse("1e3").compare(decimal(1000)) == 0);
    CHECK(decimal(0) < decimal::parse("1e-30"));
    CHECK(decimal::parse("0.3").is_multiple_of(decimal::parse("0.1")));
    CHECK(decimal(12).is_multiple_of(decimal(4)));
    CHECK_FALSE(decimal(7).is_multiple_of(decimal(2)));
    CHECK_FALSE(decimal::parse("0.5").is_multiple_of(decimal(2)));
    CHECK(decimal::parse("1e40").is_multiple_of(decimal(8)));
}

TEST_CASE("number spelling") {
    CHECK(decimal::parse("1.50").to_string() == "1.5");
    CHECK(decimal::parse("100").to_string() == "100");
    CHECK(decimal::parse("-0.001").to_string() == "-0.001");
    CHECK(decimal::parse("1e30").to_string() == "1e30");
}

TEST_CASE("parse and serialize") {
    json v = parse_json(R"({"b":[1,2.5,"x",null,true],"a":{}})");
    REQUIRE(v.is_object());
    CHECK(v.as_object().size() == 2);
    CHECK(serialize_json(v) == R"({"a":{},"b":[1,2.5,"x",null,true]})");
    CHECK(serialize_json(parse_json(R"("a\"b\n\u0001")")) == R"("a\"b\n\u0001")");
    CHECK(serialize_json(json(json_object{{"k", json(1)}}), 2) == "{\n  \"k\": 1\n}");
    CHECK(serialize_json(json(json_array{})) == "[]");
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(parse_json("{"), json_parse_error);
    CHECK_THROWS_AS(parse_json("[1,]"), json_parse_error);
    CHECK_THROWS_AS(parse_json("01"), json_parse_error);
    CHECK_THROWS_WITH_AS(parse_json(R"({"a":1,"a":2})"), doctest::Contains("duplicate object key"), json_parse_error);
}

TEST_CASE("structural equality compares numbers by value") {
    CHECK(json_equal(parse_json("[1.0, {\"a\": 2}]"), parse_json("[1, {\"a\": 2e0}]")));
    CHECK_FALSE(json_equal(parse_json("1"), parse_json("\"1\"")));
    CHECK_FALSE(json_equal(parse_json("[1,2]"), parse_json("[2,1]")));
    CHECK_FALSE(json_equal(parse_json("{\"a\":1}"), parse_json("{\"b\":1}")));
    CHECK(json_equal(json(), json(nullptr)));
}

TEST_CASE("object lookup") {
    json v = parse_json(R"({"a": 1})");
    REQUIRE(v.find("a"));
    CHECK(v.find("a")->as_number() == decimal(1));
    CHECK(v.find("b") == nullptr);
    CHECK(json(1).find("a") == nullptr);
}
