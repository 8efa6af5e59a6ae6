#include "jsonelim/schema.hpp"

#include <doctest.h>

using namespace jsonelim;

namespace {

schema_document doc_of(const char* text) { return parse_schema(parse_json(text)); }

const char* kSaleCar = R"({
  "anyOf": [{"$ref": "#sale"}, {"$ref": "#car"}],
  "unevaluatedProperties": false,
  "$defs": {
    "sale": {"$anchor": "sale", "properties": {"price": {"type": "integer"}}},
    "car": {"$anchor": "car", "properties": {"plate": {"type": "string"}}}
  }
})";

}  // namespace

TEST_CASE("boolean schemas") {
    auto d = doc_of("true");
    CHECK(d.root()->is_bool());
    CHECK(d.root()->bool_value());
    CHECK(serialize_json(serialize_schema(doc_of("false"))) == "false");
    CHECK(serialize_json(serialize_schema(doc_of("{}"))) == "{}");
}

TEST_CASE("keywords are reordered IK, SDK, ADK") {
    auto d = doc_of(R"({"unevaluatedProperties": false, "additionalProperties": true, "properties": {"a": true}})");
    const auto& ks = d.root()->keywords();
    REQUIRE(ks.size() == 3);
    CHECK(ks[0].kind == kw::properties);
    CHECK(ks[1].kind == kw::additional_properties);
    CHECK(ks[2].kind == kw::unevaluated_properties);
    CHECK(group_of(ks[0].kind) == kw_group::ik);
    CHECK(group_of(ks[1].kind) == kw_group::sdk);
    CHECK(group_of(ks[2].kind) == kw_group::adk);
}

TEST_CASE("every grammar keyword gets a dedicated kind") {
    auto d = doc_of(R"({
      "minimum": 1, "maximum": 2, "pattern": "a", "const": 1, "type": "string",
      "anyOf": [true], "allOf": [true], "oneOf": [true], "not": false,
      "patternProperties": {"p": true}, "properties": {"a": true}, "required": ["a"],
      "minProperties": 0, "maxProperties": 3, "propertyNames": true,
      "prefixItems": [true], "contains": true, "minContains": 0, "maxContains": 2,
      "minItems": 0, "maxItems": 3, "uniqueItems": true,
      "additionalProperties": true, "items": true,
      "unevaluatedProperties": true, "unevaluatedItems": true
    })");
    for (const auto& k : d.root()->keywords()) CHECK_MESSAGE(k.kind != kw::unknown, k.name);
    CHECK(d.root()->keywords().size() == 26);
}

TEST_CASE("unknown keywords are kept verbatim") {
    auto d = doc_of(R"({"title": "x", "x-extra": [1, 2]})");
    for (const auto& k : d.root()->keywords()) CHECK(k.kind == kw::unknown);
    CHECK(json_equal(serialize_schema(d), parse_json(R"({"title": "x", "x-extra": [1, 2]})")));
}

TEST_CASE("contains defaults are made explicit") {
    auto d = doc_of(R"({"contains": {"type": "number"}})");
    auto* mn = d.root()->find(kw::min_contains);
    auto* mx = d.root()->find(kw::max_contains);
    REQUIRE(mn);
    CHECK(mn->count == 1);
    if (mx) CHECK_FALSE(mx->bound.has_value());

    auto bare = doc_of(R"({"minContains": 2, "maxContains": 3})");
    CHECK_FALSE(bare.root()->has(kw::min_contains));
    CHECK_FALSE(bare.root()->has(kw::max_contains));
}

TEST_CASE("malformed or unsupported schemas are rejected") {
    CHECK_THROWS_AS(doc_of(R"({"anyOf": {}})"), schema_error);
    CHECK_THROWS_AS(doc_of(R"({"pattern": 3})"), schema_error);
    CHECK_THROWS_AS(doc_of(R"({"pattern": "("})"), schema_error);
    CHECK_THROWS_AS(doc_of("3"), schema_error);
    CHECK_THROWS_WITH_AS(doc_of(R"({"$dynamicRef": "#x"})"), doctest::Contains("unsupported keyword"), schema_error);
    CHECK_THROWS_WITH_AS(doc_of(R"({"exclusiveMinimum": 1})"), doctest::Contains("unsupported keyword"), schema_error);
    CHECK_THROWS_WITH_AS(doc_of(R"({"items": [true]})"), doctest::Contains("array form"), schema_error);
    CHECK_THROWS_WITH_AS(doc_of(R"({"$defs": {"a": {"$defs": {"b": true}}}})"), doctest::Contains("nested"),
                         schema_error);
    CHECK_THROWS_WITH_AS(doc_of(R"({"$ref": "#nope"})"), doctest::Contains("unresolved"), schema_error);
    CHECK_THROWS_WITH_AS(doc_of(R"({"$ref": "http://example.com/s"})"), doctest::Contains("unsupported reference"),
                         schema_error);
    CHECK_THROWS_WITH_AS(doc_of(R"({"$defs": {"x": {"$id": "y"}}})"), doctest::Contains("$id"), schema_error);
}

TEST_CASE("references resolve through $defs and anchors") {
    auto d = doc_of(kSaleCar);
    CHECK(d.defs().size() == 2);
    CHECK(d.anchors().size() == 2);
    CHECK(d.deref("#sale") == d.def("sale"));
    CHECK(d.deref("#/$defs/car") == d.def("car"));
    CHECK(d.deref("#car") == d.def("car"));
    CHECK(d.deref("#") == d.root());
    CHECK(d.at_pointer("/$defs/sale") == d.def("sale"));
    CHECK(d.at_pointer("") == d.root());
    CHECK_THROWS_AS(d.deref("#nope"), schema_error);
}

TEST_CASE("duplicate anchors are ambiguous") {
    CHECK_THROWS_WITH_AS(doc_of(R"({"$defs": {"a": {"$anchor": "x"}, "b": {"$anchor": "x", "type": "null"}}})"),
                         doctest::Contains("ambiguous anchor"), schema_error);
}

TEST_CASE("guarded recursion") {
    CHECK_THROWS_WITH_AS(doc_of(R"({"$defs": {"r": {"anyOf": [{"$ref": "#/$defs/r"}]}}})"),
                         doctest::Contains("unguarded recursion"), schema_error);
    CHECK_THROWS_AS(doc_of(R"({"$ref": "#"})"), schema_error);
    CHECK_THROWS_AS(doc_of(R"({"$defs": {"a": {"$ref": "#/$defs/b"}, "b": {"not": {"$ref": "#/$defs/a"}}}})"),
                    schema_error);

    auto ok = doc_of(R"({"$defs": {"r": {"properties": {"x": {"$ref": "#/$defs/r"}}}}})");
    CHECK(check_guarded(ok));
    CHECK(check_guarded(doc_of(kSaleCar)));
    CHECK(check_guarded(doc_of(R"({"items": {"$ref": "#"}})")));
}

TEST_CASE("in-place depth") {
    auto d = doc_of(R"({"$defs": {"t": true, "p": {"properties": {"a": {"not": true}}}}})");
    CHECK(in_place_depth(d, schema::boolean(true)) == 0);
    CHECK(in_place_depth(d, d.def("p")) == 1);
    CHECK(in_place_depth(d, parse_subschema(parse_json(R"({"$ref": "#/$defs/t"})"))) == 2);
    // not adds one to its argument and the schema adds one more.
    CHECK(in_place_depth(d, parse_subschema(parse_json(R"({"not": {"not": true}})"))) == 4);
    CHECK(in_place_depth(d, parse_subschema(parse_json(R"({"anyOf": []})"))) == 2);
}

TEST_CASE("depth decreases along in-place edges") {
    auto d = doc_of(kSaleCar);
    depth_calculator dc(d);
    for (const auto& k : d.root()->keywords()) {
        if (!is_in_place(k.kind)) continue;
        for (const auto& s : subschemas(k)) CHECK(dc.of(s) < dc.of(k));
    }
}

TEST_CASE("boolean oneOf expansion") {
    auto s1 = parse_subschema(parse_json(R"({"type": "string"})"));
    auto s2 = parse_subschema(parse_json(R"({"minimum": 3})"));
    CHECK(serialize_json(serialize_schema(boolean_one_of({}))) == R"({"anyOf":[]})");
    CHECK(serialize_json(serialize_schema(boolean_one_of({s1}))) == R"({"anyOf":[{"allOf":[{"type":"string"}]}]})");
    CHECK(serialize_json(serialize_schema(boolean_one_of({s1, s2}))) ==
          R"({"anyOf":[{"allOf":[{"type":"string"},{"not":{"minimum":3}}]},)"
          R"({"allOf":[{"not":{"type":"string"}},{"minimum":3}]}]})");
}

TEST_CASE("serialization round-trips") {
    for (const char* text : {kSaleCar, "true", R"({"contains": {"minimum": 1}, "maxContains": 2})",
                             R"({"if": {"type": "string"}, "then": {"minLength": 1}, "else": false})",
                             R"({"enum": [1, "a"], "dependentRequired": {"a": ["b"]}, "multipleOf": 0.5})"}) {
        auto d = doc_of(text);
        json once = serialize_schema(d);
        json twice = serialize_schema(parse_schema(once));
        CHECK(serialize_json(once) == serialize_json(twice));
    }
}

TEST_CASE("exact-name patterns escape metacharacters") {
    auto p = pattern::exact("a.b");
    CHECK(p.matches("a.b"));
    CHECK_FALSE(p.matches("axb"));
    CHECK_FALSE(p.matches("a.bc"));
    CHECK(pattern::compile("a").matches("xax"));
}
