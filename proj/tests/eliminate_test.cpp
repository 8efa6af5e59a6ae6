#include "jsonelim/eliminate.hpp"
#include "jsonelim/harness.hpp"
#include "jsonelim/validator.hpp"

#include <doctest.h>

using namespace jsonelim;

namespace {

schema_ptr sub(const char* text) { return parse_subschema(parse_json(text)); }
schema_document doc_of(const char* text) { return parse_schema(parse_json(text)); }

const char* kItems = R"({
  "items": {"anyOf": [{"$ref": "#sale"}, {"$ref": "#car"}], "unevaluatedProperties": false},
  "$defs": {
    "sale": {"$anchor": "sale", "properties": {"price": {"type": "integer"}}},
    "car": {"$anchor": "car", "properties": {"model": {"type": "string"}}}
  }
})";

std::size_t agreement_failures(const schema_document& a, const schema_document& b) {
    std::size_t bad = 0;
    validator va(a), vb(b);
    for (const auto& j : enumerate_instances(relevant_universe(a), 50000))
        if (va.validate(j).valid != vb.validate(j).valid) ++bad;
    return bad;
}

}  // namespace

TEST_CASE("unnest hoists nested uneval-schemas") {
    auto u = unnest(doc_of(kItems));
    const auto* items = u.root()->find(kw::items);
    REQUIRE(items);
    const auto* ref = items->sub->find(kw::ref);
    REQUIRE(ref);
    auto target = u.deref(ref->text);
    CHECK(has_unevaluated(target));
    CHECK(target->has(kw::any_of));
    CHECK(u.defs().size() == 3);
    CHECK_FALSE(has_unevaluated(u.root()));
}

TEST_CASE("unnest leaves documents without nesting alone") {
    auto plain = doc_of(R"({"properties": {"a": {"type": "string"}}})");
    CHECK(serialize_json(serialize_schema(unnest(plain))) == serialize_json(serialize_schema(plain)));
    auto named = doc_of(R"({"$ref": "#/$defs/u", "$defs": {"u": {"properties": {"a": true}, "unevaluatedProperties": false}}})");
    CHECK(serialize_json(serialize_schema(unnest(named))) == serialize_json(serialize_schema(named)));
}

TEST_CASE("fresh names avoid existing definitions") {
    auto d = doc_of(R"({"items": {"unevaluatedItems": false},
                        "$defs": {"__uneval_0": {"type": "null"}}})");
    auto u = unnest(d);
    CHECK(u.defs().size() == 2);
    CHECK(u.def("__uneval_0")->canonical() == R"({"type":"null"})");
}

TEST_CASE("pattern and prefix builders") {
    CHECK(schema::object({p_props(pattern_set({pattern::exact("price").source}))})->canonical() ==
          R"({"patternProperties":{"^price$":{}}})");
    CHECK(schema::object({p_props(pattern_set())})->canonical() == R"({"patternProperties":{}})");
    CHECK(p_props(pattern_set({"^a$", "^b$"})).members.size() == 2);
    CHECK(schema::object({pref_its(0)})->canonical() == R"({"prefixItems":[]})");
    CHECK(schema::object({pref_its(2)})->canonical() == R"({"prefixItems":[true,true]})");
    CHECK(pref_its(5).list.size() == 5);
}

TEST_CASE("pushing unevaluatedProperties") {
    auto d = doc_of("true");
    analyzer an(d);
    auto r = push_uneval_props(an, schema::boolean(true), {schema::boolean(true)});
    CHECK(r->canonical() == R"({"anyOf":[{"allOf":[true,{"additionalProperties":true,"patternProperties":{}}]}]})");

    auto everything = sub(R"({"additionalProperties": {"type": "string"}})");
    auto w = push_uneval_props(an, schema::boolean(false), {everything});
    validator v(d);
    for (const char* j : {R"({"a": "x"})", R"({"a": 1})", "{}", "3"})
        CHECK(v.validate(w, parse_json(j)).valid == v.validate(everything, parse_json(j)).valid);
}

TEST_CASE("pushing unevaluatedItems") {
    auto d = doc_of("true");
    analyzer an(d);
    auto items = sub(R"({"items": {"type": "string"}})");
    CHECK(push_uneval_items(an, schema::boolean(false), {items})->canonical() == R"({"anyOf":[{"items":{"type":"string"}}]})");

    auto prefix = sub(R"({"prefixItems": [true]})");
    CHECK(push_uneval_items(an, schema::boolean(false), {prefix})->canonical() ==
          R"({"anyOf":[{"allOf":[{"prefixItems":[true]},{"items":{"anyOf":[false,false]},"prefixItems":[true]}]}]})");

    auto contains = sub(R"({"contains": {"type": "number"}})");
    auto c = push_uneval_items(an, schema::boolean(false), {contains});
    validator v(d);
    CHECK(v.validate(c, parse_json("[1, 2]")).valid);
    CHECK_FALSE(v.validate(c, parse_json(R"([1, "a"])")).valid);
    CHECK_FALSE(v.validate(c, parse_json("[]")).valid);
}

TEST_CASE("worked example") {
    auto d = doc_of(kItems);
    auto r = elim_document(d);
    CHECK_FALSE(contains_unevaluated(*r.doc));
    CHECK(r.stats.enf_branches == 3);
    CHECK(r.stats.uneval_schemas == 1);
    CHECK(agreement_failures(d, *r.doc) == 0);

    validator v(*r.doc);
    CHECK(v.validate(parse_json(R"([{"price": 1, "model": "m"}, {"price": 2}])")).valid);
    CHECK_FALSE(v.validate(parse_json(R"([{"price": 1, "plate": "p"}])")).valid);
}

TEST_CASE("elim_schema dispatch") {
    auto d = doc_of(R"({"$defs": {"s": {"type": "string"},
                                  "both": {"prefixItems": [true], "properties": {"a": true},
                                           "unevaluatedProperties": false, "unevaluatedItems": false}}})");
    eliminator e(d);
    CHECK(e.elim_schema(d.def("s")) == d.def("s"));
    auto both = e.elim_schema(d.def("both"));
    const auto* all = both->find(kw::all_of);
    REQUIRE(all);
    CHECK(all->list.size() == 2);
    CHECK_FALSE(contains_unevaluated(both));
}

TEST_CASE("classical documents pass through") {
    auto d = doc_of(R"({"properties": {"a": {"type": "string"}}, "additionalProperties": false})");
    auto r = elim_document(d);
    CHECK(serialize_json(serialize_schema(*r.doc)) == serialize_json(serialize_schema(d)));
    CHECK(r.stats.uneval_schemas == 0);
}

TEST_CASE("the S_3 family yields seven branches") {
    auto d = parse_schema(gen_family_sn(3));
    auto r = elim_document(d);
    CHECK(r.stats.enf_branches == 7);
    CHECK_FALSE(contains_unevaluated(*r.doc));
    CHECK(agreement_failures(d, *r.doc) == 0);
}

TEST_CASE("elimination is idempotent up to equivalence") {
    auto d = parse_schema(gen_family_san(2));
    auto once = elim_document(d);
    auto twice = elim_document(*once.doc);
    CHECK(agreement_failures(*once.doc, *twice.doc) == 0);
    CHECK(twice.stats.uneval_schemas == 0);
}

TEST_CASE("anchors survive hoisting") {
    auto d = doc_of(R"({"properties": {"x": {"$anchor": "inner", "properties": {"a": true}}},
                        "allOf": [{"$ref": "#inner"}], "unevaluatedProperties": false})");
    auto r = elim_document(d);
    CHECK(r.doc->anchors().count("inner") == 1);
    CHECK(agreement_failures(d, *r.doc) == 0);
}

TEST_CASE("size stays within the family bound") {
    for (std::size_t n = 1; n <= 4; ++n) {
        auto d = parse_schema(gen_family_sn(n));
        auto r = elim_document(d);
        std::size_t nodes = serialize_json(serialize_schema(d)).size();
        CHECK(r.stats.output_bytes <= (std::size_t{1} << (3 * n)) * nodes);
    }
}
