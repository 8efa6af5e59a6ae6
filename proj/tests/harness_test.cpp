#include "jsonelim/harness.hpp"
#include "jsonelim/validator.hpp"

#include <doctest.h>

#include <set>

using namespace jsonelim;

namespace {

bool valid(const json& schema, const char* instance) {
    auto d = parse_schema(schema);
    return validator(d).validate(parse_json(instance)).valid;
}

}  // namespace

TEST_CASE("object family") {
    auto s1 = gen_family_sn(1);
    CHECK(s1.find("anyOf")->as_array().size() == 1);
    auto s3 = gen_family_sn(3);
    CHECK(valid(s3, R"({"a1": null, "-a1-a3-": null})"));
    CHECK_FALSE(valid(s3, R"({"a2": null, "-a1-a3-": null})"));
}

TEST_CASE("array family") {
    auto s2 = gen_family_san(2);
    CHECK(valid(s2, R"([{"a1": null}, {"a1": null, "a2": null}])"));
    CHECK_FALSE(valid(s2, R"([{"a1": null}, {"a2": null}])"));
    CHECK_FALSE(valid(gen_family_san(1), "[]"));
    CHECK(valid(gen_family_san(1), R"([{"a1": 0}])"));
}

TEST_CASE("universe of the object family") {
    auto u = relevant_universe(parse_schema(gen_family_sn(3)));
    std::set<std::string> names(u.names.begin(), u.names.end());
    for (const char* n : {"a1", "a2", "a3"}) CHECK(names.count(n));
    CHECK(u.names.back() == "_");
    CHECK(u.relevant_count() <= 12);
}

TEST_CASE("enumeration covers the base alphabet") {
    auto u = relevant_universe(parse_schema(parse_json(R"({"properties": {"k": true}, "prefixItems": [true]})")));
    auto all = enumerate_instances(u);
    std::set<std::string> seen;
    for (const auto& j : all) seen.insert(serialize_json(j));
    for (const char* j : {"null", "0", "\"x\"", "[]", "{}", R"({"k":null})", R"({"_":{}})", R"({"_":"x","k":[]})",
                          "[null,0,\"x\"]", "[{},[],0]"})
        CHECK_MESSAGE(seen.count(j), j);
    CHECK(seen.size() == all.size());
}

TEST_CASE("difftest reports agreement deterministically") {
    auto d = parse_schema(gen_family_sn(2));
    auto inst = enumerate_instances(relevant_universe(d), 20000);
    auto r1 = difftest("sn2", d, inst);
    auto r2 = difftest("sn2", d, inst);
    CHECK(r1.total == inst.size());
    CHECK(r1.agree + r1.disagree == r1.total);
    CHECK(r1.disagree == 0);
    CHECK(r1.agree == r2.agree);
    CHECK(r1.size_ratio == r2.size_ratio);
    json j = r1.to_json();
    CHECK(j.find("disagree"));
    CHECK(j.find("total"));
}

TEST_CASE("difftest with no instances") {
    auto r = difftest("empty", parse_schema(parse_json("true")), {});
    CHECK(r.total == 0);
    CHECK(r.disagree == 0);
}

TEST_CASE("fixture corpus loads") {
    auto all = load_fixtures(JSONELIM_FIXTURES_DIR);
    CHECK(all.size() >= 50);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].name < all[i].name);
    for (const auto& f : all) {
        CHECK_MESSAGE(f.doc, f.name);
        CHECK_MESSAGE(f.valid.size() + f.invalid.size() > 0, f.name);
    }
}

TEST_CASE("random generation is reproducible and well formed") {
    std::mt19937_64 a(7), b(7);
    for (int i = 0; i < 50; ++i) {
        json s = random_schema(a);
        CHECK(serialize_json(s) == serialize_json(random_schema(b)));
        CHECK_NOTHROW(parse_schema(s));
    }
}
