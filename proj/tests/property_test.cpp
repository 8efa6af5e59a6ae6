#include "jsonelim/eliminate.hpp"
#include "jsonelim/harness.hpp"
#include "properties.hpp"

#include <doctest.h>

#include <memory>

using namespace jsonelim;

namespace {

struct sample {
    std::shared_ptr<schema_document> doc;
    std::vector<json> instances;
};

// Parsable random documents with a small enumerated universe plus random
// instances.
std::vector<sample> samples(std::uint64_t seed, std::size_t count, bool unevaluated, std::size_t budget = 3000) {
    std::mt19937_64 rng(seed);
    random_options opt;
    opt.unevaluated = unevaluated;
    std::vector<sample> out;
    while (out.size() < count) {
        json sj = random_schema(rng, opt);
        sample s;
        try {
            s.doc = std::make_shared<schema_document>(parse_schema(sj));
        } catch (const schema_error&) {
            continue;
        }
        s.instances = enumerate_instances(relevant_universe(*s.doc), budget);
        for (int i = 0; i < 50; ++i) s.instances.push_back(random_instance(rng, 2));
        out.push_back(std::move(s));
    }
    return out;
}

void collect(const schema_ptr& s, std::vector<schema_ptr>& out) {
    out.push_back(s);
    if (s->is_bool()) return;
    for (const auto& k : s->keywords())
        for (const auto& c : subschemas(k)) collect(c, out);
}

std::vector<schema_ptr> all_nodes(const schema_document& d) {
    std::vector<schema_ptr> out;
    collect(d.root(), out);
    return out;
}

}  // namespace

TEST_CASE("bounds are sound on every node of random documents") {
    for (const auto& s : samples(11, 150, true)) {
        analyzer an(*s.doc);
        for (const auto& node : all_nodes(*s.doc)) {
            auto err = props::check_bounds(*s.doc, an, node, s.instances);
            CHECK_MESSAGE(err.empty(), err << "\n  schema " << node->canonical());
        }
    }
}

TEST_CASE("bounds are sound on the fixture corpus") {
    for (const auto& f : load_fixtures(JSONELIM_FIXTURES_DIR)) {
        analyzer an(*f.doc);
        auto inst = enumerate_instances(relevant_universe(*f.doc), 20000);
        for (const auto& w : f.valid) inst.push_back(w.instance);
        std::vector<schema_ptr> named{f.doc->root()};
        for (const auto& [n, s] : f.doc->defs()) named.push_back(s);
        for (const auto& s : named) {
            auto err = props::check_bounds(*f.doc, an, s, inst);
            CHECK_MESSAGE(err.empty(), f.name << ": " << err);
        }
    }
}

TEST_CASE("proven covers hold") {
    for (const auto& s : samples(12, 80, true)) {
        analyzer an(*s.doc);
        validator v(*s.doc);
        auto nodes = all_nodes(*s.doc);
        for (std::size_t i = 0; i < nodes.size() && i < 8; ++i)
            for (std::size_t k = 0; k < nodes.size() && k < 8; ++k) {
                auto err = props::check_cover(v, an, nodes[i], nodes[k], s.instances);
                CHECK_MESSAGE(err.empty(), err);
            }
    }
}

TEST_CASE("normal form is equivalent, characterized and cover-closed") {
    for (const auto& s : samples(13, 200, false)) {
        analyzer an(*s.doc);
        enf_engine eng(*s.doc, an);
        eng.check_depth = true;
        validator v(*s.doc);
        auto err = props::check_enf(v, an, eng, s.doc->root(), s.instances);
        CHECK_MESSAGE(err.empty(), err << "\n  schema " << serialize_json(serialize_schema(*s.doc)));
    }
}

TEST_CASE("anyOf annotation is the union of the satisfied branches") {
    // The second branch is a node of the same document so its references resolve.
    for (const auto& s : samples(14, 60, true)) {
        auto nodes = all_nodes(*s.doc);
        validator v(*s.doc);
        for (std::size_t k = 1; k < nodes.size() && k < 6; ++k)
            for (const auto& j : s.instances) {
                auto err = props::check_any_of_union(v, s.doc->root(), nodes[k], j);
                REQUIRE_MESSAGE(err.empty(), err);
            }
    }
}

TEST_CASE("annotations are sound, erased on failure, and dropped by double negation") {
    for (const auto& s : samples(15, 150, true, 1500)) {
        validator v(*s.doc);
        for (const auto& node : all_nodes(*s.doc))
            for (const auto& j : s.instances) {
                auto err = props::check_annotation_sanity(v, node, j);
                if (err.empty()) err = props::check_double_negation(v, node, j);
                REQUIRE_MESSAGE(err.empty(), err << "\n  schema " << node->canonical());
            }
    }
}

TEST_CASE("random elimination is equivalent") {
    std::size_t checked = 0;
    for (const auto& s : samples(16, 400, true, 6000)) {
        if (!contains_unevaluated(*s.doc)) continue;
        auto r = difftest("random", *s.doc, s.instances);
        CHECK_MESSAGE(r.disagree == 0, serialize_json(serialize_schema(*s.doc)) << "\n  on "
                                                                                  << serialize_json(r.disagreements.front().instance));
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("the normal form of the object family has 2^n - 1 branches") {
    for (std::size_t n = 1; n <= 4; ++n) {
        auto d = parse_schema(gen_family_sn(n));
        analyzer an(d);
        enf_engine eng(d, an);
        auto body = parse_subschema(json(json_object{{"anyOf", *gen_family_sn(n).find("anyOf")}}));
        auto l = eng.branches(body);
        CHECK(l.size() == (std::size_t{1} << n) - 1);
        CHECK(l.size() <= (std::size_t{1} << (2 * n + 1)));
    }
}
