#pragma once

#include "jsonelim/eliminate.hpp"
#include "jsonelim/json.hpp"
#include "jsonelim/schema.hpp"

#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace jsonelim {

// Adversarial families. S_n: n anyOf branches {required:[ai],
// patternProperties:{ai:true}} closed by unevaluatedProperties:false.
// S^A_n: the array analogue closed by unevaluatedItems:false.
json gen_family_sn(std::size_t n);
json gen_family_san(std::size_t n);

// ---------------------------------------------------------------- enumeration

// Ingredients of the bounded instance universe of a document.
struct universe {
    std::vector<std::string> names;  // relevant property names, fresh name last
    std::vector<json> atoms;         // scalars and empty containers
    std::size_t prefix_positions = 0;

    // Distinct relevant names plus prefix positions; the fresh name is not counted.
    std::size_t relevant_count() const { return names.size() - 1 + prefix_positions; }
};

universe relevant_universe(const schema_document& d);

// Atoms, objects with at most three fields and arrays of length at most
// three; nested values shrink to smaller alphabets to stay within budget.
std::vector<json> enumerate_instances(const universe& u, std::size_t budget = 200000);

// ---------------------------------------------------------------- differential testing

struct disagreement {
    json instance;
    bool original = false;
    bool eliminated = false;
};

struct diff_report {
    std::string schema_id;
    std::size_t total = 0;
    std::size_t agree = 0;
    std::size_t disagree = 0;
    std::vector<disagreement> disagreements;
    double elapsed_ms = 0;
    double size_ratio = 0;

    json to_json() const;
};

// Eliminates `original` and validates every instance under both schemas.
diff_report difftest(const std::string& id, const schema_document& original, const std::vector<json>& instances);
diff_report difftest(const std::string& id, const schema_document& original, const elim_result& eliminated,
                     const std::vector<json>& instances);

// ---------------------------------------------------------------- fixtures

struct witness {
    std::string file;
    json instance;
};

// tests/fixtures/<name>/{schema.json, valid/*.json, invalid/*.json}
struct fixture {
    std::string name;
    json schema_json;
    std::shared_ptr<const schema_document> doc;
    std::vector<witness> valid;
    std::vector<witness> invalid;
};

fixture load_fixture(const std::string& dir);
std::vector<fixture> load_fixtures(const std::string& root);  // sorted by name
std::vector<json> load_instance_dir(const std::string& dir);  // sorted by file name

// ---------------------------------------------------------------- random generation

struct random_options {
    std::size_t max_depth = 3;
    std::size_t max_defs = 2;
    bool unevaluated = true;  // allow unevaluatedProperties/unevaluatedItems
};

// A closed, guarded schema over the names a, b, c.
json random_schema(std::mt19937_64& rng, const random_options& opt = {});
json random_instance(std::mt19937_64& rng, std::size_t depth = 2);

}  // namespace jsonelim
