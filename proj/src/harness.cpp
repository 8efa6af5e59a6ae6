#include "jsonelim/harness.hpp"

#include "jsonelim/validator.hpp"

#include <algorithm>
#include <filesystem>
#include <stdexcept>

namespace fs = std::filesystem;

namespace jsonelim {

json gen_family_sn(std::size_t n) {
    json_array branches;
    for (std::size_t i = 1; i <= n; ++i) {
        std::string a = "a" + std::to_string(i);
        branches.emplace_back(json_object{
            {"required", json(json_array{json(a)})},
            {"patternProperties", json(json_object{{a, json(true)}})},
        });
    }
    return json(json_object{{"anyOf", json(std::move(branches))}, {"unevaluatedProperties", json(false)}});
}

json gen_family_san(std::size_t n) {
    json_array branches;
    json_object defs;
    for (std::size_t i = 1; i <= n; ++i) {
        std::string t = "T" + std::to_string(i);
        json ref(json_object{{"$ref", json("#" + t)}});
        branches.emplace_back(json_object{
            {"prefixItems", json(json_array{ref})},
            {"minItems", json(1)},
            {"contains", ref},
        });
        defs.emplace(t, json(json_object{
                            {"$anchor", json(t)},
                            {"required", json(json_array{json("a" + std::to_string(i))})},
                        }));
    }
    return json(json_object{
        {"anyOf", json(std::move(branches))},
        {"unevaluatedItems", json(false)},
        {"$defs", json(std::move(defs))},
    });
}

json diff_report::to_json() const {
    json_array ds;
    for (const auto& d : disagreements)
        ds.emplace_back(json_object{
            {"instance", d.instance},
            {"original", json(d.original)},
            {"eliminated", json(d.eliminated)},
        });
    json_object o;
    o.emplace("schema", json(schema_id));
    o.emplace("total", json(static_cast<std::int64_t>(total)));
    o.emplace("agree", json(static_cast<std::int64_t>(agree)));
    o.emplace("disagree", json(static_cast<std::int64_t>(disagree)));
    o.emplace("disagreements", json(std::move(ds)));
    o.emplace("elapsed_ms", json(decimal::parse(std::to_string(elapsed_ms))));
    o.emplace("size_ratio", json(decimal::parse(std::to_string(size_ratio))));
    return json(std::move(o));
}

diff_report difftest(const std::string& id, const schema_document& original, const std::vector<json>& instances) {
    return difftest(id, original, elim_document(original), instances);
}

diff_report difftest(const std::string& id, const schema_document& original, const elim_result& eliminated,
                     const std::vector<json>& instances) {
    diff_report r;
    r.schema_id = id;
    r.elapsed_ms = eliminated.stats.elapsed_ms;
    r.size_ratio = eliminated.stats.input_bytes
                       ? static_cast<double>(eliminated.stats.output_bytes) / eliminated.stats.input_bytes
                       : 1.0;
    validator before(original);
    validator after(*eliminated.doc);
    for (const auto& j : instances) {
        bool a = before.validate(j).valid;
        bool b = after.validate(j).valid;
        ++r.total;
        if (a == b) {
            ++r.agree;
        } else {
            ++r.disagree;
            r.disagreements.push_back({j, a, b});
        }
    }
    return r;
}

std::vector<json> load_instance_dir(const std::string& dir) {
    std::vector<fs::path> files;
    if (fs::is_directory(dir))
        for (const auto& e : fs::directory_iterator(dir))
            if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<json> out;
    for (const auto& f : files) out.push_back(parse_json_file(f.string()));
    return out;
}

namespace {

std::vector<witness> load_witnesses(const fs::path& dir) {
    std::vector<fs::path> files;
    if (fs::is_directory(dir))
        for (const auto& e : fs::directory_iterator(dir))
            if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<witness> out;
    for (const auto& f : files) out.push_back({f.filename().string(), parse_json_file(f.string())});
    return out;
}

}  // namespace

fixture load_fixture(const std::string& dir) {
    fs::path p(dir);
    fixture f;
    f.name = p.filename().string();
    f.schema_json = parse_json_file((p / "schema.json").string());
    f.doc = std::make_shared<schema_document>(parse_schema(f.schema_json));
    f.valid = load_witnesses(p / "valid");
    f.invalid = load_witnesses(p / "invalid");
    return f;
}

std::vector<fixture> load_fixtures(const std::string& root) {
    std::vector<fs::path> dirs;
    for (const auto& e : fs::directory_iterator(root))
        if (e.is_directory() && fs::exists(e.path() / "schema.json")) dirs.push_back(e.path());
    std::sort(dirs.begin(), dirs.end());
    std::vector<fixture> out;
    for (const auto& d : dirs) out.push_back(load_fixture(d.string()));
    return out;
}

}  // namespace jsonelim
