// jsonelim: validate Static Modern JSON Schema documents with annotations and
// rewrite unevaluatedProperties/unevaluatedItems away.
//
// Exit status: 0 success or valid, 1 invalid or disagreement, 2 usage or
// schema error.

#include "jsonelim/analysis.hpp"
#include "jsonelim/eliminate.hpp"
#include "jsonelim/enf.hpp"
#include "jsonelim/harness.hpp"
#include "jsonelim/validator.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace jsonelim;

namespace {

json number(double v) { return json(decimal::parse(std::to_string(v))); }
json count(std::size_t v) { return json(static_cast<std::int64_t>(v)); }

json patterns_json(const pattern_set& p) {
    json_array a;
    for (const auto& s : p.sources()) a.emplace_back(s);
    return json(std::move(a));
}

json pair_json(const eval_pair& p) {
    return json(json_object{
        {"h", p.h ? count(*p.h) : json("inf")},
        {"guard", serialize_schema(p.guard)},
    });
}

json stats_json(const elim_stats& s) {
    double ratio = s.input_bytes ? static_cast<double>(s.output_bytes) / s.input_bytes : 1.0;
    return json(json_object{
        {"input_bytes", count(s.input_bytes)},
        {"output_bytes", count(s.output_bytes)},
        {"size_ratio", number(ratio)},
        {"elapsed_ms", number(s.elapsed_ms)},
        {"enf_branches", count(s.enf_branches)},
        {"max_enf_branches", count(s.max_enf_branches)},
        {"uneval_schemas", count(s.uneval_schemas)},
    });
}

void print(const json& v) { std::cout << serialize_json(v, 2) << "\n"; }

schema_document load_schema(const std::string& path) { return parse_schema(parse_json_file(path)); }

int cmd_validate(const std::string& schema_path, const std::string& instance_path, const std::string& pointer) {
    auto doc = load_schema(schema_path);
    auto o = validator(doc).validate(doc.at_pointer(pointer), parse_json_file(instance_path));
    print(outcome_report(o));
    return o.valid ? 0 : 1;
}

int cmd_eliminate(const std::string& schema_path, const std::string& out, bool stats) {
    auto r = elim_document(load_schema(schema_path));
    json result = serialize_schema(*r.doc);
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write '" + out + "'");
        f << serialize_json(result, 2) << "\n";
        if (stats) print(stats_json(r.stats));
    } else if (stats) {
        print(json(json_object{{"schema", result}, {"stats", stats_json(r.stats)}}));
    } else {
        print(result);
    }
    return 0;
}

int cmd_enf(const std::string& schema_path, const std::string& pointer) {
    auto u = unnest(load_schema(schema_path));
    auto target = u.at_pointer(pointer);
    eliminator e(u);
    // Unevaluated keywords of the target itself are outside the normal form.
    std::vector<keyword> body;
    json_array excluded;
    if (!target->is_bool())
        for (const auto& k : target->keywords()) {
            if (k.kind == kw::unevaluated_properties || k.kind == kw::unevaluated_items) excluded.emplace_back(k.name);
            else body.push_back(k);
        }
    auto branches = e.engine().branches(target->is_bool() ? target : schema::object(std::move(body)));
    json_object o;
    o.emplace("enf", serialize_schema(make_any_of(branches)));
    o.emplace("branches", count(branches.size()));
    if (!excluded.empty()) o.emplace("excluded", json(std::move(excluded)));
    print(json(std::move(o)));
    return 0;
}

int cmd_analyze(const std::string& schema_path) {
    auto doc = load_schema(schema_path);
    analyzer an(doc);
    auto describe = [&](const schema_ptr& s) {
        json_object o;
        o.emplace("minEP", patterns_json(an.min_ep(s)));
        o.emplace("maxEP", patterns_json(an.max_ep(s)));
        o.emplace("minEI", pair_json(an.min_ei(s)));
        o.emplace("maxEI", pair_json(an.max_ei(s)));
        auto ep = an.ex_ep(s);
        auto ei = an.ex_ei(s);
        o.emplace("exEP", ep ? patterns_json(*ep) : json("undefined"));
        o.emplace("exEI", ei ? pair_json(*ei) : json("undefined"));
        return json(std::move(o));
    };
    json_object out;
    out.emplace("#", describe(doc.root()));
    for (const auto& [name, s] : doc.defs()) out.emplace("#/$defs/" + name, describe(s));
    print(json(std::move(out)));
    return 0;
}

int cmd_difftest(const std::string& schema_path, const std::string& dir, std::size_t budget) {
    auto doc = load_schema(schema_path);
    std::vector<json> instances;
    if (!dir.empty()) instances = load_instance_dir(dir);
    else instances = enumerate_instances(relevant_universe(doc), budget);
    auto r = difftest(schema_path, doc, instances);
    if (r.total == 0) std::cerr << "jsonelim: warning: no instances\n";
    print(r.to_json());
    return r.disagree == 0 ? 0 : 1;
}

int cmd_gen_family(const std::string& kind, std::size_t n) {
    if (n < 1) throw CLI::ValidationError("--n", "must be at least 1");
    print(kind == "sn" ? gen_family_sn(n) : gen_family_san(n));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Validate and rewrite JSON Schema documents that use unevaluated* keywords"};
    app.require_subcommand(1);

    std::string schema_path, instance_path, pointer, out, dir, kind = "sn";
    bool stats = false;
    std::size_t budget = 200000, n = 1;

    auto* validate = app.add_subcommand("validate", "Validate an instance and report its annotation");
    validate->add_option("--schema", schema_path, "Schema file")->required()->check(CLI::ExistingFile);
    validate->add_option("--instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
    validate->add_option("--pointer", pointer, "Validate against /$defs/<name> instead of the root");

    auto* eliminate = app.add_subcommand("eliminate", "Rewrite the schema without unevaluated* keywords");
    eliminate->add_option("--schema", schema_path, "Schema file")->required()->check(CLI::ExistingFile);
    eliminate->add_option("-o,--output", out, "Write the rewritten schema here");
    eliminate->add_flag("--stats", stats, "Report size and timing");

    auto* enf = app.add_subcommand("enf", "Print the evaluation normal form of a schema");
    enf->add_option("--schema", schema_path, "Schema file")->required()->check(CLI::ExistingFile);
    enf->add_option("--pointer", pointer, "Normalize /$defs/<name> instead of the root");

    auto* analyze = app.add_subcommand("analyze", "Print evaluated-property and evaluated-item bounds");
    analyze->add_option("--schema", schema_path, "Schema file")->required()->check(CLI::ExistingFile);

    auto* diff = app.add_subcommand("difftest", "Compare validation before and after elimination");
    diff->add_option("--schema", schema_path, "Schema file")->required()->check(CLI::ExistingFile);
    diff->add_option("--instances", dir, "Directory of instance files (default: enumerate)")->check(CLI::ExistingDirectory);
    diff->add_option("--budget", budget, "Instance budget for enumeration");

    auto* gen = app.add_subcommand("gen-family", "Print an adversarial schema family member");
    gen->add_option("--kind", kind, "sn (objects) or san (arrays)")->check(CLI::IsMember({"sn", "san"}));
    gen->add_option("--n", n, "Family index")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*validate) return cmd_validate(schema_path, instance_path, pointer);
        if (*eliminate) return cmd_eliminate(schema_path, out, stats);
        if (*enf) return cmd_enf(schema_path, pointer);
        if (*analyze) return cmd_analyze(schema_path);
        if (*diff) return cmd_difftest(schema_path, dir, budget);
        if (*gen) return cmd_gen_family(kind, n);
    } catch (const CLI::Error& e) {
        std::cerr << "jsonelim: error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "jsonelim: error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
