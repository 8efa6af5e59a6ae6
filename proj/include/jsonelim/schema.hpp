#pragma once

#include "jsonelim/json.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jsonelim {

class schema_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Compiled unanchored pattern with its source text.
struct pattern {
    std::string source;
    std::shared_ptr<const std::regex> re;

    static pattern compile(const std::string& source);  // throws schema_error
    static pattern exact(const std::string& name);      // ^name$ with escaping
    bool matches(const std::string& s) const { return std::regex_search(s, *re); }
};

// Keyword kinds. The order of the groups follows the grammar: in-place and
// structural keywords (IK), then the static dependents (SDK), then the
// annotation dependents (ADK).
enum class kw {
    // IK
    minimum, maximum, pattern, const_, type, any_of, all_of, one_of, not_,
    pattern_properties, properties, required, min_properties, max_properties,
    property_names, prefix_items, contains, min_contains, max_contains,
    min_items, max_items, unique_items, ref, defs, anchor,
    // Classical terminals and if/then/else, accepted beyond the core grammar.
    min_length, max_length, multiple_of, enum_, dependent_required, if_then_else,
    unknown,
    // SDK
    additional_properties, items,
    // ADK
    unevaluated_properties, unevaluated_items,
};

enum class kw_group { ik, sdk, adk };
kw_group group_of(kw k);
const char* keyword_name(kw k);

class schema;
using schema_ptr = std::shared_ptr<const schema>;

struct keyword {
    kw kind = kw::unknown;
    std::string name;                                    // member name as written
    decimal number;                                      // minimum, maximum, multipleOf
    std::uint64_t count = 0;                             // counts; minContains for contains
    std::optional<std::uint64_t> bound;                  // maxContains (nullopt is infinity)
    bool flag = false;                                   // uniqueItems
    std::string text;                                    // ref, anchor
    std::optional<pattern> regex;                        // pattern
    json value;                                          // const, enum, type, unknown, dependentRequired
    std::vector<std::string> names;                      // required, type names
    std::vector<schema_ptr> list;                        // anyOf/allOf/oneOf/prefixItems; if/then/else
    std::vector<std::pair<std::string, schema_ptr>> members;  // properties, patternProperties, $defs
    std::vector<pattern> member_patterns;                // compiled patternProperties keys
    schema_ptr sub;                                      // single schema argument
};

keyword make_keyword(kw kind);

// Immutable schema node: a boolean schema or an ordered keyword list.
class schema {
public:
    static schema_ptr boolean(bool b);
    // Keywords are sorted into grammar order; duplicate names are rejected and
    // the minContains/maxContains defaults are inserted next to contains.
    static schema_ptr object(std::vector<keyword> keywords);

    bool is_bool() const { return is_bool_; }
    bool bool_value() const { return value_; }
    const std::vector<keyword>& keywords() const { return keywords_; }
    const keyword* find(kw k) const;
    bool has(kw k) const { return find(k) != nullptr; }

    // Compact serialization, used as the structural identity of a schema.
    const std::string& canonical() const;

private:
    schema() = default;
    bool is_bool_ = false;
    bool value_ = false;
    std::vector<keyword> keywords_;
    mutable std::once_flag canon_once_;
    mutable std::string canon_;
};

// Convenience constructors used by rewriting passes.
schema_ptr make_all_of(std::vector<schema_ptr> args);
schema_ptr make_any_of(std::vector<schema_ptr> args);
schema_ptr make_not(schema_ptr s);
schema_ptr make_ref(const std::string& uri);

// A closed document: root schema plus the definitions it indexes.
class schema_document {
public:
    // Builds the indexes and checks closedness and guarded recursion.
    explicit schema_document(schema_ptr root);

    const schema_ptr& root() const { return root_; }
    const std::vector<std::pair<std::string, schema_ptr>>& defs() const { return defs_; }
    const std::map<std::string, schema_ptr>& anchors() const { return anchors_; }

    // Resolves `#`, `#/$defs/name` or `#anchor`; throws schema_error.
    schema_ptr deref(const std::string& uri) const;
    schema_ptr def(const std::string& name) const;

    // Schema at a JSON pointer made of `/$defs/name` steps (or empty for root).
    schema_ptr at_pointer(const std::string& pointer) const;

private:
    schema_ptr root_;
    std::vector<std::pair<std::string, schema_ptr>> defs_;
    std::map<std::string, schema_ptr> anchors_;
};

schema_document parse_schema(const json& v);
schema_ptr parse_subschema(const json& v);  // no document checks
json serialize_schema(const schema_ptr& s);
json serialize_schema(const schema_document& d);

// Acyclicity of the graph of in-place arguments and reference targets.
// On failure `cycle` lists a path of schema snippets.
bool check_guarded(const schema_document& d, std::string* cycle = nullptr);

std::vector<schema_ptr> boolean_one_of_terms(const std::vector<schema_ptr>& args);
schema_ptr boolean_one_of(const std::vector<schema_ptr>& args);

// if/then/else as anyOf[allOf[if, then], allOf[not if, else]].
schema_ptr if_then_else_expansion(const keyword& k);

class depth_calculator {
public:
    explicit depth_calculator(const schema_document& d) : doc_(d) {}
    std::uint64_t of(const schema_ptr& s);
    std::uint64_t of(const keyword& k);

private:
    const schema_document& doc_;
    std::map<const schema*, std::uint64_t> memo_;
    std::vector<schema_ptr> pinned_;
};

std::uint64_t in_place_depth(const schema_document& d, const schema_ptr& s);

// Every schema argument of a keyword, in order.
std::vector<schema_ptr> subschemas(const keyword& k);
bool is_in_place(kw k);

// Rebuilds a keyword with each schema argument replaced by f(argument).
template <class F>
keyword map_subschemas(const keyword& k, F&& f) {
    keyword out = k;
    for (auto& s : out.list)
        if (s) s = f(s);
    for (auto& m : out.members) m.second = f(m.second);
    if (out.kind == kw::if_then_else) out.sub = nullptr;  // rebuilt by schema::object
    else if (out.sub) out.sub = f(out.sub);
    return out;
}

}  // namespace jsonelim
