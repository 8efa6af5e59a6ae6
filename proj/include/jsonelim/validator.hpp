#pragma once

#include "jsonelim/json.hpp"
#include "jsonelim/schema.hpp"

#include <cstddef>
#include <set>
#include <string>

namespace jsonelim {

// Evaluated property names and item positions (0-based).
struct annotation {
    std::set<std::string> props;
    std::set<std::size_t> items;

    void merge(const annotation& o) {
        props.insert(o.props.begin(), o.props.end());
        items.insert(o.items.begin(), o.items.end());
    }
    bool empty() const { return props.empty() && items.empty(); }
};

struct outcome {
    bool valid = true;
    annotation ann;
};

// Annotation-aware validation against a closed, guarded document. A schema
// that fails returns an empty annotation; a keyword list that fails keeps
// whatever its keywords produced.
class validator {
public:
    explicit validator(const schema_document& doc) : doc_(doc) {}

    outcome validate(const json& instance) const { return validate(doc_.root(), instance); }
    outcome validate(const schema_ptr& s, const json& instance) const;
    outcome validate_keyword_list(const std::vector<keyword>& keywords, const json& instance) const;
    outcome validate_keyword(const keyword& k, const json& instance) const;

private:
    const schema_document& doc_;
};

outcome validate(const schema_document& doc, const schema_ptr& s, const json& instance);

// {"valid": ..., "evaluatedProperties": [...], "evaluatedItems": [...]}
json outcome_report(const outcome& o);

}  // namespace jsonelim
