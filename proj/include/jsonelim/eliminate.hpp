#pragma once

#include "jsonelim/analysis.hpp"
#include "jsonelim/enf.hpp"
#include "jsonelim/schema.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>

namespace jsonelim {

bool has_unevaluated(const schema_ptr& s);        // at top level
bool contains_unevaluated(const schema_ptr& s);   // anywhere in the tree, ignoring references
bool contains_unevaluated(const schema_document& d);

// Hoists every non-top uneval-schema into $defs under a fresh name and
// replaces it by a reference. When the document has unevaluated keywords,
// anchored subschemas are hoisted too, so later copying cannot duplicate an
// anchor. Documents without unevaluated keywords come back unchanged.
schema_document unnest(const schema_document& d);

keyword p_props(const pattern_set& ps);
keyword pref_its(std::uint64_t h);

// Both take the ENF branch list of the schema being rewritten.
schema_ptr push_uneval_props(analyzer& an, const schema_ptr& su, const branch_list& enf);
schema_ptr push_uneval_items(analyzer& an, const schema_ptr& su, const branch_list& enf);

struct elim_stats {
    std::size_t uneval_schemas = 0;
    std::size_t enf_branches = 0;       // total over all eliminated schemas
    std::size_t max_enf_branches = 0;
    std::size_t input_bytes = 0;
    std::size_t output_bytes = 0;
    double elapsed_ms = 0;
};

// Rewrites the named schemas of an unnested document.
class eliminator {
public:
    explicit eliminator(const schema_document& unnested);

    // Elim of a named schema; $anchor and $defs on it are kept.
    schema_ptr elim_schema(const schema_ptr& s);
    // Elim without the declarations, as used for in-place references.
    schema_ptr elim_body(const schema_ptr& s);

    enf_engine& engine() { return engine_; }
    analyzer& analysis() { return an_; }
    const elim_stats& stats() const { return stats_; }

private:
    const schema_document& doc_;
    analyzer an_;
    enf_engine engine_;
    std::map<const schema*, schema_ptr> memo_;
    elim_stats stats_;
};

struct elim_result {
    std::shared_ptr<const schema_document> doc;
    elim_stats stats;
};

// Unnests, eliminates every named schema (the root included) and checks that
// no unevaluated keyword is left.
elim_result elim_document(const schema_document& d);

}  // namespace jsonelim
