#pragma once

#include "jsonelim/analysis.hpp"
#include "jsonelim/schema.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace jsonelim {

using branch_list = std::vector<schema_ptr>;

// The schema without its $anchor and $defs keywords, which are inert for
// validation and must not be copied into other branches.
schema_ptr strip_declarations(const schema_ptr& s);

// Conjunction of two branches: nested allOf arguments are spliced, true
// arguments and repeated arguments are dropped.
schema_ptr conjoin(const schema_ptr& a, const schema_ptr& b);

// Identity used for deduplication: allOf arguments are compared as a set.
std::string dedup_key(const schema_ptr& s);
branch_list dedup(const branch_list& branches);

// Evaluation normal form. The result of enf() is a single-keyword anyOf whose
// branches are statically characterized and cover-closed.
class enf_engine {
public:
    enf_engine(const schema_document& doc, analyzer& an) : doc_(doc), an_(an), depth_(doc) {}

    // Called for in-place references to schemas that still carry unevaluated*
    // keywords; must return an equivalent schema without them.
    std::function<schema_ptr(const schema_ptr&)> eliminate_target;

    // Checks that the in-place depth strictly decreases along the recursion.
    bool check_depth = false;

    schema_ptr enf(const schema_ptr& s) { return make_any_of(branches(s)); }
    branch_list branches(const schema_ptr& s);

    branch_list and_combine(const std::vector<branch_list>& lists);
    branch_list or_combine(const std::vector<branch_list>& lists);
    branch_list close(const branch_list& l1, const branch_list& l2);

    std::uint64_t calls() const { return calls_; }
    std::uint64_t max_depth() const { return max_depth_; }

private:
    branch_list split(const schema_ptr& s);
    branch_list expand(const keyword& k, const schema_ptr& s);

    const schema_document& doc_;
    analyzer& an_;
    depth_calculator depth_;
    std::map<const schema*, branch_list> ref_memo_;
    std::vector<std::uint64_t> depth_stack_;
    std::uint64_t calls_ = 0;
    std::uint64_t max_depth_ = 0;
};

}  // namespace jsonelim
