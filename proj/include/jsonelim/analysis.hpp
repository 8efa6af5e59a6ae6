#pragma once

#include "jsonelim/schema.hpp"
#include "jsonelim/validator.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace jsonelim {

// Finite set of unanchored patterns; a name is in the set when it matches
// some member.
class pattern_set {
public:
    pattern_set() = default;
    explicit pattern_set(std::vector<std::string> sources);

    static const std::string& dotstar();

    const std::vector<std::string>& sources() const { return sources_; }
    bool empty() const { return sources_.empty(); }
    bool has_dotstar() const;
    bool contains_source(const std::string& s) const;
    bool matches(const std::string& name) const;

    pattern_set unite(const pattern_set& o) const;
    pattern_set intersect(const pattern_set& o) const;  // syntactic

    friend bool operator==(const pattern_set& a, const pattern_set& b) { return a.sources_ == b.sources_; }

private:
    std::vector<std::string> sources_;  // sorted, unique
};

// Item bound (h, guard): the item at 1-based position i is in the bound when
// i <= h or the item satisfies guard. h = nullopt stands for infinity.
// Normalized so that an infinite h always carries guard true and vice versa.
struct eval_pair {
    std::optional<std::uint64_t> h = 0;
    schema_ptr guard = schema::boolean(false);

    static eval_pair none() { return {}; }
    static eval_pair all() { return {std::nullopt, schema::boolean(true)}; }
    static eval_pair make(std::optional<std::uint64_t> h, schema_ptr guard);

    bool is_all() const { return !h; }
    bool satisfied_by(std::size_t index0, const json& item, const validator& v) const;
};

std::string to_string(const eval_pair& p);

// Guard combinators with the obvious boolean simplifications.
schema_ptr guard_any(std::vector<schema_ptr> gs);
schema_ptr guard_all(std::vector<schema_ptr> gs);

// Static characterization of evaluated properties and items, with memo
// tables keyed by node identity.
class analyzer {
public:
    explicit analyzer(const schema_document& doc) : doc_(doc) {}

    const schema_document& document() const { return doc_; }

    const pattern_set& min_ep(const schema_ptr& s) { return ep(s, true); }
    const pattern_set& max_ep(const schema_ptr& s) { return ep(s, false); }
    const eval_pair& min_ei(const schema_ptr& s) { return ei(s, true); }
    const eval_pair& max_ei(const schema_ptr& s) { return ei(s, false); }

    std::optional<pattern_set> ex_ep(const schema_ptr& s);
    std::optional<eval_pair> ex_ei(const schema_ptr& s);
    bool characterized(const schema_ptr& s) { return ex_ep(s) && ex_ei(s); }

    // True when s1 provably covers the pair (s1, s2) on both properties and
    // items. False means "not proven".
    bool covers(const schema_ptr& s1, const schema_ptr& s2);

private:
    const pattern_set& ep(const schema_ptr& s, bool lower);
    const eval_pair& ei(const schema_ptr& s, bool lower);
    pattern_set ep_keyword(const keyword& k, bool lower);
    eval_pair ei_keyword(const keyword& k, bool lower);

    const schema_document& doc_;
    std::map<std::pair<const schema*, bool>, pattern_set> ep_memo_;
    std::map<std::pair<const schema*, bool>, eval_pair> ei_memo_;
    std::vector<schema_ptr> pinned_;
};

bool eq_patterns(const pattern_set& a, const pattern_set& b);
bool eq_pairs(const eval_pair& a, const eval_pair& b);

// Sufficient conditions for b's language being included in a's.
bool pattern_superset(const pattern_set& a, const pattern_set& b);
bool pair_superset(const eval_pair& a, const eval_pair& b);

}  // namespace jsonelim
