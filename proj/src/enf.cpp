#include "jsonelim/enf.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace jsonelim {

namespace {

bool is_single(const schema_ptr& s, kw k) {
    return !s->is_bool() && s->keywords().size() == 1 && s->keywords()[0].kind == k;
}

std::vector<schema_ptr> conjuncts(const schema_ptr& s) {
    if (is_single(s, kw::all_of)) return s->keywords()[0].list;
    return {s};
}

}  // namespace

schema_ptr strip_declarations(const schema_ptr& s) {
    if (!s->has(kw::anchor) && !s->has(kw::defs)) return s;
    std::vector<keyword> ks;
    for (const auto& k : s->keywords())
        if (k.kind != kw::anchor && k.kind != kw::defs) ks.push_back(k);
    return schema::object(std::move(ks));
}

schema_ptr conjoin(const schema_ptr& a, const schema_ptr& b) {
    std::vector<schema_ptr> args;
    std::set<std::string> seen;
    for (const auto& part : {a, b})
        for (const auto& c : conjuncts(part)) {
            if (c->is_bool() && c->bool_value()) continue;
            if (seen.insert(c->canonical()).second) args.push_back(c);
        }
    if (args.empty()) return schema::boolean(true);
    if (args.size() == 1) return args[0];
    return make_all_of(std::move(args));
}

std::string dedup_key(const schema_ptr& s) {
    if (!is_single(s, kw::all_of)) return s->canonical();
    std::set<std::string> parts;
    for (const auto& c : s->keywords()[0].list) parts.insert(c->canonical());
    std::string key = "allOf";
    for (const auto& p : parts) key += "\x1f" + p;
    return key;
}

branch_list dedup(const branch_list& branches) {
    branch_list out;
    std::set<std::string> seen;
    for (const auto& b : branches)
        if (seen.insert(dedup_key(b)).second) out.push_back(b);
    return out;
}

branch_list enf_engine::and_combine(const std::vector<branch_list>& lists) {
    branch_list acc{schema::boolean(true)};
    for (auto it = lists.rbegin(); it != lists.rend(); ++it) {
        branch_list next;
        for (const auto& s1 : *it)
            for (const auto& s2 : acc) next.push_back(conjoin(s1, s2));
        acc = dedup(next);
    }
    return acc;
}

branch_list enf_engine::close(const branch_list& l1, const branch_list& l2) {
    branch_list out;
    for (const auto& s1 : l1)
        for (const auto& s2 : l2) {
            if (an_.covers(s1, s2) || an_.covers(s2, s1)) continue;
            out.push_back(conjoin(s1, s2));
        }
    return dedup(out);
}

branch_list enf_engine::or_combine(const std::vector<branch_list>& lists) {
    branch_list acc;
    for (auto it = lists.rbegin(); it != lists.rend(); ++it) {
        branch_list next = *it;
        next.insert(next.end(), acc.begin(), acc.end());
        branch_list extra = close(*it, acc);
        next.insert(next.end(), extra.begin(), extra.end());
        acc = dedup(next);
    }
    return acc;
}

// Splits a multi-keyword schema into independently normalizable parts.
// Keywords whose meaning depends on a sibling stay together with it.
branch_list enf_engine::split(const schema_ptr& s) {
    std::vector<keyword> props, items, contains;
    std::vector<std::vector<keyword>> parts;
    bool has_ap = s->has(kw::additional_properties);
    bool has_items = s->has(kw::items);
    for (const auto& k : s->keywords()) {
        switch (k.kind) {
            case kw::unevaluated_properties:
            case kw::unevaluated_items:
                throw std::logic_error("normal form requested for a schema with unevaluated keywords");
            case kw::properties:
            case kw::pattern_properties:
            case kw::additional_properties:
                if (has_ap) props.push_back(k);
                else parts.push_back({k});
                break;
            case kw::prefix_items:
            case kw::items:
                if (has_items) items.push_back(k);
                else parts.push_back({k});
                break;
            case kw::contains:
            case kw::min_contains:
            case kw::max_contains: contains.push_back(k); break;
            default: parts.push_back({k});
        }
    }
    for (auto* g : {&props, &items, &contains})
        if (!g->empty()) parts.push_back(*g);
    if (parts.size() == 1 && parts[0].size() == 1) return branches(schema::object(parts[0]));

    std::vector<branch_list> lists;
    for (auto& p : parts) lists.push_back(branches(schema::object(std::move(p))));
    return and_combine(lists);
}

branch_list enf_engine::branches(const schema_ptr& input) {
    ++calls_;
    schema_ptr s = strip_declarations(input);
    if (an_.characterized(s)) {
        if (is_single(s, kw::any_of)) return s->keywords()[0].list;
        return {s};
    }
    if (s->keywords().size() != 1) return split(s);

    const keyword& k = s->keywords()[0];
    if (!check_depth) return expand(k, s);

    std::uint64_t d = depth_.of(s);
    if (!depth_stack_.empty() && d >= depth_stack_.back())
        throw std::logic_error("in-place depth did not decrease during normalization");
    depth_stack_.push_back(d);
    max_depth_ = std::max<std::uint64_t>(max_depth_, depth_stack_.size());
    branch_list r = expand(k, s);
    depth_stack_.pop_back();
    return r;
}

branch_list enf_engine::expand(const keyword& k, const schema_ptr& s) {
    switch (k.kind) {
        case kw::all_of: {
            std::vector<branch_list> lists;
            for (const auto& a : k.list) lists.push_back(branches(a));
            return and_combine(lists);
        }
        case kw::any_of: {
            std::vector<branch_list> lists;
            for (const auto& a : k.list) lists.push_back(branches(a));
            return or_combine(lists);
        }
        case kw::one_of: {
            // The i-th term holds exactly when only the i-th argument does,
            // so the terms are pairwise disjoint and concatenation suffices.
            branch_list out;
            for (const auto& term : boolean_one_of_terms(k.list)) {
                auto l = branches(term);
                out.insert(out.end(), l.begin(), l.end());
            }
            return dedup(out);
        }
        case kw::if_then_else: return branches(k.sub);
        case kw::ref: {
            schema_ptr target = doc_.deref(k.text);
            auto it = ref_memo_.find(target.get());
            if (it != ref_memo_.end()) return it->second;
            branch_list r;
            if (target->has(kw::unevaluated_properties) || target->has(kw::unevaluated_items)) {
                if (!eliminate_target) throw std::logic_error("reference to a schema with unevaluated keywords");
                auto saved = std::move(depth_stack_);
                depth_stack_.clear();
                r = branches(eliminate_target(target));
                depth_stack_ = std::move(saved);
            } else {
                r = branches(target);
            }
            return ref_memo_[target.get()] = r;
        }
        default:
            throw std::logic_error("keyword '" + k.name + "' is not statically characterized: " + s->canonical());
    }
}

}  // namespace jsonelim
