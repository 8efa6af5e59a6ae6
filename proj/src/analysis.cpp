#include "jsonelim/analysis.hpp"

#include <algorithm>
#include <set>

namespace jsonelim {

// ---------------------------------------------------------------- pattern sets

pattern_set::pattern_set(std::vector<std::string> sources) : sources_(std::move(sources)) {
    std::sort(sources_.begin(), sources_.end());
    sources_.erase(std::unique(sources_.begin(), sources_.end()), sources_.end());
}

const std::string& pattern_set::dotstar() {
    static const std::string s = ".*";
    return s;
}

bool pattern_set::contains_source(const std::string& s) const {
    return std::binary_search(sources_.begin(), sources_.end(), s);
}

bool pattern_set::has_dotstar() const { return contains_source(dotstar()); }

bool pattern_set::matches(const std::string& name) const {
    for (const auto& s : sources_)
        if (pattern::compile(s).matches(name)) return true;
    return false;
}

pattern_set pattern_set::unite(const pattern_set& o) const {
    std::vector<std::string> out = sources_;
    out.insert(out.end(), o.sources_.begin(), o.sources_.end());
    return pattern_set(std::move(out));
}

pattern_set pattern_set::intersect(const pattern_set& o) const {
    std::vector<std::string> out;
    std::set_intersection(sources_.begin(), sources_.end(), o.sources_.begin(), o.sources_.end(), std::back_inserter(out));
    return pattern_set(std::move(out));
}

bool eq_patterns(const pattern_set& a, const pattern_set& b) {
    return a == b || (a.has_dotstar() && b.has_dotstar());
}

bool pattern_superset(const pattern_set& a, const pattern_set& b) {
    if (a.has_dotstar()) return true;
    return std::all_of(b.sources().begin(), b.sources().end(), [&](const std::string& s) { return a.contains_source(s); });
}

// ---------------------------------------------------------------- item pairs

namespace {

bool is_true(const schema_ptr& s) { return s->is_bool() && s->bool_value(); }
bool is_false(const schema_ptr& s) { return s->is_bool() && !s->bool_value(); }

std::vector<schema_ptr> sorted_unique(std::vector<schema_ptr> gs) {
    std::sort(gs.begin(), gs.end(), [](const schema_ptr& a, const schema_ptr& b) { return a->canonical() < b->canonical(); });
    gs.erase(std::unique(gs.begin(), gs.end(), [](const schema_ptr& a, const schema_ptr& b) {
                 return a->canonical() == b->canonical();
             }),
             gs.end());
    return gs;
}

}  // namespace

schema_ptr guard_any(std::vector<schema_ptr> gs) {
    std::vector<schema_ptr> keep;
    for (auto& g : gs) {
        if (is_true(g)) return g;
        if (!is_false(g)) keep.push_back(g);
    }
    keep = sorted_unique(std::move(keep));
    if (keep.empty()) return schema::boolean(false);
    if (keep.size() == 1) return keep[0];
    return make_any_of(std::move(keep));
}

schema_ptr guard_all(std::vector<schema_ptr> gs) {
    std::vector<schema_ptr> keep;
    for (auto& g : gs) {
        if (is_false(g)) return g;
        if (!is_true(g)) keep.push_back(g);
    }
    keep = sorted_unique(std::move(keep));
    if (keep.empty()) return schema::boolean(true);
    if (keep.size() == 1) return keep[0];
    return make_all_of(std::move(keep));
}

eval_pair eval_pair::make(std::optional<std::uint64_t> h, schema_ptr guard) {
    if (!h || is_true(guard)) return all();
    return eval_pair{h, std::move(guard)};
}

bool eval_pair::satisfied_by(std::size_t index0, const json& item, const validator& v) const {
    if (!h || index0 + 1 <= *h) return true;
    return v.validate(guard, item).valid;
}

std::string to_string(const eval_pair& p) {
    return "(" + (p.h ? std::to_string(*p.h) : std::string("inf")) + ", " + p.guard->canonical() + ")";
}

bool eq_pairs(const eval_pair& a, const eval_pair& b) {
    return a.h == b.h && a.guard->canonical() == b.guard->canonical();
}

bool pair_superset(const eval_pair& a, const eval_pair& b) {
    if (a.is_all()) return true;
    if (b.is_all()) return false;
    if (*a.h < *b.h) return false;
    return is_false(b.guard) || a.guard->canonical() == b.guard->canonical();
}

// ---------------------------------------------------------------- analyzer

const pattern_set& analyzer::ep(const schema_ptr& s, bool lower) {
    auto key = std::make_pair(s.get(), lower);
    auto it = ep_memo_.find(key);
    if (it != ep_memo_.end()) return it->second;
    pattern_set r;
    if (!s->is_bool())
        for (const auto& k : s->keywords()) r = r.unite(ep_keyword(k, lower));
    pinned_.push_back(s);
    return ep_memo_[key] = std::move(r);
}

pattern_set analyzer::ep_keyword(const keyword& k, bool lower) {
    switch (k.kind) {
        case kw::properties: {
            std::vector<std::string> out;
            for (const auto& m : k.members) out.push_back(pattern::exact(m.first).source);
            return pattern_set(std::move(out));
        }
        case kw::pattern_properties: {
            std::vector<std::string> out;
            for (const auto& m : k.members) out.push_back(m.first);
            return pattern_set(std::move(out));
        }
        case kw::additional_properties:
        case kw::unevaluated_properties: return pattern_set({pattern_set::dotstar()});
        case kw::ref: return ep(doc_.deref(k.text), lower);
        case kw::if_then_else: return ep(k.sub, lower);
        case kw::any_of:
        case kw::one_of: {
            if (k.list.empty()) return {};
            pattern_set r = ep(k.list[0], lower);
            for (std::size_t i = 1; i < k.list.size(); ++i)
                r = lower ? r.intersect(ep(k.list[i], lower)) : r.unite(ep(k.list[i], lower));
            return r;
        }
        case kw::all_of: {
            pattern_set r;
            for (const auto& s : k.list) r = r.unite(ep(s, lower));
            return r;
        }
        default: return {};
    }
}

namespace {

eval_pair pair_union(const std::vector<eval_pair>& ps) {
    std::uint64_t h = 0;
    std::vector<schema_ptr> gs;
    for (const auto& p : ps) {
        if (p.is_all()) return eval_pair::all();
        h = std::max(h, *p.h);
        gs.push_back(p.guard);
    }
    return eval_pair::make(h, guard_any(std::move(gs)));
}

eval_pair pair_intersection(const std::vector<eval_pair>& ps) {
    if (ps.empty()) return eval_pair::none();
    std::optional<std::uint64_t> h;  // infinity
    std::vector<schema_ptr> gs;
    for (const auto& p : ps) {
        if (p.h && (!h || *p.h < *h)) h = p.h;
        gs.push_back(p.guard);
    }
    return eval_pair::make(h, guard_all(std::move(gs)));
}

}  // namespace

const eval_pair& analyzer::ei(const schema_ptr& s, bool lower) {
    auto key = std::make_pair(s.get(), lower);
    auto it = ei_memo_.find(key);
    if (it != ei_memo_.end()) return it->second;
    std::vector<eval_pair> parts;
    if (!s->is_bool())
        for (const auto& k : s->keywords()) parts.push_back(ei_keyword(k, lower));
    pinned_.push_back(s);
    return ei_memo_[key] = pair_union(parts);
}

eval_pair analyzer::ei_keyword(const keyword& k, bool lower) {
    switch (k.kind) {
        case kw::prefix_items: return eval_pair::make(k.list.size(), schema::boolean(false));
        case kw::contains: return eval_pair::make(0, k.sub);
        case kw::items:
        case kw::unevaluated_items: return eval_pair::all();
        case kw::ref: return ei(doc_.deref(k.text), lower);
        case kw::if_then_else: return ei(k.sub, lower);
        case kw::any_of:
        case kw::one_of: {
            std::vector<eval_pair> ps;
            for (const auto& s : k.list) ps.push_back(ei(s, lower));
            return lower ? pair_intersection(ps) : pair_union(ps);
        }
        case kw::all_of: {
            std::vector<eval_pair> ps;
            for (const auto& s : k.list) ps.push_back(ei(s, lower));
            return pair_union(ps);
        }
        default: return eval_pair::none();
    }
}

std::optional<pattern_set> analyzer::ex_ep(const schema_ptr& s) {
    const auto& lo = min_ep(s);
    if (eq_patterns(lo, max_ep(s))) return lo;
    return std::nullopt;
}

std::optional<eval_pair> analyzer::ex_ei(const schema_ptr& s) {
    const auto& lo = min_ei(s);
    if (eq_pairs(lo, max_ei(s))) return lo;
    return std::nullopt;
}

bool analyzer::covers(const schema_ptr& s1, const schema_ptr& s2) {
    return pattern_superset(min_ep(s1), max_ep(s2)) && pair_superset(min_ei(s1), max_ei(s2));
}

}  // namespace jsonelim
