#include "jsonelim/eliminate.hpp"

#include <chrono>
#include <functional>
#include <set>
#include <stdexcept>

namespace jsonelim {

bool has_unevaluated(const schema_ptr& s) {
    return s->has(kw::unevaluated_properties) || s->has(kw::unevaluated_items);
}

bool contains_unevaluated(const schema_ptr& s) {
    if (s->is_bool()) return false;
    if (has_unevaluated(s)) return true;
    for (const auto& k : s->keywords())
        for (const auto& c : subschemas(k))
            if (contains_unevaluated(c)) return true;
    return false;
}

bool contains_unevaluated(const schema_document& d) { return contains_unevaluated(d.root()); }

schema_document unnest(const schema_document& d) {
    if (!contains_unevaluated(d)) return d;

    std::set<std::string> taken;
    for (const auto& [name, s] : d.defs()) taken.insert(name);
    std::vector<std::pair<std::string, schema_ptr>> hoisted;
    std::map<const schema*, schema_ptr> memo;
    std::size_t counter = 0;

    std::function<schema_ptr(const schema_ptr&, bool)> rewrite = [&](const schema_ptr& s, bool top) -> schema_ptr {
        if (s->is_bool()) return s;
        if (!top) {
            auto it = memo.find(s.get());
            if (it != memo.end()) return it->second;
        }
        std::vector<keyword> ks;
        for (const auto& k : s->keywords()) {
            if (k.kind == kw::defs) continue;  // only the root has one; handled by the caller
            ks.push_back(map_subschemas(k, [&](const schema_ptr& c) { return rewrite(c, false); }));
        }
        schema_ptr node = schema::object(std::move(ks));
        if (top || (!has_unevaluated(node) && !node->has(kw::anchor))) return memo[s.get()] = node;

        std::string name;
        do {
            name = (has_unevaluated(node) ? "__uneval_" : "__anchor_") + std::to_string(counter++);
        } while (!taken.insert(name).second);
        hoisted.emplace_back(name, node);
        return memo[s.get()] = make_ref("#/$defs/" + name);
    };

    std::vector<std::pair<std::string, schema_ptr>> defs;
    for (const auto& [name, s] : d.defs()) defs.emplace_back(name, rewrite(s, true));
    schema_ptr body = rewrite(d.root(), true);
    defs.insert(defs.end(), hoisted.begin(), hoisted.end());

    std::vector<keyword> ks = body->keywords();
    if (!defs.empty()) {
        keyword k = make_keyword(kw::defs);
        k.members = std::move(defs);
        ks.push_back(std::move(k));
    }
    return schema_document(schema::object(std::move(ks)));
}

keyword p_props(const pattern_set& ps) {
    keyword k = make_keyword(kw::pattern_properties);
    for (const auto& src : ps.sources()) {
        k.members.emplace_back(src, schema::object({}));
        k.member_patterns.push_back(pattern::compile(src));
    }
    return k;
}

keyword pref_its(std::uint64_t h) {
    keyword k = make_keyword(kw::prefix_items);
    k.list.assign(h, schema::boolean(true));
    return k;
}

schema_ptr push_uneval_props(analyzer& an, const schema_ptr& su, const branch_list& enf) {
    branch_list out;
    for (const auto& si : enf) {
        auto ex = an.ex_ep(si);
        if (!ex) throw std::logic_error("branch is not statically characterized: " + si->canonical());
        keyword ap = make_keyword(kw::additional_properties);
        ap.sub = su;
        out.push_back(make_all_of({si, schema::object({p_props(*ex), std::move(ap)})}));
    }
    return make_any_of(std::move(out));
}

schema_ptr push_uneval_items(analyzer& an, const schema_ptr& su, const branch_list& enf) {
    branch_list out;
    for (const auto& si : enf) {
        auto ex = an.ex_ei(si);
        if (!ex) throw std::logic_error("branch is not statically characterized: " + si->canonical());
        if (ex->is_all()) {  // normalized: also covers a true guard
            out.push_back(si);
            continue;
        }
        keyword it = make_keyword(kw::items);
        it.sub = make_any_of({su, ex->guard});
        out.push_back(make_all_of({si, schema::object({pref_its(*ex->h), std::move(it)})}));
    }
    return make_any_of(std::move(out));
}

eliminator::eliminator(const schema_document& unnested) : doc_(unnested), an_(unnested), engine_(unnested, an_) {
    engine_.eliminate_target = [this](const schema_ptr& s) { return elim_body(s); };
}

schema_ptr eliminator::elim_body(const schema_ptr& s) {
    if (!has_unevaluated(s)) return strip_declarations(s);
    auto it = memo_.find(s.get());
    if (it != memo_.end()) return it->second;

    std::vector<keyword> body;
    const keyword* up = nullptr;
    const keyword* ui = nullptr;
    for (const auto& k : s->keywords()) {
        if (k.kind == kw::unevaluated_properties) up = &k;
        else if (k.kind == kw::unevaluated_items) ui = &k;
        else if (k.kind != kw::anchor && k.kind != kw::defs) body.push_back(k);
    }
    branch_list e = engine_.branches(schema::object(std::move(body)));
    ++stats_.uneval_schemas;
    stats_.enf_branches += e.size();
    stats_.max_enf_branches = std::max(stats_.max_enf_branches, e.size());

    schema_ptr r;
    if (up && ui) r = make_all_of({push_uneval_props(an_, up->sub, e), push_uneval_items(an_, ui->sub, e)});
    else if (up) r = push_uneval_props(an_, up->sub, e);
    else r = push_uneval_items(an_, ui->sub, e);
    return memo_[s.get()] = r;
}

schema_ptr eliminator::elim_schema(const schema_ptr& s) {
    if (!has_unevaluated(s)) return s;
    std::vector<keyword> ks = elim_body(s)->keywords();
    for (const auto& k : s->keywords())
        if (k.kind == kw::anchor || k.kind == kw::defs) ks.push_back(k);
    return schema::object(std::move(ks));
}

elim_result elim_document(const schema_document& d) {
    auto t0 = std::chrono::steady_clock::now();
    elim_result res;
    res.stats.input_bytes = serialize_json(serialize_schema(d)).size();

    if (!contains_unevaluated(d)) {
        res.doc = std::make_shared<schema_document>(d);
    } else {
        schema_document u = unnest(d);
        eliminator e(u);
        std::vector<std::pair<std::string, schema_ptr>> defs;
        for (const auto& [name, s] : u.defs()) defs.emplace_back(name, e.elim_schema(s));

        std::vector<keyword> ks = e.elim_body(u.root())->keywords();
        if (const keyword* a = u.root()->find(kw::anchor)) ks.push_back(*a);
        if (!defs.empty()) {
            keyword k = make_keyword(kw::defs);
            k.members = std::move(defs);
            ks.push_back(std::move(k));
        }
        res.doc = std::make_shared<schema_document>(schema::object(std::move(ks)));
        res.stats.uneval_schemas = e.stats().uneval_schemas;
        res.stats.enf_branches = e.stats().enf_branches;
        res.stats.max_enf_branches = e.stats().max_enf_branches;
        if (contains_unevaluated(*res.doc)) throw std::logic_error("unevaluated keyword left after elimination");
    }

    res.stats.output_bytes = serialize_json(serialize_schema(*res.doc)).size();
    res.stats.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace jsonelim
