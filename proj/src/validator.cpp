#include "jsonelim/validator.hpp"

namespace jsonelim {

namespace {

std::size_t utf8_length(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

bool type_matches(const std::string& t, const json& j) {
    switch (j.type()) {
        case json::kind::null: return t == "null";
        case json::kind::boolean: return t == "boolean";
        case json::kind::string: return t == "string";
        case json::kind::array: return t == "array";
        case json::kind::object: return t == "object";
        case json::kind::number: return t == "number" || (t == "integer" && j.as_number().is_integer());
    }
    return false;
}

outcome pass() { return outcome{}; }
outcome result(bool v) { return outcome{v, {}}; }

}  // namespace

outcome validate(const schema_document& doc, const schema_ptr& s, const json& instance) {
    return validator(doc).validate(s, instance);
}

outcome validator::validate(const schema_ptr& s, const json& j) const {
    if (s->is_bool()) return result(s->bool_value());
    outcome o = validate_keyword_list(s->keywords(), j);
    if (!o.valid) o.ann = {};
    return o;
}

outcome validator::validate_keyword_list(const std::vector<keyword>& ks, const json& j) const {
    outcome acc;
    for (const auto& k : ks) {
        switch (k.kind) {
            case kw::additional_properties: {
                if (!j.is_object()) break;
                std::vector<const pattern*> known;
                std::set<std::string> names;
                for (const auto& p : ks) {
                    if (p.kind == kw::properties)
                        for (const auto& m : p.members) names.insert(m.first);
                    if (p.kind == kw::pattern_properties)
                        for (const auto& pp : p.member_patterns) known.push_back(&pp);
                }
                for (const auto& [name, value] : j.as_object()) {
                    acc.ann.props.insert(name);
                    if (names.count(name)) continue;
                    bool matched = false;
                    for (const auto* pp : known) matched = matched || pp->matches(name);
                    if (!matched && !validate(k.sub, value).valid) acc.valid = false;
                }
                break;
            }
            case kw::items: {
                if (!j.is_array()) break;
                std::size_t prefix = 0;
                for (const auto& p : ks)
                    if (p.kind == kw::prefix_items) prefix = p.list.size();
                const auto& a = j.as_array();
                for (std::size_t i = 0; i < a.size(); ++i) {
                    acc.ann.items.insert(i);
                    if (i >= prefix && !validate(k.sub, a[i]).valid) acc.valid = false;
                }
                break;
            }
            case kw::unevaluated_properties: {
                if (!j.is_object()) break;
                for (const auto& [name, value] : j.as_object()) {
                    if (!acc.ann.props.count(name) && !validate(k.sub, value).valid) acc.valid = false;
                }
                for (const auto& m : j.as_object()) acc.ann.props.insert(m.first);
                break;
            }
            case kw::unevaluated_items: {
                if (!j.is_array()) break;
                const auto& a = j.as_array();
                for (std::size_t i = 0; i < a.size(); ++i)
                    if (!acc.ann.items.count(i) && !validate(k.sub, a[i]).valid) acc.valid = false;
                for (std::size_t i = 0; i < a.size(); ++i) acc.ann.items.insert(i);
                break;
            }
            default: {
                outcome o = validate_keyword(k, j);
                acc.valid = acc.valid && o.valid;
                acc.ann.merge(o.ann);
            }
        }
    }
    return acc;
}

outcome validator::validate_keyword(const keyword& k, const json& j) const {
    switch (k.kind) {
        case kw::minimum:
            if (!j.is_number()) return pass();
            return result(j.as_number().compare(k.number) >= 0);
        case kw::maximum:
            if (!j.is_number()) return pass();
            return result(j.as_number().compare(k.number) <= 0);
        case kw::multiple_of:
            if (!j.is_number()) return pass();
            return result(j.as_number().is_multiple_of(k.number));
        case kw::pattern:
            if (!j.is_string()) return pass();
            return result(k.regex->matches(j.as_string()));
        case kw::min_length:
            if (!j.is_string()) return pass();
            return result(utf8_length(j.as_string()) >= k.count);
        case kw::max_length:
            if (!j.is_string()) return pass();
            return result(utf8_length(j.as_string()) <= k.count);
        case kw::const_: return result(json_equal(j, k.value));
        case kw::enum_: {
            for (const auto& v : k.value.as_array())
                if (json_equal(j, v)) return pass();
            return result(false);
        }
        case kw::type: {
            for (const auto& t : k.names)
                if (type_matches(t, j)) return pass();
            return result(false);
        }
        case kw::any_of:
        case kw::all_of:
        case kw::one_of: {
            // Every branch runs: annotations are collected from all of them.
            outcome o;
            std::size_t ok = 0;
            for (const auto& s : k.list) {
                outcome b = validate(s, j);
                ok += b.valid;
                o.ann.merge(b.ann);
            }
            if (k.kind == kw::any_of) o.valid = ok > 0;
            else if (k.kind == kw::all_of) o.valid = ok == k.list.size();
            else o.valid = ok == 1;
            return o;
        }
        case kw::not_: {
            outcome b = validate(k.sub, j);
            b.valid = !b.valid;
            return b;
        }
        case kw::if_then_else: {
            outcome c = validate(k.list[0], j);
            const schema_ptr& branch = c.valid ? k.list[1] : k.list[2];
            if (!branch) return c.valid ? c : pass();
            outcome b = validate(branch, j);
            if (c.valid) b.ann.merge(c.ann);
            return b;
        }
        case kw::ref: return validate(doc_.deref(k.text), j);
        case kw::properties: {
            if (!j.is_object()) return pass();
            outcome o;
            for (const auto& [name, s] : k.members) {
                const json* v = j.find(name);
                if (!v) continue;
                o.ann.props.insert(name);
                if (!validate(s, *v).valid) o.valid = false;
            }
            return o;
        }
        case kw::pattern_properties: {
            if (!j.is_object()) return pass();
            outcome o;
            for (const auto& [name, value] : j.as_object()) {
                for (std::size_t i = 0; i < k.members.size(); ++i) {
                    if (!k.member_patterns[i].matches(name)) continue;
                    o.ann.props.insert(name);
                    if (!validate(k.members[i].second, value).valid) o.valid = false;
                }
            }
            return o;
        }
        case kw::required: {
            if (!j.is_object()) return pass();
            for (const auto& n : k.names)
                if (!j.find(n)) return result(false);
            return pass();
        }
        case kw::dependent_required: {
            if (!j.is_object()) return pass();
            for (const auto& [trigger, deps] : k.value.as_object()) {
                if (!j.find(trigger)) continue;
                for (const auto& d : deps.as_array())
                    if (!j.find(d.as_string())) return result(false);
            }
            return pass();
        }
        case kw::min_properties:
            if (!j.is_object()) return pass();
            return result(j.as_object().size() >= k.count);
        case kw::max_properties:
            if (!j.is_object()) return pass();
            return result(j.as_object().size() <= k.count);
        case kw::property_names: {
            if (!j.is_object()) return pass();
            for (const auto& m : j.as_object())
                if (!validate(k.sub, json(m.first)).valid) return result(false);
            return pass();
        }
        case kw::prefix_items: {
            if (!j.is_array()) return pass();
            outcome o;
            const auto& a = j.as_array();
            for (std::size_t i = 0; i < a.size() && i < k.list.size(); ++i) {
                o.ann.items.insert(i);
                if (!validate(k.list[i], a[i]).valid) o.valid = false;
            }
            return o;
        }
        case kw::contains: {
            if (!j.is_array()) return pass();
            outcome o;
            const auto& a = j.as_array();
            for (std::size_t i = 0; i < a.size(); ++i)
                if (validate(k.sub, a[i]).valid) o.ann.items.insert(i);
            std::size_t n = o.ann.items.size();
            o.valid = n >= k.count && (!k.bound || n <= *k.bound);
            return o;
        }
        case kw::min_items:
            if (!j.is_array()) return pass();
            return result(j.as_array().size() >= k.count);
        case kw::max_items:
            if (!j.is_array()) return pass();
            return result(j.as_array().size() <= k.count);
        case kw::unique_items: {
            if (!j.is_array() || !k.flag) return pass();
            const auto& a = j.as_array();
            for (std::size_t x = 0; x < a.size(); ++x)
                for (std::size_t y = x + 1; y < a.size(); ++y)
                    if (json_equal(a[x], a[y])) return result(false);
            return pass();
        }
        case kw::min_contains:
        case kw::max_contains:
        case kw::defs:
        case kw::anchor:
        case kw::unknown: return pass();
        case kw::additional_properties:
        case kw::items:
        case kw::unevaluated_properties:
        case kw::unevaluated_items:
            // Dependent keywords need their siblings.
            return validate_keyword_list({k}, j);
    }
    return pass();
}

json outcome_report(const outcome& o) {
    json_array props(o.ann.props.begin(), o.ann.props.end());
    json_array items;
    for (auto i : o.ann.items) items.push_back(json(static_cast<std::int64_t>(i)));
    json_object r;
    r.emplace("valid", json(o.valid));
    r.emplace("evaluatedProperties", json(std::move(props)));
    r.emplace("evaluatedItems", json(std::move(items)));
    return json(std::move(r));
}

}  // namespace jsonelim
