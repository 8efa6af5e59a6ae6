#include "jsonelim/schema.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

namespace jsonelim {

// ---------------------------------------------------------------- patterns

namespace {

std::mutex regex_cache_mutex;
std::unordered_map<std::string, std::shared_ptr<const std::regex>> regex_cache;

}  // namespace

pattern pattern::compile(const std::string& source) {
    std::lock_guard<std::mutex> lock(regex_cache_mutex);
    auto it = regex_cache.find(source);
    if (it != regex_cache.end()) return pattern{source, it->second};
    std::shared_ptr<const std::regex> re;
    try {
        re = std::make_shared<const std::regex>(source, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        throw schema_error("invalid regular expression '" + source + "': " + e.what());
    }
    regex_cache.emplace(source, re);
    return pattern{source, re};
}

pattern pattern::exact(const std::string& name) {
    std::string src = "^";
    for (char c : name) {
        if (std::string_view("\\^$.|?*+()[]{}/").find(c) != std::string_view::npos) src += '\\';
        src += c;
    }
    src += '$';
    return compile(src);
}

// ---------------------------------------------------------------- keywords

namespace {

struct kw_info {
    kw kind;
    const char* name;
};

constexpr kw_info kw_table[] = {
    {kw::minimum, "minimum"},
    {kw::maximum, "maximum"},
    {kw::pattern, "pattern"},
    {kw::const_, "const"},
    {kw::type, "type"},
    {kw::any_of, "anyOf"},
    {kw::all_of, "allOf"},
    {kw::one_of, "oneOf"},
    {kw::not_, "not"},
    {kw::pattern_properties, "patternProperties"},
    {kw::properties, "properties"},
    {kw::required, "required"},
    {kw::min_properties, "minProperties"},
    {kw::max_properties, "maxProperties"},
    {kw::property_names, "propertyNames"},
    {kw::prefix_items, "prefixItems"},
    {kw::contains, "contains"},
    {kw::min_contains, "minContains"},
    {kw::max_contains, "maxContains"},
    {kw::min_items, "minItems"},
    {kw::max_items, "maxItems"},
    {kw::unique_items, "uniqueItems"},
    {kw::ref, "$ref"},
    {kw::defs, "$defs"},
    {kw::anchor, "$anchor"},
    {kw::min_length, "minLength"},
    {kw::max_length, "maxLength"},
    {kw::multiple_of, "multipleOf"},
    {kw::enum_, "enum"},
    {kw::dependent_required, "dependentRequired"},
    {kw::if_then_else, "if"},
    {kw::unknown, ""},
    {kw::additional_properties, "additionalProperties"},
    {kw::items, "items"},
    {kw::unevaluated_properties, "unevaluatedProperties"},
    {kw::unevaluated_items, "unevaluatedItems"},
};

// Keywords outside the supported language that change validation results.
const std::set<std::string> rejected_keywords = {
    "exclusiveMinimum", "exclusiveMaximum", "$dynamicRef", "$dynamicAnchor",
    "$recursiveRef", "$recursiveAnchor", "dependentSchemas", "dependencies", "additionalItems",
};

}  // namespace

const char* keyword_name(kw k) {
    for (const auto& i : kw_table)
        if (i.kind == k) return i.name;
    return "";
}

kw_group group_of(kw k) {
    switch (k) {
        case kw::additional_properties:
        case kw::items: return kw_group::sdk;
        case kw::unevaluated_properties:
        case kw::unevaluated_items: return kw_group::adk;
        default: return kw_group::ik;
    }
}

bool is_in_place(kw k) {
    switch (k) {
        case kw::all_of:
        case kw::any_of:
        case kw::one_of:
        case kw::not_:
        case kw::ref:
        case kw::if_then_else: return true;
        default: return false;
    }
}

keyword make_keyword(kw kind) {
    keyword k;
    k.kind = kind;
    k.name = keyword_name(kind);
    return k;
}

std::vector<schema_ptr> subschemas(const keyword& k) {
    std::vector<schema_ptr> out;
    for (const auto& s : k.list)
        if (s) out.push_back(s);
    for (const auto& m : k.members) out.push_back(m.second);
    if (k.sub && k.kind != kw::if_then_else) out.push_back(k.sub);
    return out;
}

schema_ptr if_then_else_expansion(const keyword& k) {
    if (k.sub) return k.sub;
    auto t = k.list[1] ? k.list[1] : schema::boolean(true);
    auto e = k.list[2] ? k.list[2] : schema::boolean(true);
    return make_any_of({make_all_of({k.list[0], t}), make_all_of({make_not(k.list[0]), e})});
}

// ---------------------------------------------------------------- schema

schema_ptr schema::boolean(bool b) {
    static const schema_ptr t = [] {
        auto s = std::shared_ptr<schema>(new schema());
        s->is_bool_ = true;
        s->value_ = true;
        return s;
    }();
    static const schema_ptr f = [] {
        auto s = std::shared_ptr<schema>(new schema());
        s->is_bool_ = true;
        s->value_ = false;
        return s;
    }();
    return b ? t : f;
}

schema_ptr schema::object(std::vector<keyword> keywords) {
    std::set<std::string> seen;
    for (const auto& k : keywords)
        if (!seen.insert(k.name).second) throw schema_error("duplicate keyword '" + k.name + "'");

    auto find = [&](kw kind) -> keyword* {
        for (auto& k : keywords)
            if (k.kind == kind) return &k;
        return nullptr;
    };
    if (keyword* c = find(kw::contains)) {
        keyword* lo = find(kw::min_contains);
        keyword* hi = find(kw::max_contains);
        c->count = lo ? lo->count : 1;
        c->bound = hi ? hi->bound : std::nullopt;
        if (!lo) {
            keyword k = make_keyword(kw::min_contains);
            k.count = 1;
            keywords.push_back(k);
        }
        if (!hi) keywords.push_back(make_keyword(kw::max_contains));
    } else {
        std::erase_if(keywords, [](const keyword& k) {
            return k.kind == kw::min_contains || k.kind == kw::max_contains;
        });
    }
    for (auto& k : keywords)
        if (k.kind == kw::if_then_else) {
            k.sub = nullptr;
            k.sub = if_then_else_expansion(k);
        }

    std::stable_sort(keywords.begin(), keywords.end(), [](const keyword& a, const keyword& b) {
        auto ga = group_of(a.kind), gb = group_of(b.kind);
        if (ga != gb) return ga < gb;
        return a.name < b.name;
    });
    auto s = std::shared_ptr<schema>(new schema());
    s->keywords_ = std::move(keywords);
    return s;
}

const keyword* schema::find(kw k) const {
    for (const auto& x : keywords_)
        if (x.kind == k) return &x;
    return nullptr;
}

const std::string& schema::canonical() const {
    std::call_once(canon_once_, [this] {
        // Serialize through a non-owning alias of this node.
        schema_ptr self(schema_ptr(), this);
        canon_ = serialize_json(serialize_schema(self));
    });
    return canon_;
}

schema_ptr make_all_of(std::vector<schema_ptr> args) {
    keyword k = make_keyword(kw::all_of);
    k.list = std::move(args);
    return schema::object({std::move(k)});
}

schema_ptr make_any_of(std::vector<schema_ptr> args) {
    keyword k = make_keyword(kw::any_of);
    k.list = std::move(args);
    return schema::object({std::move(k)});
}

schema_ptr make_not(schema_ptr s) {
    keyword k = make_keyword(kw::not_);
    k.sub = std::move(s);
    return schema::object({std::move(k)});
}

schema_ptr make_ref(const std::string& uri) {
    keyword k = make_keyword(kw::ref);
    k.text = uri;
    return schema::object({std::move(k)});
}

// ---------------------------------------------------------------- parsing

namespace {

std::uint64_t parse_count(const std::string& name, const json& v) {
    std::uint64_t n = 0;
    if (!v.is_number() || !v.as_number().to_uint64(n))
        throw schema_error("'" + name + "' expects a non-negative integer");
    return n;
}

const json_array& expect_array(const std::string& name, const json& v) {
    if (!v.is_array()) throw schema_error("'" + name + "' expects an array");
    return v.as_array();
}

const json_object& expect_object(const std::string& name, const json& v) {
    if (!v.is_object()) throw schema_error("'" + name + "' expects an object");
    return v.as_object();
}

std::vector<std::string> string_list(const std::string& name, const json& v) {
    std::vector<std::string> out;
    for (const auto& x : expect_array(name, v)) {
        if (!x.is_string()) throw schema_error("'" + name + "' expects an array of strings");
        out.push_back(x.as_string());
    }
    return out;
}

bool is_plain_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
}

const std::set<std::string> type_names = {"null", "boolean", "object", "array", "number", "string", "integer"};

schema_ptr parse_node(const json& v, bool is_root) {
    if (v.is_bool()) return schema::boolean(v.as_bool());
    if (!v.is_object()) throw schema_error(std::string("a schema must be a boolean or an object, got ") + kind_name(v.type()));

    std::vector<keyword> out;
    std::optional<keyword> cond;
    const json* then_v = nullptr;
    const json* else_v = nullptr;

    for (const auto& [name, arg] : v.as_object()) {
        if (rejected_keywords.count(name)) throw schema_error("unsupported keyword '" + name + "'");
        kw kind = kw::unknown;
        for (const auto& i : kw_table)
            if (i.kind != kw::unknown && name == i.name) kind = i.kind;
        if (name == "then") {
            then_v = &arg;
            continue;
        }
        if (name == "else") {
            else_v = &arg;
            continue;
        }
        if (name == "$id" && !is_root) throw schema_error("'$id' is only supported on the root schema");

        keyword k = make_keyword(kind);
        k.name = name;
        switch (kind) {
            case kw::minimum:
            case kw::maximum:
                if (!arg.is_number()) throw schema_error("'" + name + "' expects a number");
                k.number = arg.as_number();
                break;
            case kw::multiple_of:
                if (!arg.is_number() || arg.as_number().is_negative() || arg.as_number().is_zero())
                    throw schema_error("'multipleOf' expects a positive number");
                k.number = arg.as_number();
                break;
            case kw::pattern:
                if (!arg.is_string()) throw schema_error("'pattern' expects a string");
                k.regex = pattern::compile(arg.as_string());
                break;
            case kw::const_:
            case kw::unknown: k.value = arg; break;
            case kw::enum_:
                expect_array(name, arg);
                k.value = arg;
                break;
            case kw::type:
                if (arg.is_string()) k.names = {arg.as_string()};
                else k.names = string_list(name, arg);
                for (const auto& t : k.names)
                    if (!type_names.count(t)) throw schema_error("unknown type name '" + t + "'");
                k.value = arg;
                break;
            case kw::any_of:
            case kw::all_of:
            case kw::one_of:
            case kw::prefix_items:
                for (const auto& x : expect_array(name, arg)) k.list.push_back(parse_node(x, false));
                break;
            case kw::not_:
            case kw::property_names:
            case kw::contains:
            case kw::additional_properties:
            case kw::unevaluated_properties:
            case kw::unevaluated_items:
                k.sub = parse_node(arg, false);
                break;
            case kw::items:
                if (arg.is_array()) throw schema_error("array form of 'items' is not supported; use 'prefixItems'");
                k.sub = parse_node(arg, false);
                break;
            case kw::properties:
                for (const auto& [p, s] : expect_object(name, arg)) k.members.emplace_back(p, parse_node(s, false));
                break;
            case kw::pattern_properties:
                for (const auto& [p, s] : expect_object(name, arg)) {
                    k.member_patterns.push_back(pattern::compile(p));
                    k.members.emplace_back(p, parse_node(s, false));
                }
                break;
            case kw::defs:
                if (!is_root) throw schema_error("nested '$defs' are not supported; move definitions to the root");
                for (const auto& [p, s] : expect_object(name, arg)) k.members.emplace_back(p, parse_node(s, false));
                break;
            case kw::required:
                k.names = string_list(name, arg);
                break;
            case kw::dependent_required:
                for (const auto& [p, s] : expect_object(name, arg)) string_list(name, s);
                k.value = arg;
                break;
            case kw::min_properties:
            case kw::max_properties:
            case kw::min_items:
            case kw::max_items:
            case kw::min_contains:
            case kw::min_length:
            case kw::max_length:
                k.count = parse_count(name, arg);
                break;
            case kw::max_contains:
                k.bound = parse_count(name, arg);
                break;
            case kw::unique_items:
                if (!arg.is_bool()) throw schema_error("'uniqueItems' expects a boolean");
                k.flag = arg.as_bool();
                break;
            case kw::ref:
                if (!arg.is_string()) throw schema_error("'$ref' expects a string");
                k.text = arg.as_string();
                break;
            case kw::anchor:
                if (!arg.is_string() || !is_plain_name(arg.as_string()))
                    throw schema_error("'$anchor' expects a plain name");
                k.text = arg.as_string();
                break;
            case kw::if_then_else:
                k.list = {parse_node(arg, false), nullptr, nullptr};
                cond = std::move(k);
                continue;
        }
        out.push_back(std::move(k));
    }
    if (cond) {
        if (then_v) cond->list[1] = parse_node(*then_v, false);
        if (else_v) cond->list[2] = parse_node(*else_v, false);
        out.push_back(std::move(*cond));
    } else {
        // Without "if" these members are inert; keep them verbatim.
        for (auto [n, p] : {std::pair{"then", then_v}, std::pair{"else", else_v}}) {
            if (!p) continue;
            keyword k = make_keyword(kw::unknown);
            k.name = n;
            k.value = *p;
            out.push_back(std::move(k));
        }
    }
    return schema::object(std::move(out));
}

}  // namespace

schema_ptr parse_subschema(const json& v) { return parse_node(v, false); }

schema_document parse_schema(const json& v) { return schema_document(parse_node(v, true)); }

// ---------------------------------------------------------------- serialization

namespace {

json members_json(const keyword& k) {
    json_object o;
    for (const auto& [n, s] : k.members) o.emplace(n, serialize_schema(s));
    return json(std::move(o));
}

json list_json(const std::vector<schema_ptr>& l) {
    json_array a;
    for (const auto& s : l) a.push_back(serialize_schema(s));
    return json(std::move(a));
}

json names_json(const std::vector<std::string>& names) {
    json_array a(names.begin(), names.end());
    return json(std::move(a));
}

}  // namespace

json serialize_schema(const schema_ptr& s) {
    if (s->is_bool()) return json(s->bool_value());
    json_object o;
    for (const auto& k : s->keywords()) {
        switch (k.kind) {
            case kw::minimum:
            case kw::maximum:
            case kw::multiple_of: o.emplace(k.name, json(k.number)); break;
            case kw::pattern: o.emplace(k.name, json(k.regex->source)); break;
            case kw::const_:
            case kw::enum_:
            case kw::type:
            case kw::dependent_required:
            case kw::unknown: o.emplace(k.name, k.value); break;
            case kw::any_of:
            case kw::all_of:
            case kw::one_of:
            case kw::prefix_items: o.emplace(k.name, list_json(k.list)); break;
            case kw::not_:
            case kw::property_names:
            case kw::contains:
            case kw::additional_properties:
            case kw::items:
            case kw::unevaluated_properties:
            case kw::unevaluated_items: o.emplace(k.name, serialize_schema(k.sub)); break;
            case kw::pattern_properties:
            case kw::properties:
            case kw::defs: o.emplace(k.name, members_json(k)); break;
            case kw::required: o.emplace(k.name, names_json(k.names)); break;
            case kw::min_properties:
            case kw::max_properties:
            case kw::min_items:
            case kw::max_items:
            case kw::min_length:
            case kw::max_length: o.emplace(k.name, json(decimal::parse(std::to_string(k.count)))); break;
            case kw::min_contains:
                if (k.count != 1) o.emplace(k.name, json(decimal::parse(std::to_string(k.count))));
                break;
            case kw::max_contains:
                if (k.bound) o.emplace(k.name, json(decimal::parse(std::to_string(*k.bound))));
                break;
            case kw::unique_items: o.emplace(k.name, json(k.flag)); break;
            case kw::ref:
            case kw::anchor: o.emplace(k.name, json(k.text)); break;
            case kw::if_then_else:
                o.emplace("if", serialize_schema(k.list[0]));
                if (k.list[1]) o.emplace("then", serialize_schema(k.list[1]));
                if (k.list[2]) o.emplace("else", serialize_schema(k.list[2]));
                break;
        }
    }
    return json(std::move(o));
}

json serialize_schema(const schema_document& d) { return serialize_schema(d.root()); }

// ---------------------------------------------------------------- documents

namespace {

void walk(const schema_ptr& s, const std::function<void(const schema_ptr&)>& f, std::set<const schema*>& seen) {
    if (!seen.insert(s.get()).second) return;
    f(s);
    for (const auto& k : s->keywords())
        for (const auto& c : subschemas(k)) walk(c, f, seen);
}

std::string unescape_pointer_token(const std::string& t) {
    std::string pct;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == '%' && i + 2 < t.size() && std::isxdigit(static_cast<unsigned char>(t[i + 1])) &&
            std::isxdigit(static_cast<unsigned char>(t[i + 2]))) {
            pct += static_cast<char>(std::stoi(t.substr(i + 1, 2), nullptr, 16));
            i += 2;
        } else {
            pct += t[i];
        }
    }
    std::string out;
    for (std::size_t i = 0; i < pct.size(); ++i) {
        if (pct[i] == '~' && i + 1 < pct.size() && (pct[i + 1] == '0' || pct[i + 1] == '1')) {
            out += pct[i + 1] == '0' ? '~' : '/';
            ++i;
        } else {
            out += pct[i];
        }
    }
    return out;
}

}  // namespace

schema_document::schema_document(schema_ptr root) : root_(std::move(root)) {
    if (const keyword* d = root_->find(kw::defs)) defs_ = d->members;

    std::set<const schema*> seen;
    std::vector<schema_ptr> all;
    walk(root_, [&](const schema_ptr& s) { all.push_back(s); }, seen);

    for (const auto& s : all) {
        const keyword* a = s->find(kw::anchor);
        if (!a) continue;
        auto [it, fresh] = anchors_.emplace(a->text, s);
        if (!fresh && it->second != s) throw schema_error("ambiguous anchor '" + a->text + "'");
    }
    for (const auto& [name, s] : anchors_) {
        for (const auto& [dn, ds] : defs_)
            if (dn == name && ds != s)
                throw schema_error("anchor '" + name + "' collides with a different definition of the same name");
    }
    for (const auto& s : all)
        if (const keyword* r = s->find(kw::ref)) deref(r->text);

    std::string cycle;
    if (!check_guarded(*this, &cycle)) throw schema_error("unguarded recursion: " + cycle);
}

schema_ptr schema_document::def(const std::string& name) const {
    for (const auto& [n, s] : defs_)
        if (n == name) return s;
    return nullptr;
}

schema_ptr schema_document::deref(const std::string& uri) const {
    if (uri == "#") return root_;
    const std::string defs_prefix = "#/$defs/";
    if (uri.rfind(defs_prefix, 0) == 0) {
        if (auto s = def(unescape_pointer_token(uri.substr(defs_prefix.size())))) return s;
        throw schema_error("unresolved reference '" + uri + "'");
    }
    if (uri.size() > 1 && uri[0] == '#' && uri[1] != '/') {
        auto it = anchors_.find(uri.substr(1));
        if (it == anchors_.end()) throw schema_error("unresolved reference '" + uri + "'");
        return it->second;
    }
    throw schema_error("unsupported reference '" + uri + "' (only #, #/$defs/name and #anchor are local)");
}

schema_ptr schema_document::at_pointer(const std::string& pointer) const {
    if (pointer.empty() || pointer == "/" || pointer == "#") return root_;
    std::string p = pointer[0] == '#' ? pointer.substr(1) : pointer;
    const std::string prefix = "/$defs/";
    if (p.rfind(prefix, 0) != 0) throw schema_error("pointer must have the form /$defs/name");
    auto s = def(unescape_pointer_token(p.substr(prefix.size())));
    if (!s) throw schema_error("no definition at '" + pointer + "'");
    return s;
}

// ---------------------------------------------------------------- guarded recursion

bool check_guarded(const schema_document& d, std::string* cycle) {
    std::set<const schema*> seen;
    std::vector<schema_ptr> all;
    walk(d.root(), [&](const schema_ptr& s) { all.push_back(s); }, seen);

    auto edges = [&](const schema_ptr& s) {
        std::vector<schema_ptr> out;
        for (const auto& k : s->keywords()) {
            if (k.kind == kw::ref) out.push_back(d.deref(k.text));
            else if (is_in_place(k.kind))
                for (const auto& c : subschemas(k)) out.push_back(c);
        }
        return out;
    };

    enum class color { white, grey, black };
    std::map<const schema*, color> state;
    std::vector<schema_ptr> stack;
    std::function<bool(const schema_ptr&)> visit = [&](const schema_ptr& s) -> bool {
        auto& c = state[s.get()];
        if (c == color::black) return true;
        if (c == color::grey) {
            if (cycle) {
                std::string text;
                auto it = std::find(stack.begin(), stack.end(), s);
                for (; it != stack.end(); ++it) text += (*it)->canonical().substr(0, 60) + " -> ";
                *cycle = text + s->canonical().substr(0, 60);
            }
            return false;
        }
        c = color::grey;
        stack.push_back(s);
        for (const auto& n : edges(s))
            if (!visit(n)) return false;
        stack.pop_back();
        state[s.get()] = color::black;
        return true;
    };
    for (const auto& s : all)
        if (!visit(s)) return false;
    return true;
}

// ---------------------------------------------------------------- oneOf expansion and depth

std::vector<schema_ptr> boolean_one_of_terms(const std::vector<schema_ptr>& args) {
    std::vector<schema_ptr> terms;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::vector<schema_ptr> conj;
        for (std::size_t j = 0; j < args.size(); ++j) conj.push_back(i == j ? args[j] : make_not(args[j]));
        terms.push_back(make_all_of(std::move(conj)));
    }
    return terms;
}

schema_ptr boolean_one_of(const std::vector<schema_ptr>& args) { return make_any_of(boolean_one_of_terms(args)); }

std::uint64_t depth_calculator::of(const schema_ptr& s) {
    if (s->is_bool()) return 0;
    auto it = memo_.find(s.get());
    if (it != memo_.end()) return it->second;
    std::uint64_t m = 0;
    for (const auto& k : s->keywords()) m = std::max(m, of(k));
    pinned_.push_back(s);
    return memo_[s.get()] = m + 1;
}

std::uint64_t depth_calculator::of(const keyword& k) {
    switch (k.kind) {
        case kw::all_of:
        case kw::any_of: {
            std::uint64_t m = 0;
            for (const auto& s : k.list) m = std::max(m, of(s));
            return m + 1;
        }
        case kw::not_: return of(k.sub) + 1;
        case kw::one_of: return of(boolean_one_of(k.list)) + 1;
        case kw::ref: return of(doc_.deref(k.text)) + 1;
        case kw::if_then_else: return of(k.sub) + 1;
        default: return 0;
    }
}

std::uint64_t in_place_depth(const schema_document& d, const schema_ptr& s) {
    depth_calculator c(d);
    return c.of(s);
}

}  // namespace jsonelim
