#include "jsonelim/harness.hpp"

#include <algorithm>

namespace jsonelim {

namespace {

const std::vector<std::string> kNames = {"a", "b", "c"};
const std::vector<std::string> kPatterns = {"^a$", "b", "^c", "a|b"};

class generator {
public:
    generator(std::mt19937_64& rng, const random_options& opt) : rng_(rng), opt_(opt) {}

    json document() {
        std::size_t ndefs = below(opt_.max_defs + 1);
        anchored_.assign(ndefs, false);
        for (std::size_t i = 0; i < ndefs; ++i) anchored_[i] = chance(0.3);
        json_object defs;
        for (std::size_t i = ndefs; i-- > 0;) {
            current_ = i;
            json s = node(opt_.max_depth);
            if (anchored_[i]) {
                json_object o = s.is_object() ? s.as_object() : json_object{};
                if (s.is_bool() && !s.as_bool()) o.emplace("not", json(true));
                o.emplace("$anchor", json("A" + std::to_string(i)));
                s = json(std::move(o));
            }
            defs.emplace("d" + std::to_string(i), std::move(s));
        }
        current_ = static_cast<std::size_t>(-1);
        ndefs_ = ndefs;
        json root = node(opt_.max_depth);
        if (defs.empty()) return root;
        json_object o = root.is_object() ? root.as_object() : json_object{};
        if (root.is_bool() && !root.as_bool()) o.emplace("not", json(true));
        o.emplace("$defs", json(std::move(defs)));
        return json(std::move(o));
    }

    json instance(std::size_t depth) {
        std::size_t choice = below(depth == 0 ? 4 : 6);
        switch (choice) {
            case 0: return json(nullptr);
            case 1: return json(chance(0.5));
            case 2: return json(static_cast<std::int64_t>(below(4)));
            case 3: return json(std::vector<std::string>{"", "x", "a", "y"}[below(4)]);
            case 4: {
                json_array a;
                for (std::size_t i = below(4); i > 0; --i) a.push_back(instance(depth - 1));
                return json(std::move(a));
            }
            default: {
                json_object o;
                for (const auto& n : {"a", "b", "c", "d"})
                    if (chance(0.4)) o.emplace(n, instance(depth - 1));
                return json(std::move(o));
            }
        }
    }

private:
    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
    json small_int() { return json(static_cast<std::int64_t>(below(3))); }
    json count() { return json(static_cast<std::int64_t>(below(3))); }

    json atom() {
        switch (below(5)) {
            case 0: return json(nullptr);
            case 1: return json(static_cast<std::int64_t>(below(2)));
            case 2: return json("x");
            case 3: return json(json_array{});
            default: return json(json_object{});
        }
    }

    json names_subset() {
        json_array out;
        for (const auto& n : kNames)
            if (chance(0.4)) out.emplace_back(n);
        if (out.empty()) out.emplace_back(kNames[below(kNames.size())]);
        return json(std::move(out));
    }

    json list(std::size_t depth, std::size_t max) {
        json_array out;
        for (std::size_t i = 1 + below(max); i > 0; --i) out.push_back(node(depth));
        return json(std::move(out));
    }

    json ref() {
        // Only definitions after the current one are referenced, which keeps
        // the in-place graph acyclic.
        std::size_t from = current_ == static_cast<std::size_t>(-1) ? 0 : current_ + 1;
        std::size_t n = current_ == static_cast<std::size_t>(-1) ? ndefs_ : anchored_.size();
        if (from >= n) return json();
        std::size_t j = from + below(n - from);
        std::string uri = anchored_[j] && chance(0.5) ? "#A" + std::to_string(j) : "#/$defs/d" + std::to_string(j);
        return json(uri);
    }

    json node(std::size_t depth) {
        if (chance(0.08)) return json(chance(0.7));
        json_object o;
        std::size_t n = 1 + below(3);
        for (std::size_t tries = 0; o.size() < n && tries < 10; ++tries) add_keyword(o, depth);
        return json(std::move(o));
    }

    void add_keyword(json_object& o, std::size_t depth) {
        auto put = [&](const std::string& k, json v) {
            if (!v.is_null() || k == "const") o.emplace(k, std::move(v));
        };
        std::size_t structural = depth == 0 ? 0 : 18;
        std::size_t pick = below(16 + structural);
        std::size_t d = depth == 0 ? 0 : depth - 1;
        switch (pick) {
            case 0: {
                static const std::vector<std::string> types = {"null", "boolean", "number", "integer", "string", "array", "object"};
                put("type", json(types[below(types.size())]));
                break;
            }
            case 1: put("minimum", small_int()); break;
            case 2: put("maximum", small_int()); break;
            case 3: put("const", atom()); break;
            case 4: put("enum", json(json_array{atom(), atom()})); break;
            case 5: put("pattern", json(chance(0.5) ? "^x" : "y")); break;
            case 6: put("minLength", count()); break;
            case 7: put("maxLength", count()); break;
            case 8: put("multipleOf", json(2)); break;
            case 9: put("required", names_subset()); break;
            case 10: put("minProperties", count()); break;
            case 11: put("maxProperties", count()); break;
            case 12: put("minItems", count()); break;
            case 13: put("maxItems", count()); break;
            case 14: put("uniqueItems", json(chance(0.7))); break;
            case 15: put("dependentRequired", json(json_object{{"a", json(json_array{json("b")})}})); break;
            case 16: {
                json_object props;
                for (const auto& nm : kNames)
                    if (chance(0.5)) props.emplace(nm, node(d));
                put("properties", json(std::move(props)));
                break;
            }
            case 17: {
                json_object props;
                for (const auto& p : kPatterns)
                    if (chance(0.35)) props.emplace(p, node(d));
                put("patternProperties", json(std::move(props)));
                break;
            }
            case 18: put("additionalProperties", node(d)); break;
            case 19: put("propertyNames", json(json_object{{"pattern", json(chance(0.5) ? "^[ab]$" : "c")}})); break;
            case 20: put("prefixItems", list(d, 2)); break;
            case 21: put("items", node(d)); break;
            case 22:
                if (o.count("contains")) break;
                put("contains", node(d));
                if (chance(0.4)) put("minContains", count());
                if (chance(0.3)) put("maxContains", json(static_cast<std::int64_t>(1 + below(2))));
                break;
            case 23: put("allOf", list(d, 3)); break;
            case 24: put("anyOf", list(d, 3)); break;
            case 25: put("oneOf", list(d, 3)); break;
            case 26: put("not", node(d)); break;
            case 27:
                put("if", node(d));
                if (chance(0.7)) put("then", node(d));
                if (chance(0.7)) put("else", node(d));
                break;
            case 28:
            case 29: {
                json r = ref();
                if (r.is_string()) put("$ref", r);
                break;
            }
            case 30:
            case 31:
                if (opt_.unevaluated) put("unevaluatedProperties", node(d));
                break;
            default:
                if (opt_.unevaluated) put("unevaluatedItems", node(d));
                break;
        }
    }

    std::mt19937_64& rng_;
    const random_options& opt_;
    std::vector<bool> anchored_;
    std::size_t current_ = static_cast<std::size_t>(-1);
    std::size_t ndefs_ = 0;
};

}  // namespace

json random_schema(std::mt19937_64& rng, const random_options& opt) { return generator(rng, opt).document(); }

json random_instance(std::mt19937_64& rng, std::size_t depth) {
    random_options opt;
    return generator(rng, opt).instance(depth);
}

}  // namespace jsonelim
