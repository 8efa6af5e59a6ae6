#include "jsonelim/harness.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

namespace jsonelim {

namespace {

// Literal text a pattern is built around: leading anchor removed, escapes
// resolved, cut at the first metacharacter. `full` is set when the literal
// is the whole pattern body.
struct pattern_literal {
    std::string text;
    bool full = false;
    bool anchored = false;
};

std::optional<pattern_literal> literal_of(const std::string& src) {
    pattern_literal lit;
    std::size_t i = 0, end = src.size();
    if (i < end && src[i] == '^') {
        lit.anchored = true;
        ++i;
    }
    bool anchored_end = end > i && src[end - 1] == '$' && (end < 2 || src[end - 2] != '\\');
    if (anchored_end) --end;
    lit.full = true;
    while (i < end) {
        char c = src[i];
        if (c == '\\' && i + 1 < end && !std::isalnum(static_cast<unsigned char>(src[i + 1]))) {
            lit.text += src[i + 1];
            i += 2;
            continue;
        }
        if (std::string(".[]()*+?{}|\\^$").find(c) != std::string::npos) {
            lit.full = false;
            // A quantifier makes the preceding character optional.
            if ((c == '*' || c == '?' || c == '{') && !lit.text.empty()) lit.text.pop_back();
            break;
        }
        lit.text += c;
        ++i;
    }
    lit.anchored = lit.anchored && anchored_end && lit.full;
    if (lit.text.empty()) return std::nullopt;
    return lit;
}

void add_number_boundaries(const decimal& m, std::vector<json>& atoms) {
    atoms.emplace_back(m);
    if (!m.is_integer()) return;
    try {
        long long v = std::stoll(m.to_string());
        atoms.emplace_back(static_cast<std::int64_t>(v - 1));
        atoms.emplace_back(static_cast<std::int64_t>(v + 1));
    } catch (const std::exception&) {
        // Out of int64 range: the value itself is enough.
    }
}

struct collector {
    std::set<std::string> names;
    std::vector<std::string> loose;  // literals of unanchored patterns
    std::vector<json> atoms;
    std::size_t prefix = 0;
    std::set<const schema*> seen;

    void visit(const schema_ptr& s) {
        if (s->is_bool() || !seen.insert(s.get()).second) return;
        for (const auto& k : s->keywords()) {
            keyword_atoms(k);
            for (const auto& c : subschemas(k)) visit(c);
        }
    }

    void add_pattern(const std::string& src, bool as_name) {
        auto lit = literal_of(src);
        if (!lit) return;
        if (as_name) {
            names.insert(lit->text);
            if (!lit->anchored) loose.push_back(lit->text);
        } else {
            atoms.emplace_back(lit->text);
        }
    }

    void keyword_atoms(const keyword& k) {
        switch (k.kind) {
            case kw::properties:
                for (const auto& m : k.members) names.insert(m.first);
                break;
            case kw::pattern_properties:
                for (const auto& m : k.members) add_pattern(m.first, true);
                break;
            case kw::required: names.insert(k.names.begin(), k.names.end()); break;
            case kw::dependent_required:
                for (const auto& [trigger, deps] : k.value.as_object()) {
                    names.insert(trigger);
                    for (const auto& d : deps.as_array()) names.insert(d.as_string());
                }
                break;
            case kw::prefix_items: prefix = std::max(prefix, k.list.size()); break;
            case kw::minimum:
            case kw::maximum:
            case kw::multiple_of: add_number_boundaries(k.number, atoms); break;
            case kw::pattern: add_pattern(k.regex->source, false); break;
            case kw::min_length:
            case kw::max_length:
                for (std::uint64_t n : {k.count, k.count + 1})
                    if (n > 0 && n <= 4) atoms.emplace_back(std::string(n, 'x'));
                break;
            case kw::const_: atoms.push_back(k.value); break;
            case kw::enum_:
                for (const auto& v : k.value.as_array()) atoms.push_back(v);
                break;
            default: break;
        }
    }
};

void dedup_values(std::vector<json>& vs) {
    std::vector<json> out;
    std::set<std::string> seen;
    for (auto& v : vs)
        if (seen.insert(serialize_json(v)).second) out.push_back(std::move(v));
    vs = std::move(out);
}

}  // namespace

universe relevant_universe(const schema_document& d) {
    collector c;
    c.visit(d.root());
    for (const auto& [n, s] : d.defs()) c.visit(s);

    // A name matching two unanchored patterns at once.
    for (std::size_t i = 0; i + 1 < c.loose.size() && i < 2; ++i) c.names.insert(c.loose[i] + c.loose[i + 1]);

    universe u;
    u.names.assign(c.names.begin(), c.names.end());
    std::string fresh = "_";
    while (c.names.count(fresh)) fresh += "_";
    u.names.push_back(fresh);
    u.atoms = {json(nullptr), json(0), json("x"), json(json_array{}), json(json_object{}), json(true)};
    u.atoms.insert(u.atoms.end(), c.atoms.begin(), c.atoms.end());
    dedup_values(u.atoms);
    u.prefix_positions = c.prefix;
    return u;
}

std::vector<json> enumerate_instances(const universe& u, std::size_t budget) {
    const std::vector<json> base = {json(nullptr), json(0), json("x"), json(json_array{}), json(json_object{})};
    const std::vector<std::string> named(u.names.begin(), u.names.end());

    // Small nested values: atoms, one- and two-field objects, short arrays.
    std::vector<json> nested = u.atoms;
    for (const auto& n : named)
        for (const auto& b : base) nested.emplace_back(json_object{{n, b}});
    for (std::size_t i = 0; i < named.size(); ++i)
        for (std::size_t j = i + 1; j < named.size(); ++j)
            nested.emplace_back(json_object{{named[i], json(nullptr)}, {named[j], json(nullptr)}});
    for (const auto& b : base) nested.emplace_back(json_array{b});
    nested.emplace_back(json_array{json(nullptr), json(nullptr)});
    dedup_values(nested);

    std::vector<json> out = nested;

    auto pow = [](std::size_t b, std::size_t e) {
        std::size_t r = 1;
        while (e--) r *= b;
        return r;
    };
    auto choose = [](std::size_t n, std::size_t k) {
        std::size_t r = 1;
        for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
        return n < k ? 0 : r;
    };
    // Largest alphabet that keeps the category within its share of the
    // budget. The base alphabet is always enumerated in full.
    auto pick = [&](std::function<std::size_t(std::size_t)> count) -> const std::vector<json>* {
        for (const std::vector<json>* a : {static_cast<const std::vector<json>*>(&nested), &u.atoms})
            if (count(a->size()) <= budget / 6) return a;
        return &base;
    };

    // Objects: every set of at most three names, every value assignment.
    for (std::size_t k = 1; k <= 3 && k <= named.size(); ++k) {
        const auto* alpha = pick([&](std::size_t a) { return choose(named.size(), k) * pow(a, k); });
        std::vector<std::size_t> idx(k);
        std::function<void(std::size_t, std::size_t)> pick_names = [&](std::size_t pos, std::size_t from) {
            if (pos == k) {
                std::vector<std::size_t> val(k, 0);
                for (;;) {
                    json_object o;
                    for (std::size_t i = 0; i < k; ++i) o.emplace(named[idx[i]], (*alpha)[val[i]]);
                    out.emplace_back(std::move(o));
                    std::size_t i = 0;
                    while (i < k && ++val[i] == alpha->size()) val[i++] = 0;
                    if (i == k) break;
                }
                return;
            }
            for (std::size_t n = from; n < named.size(); ++n) {
                idx[pos] = n;
                pick_names(pos + 1, n + 1);
            }
        };
        pick_names(0, 0);
    }

    // Arrays of length one to three.
    for (std::size_t len = 1; len <= 3; ++len) {
        const auto* alpha = pick([&](std::size_t a) { return pow(a, len); });
        std::vector<std::size_t> val(len, 0);
        for (;;) {
            json_array a;
            for (std::size_t i = 0; i < len; ++i) a.push_back((*alpha)[val[i]]);
            out.emplace_back(std::move(a));
            std::size_t i = 0;
            while (i < len && ++val[i] == alpha->size()) val[i++] = 0;
            if (i == len) break;
        }
    }
    dedup_values(out);
    return out;
}

}  // namespace jsonelim
