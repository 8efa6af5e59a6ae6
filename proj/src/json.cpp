#include "jsonelim/json.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace jsonelim {

// ---------------------------------------------------------------- decimal

decimal::decimal(std::int64_t v) {
    negative_ = v < 0;
    mantissa_ = v;
    if (negative_) mantissa_ = -mantissa_;
    normalize();
}

void decimal::normalize() {
    if (mantissa_ == 0) {
        negative_ = false;
        exponent_ = 0;
        return;
    }
    while (mantissa_ % 10 == 0) {
        mantissa_ /= 10;
        ++exponent_;
    }
}

decimal decimal::parse(std::string_view text) {
    decimal d;
    std::size_t i = 0;
    auto fail = [&]() -> decimal {
        throw json_parse_error("invalid number literal '" + std::string(text) + "'", std::string::npos);
    };
    if (i < text.size() && text[i] == '-') {
        d.negative_ = true;
        ++i;
    }
    std::string digits;
    std::int64_t frac = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
    if (digits.empty()) return fail();
    if (i < text.size() && text[i] == '.') {
        ++i;
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
        frac = static_cast<std::int64_t>(i - start);
        if (frac == 0) return fail();
    }
    std::int64_t exp = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            if (exp > 1'000'000'000'000LL) return fail();
            exp = exp * 10 + (text[i++] - '0');
        }
        if (i == start) return fail();
        if (eneg) exp = -exp;
    }
    if (i != text.size()) return fail();
    // cpp_int reads a leading zero as an octal prefix.
    std::size_t nz = digits.find_first_not_of('0');
    d.mantissa_ = nz == std::string::npos ? integer(0) : integer(digits.substr(nz));
    d.exponent_ = exp - frac;
    d.normalize();
    return d;
}

bool decimal::to_uint64(std::uint64_t& out) const {
    if (negative_ || exponent_ < 0 || exponent_ > 19) return false;
    integer v = mantissa_;
    for (std::int64_t i = 0; i < exponent_; ++i) v *= 10;
    if (v > std::numeric_limits<std::uint64_t>::max()) return false;
    out = static_cast<std::uint64_t>(v);
    return true;
}

namespace {

std::int64_t digit_count(const decimal::integer& v) {
    return static_cast<std::int64_t>(v.str().size());
}

decimal::integer pow10(std::int64_t n) {
    decimal::integer r = 1;
    for (std::int64_t i = 0; i < n; ++i) r *= 10;
    return r;
}

}  // namespace

int decimal::compare(const decimal& other) const {
    if (negative_ != other.negative_) return negative_ ? -1 : 1;
    if (is_zero() || other.is_zero()) {
        if (is_zero() && other.is_zero()) return 0;
        int mag = is_zero() ? -1 : 1;
        return negative_ ? -mag : mag;
    }
    // Compare magnitudes, first by order of magnitude, then digit by digit.
    int mag;
    std::int64_t oa = digit_count(mantissa_) + exponent_;
    std::int64_t ob = digit_count(other.mantissa_) + other.exponent_;
    if (oa != ob) {
        mag = oa < ob ? -1 : 1;
    } else {
        integer a = mantissa_, b = other.mantissa_;
        if (exponent_ > other.exponent_) a *= pow10(exponent_ - other.exponent_);
        else b *= pow10(other.exponent_ - exponent_);
        mag = a < b ? -1 : (a > b ? 1 : 0);
    }
    return negative_ ? -mag : mag;
}

bool decimal::is_multiple_of(const decimal& divisor) const {
    if (divisor.is_zero()) return false;
    if (is_zero()) return true;
    std::int64_t d = exponent_ - divisor.exponent_;
    if (d < 0) {
        if (-d > digit_count(mantissa_)) return false;
        return mantissa_ % (divisor.mantissa_ * pow10(-d)) == 0;
    }
    // Factors of 10 beyond the 2/5 content of the divisor add nothing.
    std::int64_t cap = 4 * digit_count(divisor.mantissa_) + 1;
    return (mantissa_ * pow10(std::min(d, cap))) % divisor.mantissa_ == 0;
}

std::string decimal::to_string() const {
    std::string digits = mantissa_.str();
    std::string out = negative_ ? "-" : "";
    auto n = static_cast<std::int64_t>(digits.size());
    if (exponent_ >= 0 && n + exponent_ <= 21) {
        out += digits;
        out.append(static_cast<std::size_t>(exponent_), '0');
    } else if (exponent_ < 0 && -exponent_ <= 21) {
        std::int64_t point = n + exponent_;
        if (point > 0) {
            out += digits.substr(0, static_cast<std::size_t>(point)) + "." + digits.substr(static_cast<std::size_t>(point));
        } else {
            out += "0." + std::string(static_cast<std::size_t>(-point), '0') + digits;
        }
    } else {
        out += digits.substr(0, 1);
        if (n > 1) out += "." + digits.substr(1);
        out += "e" + std::to_string(exponent_ + n - 1);
    }
    return out;
}

// ---------------------------------------------------------------- json

const json* json::find(const std::string& key) const {
    if (!is_object()) return nullptr;
    const auto& o = as_object();
    auto it = o.find(key);
    return it == o.end() ? nullptr : &it->second;
}

const char* kind_name(json::kind k) {
    switch (k) {
        case json::kind::null: return "null";
        case json::kind::boolean: return "boolean";
        case json::kind::number: return "number";
        case json::kind::string: return "string";
        case json::kind::array: return "array";
        case json::kind::object: return "object";
    }
    return "?";
}

namespace {

// SAX consumer that builds jsonelim::json and rejects duplicate keys.
class builder {
public:
    using number_integer_t = std::int64_t;
    using number_unsigned_t = std::uint64_t;
    using number_float_t = double;
    using string_t = std::string;
    using binary_t = nlohmann::json::binary_t;

    bool null() { return put(json(nullptr)); }
    bool boolean(bool b) { return put(json(b)); }
    bool number_integer(std::int64_t v) { return put(json(decimal(v))); }
    bool number_unsigned(std::uint64_t v) { return put(json(decimal::parse(std::to_string(v)))); }
    bool number_float(double, const std::string& s) { return put(json(decimal::parse(s))); }
    bool string(std::string& s) { return put(json(std::move(s))); }
    bool binary(binary_t&) { return false; }

    bool start_object(std::size_t) {
        frames_.push_back(frame{true, {}, {}, {}});
        return true;
    }
    bool key(std::string& k) {
        auto& f = frames_.back();
        if (f.members.count(k)) {
            duplicate_ = k;
            return false;
        }
        f.pending_key = std::move(k);
        return true;
    }
    bool end_object() {
        frame f = std::move(frames_.back());
        frames_.pop_back();
        return put(json(std::move(f.members)));
    }
    bool start_array(std::size_t) {
        frames_.push_back(frame{false, {}, {}, {}});
        return true;
    }
    bool end_array() {
        frame f = std::move(frames_.back());
        frames_.pop_back();
        return put(json(std::move(f.items)));
    }

    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
        error_ = ex.what();
        position_ = position;
        return false;
    }

    json result;
    std::string duplicate_;
    std::string error_;
    std::size_t position_ = std::string::npos;

private:
    struct frame {
        bool is_object;
        json_object members;
        json_array items;
        std::string pending_key;
    };

    bool put(json v) {
        if (frames_.empty()) {
            result = std::move(v);
            return true;
        }
        auto& f = frames_.back();
        if (f.is_object) f.members.emplace(std::move(f.pending_key), std::move(v));
        else f.items.push_back(std::move(v));
        return true;
    }

    std::vector<frame> frames_;
};

}  // namespace

json parse_json(std::string_view text) {
    builder b;
    bool ok = nlohmann::json::sax_parse(text.begin(), text.end(), &b);
    if (!b.duplicate_.empty()) throw json_parse_error("duplicate object key '" + b.duplicate_ + "'", std::string::npos);
    if (!ok) {
        std::string msg = b.error_.empty() ? "malformed JSON" : b.error_;
        throw json_parse_error(msg + " (byte " + std::to_string(b.position_) + ")", b.position_);
    }
    return b.result;
}

json parse_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_json(ss.str());
    } catch (const json_parse_error& e) {
        throw json_parse_error(path + ": " + e.what(), e.offset());
    }
}

namespace {

void write_string(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    static const char* hex = "0123456789abcdef";
                    out += "\\u00";
                    out += hex[c >> 4];
                    out += hex[c & 15];
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
}

void write(std::string& out, const json& v, int indent, int depth) {
    auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (v.type()) {
        case json::kind::null: out += "null"; break;
        case json::kind::boolean: out += v.as_bool() ? "true" : "false"; break;
        case json::kind::number: out += v.as_number().to_string(); break;
        case json::kind::string: write_string(out, v.as_string()); break;
        case json::kind::array: {
            const auto& a = v.as_array();
            out += '[';
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (i) out += ',';
                newline(depth + 1);
                write(out, a[i], indent, depth + 1);
            }
            if (!a.empty()) newline(depth);
            out += ']';
            break;
        }
        case json::kind::object: {
            const auto& o = v.as_object();
            out += '{';
            bool first = true;
            for (const auto& [k, m] : o) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                write_string(out, k);
                out += indent < 0 ? ":" : ": ";
                write(out, m, indent, depth + 1);
            }
            if (!o.empty()) newline(depth);
            out += '}';
            break;
        }
    }
}

}  // namespace

std::string serialize_json(const json& v, int indent) {
    std::string out;
    write(out, v, indent, 0);
    return out;
}

bool json_equal(const json& a, const json& b) {
    if (a.type() != b.type()) return false;
    switch (a.type()) {
        case json::kind::null: return true;
        case json::kind::boolean: return a.as_bool() == b.as_bool();
        case json::kind::number: return a.as_number() == b.as_number();
        case json::kind::string: return a.as_string() == b.as_string();
        case json::kind::array: {
            const auto& x = a.as_array();
            const auto& y = b.as_array();
            if (x.size() != y.size()) return false;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (!json_equal(x[i], y[i])) return false;
            return true;
        }
        case json::kind::object: {
            const auto& x = a.as_object();
            const auto& y = b.as_object();
            if (x.size() != y.size()) return false;
            for (auto i = x.begin(), j = y.begin(); i != x.end(); ++i, ++j)
                if (i->first != j->first || !json_equal(i->second, j->second)) return false;
            return true;
        }
    }
    return false;
}

}  // namespace jsonelim
