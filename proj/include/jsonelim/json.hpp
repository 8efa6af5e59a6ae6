#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace jsonelim {

// Raised for malformed JSON text. `offset` is the byte position reported by
// the lexer, or npos when the error is not tied to a position.
class json_parse_error : public std::runtime_error {
public:
    json_parse_error(const std::string& what, std::size_t offset)
        : std::runtime_error(what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Exact decimal: (-1)^neg * mantissa * 10^exponent, normalized so that the
// mantissa carries no trailing zeros and zero is always positive.
class decimal {
public:
    using integer = boost::multiprecision::cpp_int;

    decimal() = default;
    decimal(std::int64_t v);
    static decimal parse(std::string_view text);  // JSON number grammar

    bool is_zero() const { return mantissa_ == 0; }
    bool is_negative() const { return negative_; }
    bool is_integer() const { return exponent_ >= 0; }
    const integer& mantissa() const { return mantissa_; }
    std::int64_t exponent() const { return exponent_; }

    // Value as an unsigned count if it is a non-negative integer that fits.
    bool to_uint64(std::uint64_t& out) const;

    int compare(const decimal& other) const;
    bool is_multiple_of(const decimal& divisor) const;

    std::string to_string() const;

    friend bool operator==(const decimal& a, const decimal& b) {
        return a.negative_ == b.negative_ && a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
    }
    friend bool operator<(const decimal& a, const decimal& b) { return a.compare(b) < 0; }

private:
    void normalize();

    bool negative_ = false;
    integer mantissa_ = 0;
    std::int64_t exponent_ = 0;
};

class json;
using json_array = std::vector<json>;
using json_object = std::map<std::string, json>;

// Immutable JSON value. Arrays and objects are shared, so copies are cheap.
class json {
public:
    enum class kind { null, boolean, number, string, array, object };

    json() = default;
    json(std::nullptr_t) {}
    json(bool b) : v_(b) {}
    json(int v) : v_(decimal(v)) {}
    json(std::int64_t v) : v_(decimal(v)) {}
    json(decimal d) : v_(std::move(d)) {}
    json(const char* s) : v_(std::string(s)) {}
    json(std::string s) : v_(std::move(s)) {}
    json(json_array a) : v_(std::make_shared<const json_array>(std::move(a))) {}
    json(json_object o) : v_(std::make_shared<const json_object>(std::move(o))) {}

    kind type() const { return static_cast<kind>(v_.index()); }
    bool is_null() const { return type() == kind::null; }
    bool is_bool() const { return type() == kind::boolean; }
    bool is_number() const { return type() == kind::number; }
    bool is_string() const { return type() == kind::string; }
    bool is_array() const { return type() == kind::array; }
    bool is_object() const { return type() == kind::object; }

    bool as_bool() const { return std::get<bool>(v_); }
    const decimal& as_number() const { return std::get<decimal>(v_); }
    const std::string& as_string() const { return std::get<std::string>(v_); }
    const json_array& as_array() const { return *std::get<array_ptr>(v_); }
    const json_object& as_object() const { return *std::get<object_ptr>(v_); }

    // Object member lookup; nullptr when absent or not an object.
    const json* find(const std::string& key) const;

private:
    using array_ptr = std::shared_ptr<const json_array>;
    using object_ptr = std::shared_ptr<const json_object>;
    std::variant<std::nullptr_t, bool, decimal, std::string, array_ptr, object_ptr> v_;
};

const char* kind_name(json::kind k);

json parse_json(std::string_view text);
json parse_json_file(const std::string& path);

// Deterministic text: object keys in byte order, canonical number spelling.
// indent < 0 gives the compact form.
std::string serialize_json(const json& v, int indent = -1);

// Structural equality; numbers compare by value, objects ignore order.
bool json_equal(const json& a, const json& b);

}  // namespace jsonelim
