#ifndef RULECP_VALUE_HPP
#define RULECP_VALUE_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace rulecp {

/// A single domain element: either a signed integer or an interned symbol.
/// Symbols are ordered by interning order, integers by magnitude; a CSP
/// never mixes the two kinds.
class Value {
public:
    enum class Kind : std::uint8_t { Int, Sym };

    Value() : kind_(Kind::Int), raw_(0) {}

    static Value integer(std::int64_t v) { return Value(Kind::Int, v); }
    static Value symbol(std::string_view name);

    Kind kind() const { return kind_; }
    bool is_int() const { return kind_ == Kind::Int; }
    bool is_symbol() const { return kind_ == Kind::Sym; }

    std::int64_t as_int() const { return raw_; }
    std::string_view symbol_name() const;

    std::string to_string() const;

    friend auto operator<=>(const Value&, const Value&) = default;

private:
    Value(Kind k, std::int64_t raw) : kind_(k), raw_(raw) {}

    Kind kind_;
    std::int64_t raw_;
};

/// Parses a bare token: integers like "-3", anything else is a symbol.
Value parse_value_token(std::string_view token);

} // namespace rulecp

#endif
