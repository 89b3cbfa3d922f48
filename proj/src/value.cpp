#include "rulecp/value.hpp"

#include <charconv>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace rulecp {

namespace {

struct Interner {
    std::mutex mu;
    std::deque<std::string> names; // deque: stable addresses across growth
    std::unordered_map<std::string_view, std::int64_t> ids;

    std::int64_t intern(std::string_view name) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = ids.find(name);
        if (it != ids.end())
            return it->second;
        names.emplace_back(name);
        std::int64_t id = static_cast<std::int64_t>(names.size()) - 1;
        ids.emplace(names.back(), id);
        return id;
    }

    std::string_view name_of(std::int64_t id) {
        std::lock_guard<std::mutex> lock(mu);
        return names[static_cast<std::size_t>(id)];
    }
};

Interner& interner() {
    static Interner instance;
    return instance;
}

} // namespace

Value Value::symbol(std::string_view name) {
    return Value(Kind::Sym, interner().intern(name));
}

std::string_view Value::symbol_name() const {
    return interner().name_of(raw_);
}

std::string Value::to_string() const {
    if (kind_ == Kind::Int)
        return std::to_string(raw_);
    return std::string(symbol_name());
}

Value parse_value_token(std::string_view token) {
    if (!token.empty()) {
        std::int64_t out = 0;
        const char* first = token.data();
        const char* last = token.data() + token.size();
        auto [ptr, ec] = std::from_chars(first, last, out);
        if (ec == std::errc() && ptr == last)
            return Value::integer(out);
    }
    return Value::symbol(token);
}

} // namespace rulecp
