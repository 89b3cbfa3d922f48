#include "rulecp/domain.hpp"

#include <algorithm>
#include <sstream>

namespace rulecp {

Domain::Domain(std::vector<Value> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

Domain::Domain(std::initializer_list<Value> values)
    : Domain(std::vector<Value>(values)) {}

Domain Domain::range(std::int64_t lo, std::int64_t hi) {
    std::vector<Value> vals;
    for (std::int64_t v = lo; v <= hi; ++v)
        vals.push_back(Value::integer(v));
    return Domain(std::move(vals));
}

bool Domain::contains(const Value& v) const {
    return std::binary_search(values_.begin(), values_.end(), v);
}

bool Domain::subset_of(const Domain& other) const {
    return std::includes(other.values_.begin(), other.values_.end(),
                         values_.begin(), values_.end());
}

Domain Domain::without(const Value& v) const {
    std::vector<Value> out;
    out.reserve(values_.size());
    for (const Value& x : values_)
        if (x != v)
            out.push_back(x);
    Domain d;
    d.values_ = std::move(out); // already sorted
    return d;
}

Domain Domain::intersect(const Domain& other) const {
    std::vector<Value> out;
    std::set_intersection(values_.begin(), values_.end(),
                          other.values_.begin(), other.values_.end(),
                          std::back_inserter(out));
    Domain d;
    d.values_ = std::move(out);
    return d;
}

Domain Domain::unite(const Domain& other) const {
    std::vector<Value> out;
    std::set_union(values_.begin(), values_.end(),
                   other.values_.begin(), other.values_.end(),
                   std::back_inserter(out));
    Domain d;
    d.values_ = std::move(out);
    return d;
}

std::string Domain::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i)
            os << ',';
        os << values_[i].to_string();
    }
    os << '}';
    return os.str();
}

bool DomainTuple::componentwise_subset_of(const DomainTuple& other) const {
    if (domains_.size() != other.domains_.size())
        return false;
    for (std::size_t i = 0; i < domains_.size(); ++i)
        if (!domains_[i].subset_of(other.domains_[i]))
            return false;
    return true;
}

bool DomainTuple::any_empty() const {
    return std::any_of(domains_.begin(), domains_.end(),
                       [](const Domain& d) { return d.empty(); });
}

std::string DomainTuple::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < domains_.size(); ++i) {
        if (i)
            os << ' ';
        os << domains_[i].to_string();
    }
    return os.str();
}

std::string DomainTuple::hash_hex() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](char c) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    };
    for (const Domain& d : domains_) {
        for (const Value& v : d.values())
            for (char c : v.to_string())
                mix(c);
        mix(';');
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

} // namespace rulecp
