#ifndef RULECP_DOMAIN_HPP
#define RULECP_DOMAIN_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "rulecp/value.hpp"

namespace rulecp {

/// A finite variable domain, kept sorted and duplicate-free so iteration
/// order is deterministic.
class Domain {
public:
    Domain() = default;
    explicit Domain(std::vector<Value> values);
    Domain(std::initializer_list<Value> values);

    /// Integer range [lo..hi], empty when lo > hi.
    static Domain range(std::int64_t lo, std::int64_t hi);

    bool empty() const { return values_.empty(); }
    std::size_t size() const { return values_.size(); }
    bool singleton() const { return values_.size() == 1; }

    bool contains(const Value& v) const;
    bool subset_of(const Domain& other) const;

    Domain without(const Value& v) const;
    Domain intersect(const Domain& other) const;
    Domain unite(const Domain& other) const;

    const std::vector<Value>& values() const { return values_; }
    const Value& operator[](std::size_t i) const { return values_[i]; }

    /// Renders as "{a,b,c}".
    std::string to_string() const;

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    std::vector<Value> values_;
};

/// One domain per CSP variable; the object the schedulers iterate on.
/// The scheduler ordering has d above e when every component of d is a
/// subset of the matching component of e (domains only shrink).
class DomainTuple {
public:
    DomainTuple() = default;
    explicit DomainTuple(std::vector<Domain> domains) : domains_(std::move(domains)) {}

    std::size_t size() const { return domains_.size(); }
    const Domain& operator[](std::size_t i) const { return domains_[i]; }
    Domain& at(std::size_t i) { return domains_[i]; }

    bool componentwise_subset_of(const DomainTuple& other) const;
    bool any_empty() const;

    const std::vector<Domain>& domains() const { return domains_; }

    /// FNV-1a over the canonical rendering; used in scheduler stat records.
    std::string hash_hex() const;

    std::string to_string() const;

    friend bool operator==(const DomainTuple&, const DomainTuple&) = default;

private:
    std::vector<Domain> domains_;
};

} // namespace rulecp

#endif
