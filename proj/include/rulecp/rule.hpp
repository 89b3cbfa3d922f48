#ifndef RULECP_RULE_HPP
#define RULECP_RULE_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rulecp/csp.hpp"

namespace rulecp {

/// Raised when a rule's reduction returns a non-subset domain; carries the
/// offending rule id in the message.
struct RuleContractViolation : ContractViolation {
    using ContractViolation::ContractViolation;
};

/// Strictly increasing subsequence of variable indices a rule reads and
/// writes.
struct Scheme {
    std::vector<int> indices;

    Scheme() = default;
    explicit Scheme(std::vector<int> idx);

    std::size_t size() const { return indices.size(); }
    bool contains(int i) const;
    std::string to_string() const; // "[0,2]"

    friend bool operator==(const Scheme&, const Scheme&) = default;
};

using ReduceFn = std::function<std::vector<Domain>(const std::vector<Domain>&)>;

/// Deterministic proof rule: replaces the scheme's components of a domain
/// tuple by the reduction function's output, which must shrink them.
/// Capability flags are declared by the constructor and validated by
/// property tests; schedulers trust them.
struct DomainReductionRule {
    std::string id;
    Scheme scheme;
    ReduceFn reduce;
    bool monotonic = true;
    bool idempotent = false;
    bool stable = false;
};

/// Splitting proof rule: maps a CSP to two or more CSPs whose solution-set
/// union equals the input's.
struct SplittingRule {
    std::string id;
    std::function<std::vector<CSP>(const CSP&)> split;
};

std::vector<Domain> project_scheme(const Scheme& s, const DomainTuple& d);

/// Applies the rule to the scheme components, validating that each reduced
/// domain is a subset of its input.
DomainTuple apply_reduction(const DomainReductionRule& r, const DomainTuple& d);

struct MonotonicityReport {
    bool monotonic = true;
    // A falsifying nested pair of scheme-projected sub-tuples, inner first.
    std::optional<std::pair<std::vector<Domain>, std::vector<Domain>>> witness;
};

/// Checks reduce(D) componentwise-subset-of reduce(E) on each sampled pair
/// (D, E) with D componentwise inside E. Samples are scheme-projected
/// sub-tuples.
MonotonicityReport check_monotonic(
    const DomainReductionRule& r,
    const std::vector<std::pair<std::vector<Domain>, std::vector<Domain>>>& samples);

/// All nested pairs of sub-domain tuples of the given universe (exhaustive;
/// meant for small universes). include_empty keeps empty sub-domains.
std::vector<std::pair<std::vector<Domain>, std::vector<Domain>>>
nested_pairs_exhaustive(const std::vector<Domain>& universe, bool include_empty = true);

/// Solution sets of p and r(p) coincide (oracle enumeration; p must be
/// small enough).
bool check_equivalence_preserving(const DomainReductionRule& r, const CSP& p);

/// Union of the children's solution sets equals p's.
bool check_equivalence_preserving(const SplittingRule& r, const CSP& p);

bool is_closed_under(const DomainTuple& d, const std::vector<DomainReductionRule>& rules);

enum class DerivationStatus { Successful, Failed, Stabilizing, Ongoing };

std::string to_string(DerivationStatus s);

struct DerivationStep {
    std::string rule_id;
    Scheme scheme;
    // Only the components the step changed.
    std::vector<std::tuple<int, Domain, Domain>> changes;
};

/// Ordered log of effective rule applications with the terminal
/// classification of the derivation.
struct DerivationTrace {
    std::vector<DerivationStep> steps;
    DerivationStatus status = DerivationStatus::Ongoing;

    void record(const std::string& rule_id, const Scheme& scheme,
                const DomainTuple& before, const DomainTuple& after);

    /// Line-oriented rendering:
    ///   step <k>: <rule-id> [<scheme>] <var>:<before>-><after> ...
    ///   status: successful|failed|stabilizing
    std::string render(const std::vector<std::string>& var_names) const;
};

// Relation operations backing the monotonic-rule repertoire (union,
// intersection, transposition, composition, join, projection, element
// removal). Binary relations are tuple lists.
using Relation = std::vector<std::vector<Value>>;

Relation transpose(const Relation& r);
Relation compose(const Relation& r, const Relation& s);

/// Values of `dx` supported by some `dy` value under the relation.
Domain supported_first(const Relation& r, const Domain& dx, const Domain& dy);
Domain supported_second(const Relation& r, const Domain& dx, const Domain& dy);

} // namespace rulecp

#endif
