#ifndef RULECP_MEMBERSHIP_HPP
#define RULECP_MEMBERSHIP_HPP

#include <string>
#include <vector>

#include "rulecp/rule.hpp"

namespace rulecp {

struct BoundsExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rule of the form  y1 in S1, ..., yk in Sk  ->  z1 != a1, ..., zm != am.
/// Premise and conclusion variables are disjoint; canonical form keeps the
/// premise sorted by variable then range and the conclusions sorted by
/// (variable, value).
struct MembershipRule {
    std::vector<std::pair<int, Domain>> premise;     // (variable, range)
    std::vector<std::pair<int, Value>> conclusions;  // (variable, forbidden value)

    void canonicalize();

    friend bool operator==(const MembershipRule& a, const MembershipRule& b) {
        return a.premise == b.premise && a.conclusions == b.conclusions;
    }
    friend bool operator<(const MembershipRule& a, const MembershipRule& b) {
        if (a.premise != b.premise) {
            // lexicographic on (var, range values)
            return std::lexicographical_compare(
                a.premise.begin(), a.premise.end(), b.premise.begin(), b.premise.end(),
                [](const auto& x, const auto& y) {
                    if (x.first != y.first) return x.first < y.first;
                    return x.second.values() < y.second.values();
                });
        }
        return std::lexicographical_compare(
            a.conclusions.begin(), a.conclusions.end(), b.conclusions.begin(),
            b.conclusions.end());
    }
};

/// Every premise domain is non-empty and inside its range.
bool rule_applies(const MembershipRule& r, const DomainTuple& d);

/// Removes each forbidden value from its variable's domain; requires
/// rule_applies.
DomainTuple apply_membership(const MembershipRule& r, const DomainTuple& d);

/// No relation tuple matches every premise range while taking a forbidden
/// value at a conclusion variable. Rule variables are positions into the
/// constraint scope order used by `rel`.
bool is_valid(const MembershipRule& r, const Extensional& rel);

/// Valid, and no conclusion survives dropping a premise atom or growing a
/// premise range by one universe value.
bool is_minimal(const MembershipRule& r, const Extensional& rel,
                const std::vector<Domain>& universes);

/// Some relation tuple matches every premise range. Rules failing this fire
/// only on failed CSPs and are excluded from generation.
bool premise_satisfiable(const MembershipRule& r, const Extensional& rel);

struct GenerationBounds {
    int max_arity = 4;
    int max_universe = 12;
};

/// All minimal valid membership rules of the constraint with satisfiable
/// premises, in canonical form with equal-premise rules merged into
/// multi-conclusion rules. `single_count` (when given) receives the
/// single-conclusion tally before merging.
std::vector<MembershipRule> generate_minimal_rules(
    const Extensional& rel, const std::vector<Domain>& universes,
    GenerationBounds bounds = {}, std::size_t* single_count = nullptr);

/// Merges rules that share an identical premise.
std::vector<MembershipRule> merge_by_premise(std::vector<MembershipRule> rules);

/// Counts, per generation stage, how a constraint's rule set evolved.
struct RuleSetReport {
    std::size_t generated_single = 0; // minimal single-conclusion rules
    std::size_t minimal = 0;          // after canonical premise merging
    std::size_t post_redundancy = 0;  // after remove_redundant
    std::string constraint_id;
};

/// The scheduler lifting: fires whenever every premise domain is inside its
/// range (empty domains included, keeping the function monotonic). Stable
/// and idempotent by construction.
DomainReductionRule as_reduction_rule(const MembershipRule& r, std::string id);

std::vector<DomainReductionRule> as_reduction_rules(
    const std::vector<MembershipRule>& rules, const std::string& constraint_id);

/// Closing R minus {r} from the tuple seeded with r's premise ranges
/// (other components at their universes) already removes every conclusion
/// value of r.
bool is_redundant(const MembershipRule& r, const std::vector<MembershipRule>& rule_set,
                  const std::vector<Domain>& universes);

/// Greedy removal pass in a fixed order: larger premise variable count
/// first, then smaller total range size, then canonical order. Each
/// candidate is tested against the current (partially pruned) set.
std::vector<MembershipRule> remove_redundant(std::vector<MembershipRule> rules,
                                             const std::vector<Domain>& universes);

// -- propagation rules (constraint-adding deterministic rules) ------------

/// In presence of all body constraints the head constraints can be added;
/// domains are untouched. Heads must come from the allowed builtin catalog.
struct PropagationRule {
    std::string id;
    std::vector<Constraint> body;
    std::vector<Constraint> head;
};

CSP apply_propagation_rule(const PropagationRule& pr, const CSP& p);

/// Transitivity instances  x<y, y<z / x<z  for every ordered variable
/// triple of the CSP.
std::vector<PropagationRule> make_transitivity_rules(const CSP& p);

// -- rule file format ------------------------------------------------------

/// One rule per line: `y1 in {a,b}, y2 in {c} -> z1 != a, z2 != b` with
/// variables by name. Canonical serialization round-trips bit-exactly.
std::string format_rule(const MembershipRule& r, const std::vector<std::string>& names);

std::string format_rule_file(const std::vector<MembershipRule>& rules,
                             const std::vector<std::string>& names);

/// CHR-flavoured rendering, display only.
std::string format_rule_chr(const MembershipRule& r, const std::vector<std::string>& names,
                            const std::string& constraint_name);

struct RuleParseError : std::runtime_error {
    int line;
    RuleParseError(int line_, const std::string& what)
        : std::runtime_error(what), line(line_) {}
};

std::vector<MembershipRule> parse_rule_file(const std::string& text,
                                            const std::vector<std::string>& names);

} // namespace rulecp

#endif
