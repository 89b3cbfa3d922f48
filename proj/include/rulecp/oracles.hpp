#ifndef RULECP_ORACLES_HPP
#define RULECP_ORACLES_HPP

#include <set>
#include <stdexcept>
#include <vector>

#include "rulecp/csp.hpp"

namespace rulecp {

struct DomainReductionRule; // rule.hpp
struct MembershipRule;      // membership.hpp

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Oracles refuse to run past these sizes rather than run unbounded.
struct OracleBudget {
    std::uint64_t max_assignments = 1000000;
    std::uint64_t max_subdomain_tuples = 1000000;
};

/// Exact solution set by exhaustive enumeration.
std::set<Assignment> enumerate_solutions(const CSP& p, OracleBudget budget = {});

/// Keeps in each scope domain exactly the values occurring in some tuple of
/// the constraint consistent with all current domains; iterated to a
/// fixpoint. Non-scope components pass through.
DomainTuple hyper_arc_closure(const Constraint& c, const DomainTuple& d,
                              OracleBudget budget = {});

/// Round-robin application of all rules until a full pass changes nothing.
DomainTuple naive_rule_closure(const std::vector<DomainReductionRule>& rules,
                               const DomainTuple& d);

/// Brute-force arc-consistency closure: repeatedly drop unsupported values
/// of every binary constraint until stable. Independent of the rule and
/// scheduler machinery.
DomainTuple ac_closure_oracle(const CSP& p);

/// All minimal valid membership rules of an extensional constraint by
/// filtering every syntactically possible canonical rule; exhaustive, so
/// only for arity <= 3 and universes of <= 3 values. Returns merged
/// multi-conclusion rules; `single_count` (when given) receives the
/// single-conclusion tally.
std::vector<MembershipRule> enumerate_all_minimal_rules(
    const Extensional& rel, const std::vector<Domain>& universes,
    std::size_t* single_count = nullptr);

} // namespace rulecp

#endif
