#ifndef RULECP_DISJUNCTION_HPP
#define RULECP_DISJUNCTION_HPP

#include <functional>

#include "rulecp/scheduler.hpp"

namespace rulecp {

/// Builds the deterministic rules to close a (branch) CSP under; resolves
/// the per-constraint instantiation of the inner rule set.
using RuleFactory = std::function<std::vector<DomainReductionRule>(const CSP&)>;

/// Arc rules for every binary constraint plus, recursively, constructive
/// disjunction rules for every disjunctive constraint.
RuleFactory default_inner_rules();

struct DisjunctReduction {
    int branch_index = 0;
    DomainTuple reduced;   // over the disjunctive constraint's scope variables
    bool failed = false;   // a failed branch contributes empty sets to the union
};

struct CdOutcome {
    DomainTuple result;                     // full-width tuple
    std::vector<DisjunctReduction> branches;
};

/// Runs one stabilizing derivation per branch on the branch's constraints
/// and the shared domains, then unions the reduced domains componentwise.
CdOutcome cd_reduce(const Constraint& disjunctive, const DomainTuple& d,
                    const RuleFactory& inner_rules,
                    SchedulerKind scheduler = SchedulerKind::Compound,
                    const SchedulerOptions& opts = {});

/// The rule form, schedulable next to other monotonic reduction rules.
DomainReductionRule make_cd_rule(const Constraint& disjunctive, std::string id,
                                 const RuleFactory& inner_rules,
                                 SchedulerKind scheduler = SchedulerKind::Compound);

/// Case analysis: one CSP per branch, the disjunctive constraint replaced
/// by the branch's constraints.
std::vector<CSP> split_disjunction(const CSP& p, std::size_t constraint_index);
std::vector<CSP> split_disjunction(const Constraint& c, const CSP& p);

SplittingRule make_disjunction_splitting_rule(std::size_t constraint_index);

} // namespace rulecp

#endif
