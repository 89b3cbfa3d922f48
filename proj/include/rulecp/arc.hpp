#ifndef RULECP_ARC_HPP
#define RULECP_ARC_HPP

#include "rulecp/scheduler.hpp"

namespace rulecp {

/// One direction of the arc-consistency rule pair of a binary constraint:
/// the target domain keeps exactly its supported values.
struct ArcRule {
    enum class Direction { First, Second };

    Constraint constraint; // binary, non-disjunctive
    Direction direction = Direction::First;
    std::string id;
};

/// Both directions for every binary non-disjunctive constraint of the CSP,
/// ids `ac1(c<k>)` / `ac2(c<k>)`.
std::vector<ArcRule> make_arc_rule_descriptors(const CSP& p);

DomainReductionRule as_reduction_rule(const ArcRule& r);

std::vector<DomainReductionRule> make_arc_rules(const CSP& p);

/// Declared structure: the two rules of one constraint commute, rules
/// of the same direction of constraints sharing the corresponding variable
/// commute, and every revise function is idempotent.
CommutativityDeclaration arc_commutativity(const CSP& p);

/// Supported subset of the target domain; other components untouched.
DomainTuple revise(const ArcRule& r, const DomainTuple& d);

/// Every value of each variable of every binary constraint has a support in
/// the other variable's domain.
bool is_arc_consistent(const CSP& p);

/// Equivalent CSP closed under all arc-consistency rules, computed by the
/// improved iteration with the declarations above.
CSP ac3(const CSP& p, const SchedulerOptions& opts = {});

} // namespace rulecp

#endif
