#include "rulecp/disjunction.hpp"

#include <algorithm>
#include <map>

#include "rulecp/arc.hpp"

namespace rulecp {

namespace {

Constraint remap_constraint(const Constraint& c, const std::map<int, int>& to_local) {
    if (c.is_disjunctive()) {
        const Disjunctive& dj = c.disjunctive();
        std::vector<Constraint> left, right;
        for (const Constraint& inner : dj.left)
            left.push_back(remap_constraint(inner, to_local));
        for (const Constraint& inner : dj.right)
            right.push_back(remap_constraint(inner, to_local));
        return make_disjunctive(std::move(left), std::move(right));
    }
    Constraint out = c;
    for (int& v : out.scope)
        v = to_local.at(v);
    return out;
}

/// The branch sub-CSP lives on the disjunctive constraint's scope only;
/// inner rules touch no other variable.
CSP branch_csp(const Constraint& disjunctive, const std::vector<Constraint>& branch,
               const DomainTuple& d) {
    std::map<int, int> to_local;
    CSP sub;
    for (std::size_t k = 0; k < disjunctive.scope.size(); ++k) {
        int v = disjunctive.scope[k];
        to_local[v] = static_cast<int>(k);
        sub.variables.push_back(Variable{"v" + std::to_string(v),
                                         d[static_cast<std::size_t>(v)]});
    }
    for (const Constraint& c : branch)
        sub.constraints.push_back(remap_constraint(c, to_local));
    return sub;
}

} // namespace

RuleFactory default_inner_rules() {
    return [](const CSP& p) {
        std::vector<DomainReductionRule> rules = make_arc_rules(p);
        for (std::size_t k = 0; k < p.constraints.size(); ++k)
            if (p.constraints[k].is_disjunctive())
                rules.push_back(make_cd_rule(p.constraints[k], "cd(c" + std::to_string(k) + ")",
                                             default_inner_rules()));
        return rules;
    };
}

CdOutcome cd_reduce(const Constraint& disjunctive, const DomainTuple& d,
                    const RuleFactory& inner_rules, SchedulerKind scheduler,
                    const SchedulerOptions& opts) {
    if (!disjunctive.is_disjunctive())
        throw ContractViolation("cd_reduce requires a disjunctive constraint");
    const Disjunctive& dj = disjunctive.disjunctive();

    CdOutcome out;
    std::size_t width = disjunctive.scope.size();
    std::vector<Domain> unioned(width); // starts all-empty

    const std::vector<Constraint>* branches[2] = {&dj.left, &dj.right};
    for (int b = 0; b < 2; ++b) {
        CSP sub = branch_csp(disjunctive, *branches[b], d);
        FixpointResult fixed =
            run_scheduler(scheduler, inner_rules(sub), sub.domains(), {}, {}, opts);
        DisjunctReduction red;
        red.branch_index = b;
        red.failed = fixed.domains.any_empty();
        if (red.failed) {
            red.reduced = DomainTuple(std::vector<Domain>(width));
        } else {
            red.reduced = fixed.domains;
            for (std::size_t k = 0; k < width; ++k)
                unioned[k] = unioned[k].unite(fixed.domains[k]);
        }
        out.branches.push_back(std::move(red));
    }

    out.result = d;
    for (std::size_t k = 0; k < width; ++k)
        out.result.at(static_cast<std::size_t>(disjunctive.scope[k])) = unioned[k];
    return out;
}

DomainReductionRule make_cd_rule(const Constraint& disjunctive, std::string id,
                                 const RuleFactory& inner_rules, SchedulerKind scheduler) {
    if (!disjunctive.is_disjunctive())
        throw ContractViolation("make_cd_rule requires a disjunctive constraint");
    Scheme scheme{disjunctive.scope};

    // rebase the constraint onto scheme-local indices so the reduction is a
    // pure function of its scheme projection
    std::map<int, int> to_local;
    for (std::size_t k = 0; k < disjunctive.scope.size(); ++k)
        to_local[disjunctive.scope[k]] = static_cast<int>(k);
    Constraint local = remap_constraint(disjunctive, to_local);

    DomainReductionRule rule;
    rule.id = std::move(id);
    rule.scheme = scheme;
    rule.monotonic = true;  // holds when the inner rules are monotonic
    rule.idempotent = false;
    rule.reduce = [local, inner_rules, scheduler](const std::vector<Domain>& in) {
        CdOutcome out = cd_reduce(local, DomainTuple(in), inner_rules, scheduler);
        return out.result.domains();
    };
    return rule;
}

std::vector<CSP> split_disjunction(const CSP& p, std::size_t constraint_index) {
    const Constraint& c = p.constraints.at(constraint_index);
    if (!c.is_disjunctive())
        throw ContractViolation("split_disjunction requires a disjunctive constraint");
    const Disjunctive& dj = c.disjunctive();

    std::vector<CSP> out;
    for (const std::vector<Constraint>* branch : {&dj.left, &dj.right}) {
        CSP child = p;
        child.constraints.erase(child.constraints.begin() +
                                static_cast<std::ptrdiff_t>(constraint_index));
        for (const Constraint& inner : *branch)
            child.constraints.push_back(inner);
        out.push_back(std::move(child));
    }
    return out;
}

std::vector<CSP> split_disjunction(const Constraint& c, const CSP& p) {
    auto it = std::find(p.constraints.begin(), p.constraints.end(), c);
    if (it == p.constraints.end())
        throw ContractViolation("split_disjunction: constraint not part of the CSP");
    return split_disjunction(p, static_cast<std::size_t>(it - p.constraints.begin()));
}

SplittingRule make_disjunction_splitting_rule(std::size_t constraint_index) {
    SplittingRule rule;
    rule.id = "split_disjunction(c" + std::to_string(constraint_index) + ")";
    rule.split = [constraint_index](const CSP& p) {
        return split_disjunction(p, constraint_index);
    };
    return rule;
}

} // namespace rulecp
