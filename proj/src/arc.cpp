#include "rulecp/arc.hpp"

#include <algorithm>

namespace rulecp {

namespace {

bool binary_pair_holds(const Constraint& c, const Value& a, const Value& b) {
    if (c.is_extensional())
        return std::binary_search(c.extensional().tuples.begin(),
                                  c.extensional().tuples.end(), std::vector<Value>{a, b});
    return builtin_holds(c.builtin(), {a, b});
}

Domain supported_values(const Constraint& c, bool first, const Domain& self,
                        const Domain& other) {
    std::vector<Value> kept;
    for (const Value& a : self.values()) {
        bool has = false;
        for (const Value& b : other.values())
            if (first ? binary_pair_holds(c, a, b) : binary_pair_holds(c, b, a)) {
                has = true;
                break;
            }
        if (has)
            kept.push_back(a);
    }
    return Domain(std::move(kept));
}

} // namespace

std::vector<ArcRule> make_arc_rule_descriptors(const CSP& p) {
    std::vector<ArcRule> out;
    for (std::size_t k = 0; k < p.constraints.size(); ++k) {
        const Constraint& c = p.constraints[k];
        if (c.is_disjunctive() || c.scope.size() != 2)
            continue;
        out.push_back(ArcRule{c, ArcRule::Direction::First, "ac1(c" + std::to_string(k) + ")"});
        out.push_back(ArcRule{c, ArcRule::Direction::Second, "ac2(c" + std::to_string(k) + ")"});
    }
    return out;
}

DomainReductionRule as_reduction_rule(const ArcRule& r) {
    int x = r.constraint.scope[0];
    int y = r.constraint.scope[1];
    bool reduce_first = r.direction == ArcRule::Direction::First;
    // scheme indices must increase; remember where x and y land
    bool x_low = x < y;
    Scheme scheme{x_low ? std::vector<int>{x, y} : std::vector<int>{y, x}};
    Constraint c = r.constraint;

    DomainReductionRule rule;
    rule.id = r.id;
    rule.scheme = scheme;
    rule.monotonic = true;
    rule.idempotent = true;
    rule.reduce = [c, reduce_first, x_low](const std::vector<Domain>& in) {
        const Domain& dx = x_low ? in[0] : in[1];
        const Domain& dy = x_low ? in[1] : in[0];
        std::vector<Domain> out = in;
        if (reduce_first) {
            Domain nd = supported_values(c, true, dx, dy);
            out[x_low ? 0 : 1] = nd;
        } else {
            Domain nd = supported_values(c, false, dy, dx);
            out[x_low ? 1 : 0] = nd;
        }
        return out;
    };
    return rule;
}

std::vector<DomainReductionRule> make_arc_rules(const CSP& p) {
    std::vector<DomainReductionRule> out;
    for (const ArcRule& r : make_arc_rule_descriptors(p))
        out.push_back(as_reduction_rule(r));
    return out;
}

CommutativityDeclaration arc_commutativity(const CSP& p) {
    CommutativityDeclaration decl;
    std::vector<ArcRule> rules = make_arc_rule_descriptors(p);
    auto declare = [&decl](const std::string& a, const std::string& b) {
        decl.comm[a].insert(b);
        decl.comm[b].insert(a);
    };
    for (const ArcRule& r : rules)
        decl.idempotent.insert(r.id);
    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = i + 1; j < rules.size(); ++j) {
            const ArcRule& a = rules[i];
            const ArcRule& b = rules[j];
            if (a.constraint == b.constraint && a.direction != b.direction) {
                declare(a.id, b.id); // the pair of one constraint
            } else if (a.direction == b.direction) {
                // same-direction rules of constraints sharing that variable
                bool first = a.direction == ArcRule::Direction::First;
                int va = first ? a.constraint.scope[0] : a.constraint.scope[1];
                int vb = first ? b.constraint.scope[0] : b.constraint.scope[1];
                if (va == vb)
                    declare(a.id, b.id);
            }
        }
    }
    return decl;
}

DomainTuple revise(const ArcRule& r, const DomainTuple& d) {
    return apply_reduction(as_reduction_rule(r), d);
}

bool is_arc_consistent(const CSP& p) {
    DomainTuple d = p.domains();
    for (const Constraint& c : p.constraints) {
        if (c.is_disjunctive() || c.scope.size() != 2)
            continue;
        const Domain& dx = d[static_cast<std::size_t>(c.scope[0])];
        const Domain& dy = d[static_cast<std::size_t>(c.scope[1])];
        if (supported_values(c, true, dx, dy) != dx)
            return false;
        if (supported_values(c, false, dy, dx) != dy)
            return false;
    }
    return true;
}

CSP ac3(const CSP& p, const SchedulerOptions& opts) {
    std::vector<DomainReductionRule> rules = make_arc_rules(p);
    FixpointResult fixed = improved_iteration(rules, p.domains(), arc_commutativity(p), opts);
    return restrict_constraints(p, fixed.domains);
}

} // namespace rulecp
