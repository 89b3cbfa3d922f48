#include "rulecp/oracles.hpp"

#include <functional>

#include "rulecp/membership.hpp"
#include "rulecp/rule.hpp"

namespace rulecp {

std::set<Assignment> enumerate_solutions(const CSP& p, OracleBudget budget) {
    std::uint64_t count = 1;
    for (const Variable& v : p.variables) {
        count *= v.domain.size();
        if (count > budget.max_assignments)
            throw BudgetExceeded("assignment space exceeds oracle budget");
    }
    std::set<Assignment> out;
    Assignment cur(p.variables.size());
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == p.variables.size()) {
            if (is_solution(p, cur))
                out.insert(cur);
            return;
        }
        for (const Value& v : p.variables[k].domain.values()) {
            cur[k] = v;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

DomainTuple hyper_arc_closure(const Constraint& c, const DomainTuple& d,
                              OracleBudget budget) {
    if (c.is_disjunctive())
        throw ContractViolation("hyper_arc_closure handles extensional and builtin constraints");
    std::uint64_t count = 1;
    for (int i : c.scope) {
        count *= d[static_cast<std::size_t>(i)].size() + 1;
        if (count > budget.max_subdomain_tuples)
            throw BudgetExceeded("scope space exceeds oracle budget");
    }
    DomainTuple cur = d;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < c.scope.size(); ++k) {
            auto vi = static_cast<std::size_t>(c.scope[k]);
            std::vector<Value> kept;
            for (const Value& a : cur[vi].values()) {
                // value survives iff it occurs in a scope tuple consistent
                // with all current domains
                std::vector<Value> partial(c.scope.size());
                std::function<bool(std::size_t)> rec = [&](std::size_t j) -> bool {
                    if (j == c.scope.size()) {
                        if (c.is_extensional())
                            return std::binary_search(c.extensional().tuples.begin(),
                                                      c.extensional().tuples.end(), partial);
                        return builtin_holds(c.builtin(), partial);
                    }
                    if (j == k) {
                        partial[j] = a;
                        return rec(j + 1);
                    }
                    for (const Value& v : cur[static_cast<std::size_t>(c.scope[j])].values()) {
                        partial[j] = v;
                        if (rec(j + 1))
                            return true;
                    }
                    return false;
                };
                if (rec(0))
                    kept.push_back(a);
            }
            Domain nd{std::vector<Value>(kept)};
            if (nd != cur[vi]) {
                cur.at(vi) = nd;
                changed = true;
            }
        }
    }
    return cur;
}

DomainTuple naive_rule_closure(const std::vector<DomainReductionRule>& rules,
                               const DomainTuple& d) {
    DomainTuple cur = d;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const DomainReductionRule& r : rules) {
            DomainTuple next = apply_reduction(r, cur);
            if (next != cur) {
                cur = next;
                changed = true;
            }
        }
    }
    return cur;
}

DomainTuple ac_closure_oracle(const CSP& p) {
    DomainTuple cur = p.domains();
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Constraint& c : p.constraints) {
            if (c.is_disjunctive() || c.scope.size() != 2)
                continue;
            auto x = static_cast<std::size_t>(c.scope[0]);
            auto y = static_cast<std::size_t>(c.scope[1]);
            auto holds = [&c](const Value& a, const Value& b) {
                if (c.is_extensional())
                    return std::binary_search(c.extensional().tuples.begin(),
                                              c.extensional().tuples.end(),
                                              std::vector<Value>{a, b});
                return builtin_holds(c.builtin(), {a, b});
            };
            for (int dir = 0; dir < 2; ++dir) {
                auto self = dir == 0 ? x : y;
                auto other = dir == 0 ? y : x;
                std::vector<Value> kept;
                for (const Value& a : cur[self].values()) {
                    bool has = false;
                    for (const Value& b : cur[other].values())
                        if (dir == 0 ? holds(a, b) : holds(b, a)) {
                            has = true;
                            break;
                        }
                    if (has)
                        kept.push_back(a);
                }
                Domain nd{std::vector<Value>(kept)};
                if (nd != cur[self]) {
                    cur.at(self) = nd;
                    changed = true;
                }
            }
        }
    }
    return cur;
}

std::vector<MembershipRule> enumerate_all_minimal_rules(
    const Extensional& rel, const std::vector<Domain>& universes,
    std::size_t* single_count) {
    if (universes.size() > 3)
        throw BudgetExceeded("exhaustive rule enumeration limited to arity 3");
    for (const Domain& u : universes)
        if (u.size() > 3)
            throw BudgetExceeded("exhaustive rule enumeration limited to 3-value universes");

    int n = static_cast<int>(universes.size());
    std::vector<MembershipRule> singles;
    for (int z = 0; z < n; ++z) {
        for (const Value& a : universes[static_cast<std::size_t>(z)].values()) {
            // premise candidates: every non-empty range product over the
            // other variables, each variable optionally absent
            std::vector<int> others;
            for (int i = 0; i < n; ++i)
                if (i != z)
                    others.push_back(i);
            std::vector<std::vector<Domain>> choices; // per other var: absent + ranges
            for (int i : others) {
                std::vector<Domain> cs;
                cs.push_back(Domain{}); // marks "absent" below
                const auto& vals = universes[static_cast<std::size_t>(i)].values();
                for (std::size_t mask = 1; mask < (std::size_t{1} << vals.size()); ++mask) {
                    std::vector<Value> vs;
                    for (std::size_t b = 0; b < vals.size(); ++b)
                        if (mask & (std::size_t{1} << b))
                            vs.push_back(vals[b]);
                    cs.push_back(Domain(std::move(vs)));
                }
                choices.push_back(std::move(cs));
            }
            std::vector<std::size_t> pick(others.size(), 0);
            bool done = others.empty();
            auto emit = [&]() {
                MembershipRule r;
                for (std::size_t k = 0; k < others.size(); ++k)
                    if (pick[k] != 0)
                        r.premise.emplace_back(others[k], choices[k][pick[k]]);
                r.conclusions.emplace_back(z, a);
                r.canonicalize();
                if (is_valid(r, rel) && is_minimal(r, rel, universes) &&
                    premise_satisfiable(r, rel))
                    singles.push_back(std::move(r));
            };
            if (done) {
                emit();
            } else {
                while (true) {
                    emit();
                    std::size_t k = 0;
                    while (k < pick.size()) {
                        if (++pick[k] < choices[k].size())
                            break;
                        pick[k] = 0;
                        ++k;
                    }
                    if (k == pick.size())
                        break;
                }
            }
        }
    }
    std::sort(singles.begin(), singles.end());
    singles.erase(std::unique(singles.begin(), singles.end()), singles.end());
    if (single_count)
        *single_count = singles.size();
    return merge_by_premise(std::move(singles));
}

} // namespace rulecp
