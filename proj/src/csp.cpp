#include "rulecp/csp.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

namespace rulecp {

namespace {

void collect_scope(const Constraint& c, std::set<int>& out) {
    if (c.is_disjunctive()) {
        for (const Constraint& inner : c.disjunctive().left)
            collect_scope(inner, out);
        for (const Constraint& inner : c.disjunctive().right)
            collect_scope(inner, out);
    } else {
        out.insert(c.scope.begin(), c.scope.end());
    }
}

} // namespace

DomainTuple CSP::domains() const {
    std::vector<Domain> doms;
    doms.reserve(variables.size());
    for (const Variable& v : variables)
        doms.push_back(v.domain);
    return DomainTuple(std::move(doms));
}

int CSP::variable_index(std::string_view name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i].name == name)
            return static_cast<int>(i);
    return -1;
}

std::vector<std::string> CSP::variable_names() const {
    std::vector<std::string> names;
    names.reserve(variables.size());
    for (const Variable& v : variables)
        names.push_back(v.name);
    return names;
}

Constraint make_extensional(std::vector<int> scope, std::vector<std::vector<Value>> tuples) {
    for (const auto& t : tuples)
        if (t.size() != scope.size())
            throw ContractViolation("extensional tuple arity does not match scope");
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    return Constraint{std::move(scope), Extensional{std::move(tuples)}};
}

Constraint make_builtin(std::vector<int> scope, Builtin b) {
    std::size_t want = 0;
    switch (b.kind) {
    case BuiltinKind::Lt:
    case BuiltinKind::EqOffset:
    case BuiltinKind::AbsDiffEq: want = 2; break;
    case BuiltinKind::NotEqualValue:
    case BuiltinKind::InSet: want = 1; break;
    }
    if (scope.size() != want)
        throw ContractViolation("builtin arity does not match catalog entry");
    return Constraint{std::move(scope), std::move(b)};
}

Constraint make_disjunctive(std::vector<Constraint> left, std::vector<Constraint> right) {
    Constraint c;
    Disjunctive d{std::move(left), std::move(right)};
    std::set<int> scope;
    for (const Constraint& inner : d.left)
        collect_scope(inner, scope);
    for (const Constraint& inner : d.right)
        collect_scope(inner, scope);
    c.scope.assign(scope.begin(), scope.end());
    c.relation = std::move(d);
    return c;
}

bool builtin_holds(const Builtin& b, const std::vector<Value>& args) {
    switch (b.kind) {
    case BuiltinKind::Lt:
        return args[0] < args[1];
    case BuiltinKind::EqOffset:
        if (!args[0].is_int() || !args[1].is_int())
            throw ContractViolation("eq_offset requires integer values");
        return args[0].as_int() - args[1].as_int() == b.offset;
    case BuiltinKind::AbsDiffEq: {
        if (!args[0].is_int() || !args[1].is_int())
            throw ContractViolation("abs_diff_eq requires integer values");
        return std::llabs(args[0].as_int() - args[1].as_int()) == b.offset;
    }
    case BuiltinKind::NotEqualValue:
        return args[0] != b.value;
    case BuiltinKind::InSet:
        return b.set.contains(args[0]);
    }
    return false;
}

bool satisfies(const Assignment& a, const Constraint& c) {
    if (c.is_disjunctive()) {
        const Disjunctive& d = c.disjunctive();
        auto branch_ok = [&a](const std::vector<Constraint>& branch) {
            return std::all_of(branch.begin(), branch.end(),
                               [&a](const Constraint& inner) { return satisfies(a, inner); });
        };
        return branch_ok(d.left) || branch_ok(d.right);
    }
    std::vector<Value> proj;
    proj.reserve(c.scope.size());
    for (int idx : c.scope) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= a.size())
            throw ContractViolation("constraint scope outside assignment");
        proj.push_back(a[static_cast<std::size_t>(idx)]);
    }
    if (c.is_extensional())
        return std::binary_search(c.extensional().tuples.begin(),
                                  c.extensional().tuples.end(), proj);
    return builtin_holds(c.builtin(), proj);
}

bool is_solution(const CSP& p, const Assignment& a) {
    if (a.size() != p.variables.size())
        throw ContractViolation("assignment length does not match variable count");
    return std::all_of(p.constraints.begin(), p.constraints.end(),
                       [&a](const Constraint& c) { return satisfies(a, c); });
}

namespace {

// Depth-first product enumeration over the scope's domains, stopping at
// the first assignment the predicate accepts.
bool exists_scope_assignment(const std::vector<int>& scope, const DomainTuple& d,
                             const std::function<bool(const std::vector<Value>&)>& pred) {
    std::vector<Value> partial(scope.size());
    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
        if (k == scope.size())
            return pred(partial);
        const Domain& dom = d[static_cast<std::size_t>(scope[k])];
        for (const Value& v : dom.values()) {
            partial[k] = v;
            if (rec(k + 1))
                return true;
        }
        return false;
    };
    return rec(0);
}

} // namespace

bool constraint_has_support(const Constraint& c, const DomainTuple& d) {
    if (c.is_extensional()) {
        for (const auto& t : c.extensional().tuples) {
            bool inside = true;
            for (std::size_t k = 0; k < c.scope.size(); ++k)
                if (!d[static_cast<std::size_t>(c.scope[k])].contains(t[k])) {
                    inside = false;
                    break;
                }
            if (inside)
                return true;
        }
        return false;
    }
    if (c.is_builtin()) {
        return exists_scope_assignment(c.scope, d, [&c](const std::vector<Value>& args) {
            return builtin_holds(c.builtin(), args);
        });
    }
    const Disjunctive& dj = c.disjunctive();
    auto branch_satisfiable = [&](const std::vector<Constraint>& branch) {
        return exists_scope_assignment(c.scope, d, [&](const std::vector<Value>& args) {
            // args are scope-ordered; evaluate each branch constraint on them
            for (const Constraint& inner : branch) {
                Assignment full(d.size());
                for (std::size_t k = 0; k < c.scope.size(); ++k)
                    full[static_cast<std::size_t>(c.scope[k])] = args[k];
                if (!satisfies(full, inner))
                    return false;
            }
            return true;
        });
    };
    return branch_satisfiable(dj.left) || branch_satisfiable(dj.right);
}

bool is_failed(const CSP& p) {
    DomainTuple d = p.domains();
    if (d.any_empty())
        return true;
    for (const Constraint& c : p.constraints)
        if (!constraint_has_support(c, d))
            return true;
    return false;
}

std::optional<Assignment> singleton_assignment(const CSP& p) {
    Assignment a;
    a.reserve(p.variables.size());
    for (const Variable& v : p.variables) {
        if (!v.domain.singleton())
            return std::nullopt;
        a.push_back(v.domain[0]);
    }
    return a;
}

bool is_manifestly_solved(const CSP& p) {
    auto a = singleton_assignment(p);
    if (!a)
        return false;
    return is_solution(p, *a);
}

namespace {

Constraint restrict_one(const Constraint& c, const DomainTuple& d) {
    if (c.is_extensional()) {
        std::vector<std::vector<Value>> kept;
        for (const auto& t : c.extensional().tuples) {
            bool inside = true;
            for (std::size_t k = 0; k < c.scope.size(); ++k)
                if (!d[static_cast<std::size_t>(c.scope[k])].contains(t[k])) {
                    inside = false;
                    break;
                }
            if (inside)
                kept.push_back(t);
        }
        return Constraint{c.scope, Extensional{std::move(kept)}};
    }
    if (c.is_disjunctive()) {
        const Disjunctive& dj = c.disjunctive();
        Disjunctive out;
        out.left.reserve(dj.left.size());
        out.right.reserve(dj.right.size());
        for (const Constraint& inner : dj.left)
            out.left.push_back(restrict_one(inner, d));
        for (const Constraint& inner : dj.right)
            out.right.push_back(restrict_one(inner, d));
        return Constraint{c.scope, std::move(out)};
    }
    return c; // builtins restrict implicitly
}

} // namespace

CSP with_domains_unchecked(const CSP& p, const DomainTuple& new_domains) {
    CSP out = p;
    for (std::size_t i = 0; i < out.variables.size(); ++i)
        out.variables[i].domain = new_domains[i];
    out.constraints.clear();
    out.constraints.reserve(p.constraints.size());
    for (const Constraint& c : p.constraints)
        out.constraints.push_back(restrict_one(c, new_domains));
    return out;
}

CSP restrict_constraints(const CSP& p, const DomainTuple& new_domains) {
    if (new_domains.size() != p.variables.size())
        throw ContractViolation("restriction tuple length mismatch");
    for (std::size_t i = 0; i < p.variables.size(); ++i)
        if (!new_domains[i].subset_of(p.variables[i].domain))
            throw ContractViolation("restriction must shrink domains: variable " +
                                    p.variables[i].name);
    return with_domains_unchecked(p, new_domains);
}

std::string format_assignment(const CSP& p, const Assignment& a) {
    std::ostringstream os;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i)
            os << ' ';
        os << p.variables[i].name << '=' << a[i].to_string();
    }
    return os.str();
}

} // namespace rulecp
