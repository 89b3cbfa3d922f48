#ifndef RULECP_CSP_HPP
#define RULECP_CSP_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rulecp/domain.hpp"

namespace rulecp {

/// Raised when an operation's structural precondition is violated
/// (arity mismatch, non-subset restriction, rule returning a non-subset).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// A variable is identified by its position in the CSP's sequence; the
/// name is for display and file formats.
struct Variable {
    std::string name;
    Domain domain;

    friend bool operator==(const Variable&, const Variable&) = default;
};

struct Constraint;

/// Explicitly tabled relation; tuples are kept sorted for canonical form.
struct Extensional {
    std::vector<std::vector<Value>> tuples;

    friend bool operator==(const Extensional&, const Extensional&) = default;
};

enum class BuiltinKind {
    Lt,            // x < y
    EqOffset,      // x - y = offset
    AbsDiffEq,     // |x - y| = offset
    NotEqualValue, // x != value
    InSet,         // x in set
};

struct Builtin {
    BuiltinKind kind = BuiltinKind::Lt;
    std::int64_t offset = 0; // EqOffset, AbsDiffEq
    Value value;             // NotEqualValue
    Domain set;              // InSet

    static Builtin lt() { return Builtin{}; }
    static Builtin eq_offset(std::int64_t c) { return Builtin{BuiltinKind::EqOffset, c, {}, {}}; }
    static Builtin abs_diff_eq(std::int64_t c) {
        return Builtin{BuiltinKind::AbsDiffEq, c, {}, {}};
    }
    static Builtin not_equal(Value a) {
        return Builtin{BuiltinKind::NotEqualValue, 0, a, {}};
    }
    static Builtin in_set(Domain s) {
        return Builtin{BuiltinKind::InSet, 0, {}, std::move(s)};
    }

    friend bool operator==(const Builtin&, const Builtin&) = default;
};

/// Two alternative constraint sets over the CSP's variables. Handled by
/// the constructive-disjunction rule and the disjunction splitting rule,
/// never flattened in the model.
struct Disjunctive {
    std::vector<Constraint> left;
    std::vector<Constraint> right;

    friend bool operator==(const Disjunctive&, const Disjunctive&) = default;
};

struct Constraint {
    std::vector<int> scope; // variable indices; for Disjunctive: union of branch scopes
    std::variant<Extensional, Builtin, Disjunctive> relation;

    bool is_extensional() const { return std::holds_alternative<Extensional>(relation); }
    bool is_builtin() const { return std::holds_alternative<Builtin>(relation); }
    bool is_disjunctive() const { return std::holds_alternative<Disjunctive>(relation); }

    const Extensional& extensional() const { return std::get<Extensional>(relation); }
    const Builtin& builtin() const { return std::get<Builtin>(relation); }
    const Disjunctive& disjunctive() const { return std::get<Disjunctive>(relation); }

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// One value per variable, in variable order.
using Assignment = std::vector<Value>;

struct CSP {
    std::vector<Variable> variables;
    std::vector<Constraint> constraints;

    std::size_t arity() const { return variables.size(); }
    DomainTuple domains() const;
    int variable_index(std::string_view name) const; // -1 when unknown
    std::vector<std::string> variable_names() const;

    friend bool operator==(const CSP&, const CSP&) = default;
};

Constraint make_extensional(std::vector<int> scope, std::vector<std::vector<Value>> tuples);
Constraint make_builtin(std::vector<int> scope, Builtin b);
Constraint make_disjunctive(std::vector<Constraint> left, std::vector<Constraint> right);

/// Evaluates a builtin predicate on the values of its scope, in scope order.
bool builtin_holds(const Builtin& b, const std::vector<Value>& args);

/// True iff the projection of `a` onto the constraint's scope lies in its
/// relation; a disjunctive constraint is satisfied iff every constraint of
/// one of its branches is.
bool satisfies(const Assignment& a, const Constraint& c);

bool is_solution(const CSP& p, const Assignment& a);

/// Does the constraint, restricted to the given domains, admit any tuple?
/// Decided by enumeration over the scope's current domains.
bool constraint_has_support(const Constraint& c, const DomainTuple& d);

/// Some variable domain is empty, or some constraint restricted to the
/// current domains is empty.
bool is_failed(const CSP& p);

/// Every domain is a singleton and the induced assignment satisfies every
/// constraint.
bool is_manifestly_solved(const CSP& p);

std::optional<Assignment> singleton_assignment(const CSP& p);

/// Returns the CSP with the given domains; extensional relations (also
/// inside disjunctive branches) are filtered to tuples within the new
/// domains, builtins stay syntactic. Requires newDomains componentwise
/// within the current ones.
CSP restrict_constraints(const CSP& p, const DomainTuple& new_domains);

CSP with_domains_unchecked(const CSP& p, const DomainTuple& new_domains);

std::string format_assignment(const CSP& p, const Assignment& a);

} // namespace rulecp

#endif
