#include <doctest.h>

#include "rulecp/arc.hpp"
#include "rulecp/membership.hpp"
#include "rulecp/oracles.hpp"
#include "test_util.hpp"

using namespace rulecp;
using namespace rulecp::testutil;

TEST_CASE("enumerate_solutions") {
    SUBCASE("the conjunction table has nine solutions") {
        CHECK(enumerate_solutions(and3_csp()).size() == 9);
    }
    SUBCASE("an empty domain has none") {
        CSP p;
        p.variables.push_back(Variable{"x", Domain{}});
        CHECK(enumerate_solutions(p).empty());
    }
    SUBCASE("|x-y|=1 over [4..8] x [3..7] has eight pairs") {
        // (4,3) (4,5) (5,4) (5,6) (6,5) (6,7) (7,6) (8,7)
        CSP p;
        p.variables.push_back(Variable{"x", Domain::range(4, 8)});
        p.variables.push_back(Variable{"y", Domain::range(3, 7)});
        p.constraints.push_back(make_builtin({0, 1}, Builtin::abs_diff_eq(1)));
        std::set<Assignment> sols = enumerate_solutions(p);
        CHECK(sols.size() == 8);
        CHECK(sols.count({I(4), I(3)}) == 1);
        CHECK(sols.count({I(8), I(7)}) == 1);
        CHECK(sols.count({I(4), I(4)}) == 0);
    }
    SUBCASE("budget refusal") {
        CSP p;
        for (int i = 0; i < 4; ++i)
            p.variables.push_back(Variable{"v" + std::to_string(i), Domain::range(1, 60)});
        CHECK_THROWS_AS(enumerate_solutions(p), BudgetExceeded);
    }
}

TEST_CASE("naive_rule_closure") {
    SUBCASE("empty rule set is the identity") {
        DomainTuple d(std::vector<Domain>{Domain::range(1, 3)});
        CHECK(naive_rule_closure({}, d) == d);
    }
    SUBCASE("the x-y=1 branch derivation endpoint") {
        CSP p;
        p.variables.push_back(Variable{"x", Domain::range(4, 10)});
        p.variables.push_back(Variable{"y", Domain::range(2, 7)});
        p.constraints.push_back(make_builtin({0, 1}, Builtin::eq_offset(1)));
        DomainTuple closed = naive_rule_closure(make_arc_rules(p), p.domains());
        CHECK(closed == DomainTuple({Domain::range(4, 8), Domain::range(3, 7)}));
    }
}

TEST_CASE("hyper_arc_closure budget refusal") {
    CSP p;
    std::vector<int> scope;
    for (int i = 0; i < 8; ++i) {
        p.variables.push_back(Variable{"v" + std::to_string(i), Domain::range(1, 12)});
        scope.push_back(i);
    }
    Constraint c = make_extensional(scope, {});
    CHECK_THROWS_AS(hyper_arc_closure(c, p.domains()), BudgetExceeded);
}

TEST_CASE("enumerate_all_minimal_rules refuses beyond its scale") {
    std::vector<Domain> too_wide(4, Domain::range(1, 2));
    CHECK_THROWS_AS(enumerate_all_minimal_rules(Extensional{}, too_wide), BudgetExceeded);
    std::vector<Domain> too_deep(2, Domain::range(1, 4));
    CHECK_THROWS_AS(enumerate_all_minimal_rules(Extensional{}, too_deep), BudgetExceeded);
}
