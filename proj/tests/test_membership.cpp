#include <doctest.h>

#include <functional>
#include <random>

#include "rulecp/io.hpp"
#include "rulecp/membership.hpp"
#include "rulecp/oracles.hpp"
#include "test_util.hpp"

using namespace rulecp;
using namespace rulecp::testutil;

namespace {

TableFile and3() { return parse_table(and3_table_text()); }

MembershipRule rule_of(const TableFile& t, const std::string& line) {
    return parse_rule_file(line + "\n", t.names).front();
}

DomainTuple full_tuple(const std::vector<Domain>& universes) {
    return DomainTuple(std::vector<Domain>(universes.begin(), universes.end()));
}

/// Closure under the scheduler lifting, via round-robin passes.
DomainTuple membership_closure(const std::vector<MembershipRule>& rules,
                               const DomainTuple& start) {
    return naive_rule_closure(as_reduction_rules(rules, "c"), start);
}

/// All sub-domain tuples of the universes (non-empty components only).
std::vector<DomainTuple> all_nonempty_subtuples(const std::vector<Domain>& universes) {
    std::vector<std::vector<Domain>> per_var;
    for (const Domain& u : universes) {
        std::vector<Domain> subs;
        for (std::size_t mask = 1; mask < (1u << u.size()); ++mask) {
            std::vector<Value> vals;
            for (std::size_t b = 0; b < u.size(); ++b)
                if (mask & (1u << b))
                    vals.push_back(u[b]);
            subs.push_back(Domain(std::move(vals)));
        }
        per_var.push_back(std::move(subs));
    }
    std::vector<DomainTuple> out;
    std::vector<std::size_t> idx(per_var.size(), 0);
    while (true) {
        std::vector<Domain> doms;
        for (std::size_t i = 0; i < per_var.size(); ++i)
            doms.push_back(per_var[i][idx[i]]);
        out.push_back(DomainTuple(std::move(doms)));
        std::size_t k = 0;
        while (k < idx.size()) {
            if (++idx[k] < per_var[k].size())
                break;
            idx[k] = 0;
            ++k;
        }
        if (k == idx.size())
            break;
    }
    return out;
}

} // namespace

TEST_CASE("rule_applies") {
    TableFile t = and3();
    MembershipRule r = rule_of(t, "y in {u,f} -> z != t");

    DomainTuple d = full_tuple(t.universes);
    CHECK_FALSE(rule_applies(r, d));

    d.at(1) = Domain{S("f")};
    CHECK(rule_applies(r, d));

    SUBCASE("an empty premise always applies") {
        MembershipRule empty;
        empty.conclusions.emplace_back(2, S("t"));
        CHECK(rule_applies(empty, full_tuple(t.universes)));
    }
    SUBCASE("a value outside the range blocks application") {
        DomainTuple e = full_tuple(t.universes);
        e.at(1) = Domain{S("t"), S("f")};
        CHECK_FALSE(rule_applies(r, e));
    }
    SUBCASE("an empty premise domain blocks the user-facing predicate") {
        DomainTuple e = full_tuple(t.universes);
        e.at(1) = Domain{};
        CHECK_FALSE(rule_applies(r, e));
    }
}

TEST_CASE("apply_membership") {
    TableFile t = and3();
    MembershipRule r = rule_of(t, "y in {u,f} -> z != t");
    DomainTuple d = full_tuple(t.universes);
    d.at(1) = Domain{S("u"), S("f")};

    DomainTuple out = apply_membership(r, d);
    CHECK(out[2] == Domain{S("f"), S("u")});
    CHECK(out[0] == d[0]);

    SUBCASE("an absent value leaves the domain alone") {
        DomainTuple again = apply_membership(r, out);
        CHECK(again == out);
    }
    SUBCASE("a multi-conclusion rule removes all its values at once") {
        MembershipRule multi = rule_of(t, "z in {t} -> x != u, y != u");
        DomainTuple e = full_tuple(t.universes);
        e.at(2) = Domain{S("t")};
        DomainTuple r2 = apply_membership(multi, e);
        CHECK(r2[0] == Domain{S("t"), S("f")});
        CHECK(r2[1] == Domain{S("t"), S("f")});
    }
}

TEST_CASE("is_valid against the three-valued conjunction") {
    TableFile t = and3();
    CHECK(is_valid(rule_of(t, "y in {u,f} -> z != t"), t.relation));
    CHECK_FALSE(is_valid(rule_of(t, "y in {t} -> z != t"), t.relation)); // (t,t,t)
    SUBCASE("empty conclusions are vacuously valid") {
        MembershipRule r;
        r.premise.emplace_back(1, Domain{S("t")});
        CHECK(is_valid(r, t.relation));
    }
}

TEST_CASE("is_minimal accepts the minimal rule and rejects its weakenings") {
    TableFile t = and3();
    CHECK(is_minimal(rule_of(t, "y in {u,f} -> z != t"), t.relation, t.universes));
    CHECK_FALSE(
        is_minimal(rule_of(t, "x in {u}, y in {u,f} -> z != t"), t.relation, t.universes));
    CHECK_FALSE(is_minimal(rule_of(t, "y in {u} -> z != t"), t.relation, t.universes));
}

TEST_CASE("generate_minimal_rules finds the 18 rules of the conjunction table") {
    TableFile t = and3();
    std::size_t single = 0;
    std::vector<MembershipRule> rules =
        generate_minimal_rules(t.relation, t.universes, {}, &single);
    CHECK(rules.size() == 18);
    CHECK(single == 20); // before merging equal premises

    MembershipRule known_rule = rule_of(t, "y in {f,u} -> z != t");
    CHECK(std::find(rules.begin(), rules.end(), known_rule) != rules.end());

    SUBCASE("every generated rule is valid, minimal and applicable") {
        for (const MembershipRule& r : rules) {
            CHECK(is_valid(r, t.relation));
            CHECK(is_minimal(r, t.relation, t.universes));
            CHECK(premise_satisfiable(r, t.relation));
        }
    }
    SUBCASE("the full relation generates nothing") {
        std::vector<std::vector<Value>> all;
        for (const Value& a : t.universes[0].values())
            for (const Value& b : t.universes[1].values())
                for (const Value& c : t.universes[2].values())
                    all.push_back({a, b, c});
        CHECK(generate_minimal_rules(Extensional{all}, t.universes).empty());
    }
    SUBCASE("bounds produce an explicit refusal") {
        std::vector<Domain> wide(5, Domain::range(1, 2));
        CHECK_THROWS_AS(generate_minimal_rules(Extensional{}, wide, GenerationBounds{4, 12}),
                        BoundsExceeded);
    }
}

TEST_CASE("generation equals the exhaustive enumerator on random tables") {
    std::mt19937_64 rng(81);
    int rounds = 0;
    while (rounds < 40) {
        auto [rel, universes] = random_table(rng, 3, 3);
        bool too_big = universes.size() > 3;
        for (const Domain& u : universes)
            too_big = too_big || u.size() > 3;
        if (too_big)
            continue;
        ++rounds;
        std::size_t gen_single = 0, oracle_single = 0;
        std::vector<MembershipRule> generated =
            generate_minimal_rules(rel, universes, {}, &gen_single);
        std::vector<MembershipRule> expected =
            enumerate_all_minimal_rules(rel, universes, &oracle_single);
        CHECK(generated == expected);
        CHECK(gen_single == oracle_single);
    }
}

TEST_CASE("boolean-and rules behave like unit propagation") {
    TableFile t = parse_table(and2_table_text());
    std::vector<MembershipRule> rules = generate_minimal_rules(t.relation, t.universes);

    // clause encoding of z = x and y: (-x,-y,z), (x,-z), (y,-z) with
    // literals +-(var+1)
    std::vector<std::vector<int>> clauses = {{-1, -2, 3}, {1, -3}, {2, -3}};
    auto unit_propagate = [&clauses](std::vector<int> assignment /* -1 unset, 0, 1 */)
        -> std::pair<bool, std::vector<int>> {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& clause : clauses) {
                int unassigned = 0, last = 0;
                bool satisfied = false;
                for (int lit : clause) {
                    int var = std::abs(lit) - 1;
                    int want = lit > 0 ? 1 : 0;
                    if (assignment[var] == -1) {
                        ++unassigned;
                        last = lit;
                    } else if (assignment[var] == want) {
                        satisfied = true;
                    }
                }
                if (satisfied)
                    continue;
                if (unassigned == 0)
                    return {false, assignment}; // conflict
                if (unassigned == 1) {
                    int var = std::abs(last) - 1;
                    assignment[var] = last > 0 ? 1 : 0;
                    changed = true;
                }
            }
        }
        return {true, assignment};
    };

    // every partial assignment of the three variables
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y)
            for (int z = -1; z <= 1; ++z) {
                std::vector<int> partial = {x, y, z};
                std::vector<Domain> doms;
                for (int v : partial) {
                    if (v == -1)
                        doms.push_back(Domain{I(0), I(1)});
                    else
                        doms.push_back(Domain{I(v)});
                }
                DomainTuple closed = membership_closure(rules, DomainTuple(doms));
                auto [ok, implied] = unit_propagate(partial);
                if (!ok) {
                    CHECK(closed.any_empty());
                    continue;
                }
                for (std::size_t i = 0; i < 3; ++i) {
                    if (implied[i] == -1)
                        CHECK(closed[i].size() == 2);
                    else
                        CHECK(closed[i] == Domain{I(implied[i])});
                }
            }
}

TEST_CASE("membership closure equals the hyper-arc oracle") {
    std::mt19937_64 rng(91);
    int rounds = 0;
    while (rounds < 60) {
        auto [rel, universes] = random_table(rng, 3, 4);
        if (rel.tuples.empty())
            continue;
        ++rounds;
        std::vector<MembershipRule> rules = generate_minimal_rules(rel, universes);
        Constraint c;
        c.relation = rel;
        for (std::size_t i = 0; i < universes.size(); ++i)
            c.scope.push_back(static_cast<int>(i));
        for (int trial = 0; trial < 10; ++trial) {
            DomainTuple start = random_subtuple(rng, universes);
            DomainTuple closed = membership_closure(rules, start);
            DomainTuple gac = hyper_arc_closure(c, start);
            if (gac.any_empty()) {
                // all failed tuples are interchangeable
                CHECK(closed.any_empty());
            } else {
                CHECK(closed == gac);
            }
        }
    }
}

TEST_CASE("hyper-arc oracle basics") {
    TableFile t = and3();
    Constraint c;
    c.scope = {0, 1, 2};
    c.relation = t.relation;
    SUBCASE("a two-valued y forces t out of z") {
        DomainTuple d = full_tuple(t.universes);
        d.at(1) = Domain{S("u"), S("f")};
        DomainTuple out = hyper_arc_closure(c, d);
        CHECK(out[2] == Domain{S("f"), S("u")});
        CHECK(out[0] == t.universes[0]);
    }
    SUBCASE("binary constraints coincide with arc closure") {
        std::mt19937_64 rng(97);
        for (int round = 0; round < 20; ++round) {
            CSP p = random_csp(rng, RandomCspOptions{.max_vars = 2, .max_domain = 4,
                                                     .max_constraints = 1,
                                                     .allow_builtin = false});
            DomainTuple gac = hyper_arc_closure(p.constraints[0], p.domains());
            CHECK(gac == ac_closure_oracle(p));
        }
    }
}

TEST_CASE("stability: a fired rule never changes the state again") {
    std::mt19937_64 rng(101);
    int rounds = 0;
    while (rounds < 30) {
        auto [rel, universes] = random_table(rng, 3, 3);
        if (rel.tuples.empty())
            continue;
        ++rounds;
        std::vector<MembershipRule> rules = generate_minimal_rules(rel, universes);
        DomainTuple d = random_subtuple(rng, universes);
        for (const MembershipRule& r : rules) {
            if (!rule_applies(r, d))
                continue;
            DomainTuple once = apply_membership(r, d);
            // shrink other domains further; the rule stays a no-op
            DomainTuple shrunk = once;
            for (std::size_t i = 0; i < shrunk.size(); ++i)
                if (shrunk[i].size() > 1)
                    shrunk.at(i) = shrunk[i].without(shrunk[i][0]);
            DomainReductionRule lifted = as_reduction_rule(r, "r");
            CHECK(apply_reduction(lifted, once) == once);
            CHECK(apply_reduction(lifted, shrunk) == shrunk);
        }
    }
}

TEST_CASE("every membership rule lifting is monotonic") {
    std::mt19937_64 rng(103);
    int rounds = 0;
    while (rounds < 15) {
        auto [rel, universes] = random_table(rng, 2, 3);
        if (rel.tuples.empty() || universes.size() != 2)
            continue;
        ++rounds;
        auto pairs = nested_pairs_exhaustive(universes);
        for (const MembershipRule& mr : generate_minimal_rules(rel, universes)) {
            DomainReductionRule lifted = as_reduction_rule(mr, "r");
            // lift the pair tuples onto the rule's scheme
            std::vector<std::pair<std::vector<Domain>, std::vector<Domain>>> projected;
            for (const auto& [small, large] : pairs) {
                std::vector<Domain> ps, pl;
                for (int v : lifted.scheme.indices) {
                    ps.push_back(small[static_cast<std::size_t>(v)]);
                    pl.push_back(large[static_cast<std::size_t>(v)]);
                }
                projected.emplace_back(std::move(ps), std::move(pl));
            }
            CHECK(check_monotonic(lifted, projected).monotonic);
        }
    }
}

TEST_CASE("is_redundant") {
    TableFile t = and3();
    std::vector<MembershipRule> rules = generate_minimal_rules(t.relation, t.universes);

    SUBCASE("a duplicated rule is redundant") {
        std::vector<MembershipRule> doubled = rules;
        doubled.push_back(rules.front());
        CHECK(is_redundant(rules.front(), doubled, t.universes));
    }
    SUBCASE("a subsumed weaker rule is redundant") {
        MembershipRule weak = rule_of(t, "y in {f} -> z != t");
        std::vector<MembershipRule> extended = rules;
        extended.push_back(weak);
        CHECK(is_redundant(weak, extended, t.universes));
    }
    SUBCASE("the production check agrees with the exhaustive oracle") {
        std::vector<DomainTuple> starts = all_nonempty_subtuples(t.universes);
        for (const MembershipRule& r : rules) {
            std::vector<MembershipRule> without;
            for (const MembershipRule& s : rules)
                if (!(s == r))
                    without.push_back(s);
            bool oracle_redundant = true;
            for (const DomainTuple& d : starts)
                if (membership_closure(rules, d) != membership_closure(without, d)) {
                    oracle_redundant = false;
                    break;
                }
            CHECK(is_redundant(r, rules, t.universes) == oracle_redundant);
        }
    }
}

TEST_CASE("remove_redundant") {
    TableFile t = and3();
    std::vector<MembershipRule> rules = generate_minimal_rules(t.relation, t.universes);

    SUBCASE("duplicates go away") {
        std::vector<MembershipRule> doubled = rules;
        doubled.push_back(rules.front());
        std::vector<MembershipRule> pruned = remove_redundant(doubled, t.universes);
        CHECK(pruned.size() <= rules.size());
    }
    SUBCASE("an injected subsumed rule is removed, the originals survive") {
        std::vector<MembershipRule> extended = rules;
        extended.push_back(rule_of(t, "y in {f} -> z != t"));
        std::vector<MembershipRule> pruned = remove_redundant(extended, t.universes);
        std::vector<MembershipRule> baseline = remove_redundant(rules, t.universes);
        CHECK(pruned == baseline);
    }
    SUBCASE("closure is preserved from every start tuple, exhaustively") {
        std::mt19937_64 rng(107);
        int rounds = 0;
        while (rounds < 25) {
            auto [rel, universes] = random_table(rng, 3, 3);
            if (rel.tuples.empty() || universes.size() != 3)
                continue;
            bool small = true;
            for (const Domain& u : universes)
                small = small && u.size() == 3;
            if (!small)
                continue;
            ++rounds;
            std::vector<MembershipRule> all = generate_minimal_rules(rel, universes);
            std::vector<MembershipRule> pruned = remove_redundant(all, universes);
            CHECK(pruned.size() <= all.size());
            for (const DomainTuple& d : all_nonempty_subtuples(universes))
                CHECK(membership_closure(all, d) == membership_closure(pruned, d));
        }
    }
}

TEST_CASE("propagation rules") {
    CSP p = chain_lt_csp(3, 1, 5);
    std::vector<PropagationRule> trans = make_transitivity_rules(p);
    // find the x<y, y<z / x<z instance
    auto find_rule = [&trans](int x, int y, int z) -> const PropagationRule& {
        std::string id = "lt_trans(" + std::to_string(x) + "," + std::to_string(y) + "," +
                         std::to_string(z) + ")";
        for (const PropagationRule& r : trans)
            if (r.id == id)
                return r;
        throw std::runtime_error("missing " + id);
    };

    CSP q = apply_propagation_rule(find_rule(0, 1, 2), p);
    CHECK(q.constraints.size() == 3);
    CHECK(std::find(q.constraints.begin(), q.constraints.end(),
                    make_builtin({0, 2}, Builtin::lt())) != q.constraints.end());
    // domains untouched
    CHECK(q.domains() == p.domains());

    SUBCASE("adding an already present head is the identity") {
        CSP r = apply_propagation_rule(find_rule(0, 1, 2), q);
        CHECK(r == q);
    }
    SUBCASE("a chain closes under transitivity with three new constraints") {
        CSP chain = chain_lt_csp(4, 1, 6);
        bool changed = true;
        CSP cur = chain;
        std::vector<PropagationRule> rules = make_transitivity_rules(chain);
        while (changed) {
            changed = false;
            for (const PropagationRule& r : rules) {
                bool applicable = true;
                for (const Constraint& body : r.body)
                    applicable = applicable &&
                                 std::find(cur.constraints.begin(), cur.constraints.end(),
                                           body) != cur.constraints.end();
                if (!applicable)
                    continue;
                CSP next = apply_propagation_rule(r, cur);
                if (!(next == cur)) {
                    cur = next;
                    changed = true;
                }
            }
        }
        CHECK(cur.constraints.size() == chain.constraints.size() + 3);
        CHECK(enumerate_solutions(cur) == enumerate_solutions(chain));
    }
    SUBCASE("missing body constraints are a contract violation") {
        CSP two = chain_lt_csp(2, 1, 3);
        PropagationRule ghost;
        ghost.id = "ghost";
        ghost.body = {make_builtin({0, 1}, Builtin::eq_offset(1))};
        ghost.head = {make_builtin({0, 1}, Builtin::lt())};
        CHECK_THROWS_AS(apply_propagation_rule(ghost, two), ContractViolation);
    }
    SUBCASE("heads outside the builtin catalog are rejected") {
        PropagationRule bad;
        bad.id = "bad";
        bad.head = {make_extensional({0, 1}, {{I(1), I(2)}})};
        CHECK_THROWS_AS(apply_propagation_rule(bad, p), ContractViolation);
    }
}

TEST_CASE("rule files round-trip bit-exactly") {
    TableFile t = and3();
    std::vector<MembershipRule> rules = generate_minimal_rules(t.relation, t.universes);
    std::string text = format_rule_file(rules, t.names);
    std::vector<MembershipRule> reparsed = parse_rule_file(text, t.names);
    CHECK(reparsed == rules);
    CHECK(format_rule_file(reparsed, t.names) == text);

    SUBCASE("syntax errors carry the line number") {
        try {
            parse_rule_file("y in {u,f} -> z != t\nnonsense line\n", t.names);
            FAIL("expected a parse error");
        } catch (const RuleParseError& e) {
            CHECK(e.line == 2);
        }
    }
    SUBCASE("a CHR-style rendering exists for display") {
        std::string chr = format_rule_chr(rules.front(), t.names, "and3");
        CHECK(chr.find("==>") != std::string::npos);
        CHECK(chr.find("and3(") == 0);
    }
}
