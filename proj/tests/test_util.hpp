#ifndef RULECP_TEST_UTIL_HPP
#define RULECP_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "rulecp/csp.hpp"
#include "rulecp/io.hpp"

namespace rulecp::testutil {

inline Value I(std::int64_t v) { return Value::integer(v); }
inline Value S(const char* s) { return Value::symbol(s); }

/// Kleene three-valued conjunction and3(x,y,z), the running example.
inline const char* and3_table_text() {
    return "x y z\n"
           "t t t\n"
           "t f f\n"
           "t u u\n"
           "f t f\n"
           "f f f\n"
           "f u f\n"
           "u t u\n"
           "u f f\n"
           "u u u\n";
}

inline CSP and3_csp() { return parse_table(and3_table_text()).as_csp(); }

/// Boolean conjunction of arity 3 (4 tuples).
inline const char* and2_table_text() {
    return "x y z\n"
           "1 1 1\n"
           "1 0 0\n"
           "0 1 0\n"
           "0 0 0\n";
}

inline CSP chain_lt_csp(int vars, std::int64_t lo, std::int64_t hi) {
    CSP p;
    for (int i = 0; i < vars; ++i)
        p.variables.push_back(Variable{std::string(1, static_cast<char>('a' + i)),
                                       Domain::range(lo, hi)});
    for (int i = 0; i + 1 < vars; ++i)
        p.constraints.push_back(make_builtin({i, i + 1}, Builtin::lt()));
    return p;
}

/// The worked |x-y|=1 example: x in [4..10], y in [2..7], branches
/// x-y=1 and y-x=1.
inline CSP absdiff_csp() {
    CSP p;
    p.variables.push_back(Variable{"x", Domain::range(4, 10)});
    p.variables.push_back(Variable{"y", Domain::range(2, 7)});
    Builtin plus1 = Builtin::eq_offset(1);
    Builtin minus1 = Builtin::eq_offset(-1);
    p.constraints.push_back(
        make_disjunctive({make_builtin({0, 1}, plus1)}, {make_builtin({0, 1}, minus1)}));
    return p;
}

struct RandomCspOptions {
    int max_vars = 5;
    int max_domain = 4;
    bool integers = true;
    double table_density = 0.5;
    int max_constraints = 4;
    bool allow_builtin = true;
    bool allow_disjunction = false;
};

inline Domain random_domain(std::mt19937_64& rng, int max_size, std::int64_t base) {
    std::uniform_int_distribution<int> size_dist(1, max_size);
    int size = size_dist(rng);
    std::vector<Value> vals;
    for (int i = 0; i < size; ++i)
        vals.push_back(Value::integer(base + i));
    return Domain(std::move(vals));
}

inline CSP random_csp(std::mt19937_64& rng, const RandomCspOptions& opt = {}) {
    CSP p;
    std::uniform_int_distribution<int> var_dist(2, opt.max_vars);
    int nvars = var_dist(rng);
    for (int i = 0; i < nvars; ++i)
        p.variables.push_back(Variable{"v" + std::to_string(i),
                                       random_domain(rng, opt.max_domain, 0)});

    std::uniform_int_distribution<int> ncons_dist(1, opt.max_constraints);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    int ncons = ncons_dist(rng);
    for (int k = 0; k < ncons; ++k) {
        std::uniform_int_distribution<int> pick(0, nvars - 1);
        int x = pick(rng), y = pick(rng);
        while (y == x)
            y = pick(rng);
        double what = coin(rng);
        if (opt.allow_disjunction && what < 0.2) {
            Builtin plus = Builtin::eq_offset(1);
            Builtin minus = Builtin::eq_offset(-1);
            p.constraints.push_back(make_disjunctive({make_builtin({x, y}, plus)},
                                                     {make_builtin({x, y}, minus)}));
            continue;
        }
        if (opt.allow_builtin && what < 0.45) {
            p.constraints.push_back(make_builtin({x, y}, Builtin::lt()));
            continue;
        }
        // random binary table over the two variables' domains
        std::vector<std::vector<Value>> tuples;
        for (const Value& a : p.variables[static_cast<std::size_t>(x)].domain.values())
            for (const Value& b : p.variables[static_cast<std::size_t>(y)].domain.values())
                if (coin(rng) < opt.table_density)
                    tuples.push_back({a, b});
        p.constraints.push_back(make_extensional({x, y}, std::move(tuples)));
    }
    return p;
}

/// Random extensional constraint over its own fresh universes.
inline std::pair<Extensional, std::vector<Domain>> random_table(std::mt19937_64& rng,
                                                                int max_arity, int max_dom,
                                                                double density = 0.5) {
    std::uniform_int_distribution<int> arity_dist(1, max_arity);
    int arity = arity_dist(rng);
    std::vector<Domain> universes;
    for (int i = 0; i < arity; ++i)
        universes.push_back(random_domain(rng, max_dom, 0));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::vector<Value>> tuples;
    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
    while (true) {
        if (coin(rng) < density) {
            std::vector<Value> t;
            for (int i = 0; i < arity; ++i)
                t.push_back(universes[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]]);
            tuples.push_back(std::move(t));
        }
        int k = arity - 1;
        while (k >= 0) {
            auto ks = static_cast<std::size_t>(k);
            if (++idx[ks] < universes[ks].size())
                break;
            idx[ks] = 0;
            --k;
        }
        if (k < 0)
            break;
    }
    return {Extensional{std::move(tuples)}, std::move(universes)};
}

/// Random non-empty sub-domain of each universe component.
inline DomainTuple random_subtuple(std::mt19937_64& rng, const std::vector<Domain>& universes,
                                   bool allow_empty = false) {
    std::vector<Domain> doms;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (const Domain& u : universes) {
        std::vector<Value> vals;
        for (const Value& v : u.values())
            if (coin(rng) < 0.6)
                vals.push_back(v);
        if (vals.empty() && !allow_empty && !u.values().empty())
            vals.push_back(u.values()[static_cast<std::size_t>(
                std::uniform_int_distribution<int>(0, static_cast<int>(u.size()) - 1)(rng))]);
        doms.push_back(Domain(std::move(vals)));
    }
    return DomainTuple(std::move(doms));
}

} // namespace rulecp::testutil

#endif
