#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rulecp/arc.hpp"
#include "rulecp/io.hpp"
#include "rulecp/membership.hpp"
#include "rulecp/oracles.hpp"
#include "rulecp/search.hpp"

namespace py = pybind11;
using namespace rulecp;

namespace {

py::object value_to_py(const Value& v) {
    if (v.is_int())
        return py::int_(v.as_int());
    return py::str(std::string(v.symbol_name()));
}

py::dict assignment_to_py(const CSP& p, const Assignment& a) {
    py::dict out;
    for (std::size_t i = 0; i < a.size(); ++i)
        out[py::str(p.variables[i].name)] = value_to_py(a[i]);
    return out;
}

PropagatorKind propagator_from(const std::string& s) {
    if (s == "ac") return PropagatorKind::Ac;
    if (s == "membership") return PropagatorKind::Membership;
    if (s == "cd") return PropagatorKind::Cd;
    if (s == "none") return PropagatorKind::None;
    if (s == "auto") return PropagatorKind::Auto;
    throw std::invalid_argument("unknown propagator: " + s);
}

SchedulerKind scheduler_from(const std::string& s) {
    if (s == "generic") return SchedulerKind::Generic;
    if (s == "generic_exhaustive") return SchedulerKind::GenericExhaustive;
    if (s == "compound") return SchedulerKind::Compound;
    if (s == "improved") return SchedulerKind::Improved;
    if (s == "finetuned") return SchedulerKind::Finetuned;
    throw std::invalid_argument("unknown scheduler: " + s);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rule-based finite-domain constraint solving";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<BoundsExceeded>(m, "BoundsExceeded", PyExc_RuntimeError);

    py::class_<CSP>(m, "Csp")
        .def_property_readonly("variable_names", &CSP::variable_names)
        .def_property_readonly("domains",
                               [](const CSP& p) {
                                   py::dict out;
                                   for (const Variable& v : p.variables) {
                                       py::list vals;
                                       for (const Value& x : v.domain.values())
                                           vals.append(value_to_py(x));
                                       out[py::str(v.name)] = vals;
                                   }
                                   return out;
                               })
        .def_property_readonly("n_constraints",
                               [](const CSP& p) { return p.constraints.size(); })
        .def("is_failed", &is_failed)
        .def("is_manifestly_solved", &is_manifestly_solved)
        .def("to_json", &format_problem)
        .def("__repr__", [](const CSP& p) {
            return "<Csp " + std::to_string(p.variables.size()) + " vars, " +
                   std::to_string(p.constraints.size()) + " constraints>";
        });

    m.def("parse_problem", &parse_problem, py::arg("json_text"),
          "Parse a problem JSON document into a Csp");

    m.def(
        "enumerate_solutions",
        [](const CSP& p) {
            py::list out;
            for (const Assignment& a : enumerate_solutions(p))
                out.append(assignment_to_py(p, a));
            return out;
        },
        py::arg("csp"), "Exhaustive solution enumeration (the oracle)");

    m.def(
        "ac3",
        [](const CSP& p) { return ac3(p); },
        py::arg("csp"), "Arc-consistent equivalent of the CSP");

    m.def(
        "solve",
        [](const CSP& p, const std::string& propagator, const std::string& scheduler,
           const std::string& select, const std::string& split, const std::string& mode,
           std::uint64_t seed) {
            PropagatorConfig cfg;
            cfg.kind = propagator_from(propagator);
            cfg.scheduler = scheduler_from(scheduler);
            cfg.seed = seed;
            SplitStrategy strategy;
            strategy.split =
                split == "bisect" ? DomainSplit::Bisection : DomainSplit::Enumeration;
            strategy.select = select == "smallest" ? VarSelect::SmallestDomain
                              : select == "random" ? VarSelect::SeededRandom
                                                   : VarSelect::FirstUnsingleton;
            SolveResult result = solve(p, cfg, strategy,
                                       mode == "first" ? SolveMode::First : SolveMode::All,
                                       seed);
            py::list sols;
            for (const Assignment& a : result.solutions)
                sols.append(assignment_to_py(p, a));
            py::dict stats;
            stats["nodes"] = result.stats.nodes;
            stats["evaluations"] = result.stats.evaluations;
            stats["solutions"] = result.stats.solutions;
            stats["removed_reused"] = result.stats.removed_reused;
            return py::make_tuple(sols, stats);
        },
        py::arg("csp"), py::arg("propagator") = "ac", py::arg("scheduler") = "compound",
        py::arg("select") = "first", py::arg("split") = "enum", py::arg("mode") = "all",
        py::arg("seed") = 0,
        "Propagate-then-split search; returns (solutions, stats)");

    m.def(
        "generate_rules",
        [](const std::string& table_text) {
            TableFile table = parse_table(table_text);
            std::size_t single = 0;
            std::vector<MembershipRule> rules =
                generate_minimal_rules(table.relation, table.universes, {}, &single);
            py::list lines;
            for (const MembershipRule& r : rules)
                lines.append(format_rule(r, table.names));
            py::dict out;
            out["rules"] = lines;
            out["count"] = rules.size();
            out["single_conclusion"] = single;
            return out;
        },
        py::arg("table_text"),
        "All minimal membership rules of a constraint table");

    m.def(
        "minimize_rules",
        [](const std::string& table_text, const std::string& rules_text) {
            TableFile table = parse_table(table_text);
            std::vector<MembershipRule> rules = parse_rule_file(rules_text, table.names);
            std::size_t before = rules.size();
            std::vector<MembershipRule> kept =
                remove_redundant(std::move(rules), table.universes);
            py::list lines;
            for (const MembershipRule& r : kept)
                lines.append(format_rule(r, table.names));
            py::dict out;
            out["before"] = before;
            out["after"] = kept.size();
            out["rules"] = lines;
            return out;
        },
        py::arg("table_text"), py::arg("rules_text"),
        "Greedy redundancy removal over a rule file");

    m.def(
        "check_rules",
        [](const std::string& table_text, const std::string& rules_text) {
            TableFile table = parse_table(table_text);
            std::vector<MembershipRule> rules = parse_rule_file(rules_text, table.names);
            py::list out;
            for (std::size_t i = 0; i < rules.size(); ++i) {
                py::dict row;
                bool valid = is_valid(rules[i], table.relation);
                row["rule"] = i + 1;
                row["valid"] = valid;
                row["minimal"] = valid && is_minimal(rules[i], table.relation, table.universes);
                out.append(row);
            }
            return out;
        },
        py::arg("table_text"), py::arg("rules_text"),
        "Validity and minimality verdicts, one per rule");
}
