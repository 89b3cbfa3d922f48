#ifndef RULECP_IO_HPP
#define RULECP_IO_HPP

#include <string>
#include <vector>

#include "rulecp/csp.hpp"

namespace rulecp {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Problem files are JSON:
///   {"variables":[{"name":"x","domain":[1,2]}],
///    "constraints":[{"kind":"table","scope":["x","y"],"tuples":[[1,2]]},
///                   {"kind":"builtin","scope":["x","y"],"op":"lt"},
///                   {"kind":"disjunction","branches":[[...],[...]]}]}
/// Values are integers or strings; a file never mixes the two.
CSP parse_problem(const std::string& json_text);
std::string format_problem(const CSP& p);

/// Table files: a header of variable names, then one whitespace-separated
/// tuple per line. Column values double as the variable universes.
struct TableFile {
    std::vector<std::string> names;
    Extensional relation;
    std::vector<Domain> universes;

    /// The table as a CSP: one variable per column with its universe, one
    /// extensional constraint.
    CSP as_csp() const;
};

TableFile parse_table(const std::string& text);
std::string format_table(const TableFile& table);

} // namespace rulecp

#endif
