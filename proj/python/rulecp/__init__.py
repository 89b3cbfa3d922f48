"""Rule-based finite-domain constraint solving.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from rulecp._core import (
    BoundsExceeded,
    BudgetExceeded,
    ContractViolation,
    Csp,
    ParseError,
    ac3,
    check_rules,
    enumerate_solutions,
    generate_rules,
    minimize_rules,
    parse_problem,
    solve,
)

__all__ = [
    "BoundsExceeded",
    "BudgetExceeded",
    "ContractViolation",
    "Csp",
    "ParseError",
    "ac3",
    "check_rules",
    "enumerate_solutions",
    "generate_rules",
    "minimize_rules",
    "parse_problem",
    "solve",
]
