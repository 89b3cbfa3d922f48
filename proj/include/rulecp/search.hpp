#ifndef RULECP_SEARCH_HPP
#define RULECP_SEARCH_HPP

#include "rulecp/disjunction.hpp"
#include "rulecp/membership.hpp"
#include "rulecp/scheduler.hpp"

namespace rulecp {

enum class VarSelect { FirstUnsingleton, SmallestDomain, SeededRandom };
enum class DomainSplit { Bisection, Enumeration };

struct SplitStrategy {
    VarSelect select = VarSelect::FirstUnsingleton;
    DomainSplit split = DomainSplit::Enumeration;
};

enum class PropagatorKind {
    None,
    Ac,         // arc rules for binary constraints
    Membership, // generated membership rules for extensional constraints
    Cd,         // arc rules plus constructive disjunction for disjunctive ones
    Auto,       // membership + arc (builtins) + constructive disjunction
};

struct PropagatorConfig {
    PropagatorKind kind = PropagatorKind::Ac;
    SchedulerKind scheduler = SchedulerKind::Compound;
    ChoosePolicy choose = ChoosePolicy::Fifo;
    std::uint64_t seed = 0;
    GenerationBounds gen_bounds{};
    bool minimize_rules = false; // remove redundant membership rules before scheduling
};

/// Rule sets and declarations built once from the root CSP and reused for
/// the whole search tree.
struct CompiledPropagator {
    std::vector<DomainReductionRule> rules;
    CommutativityDeclaration comm;
    StabilityDeclaration stable;
    SchedulerKind scheduler = SchedulerKind::Compound;
    SchedulerOptions options;
    std::vector<RuleSetReport> reports; // membership generation, per constraint
};

CompiledPropagator compile_propagator(const CSP& p, const PropagatorConfig& cfg);

/// Stabilizing derivation: the returned CSP is equivalent to p and closed
/// under the propagator's rules.
CSP propagate(const CSP& p, const CompiledPropagator& prop);
CSP propagate(const CSP& p, const PropagatorConfig& cfg);

enum class SolveMode { First, All };

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t evaluations = 0;
    std::uint64_t solutions = 0;
    std::uint64_t reenqueues = 0;
    std::uint64_t removed_reused = 0; // permanently removed rules inherited by nodes

    std::string to_string() const; // "nodes=<n> evals=<n> solutions=<n>"
};

struct SolveResult {
    std::vector<Assignment> solutions; // sorted
    SearchStats stats;
    DerivationTrace root_trace;        // the root stabilizing derivation
    SchedulerStats root_scheduler_stats;
    DomainTuple root_fixpoint;
};

/// Propagate-then-split depth-first search. Propagation runs at the root
/// and after every split; leaves are failed or manifestly solved. Stable
/// rules removed by the fine-tuned scheduler stay removed for the whole
/// subtree below their removal point.
SolveResult solve(const CSP& p, const PropagatorConfig& cfg, SplitStrategy strategy,
                  SolveMode mode, std::uint64_t seed = 0);

} // namespace rulecp

#endif
