#ifndef RULECP_SCHEDULER_HPP
#define RULECP_SCHEDULER_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rulecp/rule.hpp"

namespace rulecp {

/// A scheduled function is a domain reduction rule lifted to the domain
/// tuple via its scheme.
using IterationFunction = DomainReductionRule;

enum class ChoosePolicy { Fifo, Lifo, Random };

/// How generic_iteration refills the worklist after an effective step.
/// Exhaustive evaluates f(d) and f(g(d)) for every dormant function (the
/// listing's exact update set, expensive); All re-enqueues every dormant
/// function.
enum class UpdatePolicy { Exhaustive, All };

enum class SchedulerKind { Generic, GenericExhaustive, Compound, Improved, Finetuned };

struct SchedulerStats {
    std::uint64_t evaluations = 0;
    std::uint64_t reenqueues = 0;
    std::uint64_t removed = 0; // permanent removals (fine-tuned scheduler)
};

struct SchedulerOptions {
    ChoosePolicy choose = ChoosePolicy::Fifo;
    std::uint64_t seed = 0;
    DerivationTrace* trace = nullptr; // records effective applications
    bool validate_stability = false;  // re-check permanently removed rules at the fixpoint
};

/// Which functions are known to commute with each function, plus the
/// idempotent ones; keyed by rule id. Declarations are trusted here and
/// validated by property tests.
struct CommutativityDeclaration {
    std::map<std::string, std::set<std::string>> comm;
    std::set<std::string> idempotent;
};

/// Functions that need apply at most once per derivation; once applied
/// with effect they are permanently removed.
struct StabilityDeclaration {
    std::set<std::string> stable;
};

struct FixpointResult {
    DomainTuple domains;
    SchedulerStats stats;
    std::vector<std::string> removed_rule_ids; // permanently removed, in removal order
};

/// The worklist algorithm: d starts at `bottom`, G at F; chosen functions
/// are applied until G empties, which yields the least common fixpoint of
/// the (inflationary, monotonic) functions above bottom.
FixpointResult generic_iteration(const std::vector<IterationFunction>& F,
                                 const DomainTuple& bottom, UpdatePolicy update,
                                 const SchedulerOptions& opts = {});

/// Scheme-aware update: an effective step re-enqueues exactly the functions
/// whose scheme includes a changed component.
FixpointResult compound_iteration(const std::vector<IterationFunction>& F,
                                  const DomainTuple& bottom,
                                  const SchedulerOptions& opts = {});

/// Compound iteration that drops Comm(g) from every re-enqueue set and, for
/// idempotent g, g itself.
FixpointResult improved_iteration(const std::vector<IterationFunction>& F,
                                  const DomainTuple& bottom,
                                  const CommutativityDeclaration& decl,
                                  const SchedulerOptions& opts = {});

/// Compound iteration that permanently removes stable functions once they
/// fire; the removed set can be reused across search nodes.
FixpointResult stability_scheduler(const std::vector<IterationFunction>& F,
                                   const DomainTuple& bottom,
                                   const StabilityDeclaration& decl,
                                   const SchedulerOptions& opts = {});

/// Dispatcher. Generic maps to the All update policy, GenericExhaustive to
/// the exact (expensive) one.
FixpointResult run_scheduler(SchedulerKind kind, const std::vector<IterationFunction>& F,
                             const DomainTuple& bottom,
                             const CommutativityDeclaration& comm = {},
                             const StabilityDeclaration& stable = {},
                             const SchedulerOptions& opts = {});

std::string to_string(SchedulerKind k);

/// `scheduler=<name> evaluations=<n> reenqueues=<n> removed=<n> fixpoint_hash=<hex>`
std::string format_stats_record(const std::string& scheduler_name, const SchedulerStats& stats,
                                const DomainTuple& fixpoint);

} // namespace rulecp

#endif
