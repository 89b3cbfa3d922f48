#ifndef RULECP_BENCH_HPP
#define RULECP_BENCH_HPP

#include <optional>

#include "rulecp/search.hpp"

namespace rulecp {

/// One all-solutions run of a problem under one scheduler, rule mode and
/// seed. Wall time is informational only; counters are the comparison
/// currency.
struct BenchRow {
    std::string problem;
    SchedulerKind scheduler = SchedulerKind::Compound;
    std::string rules; // "all" | "minimized"
    std::uint64_t seed = 0;
    std::uint64_t evaluations = 0;
    std::uint64_t reenqueues = 0;
    std::uint64_t nodes = 0;
    std::uint64_t solutions = 0;
    double ms = 0.0;
};

struct BenchProblem {
    std::string name;
    CSP csp;
};

struct BenchOptions {
    std::vector<SchedulerKind> schedulers = {
        SchedulerKind::Finetuned, SchedulerKind::Improved, SchedulerKind::Compound,
        SchedulerKind::GenericExhaustive};
    std::vector<std::uint64_t> seeds = {1};
    std::vector<std::string> rule_modes = {"all", "minimized"};
    bool assert_orderings = false;
    GenerationBounds gen_bounds{};
};

struct BenchReport {
    std::vector<BenchRow> rows; // sorted by (problem, scheduler, rules, seed)
    std::vector<std::string> ratio_lines; // informational redundancy-removal ratios
    std::optional<std::string> violated_ordering;
};

BenchReport run_bench(const std::vector<BenchProblem>& problems, const BenchOptions& options);

/// Fixed schema: problem,scheduler,rules,seed,evaluations,reenqueues,nodes,solutions,ms
std::string bench_csv(const BenchReport& report);

/// Scheduler name used in bench rows: GenericExhaustive prints as "generic"
/// (it is the listing's update function, benchmarked against the
/// scheme-aware ones).
std::string bench_scheduler_name(SchedulerKind k);

} // namespace rulecp

#endif
