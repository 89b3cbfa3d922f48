#include "rulecp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <map>
#include <sstream>

namespace rulecp {

std::string bench_scheduler_name(SchedulerKind k) {
    if (k == SchedulerKind::GenericExhaustive)
        return "generic";
    return to_string(k);
}

namespace {

BenchRow run_one(const BenchProblem& problem, SchedulerKind scheduler,
                 const std::string& rules, std::uint64_t seed,
                 const GenerationBounds& bounds) {
    PropagatorConfig cfg;
    cfg.kind = PropagatorKind::Auto;
    cfg.scheduler = scheduler;
    cfg.choose = ChoosePolicy::Fifo;
    cfg.seed = seed;
    cfg.gen_bounds = bounds;
    cfg.minimize_rules = rules == "minimized";
    SplitStrategy strategy{VarSelect::SeededRandom, DomainSplit::Enumeration};

    auto start = std::chrono::steady_clock::now();
    SolveResult result = solve(problem.csp, cfg, strategy, SolveMode::All, seed);
    auto stop = std::chrono::steady_clock::now();

    BenchRow row;
    row.problem = problem.name;
    row.scheduler = scheduler;
    row.rules = rules;
    row.seed = seed;
    row.evaluations = result.stats.evaluations;
    row.reenqueues = result.stats.reenqueues;
    row.nodes = result.stats.nodes;
    row.solutions = result.stats.solutions;
    row.ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return row;
}

} // namespace

BenchReport run_bench(const std::vector<BenchProblem>& problems, const BenchOptions& options) {
    BenchReport report;

    std::vector<std::future<BenchRow>> tasks;
    for (const BenchProblem& problem : problems)
        for (SchedulerKind scheduler : options.schedulers)
            for (const std::string& rules : options.rule_modes)
                for (std::uint64_t seed : options.seeds)
                    tasks.push_back(std::async(std::launch::async, run_one,
                                               std::cref(problem), scheduler,
                                               rules, seed, options.gen_bounds));
    for (auto& t : tasks)
        report.rows.push_back(t.get());

    std::sort(report.rows.begin(), report.rows.end(),
              [](const BenchRow& a, const BenchRow& b) {
                  return std::tie(a.problem, a.scheduler, a.rules, a.seed) <
                         std::tie(b.problem, b.scheduler, b.rules, b.seed);
              });

    // evaluations lookup per (problem, rules, seed, scheduler)
    std::map<std::tuple<std::string, std::string, std::uint64_t, SchedulerKind>,
             std::uint64_t>
        evals;
    for (const BenchRow& row : report.rows)
        evals[{row.problem, row.rules, row.seed, row.scheduler}] = row.evaluations;

    auto lookup = [&evals](const std::string& p, const std::string& r, std::uint64_t s,
                           SchedulerKind k) -> std::optional<std::uint64_t> {
        auto it = evals.find({p, r, s, k});
        if (it == evals.end())
            return std::nullopt;
        return it->second;
    };

    // the claimed orderings: finetuned <= compound, improved <= compound,
    // compound <= generic (exhaustive update)
    const std::vector<std::pair<SchedulerKind, SchedulerKind>> claims = {
        {SchedulerKind::Finetuned, SchedulerKind::Compound},
        {SchedulerKind::Improved, SchedulerKind::Compound},
        {SchedulerKind::Compound, SchedulerKind::GenericExhaustive},
    };
    for (const BenchProblem& problem : problems) {
        for (const std::string& rules : options.rule_modes) {
            for (std::uint64_t seed : options.seeds) {
                for (const auto& [lo, hi] : claims) {
                    auto a = lookup(problem.name, rules, seed, lo);
                    auto b = lookup(problem.name, rules, seed, hi);
                    if (a && b && *a > *b) {
                        std::ostringstream os;
                        os << "ordering violated: evaluations(" << bench_scheduler_name(lo)
                           << ")=" << *a << " > evaluations(" << bench_scheduler_name(hi)
                           << ")=" << *b << " on problem " << problem.name
                           << " rules=" << rules << " seed=" << seed;
                        if (!report.violated_ordering)
                            report.violated_ordering = os.str();
                    }
                }
                // minimized rules never cost more than the full set
                for (SchedulerKind k : options.schedulers) {
                    auto all = lookup(problem.name, "all", seed, k);
                    auto min = lookup(problem.name, "minimized", seed, k);
                    if (all && min && *min > *all) {
                        std::ostringstream os;
                        os << "ordering violated: evaluations(minimized)=" << *min
                           << " > evaluations(all)=" << *all << " on problem " << problem.name
                           << " scheduler=" << bench_scheduler_name(k) << " seed=" << seed;
                        if (!report.violated_ordering)
                            report.violated_ordering = os.str();
                    }
                }
            }
        }
    }

    // informational: redundancy-removal gain under the fine-tuned scheduler
    for (const BenchProblem& problem : problems) {
        std::uint64_t all_total = 0, min_total = 0;
        for (std::uint64_t seed : options.seeds) {
            if (auto v = lookup(problem.name, "all", seed, SchedulerKind::Finetuned))
                all_total += *v;
            if (auto v = lookup(problem.name, "minimized", seed, SchedulerKind::Finetuned))
                min_total += *v;
        }
        if (all_total && min_total) {
            std::ostringstream os;
            os << "ratio problem=" << problem.name << " finetuned evaluations all/minimized="
               << static_cast<double>(all_total) / static_cast<double>(min_total);
            report.ratio_lines.push_back(os.str());
        }
    }
    return report;
}

std::string bench_csv(const BenchReport& report) {
    std::ostringstream os;
    os << "problem,scheduler,rules,seed,evaluations,reenqueues,nodes,solutions,ms\n";
    for (const BenchRow& row : report.rows) {
        os << row.problem << ',' << bench_scheduler_name(row.scheduler) << ',' << row.rules
           << ',' << row.seed << ',' << row.evaluations << ',' << row.reenqueues << ','
           << row.nodes << ',' << row.solutions << ',' << row.ms << '\n';
    }
    return os.str();
}

} // namespace rulecp
