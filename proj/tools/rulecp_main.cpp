#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rulecp/arc.hpp"
#include "rulecp/bench.hpp"
#include "rulecp/io.hpp"
#include "rulecp/membership.hpp"
#include "rulecp/oracles.hpp"
#include "rulecp/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitVerification = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw rulecp::ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw rulecp::ParseError("cannot write file: " + path);
    out << text;
}

struct SolveArgs {
    std::string file;
    std::string propagator = "ac";
    std::string scheduler = "compound";
    std::string choose = "fifo";
    std::string split = "enum";
    std::string select = "first";
    std::uint64_t seed = 0;
    bool all = false;
    bool trace = false;
    bool oracle = false;
};

rulecp::PropagatorKind parse_propagator(const std::string& s) {
    if (s == "ac") return rulecp::PropagatorKind::Ac;
    if (s == "membership") return rulecp::PropagatorKind::Membership;
    if (s == "cd") return rulecp::PropagatorKind::Cd;
    if (s == "none") return rulecp::PropagatorKind::None;
    if (s == "auto") return rulecp::PropagatorKind::Auto;
    throw CLI::ValidationError("--propagator", "unknown propagator: " + s);
}

rulecp::SchedulerKind parse_scheduler(const std::string& s) {
    if (s == "generic") return rulecp::SchedulerKind::Generic;
    if (s == "generic_exhaustive") return rulecp::SchedulerKind::GenericExhaustive;
    if (s == "compound") return rulecp::SchedulerKind::Compound;
    if (s == "improved") return rulecp::SchedulerKind::Improved;
    if (s == "finetuned") return rulecp::SchedulerKind::Finetuned;
    throw CLI::ValidationError("--scheduler", "unknown scheduler: " + s);
}

int run_solve(const SolveArgs& args) {
    rulecp::CSP p = rulecp::parse_problem(slurp(args.file));

    rulecp::PropagatorConfig cfg;
    cfg.kind = parse_propagator(args.propagator);
    cfg.scheduler = parse_scheduler(args.scheduler);
    cfg.seed = args.seed;
    if (args.choose == "fifo")
        cfg.choose = rulecp::ChoosePolicy::Fifo;
    else if (args.choose == "lifo")
        cfg.choose = rulecp::ChoosePolicy::Lifo;
    else if (args.choose == "random")
        cfg.choose = rulecp::ChoosePolicy::Random;
    else
        throw CLI::ValidationError("--choose", "unknown policy: " + args.choose);

    rulecp::SplitStrategy strategy;
    strategy.split = args.split == "bisect" ? rulecp::DomainSplit::Bisection
                                            : rulecp::DomainSplit::Enumeration;
    if (args.select == "first")
        strategy.select = rulecp::VarSelect::FirstUnsingleton;
    else if (args.select == "smallest")
        strategy.select = rulecp::VarSelect::SmallestDomain;
    else if (args.select == "random")
        strategy.select = rulecp::VarSelect::SeededRandom;
    else
        throw CLI::ValidationError("--select", "unknown selection: " + args.select);

    rulecp::SolveResult result =
        rulecp::solve(p, cfg, strategy,
                      args.all ? rulecp::SolveMode::All : rulecp::SolveMode::First, args.seed);

    if (args.trace) {
        std::cout << result.root_trace.render(p.variable_names());
        std::cout << rulecp::format_stats_record(to_string(cfg.scheduler),
                                                 result.root_scheduler_stats,
                                                 result.root_fixpoint)
                  << '\n';
    }
    for (const rulecp::Assignment& a : result.solutions)
        std::cout << rulecp::format_assignment(p, a) << '\n';
    std::cout << result.stats.to_string() << '\n';

    if (args.oracle) {
        std::set<rulecp::Assignment> expected = rulecp::enumerate_solutions(p);
        bool ok;
        if (args.all) {
            std::set<rulecp::Assignment> got(result.solutions.begin(),
                                             result.solutions.end());
            ok = got == expected;
        } else {
            ok = result.solutions.empty()
                     ? expected.empty()
                     : expected.count(result.solutions.front()) > 0;
        }
        if (!ok) {
            std::cerr << "oracle mismatch: solver disagrees with exhaustive enumeration\n";
            return kExitVerification;
        }
        std::cout << "oracle=ok\n";
    }
    return kExitOk;
}

int run_rules_gen(const std::string& table_path, const std::string& out_path,
                  bool chr_render) {
    rulecp::TableFile table = rulecp::parse_table(slurp(table_path));
    std::size_t single = 0;
    std::vector<rulecp::MembershipRule> rules = rulecp::generate_minimal_rules(
        table.relation, table.universes, {}, &single);
    std::string body = rulecp::format_rule_file(rules, table.names);
    std::ostringstream counts;
    counts << "rules=" << rules.size() << " single_conclusion=" << single << '\n';
    if (out_path.empty()) {
        std::cout << body;
        std::cerr << counts.str();
    } else {
        spill(out_path, body);
        std::cout << counts.str();
    }
    if (chr_render) {
        std::string name = std::filesystem::path(table_path).stem().string();
        for (const rulecp::MembershipRule& r : rules)
            std::cout << rulecp::format_rule_chr(r, table.names, name) << '\n';
    }
    return kExitOk;
}

int run_rules_minimize(const std::string& rule_path, const std::string& table_path,
                       const std::string& out_path) {
    rulecp::TableFile table = rulecp::parse_table(slurp(table_path));
    std::vector<rulecp::MembershipRule> rules =
        rulecp::parse_rule_file(slurp(rule_path), table.names);
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (!rulecp::is_valid(rules[i], table.relation))
            throw rulecp::ParseError("rule " + std::to_string(i + 1) +
                                     " is not valid for the table; minimize requires valid rules");
    std::size_t before = rules.size();
    std::vector<rulecp::MembershipRule> kept =
        rulecp::remove_redundant(std::move(rules), table.universes);
    std::string body = rulecp::format_rule_file(kept, table.names);
    if (out_path.empty())
        std::cout << body;
    else
        spill(out_path, body);
    std::cout << "before=" << before << " after=" << kept.size() << '\n';
    return kExitOk;
}

int run_rules_check(const std::string& rule_path, const std::string& table_path) {
    rulecp::TableFile table = rulecp::parse_table(slurp(table_path));
    std::vector<rulecp::MembershipRule> rules =
        rulecp::parse_rule_file(slurp(rule_path), table.names);
    bool all_ok = true;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        bool valid = rulecp::is_valid(rules[i], table.relation);
        bool minimal = valid && rulecp::is_minimal(rules[i], table.relation, table.universes);
        std::cout << "rule " << (i + 1) << ": "
                  << (valid ? (minimal ? "valid minimal" : "valid non-minimal") : "invalid")
                  << '\n';
        all_ok = all_ok && valid && minimal;
    }
    return all_ok ? kExitOk : kExitVerification;
}

int run_bench_cmd(const std::vector<std::string>& files, const std::string& schedulers,
                  const std::string& seeds, const std::string& rules, bool assert_orderings,
                  const std::string& csv_out) {
    rulecp::BenchOptions options;
    options.assert_orderings = assert_orderings;
    options.schedulers.clear();
    {
        std::istringstream is(schedulers);
        std::string tok;
        while (std::getline(is, tok, ','))
            if (!tok.empty()) {
                // bench's "generic" is the exhaustive-update variant
                options.schedulers.push_back(tok == "generic"
                                                 ? rulecp::SchedulerKind::GenericExhaustive
                                                 : parse_scheduler(tok));
            }
    }
    options.seeds.clear();
    {
        std::istringstream is(seeds);
        std::string tok;
        while (std::getline(is, tok, ','))
            if (!tok.empty())
                options.seeds.push_back(std::stoull(tok));
    }
    options.rule_modes.clear();
    {
        std::istringstream is(rules);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            if (tok != "all" && tok != "minimized")
                throw CLI::ValidationError("--rules", "expected all|minimized: " + tok);
            options.rule_modes.push_back(tok);
        }
    }

    std::vector<rulecp::BenchProblem> problems;
    for (const std::string& file : files) {
        rulecp::BenchProblem bp;
        bp.name = std::filesystem::path(file).stem().string();
        bp.csp = rulecp::parse_problem(slurp(file));
        problems.push_back(std::move(bp));
    }

    rulecp::BenchReport report = rulecp::run_bench(problems, options);
    std::string csv = rulecp::bench_csv(report);
    if (csv_out.empty())
        std::cout << csv;
    else
        spill(csv_out, csv);
    for (const std::string& line : report.ratio_lines)
        std::cerr << "# " << line << '\n';
    if (assert_orderings && report.violated_ordering) {
        std::cerr << *report.violated_ordering << '\n';
        return kExitVerification;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rulecp: rule-based finite-domain constraint solving"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "solve a problem file");
    solve->add_option("file", solve_args.file, "problem JSON file")->required();
    solve->add_option("--propagator", solve_args.propagator,
                      "ac|membership|cd|none|auto (default ac)");
    solve->add_option("--scheduler", solve_args.scheduler,
                      "generic|compound|improved|finetuned (default compound)");
    solve->add_option("--choose", solve_args.choose,
                      "worklist policy fifo|lifo|random (default fifo)");
    solve->add_option("--split", solve_args.split, "bisect|enum (default enum)");
    solve->add_option("--select", solve_args.select, "first|smallest|random (default first)");
    solve->add_option("--seed", solve_args.seed, "random seed")->envname("RULECP_SEED");
    solve->add_flag("--all", solve_args.all, "collect every solution");
    solve->add_flag("--trace", solve_args.trace, "print the root derivation trace");
    solve->add_flag("--oracle", solve_args.oracle,
                    "cross-check the result against exhaustive enumeration");

    CLI::App* rules = app.add_subcommand("rules", "membership rule pipeline");
    rules->require_subcommand(1);

    std::string gen_table, gen_out;
    bool gen_chr = false;
    CLI::App* gen = rules->add_subcommand("gen", "generate all minimal membership rules");
    gen->add_option("table", gen_table, "constraint table file")->required();
    gen->add_option("-o,--out", gen_out, "output rule file (default stdout)");
    gen->add_flag("--chr", gen_chr, "also print a CHR-style rendering");

    std::string min_rules, min_table, min_out;
    CLI::App* minimize = rules->add_subcommand("minimize", "remove redundant rules");
    minimize->add_option("rules", min_rules, "rule file")->required();
    minimize->add_option("--table", min_table, "constraint table file")->required();
    minimize->add_option("-o,--out", min_out, "output rule file (default stdout)");

    std::string check_rules, check_table;
    CLI::App* check = rules->add_subcommand("check", "validate rules against a table");
    check->add_option("rules", check_rules, "rule file")->required();
    check->add_option("--table", check_table, "constraint table file")->required();

    std::vector<std::string> bench_files;
    std::string bench_schedulers = "finetuned,improved,compound,generic";
    std::string bench_seeds = "1";
    std::string bench_rules = "all,minimized";
    std::string bench_csv_out;
    bool bench_assert = false;
    CLI::App* bench = app.add_subcommand("bench", "scheduler comparison harness");
    bench->add_option("files", bench_files, "problem JSON files")->required();
    bench->add_option("--schedulers", bench_schedulers, "comma-separated scheduler list");
    bench->add_option("--seeds", bench_seeds, "comma-separated seed list");
    bench->add_option("--rules", bench_rules, "all|minimized (comma-separated)");
    bench->add_option("--csv", bench_csv_out, "write CSV here instead of stdout");
    bench->add_flag("--assert", bench_assert, "fail on counter-ordering violations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (solve->parsed())
            return run_solve(solve_args);
        if (gen->parsed())
            return run_rules_gen(gen_table, gen_out, gen_chr);
        if (minimize->parsed())
            return run_rules_minimize(min_rules, min_table, min_out);
        if (check->parsed())
            return run_rules_check(check_rules, check_table);
        if (bench->parsed())
            return run_bench_cmd(bench_files, bench_schedulers, bench_seeds, bench_rules,
                                 bench_assert, bench_csv_out);
    } catch (const rulecp::RuleParseError& e) {
        std::cerr << "error: line " << e.line << ": " << e.what() << '\n';
        return kExitInput;
    } catch (const rulecp::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const rulecp::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const rulecp::BoundsExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
