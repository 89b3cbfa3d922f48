#include "rulecp/search.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "rulecp/arc.hpp"

namespace rulecp {

namespace {

void add_membership_rules(CompiledPropagator& out, const CSP& p,
                          const PropagatorConfig& cfg) {
    for (std::size_t k = 0; k < p.constraints.size(); ++k) {
        const Constraint& c = p.constraints[k];
        if (!c.is_extensional() || c.scope.empty())
            continue;
        if (static_cast<int>(c.scope.size()) > cfg.gen_bounds.max_arity)
            continue;
        std::vector<Domain> universes;
        bool oversized = false;
        for (int v : c.scope) {
            universes.push_back(p.variables[static_cast<std::size_t>(v)].domain);
            if (static_cast<int>(universes.back().size()) > cfg.gen_bounds.max_universe)
                oversized = true;
        }
        if (oversized)
            continue;

        std::string cid = "c" + std::to_string(k);
        RuleSetReport report;
        report.constraint_id = cid;
        std::vector<MembershipRule> rules =
            generate_minimal_rules(c.extensional(), universes, cfg.gen_bounds,
                                   &report.generated_single);
        report.minimal = rules.size();
        if (cfg.minimize_rules)
            rules = remove_redundant(std::move(rules), universes);
        report.post_redundancy = rules.size();
        out.reports.push_back(report);

        for (std::size_t i = 0; i < rules.size(); ++i) {
            // remap scope-local rule variables to CSP indices
            MembershipRule global;
            for (const auto& [var, range] : rules[i].premise)
                global.premise.emplace_back(c.scope[static_cast<std::size_t>(var)], range);
            for (const auto& [var, value] : rules[i].conclusions)
                global.conclusions.emplace_back(c.scope[static_cast<std::size_t>(var)], value);
            global.canonicalize();
            DomainReductionRule rr =
                as_reduction_rule(global, "mr" + std::to_string(i) + "(" + cid + ")");
            out.stable.stable.insert(rr.id);
            out.comm.idempotent.insert(rr.id);
            out.rules.push_back(std::move(rr));
        }
    }
}

void add_arc_rules(CompiledPropagator& out, const CSP& p, bool builtins_only) {
    for (std::size_t k = 0; k < p.constraints.size(); ++k) {
        const Constraint& c = p.constraints[k];
        if (c.is_disjunctive() || c.scope.size() != 2)
            continue;
        if (builtins_only && !c.is_builtin())
            continue;
        ArcRule first{c, ArcRule::Direction::First, "ac1(c" + std::to_string(k) + ")"};
        ArcRule second{c, ArcRule::Direction::Second, "ac2(c" + std::to_string(k) + ")"};
        out.rules.push_back(as_reduction_rule(first));
        out.rules.push_back(as_reduction_rule(second));
    }

    CommutativityDeclaration arc_decl = arc_commutativity(p);
    for (const auto& [id, comms] : arc_decl.comm) {
        // keep declarations only for rules actually registered
        auto registered = [&out](const std::string& rid) {
            return std::any_of(out.rules.begin(), out.rules.end(),
                               [&rid](const DomainReductionRule& r) { return r.id == rid; });
        };
        if (!registered(id))
            continue;
        for (const std::string& other : comms)
            if (registered(other))
                out.comm.comm[id].insert(other);
    }
    for (const std::string& id : arc_decl.idempotent)
        out.comm.idempotent.insert(id);
}

void add_cd_rules(CompiledPropagator& out, const CSP& p) {
    for (std::size_t k = 0; k < p.constraints.size(); ++k)
        if (p.constraints[k].is_disjunctive())
            out.rules.push_back(make_cd_rule(p.constraints[k], "cd(c" + std::to_string(k) + ")",
                                             default_inner_rules()));
}

} // namespace

CompiledPropagator compile_propagator(const CSP& p, const PropagatorConfig& cfg) {
    CompiledPropagator out;
    out.scheduler = cfg.scheduler;
    out.options.choose = cfg.choose;
    out.options.seed = cfg.seed;
    switch (cfg.kind) {
    case PropagatorKind::None:
        break;
    case PropagatorKind::Ac:
        add_arc_rules(out, p, false);
        break;
    case PropagatorKind::Membership:
        add_membership_rules(out, p, cfg);
        break;
    case PropagatorKind::Cd:
        add_arc_rules(out, p, false);
        add_cd_rules(out, p);
        break;
    case PropagatorKind::Auto:
        add_membership_rules(out, p, cfg);
        add_arc_rules(out, p, true);
        add_cd_rules(out, p);
        break;
    }
    return out;
}

CSP propagate(const CSP& p, const CompiledPropagator& prop) {
    FixpointResult fixed = run_scheduler(prop.scheduler, prop.rules, p.domains(), prop.comm,
                                         prop.stable, prop.options);
    return restrict_constraints(p, fixed.domains);
}

CSP propagate(const CSP& p, const PropagatorConfig& cfg) {
    return propagate(p, compile_propagator(p, cfg));
}

std::string SearchStats::to_string() const {
    std::ostringstream os;
    os << "nodes=" << nodes << " evals=" << evaluations << " solutions=" << solutions;
    return os.str();
}

namespace {

struct SearchContext {
    const CompiledPropagator* prop;
    SplitStrategy strategy;
    SolveMode mode;
    std::mt19937_64 rng;
    SearchStats stats;
    std::vector<Assignment> solutions;
    bool done = false;
};

int select_variable(const CSP& p, SearchContext& ctx) {
    std::vector<int> candidates;
    for (std::size_t i = 0; i < p.variables.size(); ++i)
        if (p.variables[i].domain.size() >= 2)
            candidates.push_back(static_cast<int>(i));
    if (candidates.empty())
        return -1;
    switch (ctx.strategy.select) {
    case VarSelect::FirstUnsingleton:
        return candidates.front();
    case VarSelect::SmallestDomain: {
        int best = candidates.front();
        for (int i : candidates)
            if (p.variables[static_cast<std::size_t>(i)].domain.size() <
                p.variables[static_cast<std::size_t>(best)].domain.size())
                best = i;
        return best;
    }
    case VarSelect::SeededRandom: {
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        return candidates[pick(ctx.rng)];
    }
    }
    return candidates.front();
}

std::vector<CSP> split_node(const CSP& p, int var, SearchContext& ctx) {
    const Domain& dom = p.variables[static_cast<std::size_t>(var)].domain;
    std::vector<Domain> parts;
    if (ctx.strategy.split == DomainSplit::Bisection) {
        std::size_t half = (dom.size() + 1) / 2;
        std::vector<Value> lo(dom.values().begin(),
                              dom.values().begin() + static_cast<std::ptrdiff_t>(half));
        std::vector<Value> hi(dom.values().begin() + static_cast<std::ptrdiff_t>(half),
                              dom.values().end());
        parts.emplace_back(std::move(lo));
        parts.emplace_back(std::move(hi));
    } else {
        std::vector<Value> order = dom.values();
        if (ctx.strategy.select == VarSelect::SeededRandom)
            std::shuffle(order.begin(), order.end(), ctx.rng);
        for (const Value& v : order)
            parts.push_back(Domain{v});
    }
    std::vector<CSP> children;
    children.reserve(parts.size());
    for (Domain& part : parts) {
        DomainTuple doms = p.domains();
        doms.at(static_cast<std::size_t>(var)) = std::move(part);
        children.push_back(restrict_constraints(p, doms));
    }
    return children;
}

void dfs(const CSP& node, std::vector<char> active, std::size_t removed_so_far,
         SearchContext& ctx, DerivationTrace* trace, SchedulerStats* root_stats,
         DomainTuple* root_fixpoint) {
    if (ctx.done)
        return;
    ++ctx.stats.nodes;
    ctx.stats.removed_reused += removed_so_far;

    std::vector<DomainReductionRule> rules;
    std::vector<std::size_t> rule_origin;
    for (std::size_t i = 0; i < ctx.prop->rules.size(); ++i)
        if (active[i]) {
            rules.push_back(ctx.prop->rules[i]);
            rule_origin.push_back(i);
        }

    SchedulerOptions opts = ctx.prop->options;
    opts.trace = trace;
    FixpointResult fixed = run_scheduler(ctx.prop->scheduler, rules, node.domains(),
                                         ctx.prop->comm, ctx.prop->stable, opts);
    ctx.stats.evaluations += fixed.stats.evaluations;
    ctx.stats.reenqueues += fixed.stats.reenqueues;
    if (root_stats)
        *root_stats = fixed.stats;
    if (root_fixpoint)
        *root_fixpoint = fixed.domains;

    // drop permanently removed rules for the entire subtree
    for (const std::string& id : fixed.removed_rule_ids)
        for (std::size_t i = 0; i < rules.size(); ++i)
            if (rules[i].id == id) {
                active[rule_origin[i]] = 0;
                ++removed_so_far;
                break;
            }

    CSP reduced = restrict_constraints(node, fixed.domains);
    if (is_failed(reduced)) {
        if (trace)
            trace->status = DerivationStatus::Failed;
        return;
    }
    if (is_manifestly_solved(reduced)) {
        if (trace)
            trace->status = DerivationStatus::Successful;
        ctx.solutions.push_back(*singleton_assignment(reduced));
        ++ctx.stats.solutions;
        if (ctx.mode == SolveMode::First)
            ctx.done = true;
        return;
    }
    if (trace)
        trace->status = DerivationStatus::Stabilizing;

    int var = select_variable(reduced, ctx);
    if (var < 0)
        return; // all singletons but not a solution: failed leaf, caught above
    for (CSP& child : split_node(reduced, var, ctx)) {
        dfs(child, active, removed_so_far, ctx, nullptr, nullptr, nullptr);
        if (ctx.done)
            return;
    }
}

} // namespace

SolveResult solve(const CSP& p, const PropagatorConfig& cfg, SplitStrategy strategy,
                  SolveMode mode, std::uint64_t seed) {
    CompiledPropagator prop = compile_propagator(p, cfg);
    SearchContext ctx;
    ctx.prop = &prop;
    ctx.strategy = strategy;
    ctx.mode = mode;
    ctx.rng.seed(seed);

    SolveResult result;
    std::vector<char> active(prop.rules.size(), 1);
    dfs(p, std::move(active), 0, ctx, &result.root_trace, &result.root_scheduler_stats,
        &result.root_fixpoint);

    std::sort(ctx.solutions.begin(), ctx.solutions.end());
    ctx.solutions.erase(std::unique(ctx.solutions.begin(), ctx.solutions.end()),
                        ctx.solutions.end());
    result.solutions = std::move(ctx.solutions);
    ctx.stats.solutions = result.solutions.size();
    result.stats = ctx.stats;
    return result;
}

} // namespace rulecp
