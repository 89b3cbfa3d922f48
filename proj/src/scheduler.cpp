#include "rulecp/scheduler.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>

namespace rulecp {

namespace {

/// Set with a queue discipline: duplicate insertions are ignored, removal
/// order follows the choose policy.
class Worklist {
public:
    Worklist(std::size_t n, ChoosePolicy policy, std::uint64_t seed)
        : in_(n, 0), policy_(policy), rng_(seed) {}

    void push(int i) {
        if (!in_[static_cast<std::size_t>(i)]) {
            in_[static_cast<std::size_t>(i)] = 1;
            q_.push_back(i);
        }
    }

    bool push_counting(int i) {
        if (in_[static_cast<std::size_t>(i)])
            return false;
        in_[static_cast<std::size_t>(i)] = 1;
        q_.push_back(i);
        return true;
    }

    bool contains(int i) const { return in_[static_cast<std::size_t>(i)] != 0; }
    bool empty() const { return q_.empty(); }

    int pop() {
        std::size_t at = 0;
        switch (policy_) {
        case ChoosePolicy::Fifo: at = 0; break;
        case ChoosePolicy::Lifo: at = q_.size() - 1; break;
        case ChoosePolicy::Random:
            at = std::uniform_int_distribution<std::size_t>(0, q_.size() - 1)(rng_);
            break;
        }
        int i = q_[at];
        q_.erase(q_.begin() + static_cast<std::ptrdiff_t>(at));
        in_[static_cast<std::size_t>(i)] = 0;
        return i;
    }

private:
    std::deque<int> q_;
    std::vector<char> in_;
    ChoosePolicy policy_;
    std::mt19937_64 rng_;
};

std::vector<int> changed_components(const DomainTuple& before, const DomainTuple& after,
                                    const Scheme& scheme) {
    std::vector<int> out;
    for (int i : scheme.indices)
        if (before[static_cast<std::size_t>(i)] != after[static_cast<std::size_t>(i)])
            out.push_back(i);
    return out;
}

bool scheme_touches(const Scheme& s, const std::vector<int>& components) {
    return std::any_of(components.begin(), components.end(),
                       [&s](int i) { return s.contains(i); });
}

} // namespace

FixpointResult generic_iteration(const std::vector<IterationFunction>& F,
                                 const DomainTuple& bottom, UpdatePolicy update,
                                 const SchedulerOptions& opts) {
    FixpointResult res;
    res.domains = bottom;
    SchedulerStats& stats = res.stats;
    Worklist G(F.size(), opts.choose, opts.seed);
    for (std::size_t i = 0; i < F.size(); ++i)
        G.push(static_cast<int>(i));

    while (!G.empty()) {
        int gi = G.pop();
        const IterationFunction& g = F[static_cast<std::size_t>(gi)];
        DomainTuple gd = apply_reduction(g, res.domains);
        ++stats.evaluations;
        if (gd == res.domains)
            continue; // G := G - {g}
        if (opts.trace)
            opts.trace->record(g.id, g.scheme, res.domains, gd);
        if (update == UpdatePolicy::Exhaustive) {
            // the listing's exact set {f in F-G | f(d)=d and f(g(d))!=g(d)}
            for (std::size_t fi = 0; fi < F.size(); ++fi) {
                int f = static_cast<int>(fi);
                if (f == gi || G.contains(f))
                    continue;
                DomainTuple fd = apply_reduction(F[fi], res.domains);
                ++stats.evaluations;
                if (fd != res.domains)
                    continue;
                DomainTuple fgd = apply_reduction(F[fi], gd);
                ++stats.evaluations;
                if (fgd != gd && G.push_counting(f))
                    ++stats.reenqueues;
            }
        } else {
            for (std::size_t fi = 0; fi < F.size(); ++fi) {
                int f = static_cast<int>(fi);
                if (f != gi && !G.contains(f) && G.push_counting(f))
                    ++stats.reenqueues;
            }
        }
        res.domains = std::move(gd);
        G.push(gi); // g stays a member of G
    }
    return res;
}

namespace {

enum class CompoundMode { Plain, Improved, Stability };

FixpointResult compound_family(const std::vector<IterationFunction>& F,
                               const DomainTuple& bottom, CompoundMode mode,
                               const CommutativityDeclaration* comm,
                               const StabilityDeclaration* stable,
                               const SchedulerOptions& opts) {
    FixpointResult res;
    res.domains = bottom;
    SchedulerStats& stats = res.stats;
    Worklist G(F.size(), opts.choose, opts.seed);
    std::vector<char> dead(F.size(), 0);
    for (std::size_t i = 0; i < F.size(); ++i)
        G.push(static_cast<int>(i));

    while (!G.empty()) {
        int gi = G.pop();
        const IterationFunction& g = F[static_cast<std::size_t>(gi)];
        DomainTuple gd = apply_reduction(g, res.domains);
        ++stats.evaluations;
        if (gd == res.domains)
            continue;
        if (opts.trace)
            opts.trace->record(g.id, g.scheme, res.domains, gd);

        std::vector<int> changed = changed_components(res.domains, gd, g.scheme);
        bool g_idempotent = false;
        const std::set<std::string>* comm_of_g = nullptr;
        if (mode == CompoundMode::Improved && comm) {
            g_idempotent = comm->idempotent.count(g.id) > 0;
            auto it = comm->comm.find(g.id);
            if (it != comm->comm.end())
                comm_of_g = &it->second;
        }
        bool g_stable_fired = mode == CompoundMode::Stability && stable &&
                              stable->stable.count(g.id) > 0;

        for (std::size_t fi = 0; fi < F.size(); ++fi) {
            int f = static_cast<int>(fi);
            if (dead[fi] || !scheme_touches(F[fi].scheme, changed))
                continue;
            if (f == gi && (g_idempotent || g_stable_fired))
                continue;
            if (comm_of_g && comm_of_g->count(F[fi].id))
                continue;
            if (G.push_counting(f))
                ++stats.reenqueues;
        }
        if (g_stable_fired) {
            dead[static_cast<std::size_t>(gi)] = 1;
            res.removed_rule_ids.push_back(g.id);
            ++stats.removed;
        }
        res.domains = std::move(gd);
    }

    if (opts.validate_stability) {
        for (std::size_t i = 0; i < F.size(); ++i)
            if (dead[i] && apply_reduction(F[i], res.domains) != res.domains)
                throw RuleContractViolation("stability violation: removed rule " + F[i].id +
                                            " would still change the tuple");
    }
    return res;
}

} // namespace

FixpointResult compound_iteration(const std::vector<IterationFunction>& F,
                                  const DomainTuple& bottom, const SchedulerOptions& opts) {
    return compound_family(F, bottom, CompoundMode::Plain, nullptr, nullptr, opts);
}

FixpointResult improved_iteration(const std::vector<IterationFunction>& F,
                                  const DomainTuple& bottom,
                                  const CommutativityDeclaration& decl,
                                  const SchedulerOptions& opts) {
    return compound_family(F, bottom, CompoundMode::Improved, &decl, nullptr, opts);
}

FixpointResult stability_scheduler(const std::vector<IterationFunction>& F,
                                   const DomainTuple& bottom,
                                   const StabilityDeclaration& decl,
                                   const SchedulerOptions& opts) {
    return compound_family(F, bottom, CompoundMode::Stability, nullptr, &decl, opts);
}

FixpointResult run_scheduler(SchedulerKind kind, const std::vector<IterationFunction>& F,
                             const DomainTuple& bottom, const CommutativityDeclaration& comm,
                             const StabilityDeclaration& stable, const SchedulerOptions& opts) {
    switch (kind) {
    case SchedulerKind::Generic:
        return generic_iteration(F, bottom, UpdatePolicy::All, opts);
    case SchedulerKind::GenericExhaustive:
        return generic_iteration(F, bottom, UpdatePolicy::Exhaustive, opts);
    case SchedulerKind::Compound:
        return compound_iteration(F, bottom, opts);
    case SchedulerKind::Improved:
        return improved_iteration(F, bottom, comm, opts);
    case SchedulerKind::Finetuned:
        return stability_scheduler(F, bottom, stable, opts);
    }
    return compound_iteration(F, bottom, opts);
}

std::string to_string(SchedulerKind k) {
    switch (k) {
    case SchedulerKind::Generic: return "generic";
    case SchedulerKind::GenericExhaustive: return "generic_exhaustive";
    case SchedulerKind::Compound: return "compound";
    case SchedulerKind::Improved: return "improved";
    case SchedulerKind::Finetuned: return "finetuned";
    }
    return "?";
}

std::string format_stats_record(const std::string& scheduler_name, const SchedulerStats& stats,
                                const DomainTuple& fixpoint) {
    std::ostringstream os;
    os << "scheduler=" << scheduler_name << " evaluations=" << stats.evaluations
       << " reenqueues=" << stats.reenqueues << " removed=" << stats.removed
       << " fixpoint_hash=" << fixpoint.hash_hex();
    return os.str();
}

} // namespace rulecp
