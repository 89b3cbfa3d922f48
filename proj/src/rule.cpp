#include "rulecp/rule.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "rulecp/oracles.hpp"

namespace rulecp {

Scheme::Scheme(std::vector<int> idx) : indices(std::move(idx)) {
    if (indices.empty())
        throw ContractViolation("scheme must be non-empty");
    for (std::size_t i = 1; i < indices.size(); ++i)
        if (indices[i] <= indices[i - 1])
            throw ContractViolation("scheme indices must be strictly increasing");
}

bool Scheme::contains(int i) const {
    return std::binary_search(indices.begin(), indices.end(), i);
}

std::string Scheme::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i)
            os << ',';
        os << indices[i];
    }
    os << ']';
    return os.str();
}

std::vector<Domain> project_scheme(const Scheme& s, const DomainTuple& d) {
    std::vector<Domain> out;
    out.reserve(s.indices.size());
    for (int i : s.indices) {
        if (i < 0 || static_cast<std::size_t>(i) >= d.size())
            throw ContractViolation("scheme index out of range");
        out.push_back(d[static_cast<std::size_t>(i)]);
    }
    return out;
}

DomainTuple apply_reduction(const DomainReductionRule& r, const DomainTuple& d) {
    std::vector<Domain> in = project_scheme(r.scheme, d);
    std::vector<Domain> out = r.reduce(in);
    if (out.size() != in.size())
        throw RuleContractViolation("rule " + r.id + " changed its scheme arity");
    for (std::size_t k = 0; k < out.size(); ++k)
        if (!out[k].subset_of(in[k]))
            throw RuleContractViolation("rule " + r.id +
                                        " produced a non-subset domain at scheme position " +
                                        std::to_string(k));
    DomainTuple result = d;
    for (std::size_t k = 0; k < r.scheme.indices.size(); ++k)
        result.at(static_cast<std::size_t>(r.scheme.indices[k])) = out[k];
    return result;
}

MonotonicityReport check_monotonic(
    const DomainReductionRule& r,
    const std::vector<std::pair<std::vector<Domain>, std::vector<Domain>>>& samples) {
    for (const auto& [small, large] : samples) {
        std::vector<Domain> rs = r.reduce(small);
        std::vector<Domain> rl = r.reduce(large);
        for (std::size_t k = 0; k < rs.size(); ++k)
            if (!rs[k].subset_of(rl[k]))
                return MonotonicityReport{false, std::make_pair(small, large)};
    }
    return MonotonicityReport{};
}

namespace {

std::vector<Domain> all_subdomains(const Domain& u, bool include_empty) {
    std::vector<Domain> out;
    const auto& vals = u.values();
    std::size_t n = vals.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        if (!include_empty && mask == 0)
            continue;
        std::vector<Value> vs;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i))
                vs.push_back(vals[i]);
        out.push_back(Domain(std::move(vs)));
    }
    return out;
}

} // namespace

std::vector<std::pair<std::vector<Domain>, std::vector<Domain>>>
nested_pairs_exhaustive(const std::vector<Domain>& universe, bool include_empty) {
    std::vector<std::vector<Domain>> per_var;
    per_var.reserve(universe.size());
    for (const Domain& u : universe)
        per_var.push_back(all_subdomains(u, include_empty));

    std::vector<std::vector<Domain>> tuples;
    std::vector<Domain> cur(universe.size());
    std::function<void(std::size_t)> build = [&](std::size_t k) {
        if (k == universe.size()) {
            tuples.push_back(cur);
            return;
        }
        for (const Domain& d : per_var[k]) {
            cur[k] = d;
            build(k + 1);
        }
    };
    build(0);

    std::vector<std::pair<std::vector<Domain>, std::vector<Domain>>> pairs;
    for (const auto& small : tuples)
        for (const auto& large : tuples) {
            bool nested = true;
            for (std::size_t k = 0; k < small.size(); ++k)
                if (!small[k].subset_of(large[k])) {
                    nested = false;
                    break;
                }
            if (nested)
                pairs.emplace_back(small, large);
        }
    return pairs;
}

bool check_equivalence_preserving(const DomainReductionRule& r, const CSP& p) {
    DomainTuple reduced = apply_reduction(r, p.domains());
    CSP q = restrict_constraints(p, reduced);
    return enumerate_solutions(p) == enumerate_solutions(q);
}

bool check_equivalence_preserving(const SplittingRule& r, const CSP& p) {
    std::vector<CSP> children = r.split(p);
    std::set<Assignment> combined;
    for (const CSP& child : children) {
        auto sols = enumerate_solutions(child);
        combined.insert(sols.begin(), sols.end());
    }
    return combined == enumerate_solutions(p);
}

bool is_closed_under(const DomainTuple& d, const std::vector<DomainReductionRule>& rules) {
    return std::all_of(rules.begin(), rules.end(), [&d](const DomainReductionRule& r) {
        return apply_reduction(r, d) == d;
    });
}

std::string to_string(DerivationStatus s) {
    switch (s) {
    case DerivationStatus::Successful: return "successful";
    case DerivationStatus::Failed: return "failed";
    case DerivationStatus::Stabilizing: return "stabilizing";
    case DerivationStatus::Ongoing: return "ongoing";
    }
    return "?";
}

void DerivationTrace::record(const std::string& rule_id, const Scheme& scheme,
                             const DomainTuple& before, const DomainTuple& after) {
    DerivationStep step;
    step.rule_id = rule_id;
    step.scheme = scheme;
    for (int i : scheme.indices) {
        auto idx = static_cast<std::size_t>(i);
        if (before[idx] != after[idx])
            step.changes.emplace_back(i, before[idx], after[idx]);
    }
    steps.push_back(std::move(step));
}

std::string DerivationTrace::render(const std::vector<std::string>& var_names) const {
    std::ostringstream os;
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const DerivationStep& s = steps[k];
        os << "step " << (k + 1) << ": " << s.rule_id << ' ' << s.scheme.to_string();
        for (const auto& [var, before, after] : s.changes) {
            auto idx = static_cast<std::size_t>(var);
            const std::string& name =
                idx < var_names.size() ? var_names[idx] : std::to_string(var);
            os << ' ' << name << ':' << before.to_string() << "->" << after.to_string();
        }
        os << '\n';
    }
    os << "status: " << to_string(status) << '\n';
    return os.str();
}

Relation transpose(const Relation& r) {
    Relation out;
    out.reserve(r.size());
    for (const auto& t : r)
        out.push_back({t[1], t[0]});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Relation compose(const Relation& r, const Relation& s) {
    Relation out;
    for (const auto& a : r)
        for (const auto& b : s)
            if (a[1] == b[0])
                out.push_back({a[0], b[1]});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Domain supported_first(const Relation& r, const Domain& dx, const Domain& dy) {
    std::vector<Value> kept;
    for (const Value& a : dx.values()) {
        bool has = false;
        for (const auto& t : r)
            if (t[0] == a && dy.contains(t[1])) {
                has = true;
                break;
            }
        if (has)
            kept.push_back(a);
    }
    return Domain(std::move(kept));
}

Domain supported_second(const Relation& r, const Domain& dx, const Domain& dy) {
    std::vector<Value> kept;
    for (const Value& b : dy.values()) {
        bool has = false;
        for (const auto& t : r)
            if (t[1] == b && dx.contains(t[0])) {
                has = true;
                break;
            }
        if (has)
            kept.push_back(b);
    }
    return Domain(std::move(kept));
}

} // namespace rulecp
