#include "rulecp/membership.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "rulecp/scheduler.hpp"

namespace rulecp {

void MembershipRule::canonicalize() {
    std::sort(premise.begin(), premise.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::sort(conclusions.begin(), conclusions.end());
    conclusions.erase(std::unique(conclusions.begin(), conclusions.end()), conclusions.end());
    std::set<int> premise_vars;
    for (const auto& [var, range] : premise) {
        if (!premise_vars.insert(var).second)
            throw ContractViolation("membership rule premise variables must be distinct");
        if (range.empty())
            throw ContractViolation("membership rule ranges must be non-empty");
    }
    for (const auto& [var, value] : conclusions)
        if (premise_vars.count(var))
            throw ContractViolation("membership rule conclusion variable also in premise");
}

bool rule_applies(const MembershipRule& r, const DomainTuple& d) {
    for (const auto& [var, range] : r.premise) {
        const Domain& dom = d[static_cast<std::size_t>(var)];
        if (dom.empty() || !dom.subset_of(range))
            return false;
    }
    return true;
}

DomainTuple apply_membership(const MembershipRule& r, const DomainTuple& d) {
    if (!rule_applies(r, d))
        throw ContractViolation("apply_membership requires rule_applies");
    DomainTuple out = d;
    for (const auto& [var, value] : r.conclusions)
        out.at(static_cast<std::size_t>(var)) =
            out[static_cast<std::size_t>(var)].without(value);
    return out;
}

namespace {

bool tuple_matches_premise(const std::vector<Value>& t, const MembershipRule& r) {
    for (const auto& [var, range] : r.premise)
        if (!range.contains(t[static_cast<std::size_t>(var)]))
            return false;
    return true;
}

} // namespace

bool is_valid(const MembershipRule& r, const Extensional& rel) {
    for (const auto& t : rel.tuples) {
        if (!tuple_matches_premise(t, r))
            continue;
        for (const auto& [var, value] : r.conclusions)
            if (t[static_cast<std::size_t>(var)] == value)
                return false;
    }
    return true;
}

bool premise_satisfiable(const MembershipRule& r, const Extensional& rel) {
    return std::any_of(rel.tuples.begin(), rel.tuples.end(),
                       [&r](const auto& t) { return tuple_matches_premise(t, r); });
}

bool is_minimal(const MembershipRule& r, const Extensional& rel,
                const std::vector<Domain>& universes) {
    if (!is_valid(r, rel))
        return false;
    for (std::size_t k = 0; k < r.premise.size(); ++k) {
        MembershipRule dropped = r;
        dropped.premise.erase(dropped.premise.begin() + static_cast<std::ptrdiff_t>(k));
        if (is_valid(dropped, rel))
            return false; // the conclusions hold without this atom
        const auto& [var, range] = r.premise[k];
        for (const Value& v : universes[static_cast<std::size_t>(var)].values()) {
            if (range.contains(v))
                continue;
            MembershipRule expanded = r;
            expanded.premise[k].second = range.unite(Domain{v});
            if (is_valid(expanded, rel))
                return false;
        }
    }
    return true;
}

namespace {

struct PremiseLess {
    bool operator()(const std::vector<std::pair<int, Domain>>& a,
                    const std::vector<std::pair<int, Domain>>& b) const {
        return std::lexicographical_compare(
            a.begin(), a.end(), b.begin(), b.end(), [](const auto& x, const auto& y) {
                if (x.first != y.first)
                    return x.first < y.first;
                return x.second.values() < y.second.values();
            });
    }
};

} // namespace

std::vector<MembershipRule> merge_by_premise(std::vector<MembershipRule> rules) {
    std::map<std::vector<std::pair<int, Domain>>, std::vector<std::pair<int, Value>>,
             PremiseLess>
        groups;
    for (MembershipRule& r : rules) {
        auto& conclusions = groups[r.premise];
        conclusions.insert(conclusions.end(), r.conclusions.begin(), r.conclusions.end());
    }
    std::vector<MembershipRule> out;
    out.reserve(groups.size());
    for (auto& [premise, conclusions] : groups) {
        MembershipRule r;
        r.premise = premise;
        r.conclusions = std::move(conclusions);
        r.canonicalize();
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

/// Enumerates all minimal covers of the tuples selecting a conclusion value:
/// every such tuple must take a removed value at some premise variable, no
/// removal may be dropped, and no variable may lose its whole universe.
class CoverSearch {
public:
    CoverSearch(const std::vector<std::vector<Value>>& tuples, const std::vector<int>& vars,
                const std::vector<Domain>& universes)
        : tuples_(tuples), vars_(vars), universes_(universes), removed_(vars.size()) {}

    std::set<std::vector<std::vector<Value>>> run() {
        dfs();
        return std::move(found_);
    }

private:
    bool covered(const std::vector<Value>& t) const {
        for (std::size_t k = 0; k < vars_.size(); ++k)
            if (removed_[k].count(t[static_cast<std::size_t>(vars_[k])]))
                return true;
        return false;
    }

    bool minimal_cover() const {
        for (std::size_t k = 0; k < vars_.size(); ++k)
            for (const Value& v : removed_[k]) {
                bool needed = false;
                for (const auto& t : tuples_) {
                    if (t[static_cast<std::size_t>(vars_[k])] != v)
                        continue;
                    bool covered_elsewhere = false;
                    for (std::size_t k2 = 0; k2 < vars_.size() && !covered_elsewhere; ++k2)
                        for (const Value& v2 : removed_[k2]) {
                            if (k2 == k && v2 == v)
                                continue;
                            if (t[static_cast<std::size_t>(vars_[k2])] == v2) {
                                covered_elsewhere = true;
                                break;
                            }
                        }
                    if (!covered_elsewhere) {
                        needed = true;
                        break;
                    }
                }
                if (!needed)
                    return false;
            }
        return true;
    }

    void dfs() {
        const std::vector<Value>* uncovered = nullptr;
        for (const auto& t : tuples_)
            if (!covered(t)) {
                uncovered = &t;
                break;
            }
        if (!uncovered) {
            if (minimal_cover()) {
                std::vector<std::vector<Value>> key(vars_.size());
                for (std::size_t k = 0; k < vars_.size(); ++k)
                    key[k].assign(removed_[k].begin(), removed_[k].end());
                found_.insert(std::move(key));
            }
            return;
        }
        for (std::size_t k = 0; k < vars_.size(); ++k) {
            const Value& v = (*uncovered)[static_cast<std::size_t>(vars_[k])];
            // a full removal set would empty the premise range
            if (removed_[k].size() + 1 >= universes_[static_cast<std::size_t>(vars_[k])].size())
                continue;
            removed_[k].insert(v);
            dfs();
            removed_[k].erase(v);
        }
    }

    const std::vector<std::vector<Value>>& tuples_;
    const std::vector<int>& vars_;
    const std::vector<Domain>& universes_;
    std::vector<std::set<Value>> removed_;
    std::set<std::vector<std::vector<Value>>> found_;
};

} // namespace

std::vector<MembershipRule> generate_minimal_rules(const Extensional& rel,
                                                   const std::vector<Domain>& universes,
                                                   GenerationBounds bounds,
                                                   std::size_t* single_count) {
    if (static_cast<int>(universes.size()) > bounds.max_arity)
        throw BoundsExceeded("rule generation bounded to arity " +
                             std::to_string(bounds.max_arity) + ", constraint has arity " +
                             std::to_string(universes.size()));
    for (const Domain& u : universes)
        if (static_cast<int>(u.size()) > bounds.max_universe)
            throw BoundsExceeded("rule generation bounded to " +
                                 std::to_string(bounds.max_universe) +
                                 "-value universes, constraint has a " +
                                 std::to_string(u.size()) + "-value one");

    int n = static_cast<int>(universes.size());
    std::vector<MembershipRule> singles;
    for (int z = 0; z < n; ++z) {
        std::vector<int> others;
        for (int i = 0; i < n; ++i)
            if (i != z)
                others.push_back(i);
        for (const Value& a : universes[static_cast<std::size_t>(z)].values()) {
            std::vector<std::vector<Value>> selecting;
            for (const auto& t : rel.tuples)
                if (t[static_cast<std::size_t>(z)] == a)
                    selecting.push_back(t);
            if (selecting.empty()) {
                // the value never occurs: the empty-premise rule removes it
                if (!rel.tuples.empty()) {
                    MembershipRule r;
                    r.conclusions.emplace_back(z, a);
                    singles.push_back(std::move(r));
                }
                continue;
            }
            CoverSearch search(selecting, others, universes);
            for (const auto& removal : search.run()) {
                MembershipRule r;
                for (std::size_t k = 0; k < others.size(); ++k) {
                    if (removal[k].empty())
                        continue;
                    Domain range = universes[static_cast<std::size_t>(others[k])];
                    for (const Value& v : removal[k])
                        range = range.without(v);
                    r.premise.emplace_back(others[k], std::move(range));
                }
                r.conclusions.emplace_back(z, a);
                r.canonicalize();
                if (premise_satisfiable(r, rel))
                    singles.push_back(std::move(r));
            }
        }
    }
    std::sort(singles.begin(), singles.end());
    singles.erase(std::unique(singles.begin(), singles.end()), singles.end());
    if (single_count)
        *single_count = singles.size();
    return merge_by_premise(std::move(singles));
}

DomainReductionRule as_reduction_rule(const MembershipRule& r, std::string id) {
    std::set<int> vars;
    for (const auto& [var, range] : r.premise)
        vars.insert(var);
    for (const auto& [var, value] : r.conclusions)
        vars.insert(var);
    Scheme scheme{std::vector<int>(vars.begin(), vars.end())};

    // scheme-local positions
    std::vector<std::pair<std::size_t, Domain>> premise_local;
    for (const auto& [var, range] : r.premise) {
        auto it = std::lower_bound(scheme.indices.begin(), scheme.indices.end(), var);
        premise_local.emplace_back(
            static_cast<std::size_t>(it - scheme.indices.begin()), range);
    }
    std::vector<std::pair<std::size_t, Value>> conclusions_local;
    for (const auto& [var, value] : r.conclusions) {
        auto it = std::lower_bound(scheme.indices.begin(), scheme.indices.end(), var);
        conclusions_local.emplace_back(
            static_cast<std::size_t>(it - scheme.indices.begin()), value);
    }

    DomainReductionRule rule;
    rule.id = std::move(id);
    rule.scheme = scheme;
    rule.monotonic = true;
    rule.idempotent = true;
    rule.stable = true;
    rule.reduce = [premise_local, conclusions_local](const std::vector<Domain>& in) {
        for (const auto& [pos, range] : premise_local)
            if (!in[pos].subset_of(range))
                return in;
        std::vector<Domain> out = in;
        for (const auto& [pos, value] : conclusions_local)
            out[pos] = out[pos].without(value);
        return out;
    };
    return rule;
}

std::vector<DomainReductionRule> as_reduction_rules(const std::vector<MembershipRule>& rules,
                                                    const std::string& constraint_id) {
    std::vector<DomainReductionRule> out;
    out.reserve(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i)
        out.push_back(as_reduction_rule(rules[i], "mr" + std::to_string(i) + "(" +
                                                      constraint_id + ")"));
    return out;
}

bool is_redundant(const MembershipRule& r, const std::vector<MembershipRule>& rule_set,
                  const std::vector<Domain>& universes) {
    // seed: premise variables at their ranges, everything else at its universe
    std::vector<Domain> seed(universes.begin(), universes.end());
    for (const auto& [var, range] : r.premise)
        seed[static_cast<std::size_t>(var)] = range;

    std::vector<DomainReductionRule> others;
    bool skipped_one = false;
    for (const MembershipRule& s : rule_set) {
        if (!skipped_one && s == r) {
            skipped_one = true; // drop exactly one occurrence
            continue;
        }
        others.push_back(as_reduction_rule(s, "r" + std::to_string(others.size())));
    }
    DomainTuple closure =
        compound_iteration(others, DomainTuple(std::move(seed))).domains;
    for (const auto& [var, value] : r.conclusions)
        if (closure[static_cast<std::size_t>(var)].contains(value))
            return false;
    return true;
}

std::vector<MembershipRule> remove_redundant(std::vector<MembershipRule> rules,
                                             const std::vector<Domain>& universes) {
    std::vector<std::size_t> order(rules.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    auto range_total = [](const MembershipRule& r) {
        std::size_t total = 0;
        for (const auto& [var, range] : r.premise)
            total += range.size();
        return total;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const MembershipRule& ra = rules[a];
        const MembershipRule& rb = rules[b];
        if (ra.premise.size() != rb.premise.size())
            return ra.premise.size() > rb.premise.size();
        std::size_t ta = range_total(ra), tb = range_total(rb);
        if (ta != tb)
            return ta < tb;
        return ra < rb;
    });

    std::vector<char> kept(rules.size(), 1);
    for (std::size_t idx : order) {
        std::vector<MembershipRule> current;
        for (std::size_t i = 0; i < rules.size(); ++i)
            if (kept[i])
                current.push_back(rules[i]);
        if (is_redundant(rules[idx], current, universes))
            kept[idx] = 0;
    }
    std::vector<MembershipRule> out;
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (kept[i])
            out.push_back(std::move(rules[i]));
    return out;
}

CSP apply_propagation_rule(const PropagationRule& pr, const CSP& p) {
    for (const Constraint& head : pr.head)
        if (!head.is_builtin())
            throw ContractViolation("propagation rule " + pr.id +
                                    ": head constraint outside the allowed set");
    for (const Constraint& body : pr.body)
        if (std::find(p.constraints.begin(), p.constraints.end(), body) ==
            p.constraints.end())
            throw ContractViolation("propagation rule " + pr.id +
                                    ": body constraint not present");
    CSP out = p;
    for (const Constraint& head : pr.head)
        if (std::find(out.constraints.begin(), out.constraints.end(), head) ==
            out.constraints.end())
            out.constraints.push_back(head);
    return out;
}

std::vector<PropagationRule> make_transitivity_rules(const CSP& p) {
    std::vector<PropagationRule> out;
    int n = static_cast<int>(p.variables.size());
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                if (x == y || y == z || x == z)
                    continue;
                PropagationRule pr;
                pr.id = "lt_trans(" + std::to_string(x) + "," + std::to_string(y) + "," +
                        std::to_string(z) + ")";
                pr.body = {make_builtin({x, y}, Builtin::lt()),
                           make_builtin({y, z}, Builtin::lt())};
                pr.head = {make_builtin({x, z}, Builtin::lt())};
                out.push_back(std::move(pr));
            }
    return out;
}

namespace {

std::string set_to_string(const Domain& d) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i)
            os << ',';
        os << d[i].to_string();
    }
    os << '}';
    return os.str();
}

} // namespace

std::string format_rule(const MembershipRule& r, const std::vector<std::string>& names) {
    std::ostringstream os;
    for (std::size_t i = 0; i < r.premise.size(); ++i) {
        if (i)
            os << ", ";
        os << names[static_cast<std::size_t>(r.premise[i].first)] << " in "
           << set_to_string(r.premise[i].second);
    }
    if (!r.premise.empty())
        os << ' ';
    os << "-> ";
    for (std::size_t i = 0; i < r.conclusions.size(); ++i) {
        if (i)
            os << ", ";
        os << names[static_cast<std::size_t>(r.conclusions[i].first)] << " != "
           << r.conclusions[i].second.to_string();
    }
    return os.str();
}

std::string format_rule_file(const std::vector<MembershipRule>& rules,
                             const std::vector<std::string>& names) {
    std::ostringstream os;
    for (const MembershipRule& r : rules)
        os << format_rule(r, names) << '\n';
    return os.str();
}

std::string format_rule_chr(const MembershipRule& r, const std::vector<std::string>& names,
                            const std::string& constraint_name) {
    std::ostringstream os;
    os << constraint_name << '(';
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i)
            os << ',';
        os << names[i];
    }
    os << ')';
    for (const auto& [var, range] : r.premise) {
        os << ", " << names[static_cast<std::size_t>(var)] << " in [";
        for (std::size_t i = 0; i < range.size(); ++i) {
            if (i)
                os << ',';
            os << range[i].to_string();
        }
        os << ']';
    }
    os << " ==> ";
    for (std::size_t i = 0; i < r.conclusions.size(); ++i) {
        if (i)
            os << ", ";
        os << names[static_cast<std::size_t>(r.conclusions[i].first)] << " neq "
           << r.conclusions[i].second.to_string();
    }
    os << '.';
    return os.str();
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// split on commas outside braces
std::vector<std::string> split_atoms(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '{')
            ++depth;
        if (c == '}')
            --depth;
        if (c == ',' && depth == 0) {
            if (!trim(cur).empty())
                out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty())
        out.push_back(trim(cur));
    return out;
}

int resolve_name(const std::string& name, const std::vector<std::string>& names, int line) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name)
            return static_cast<int>(i);
    throw RuleParseError(line, "unknown variable '" + name + "'");
}

} // namespace

std::vector<MembershipRule> parse_rule_file(const std::string& text,
                                            const std::vector<std::string>& names) {
    std::vector<MembershipRule> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        std::size_t arrow = t.find("->");
        if (arrow == std::string::npos)
            throw RuleParseError(lineno, "missing '->'");
        std::string left = trim(t.substr(0, arrow));
        std::string right = trim(t.substr(arrow + 2));
        MembershipRule r;
        if (!left.empty()) {
            for (const std::string& atom : split_atoms(left)) {
                std::size_t in_pos = atom.find(" in ");
                if (in_pos == std::string::npos)
                    throw RuleParseError(lineno, "premise atom missing ' in ': " + atom);
                std::string var = trim(atom.substr(0, in_pos));
                std::string set = trim(atom.substr(in_pos + 4));
                if (set.size() < 2 || set.front() != '{' || set.back() != '}')
                    throw RuleParseError(lineno, "range must be braced: " + set);
                std::vector<Value> vals;
                for (const std::string& tok : split_atoms(set.substr(1, set.size() - 2)))
                    if (!tok.empty())
                        vals.push_back(parse_value_token(tok));
                if (vals.empty())
                    throw RuleParseError(lineno, "empty range in premise");
                r.premise.emplace_back(resolve_name(var, names, lineno),
                                       Domain(std::move(vals)));
            }
        }
        if (right.empty())
            throw RuleParseError(lineno, "rule has no conclusions");
        for (const std::string& atom : split_atoms(right)) {
            std::size_t neq = atom.find("!=");
            if (neq == std::string::npos)
                throw RuleParseError(lineno, "conclusion missing '!=': " + atom);
            std::string var = trim(atom.substr(0, neq));
            std::string val = trim(atom.substr(neq + 2));
            if (val.empty())
                throw RuleParseError(lineno, "conclusion missing value");
            r.conclusions.emplace_back(resolve_name(var, names, lineno),
                                       parse_value_token(val));
        }
        try {
            r.canonicalize();
        } catch (const ContractViolation& e) {
            throw RuleParseError(lineno, e.what());
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace rulecp
