#include "rulecp/io.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

namespace rulecp {

namespace {

using nlohmann::json;

Value value_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer())
        return Value::integer(j.get<std::int64_t>());
    if (j.is_string())
        return Value::symbol(j.get<std::string>());
    throw ParseError(where + ": values must be integers or strings");
}

json value_to_json(const Value& v) {
    if (v.is_int())
        return json(v.as_int());
    return json(std::string(v.symbol_name()));
}

std::vector<int> scope_from_json(const json& j, const CSP& p, const std::string& where) {
    if (!j.is_array())
        throw ParseError(where + ": scope must be an array of variable names");
    std::vector<int> scope;
    for (const json& name : j) {
        if (!name.is_string())
            throw ParseError(where + ": scope entries must be variable names");
        int idx = p.variable_index(name.get<std::string>());
        if (idx < 0)
            throw ParseError(where + ": unknown variable '" + name.get<std::string>() + "'");
        scope.push_back(idx);
    }
    return scope;
}

Constraint constraint_from_json(const json& j, const CSP& p, const std::string& where);

std::vector<Constraint> branch_from_json(const json& j, const CSP& p,
                                         const std::string& where) {
    if (!j.is_array())
        throw ParseError(where + ": a branch must be an array of constraints");
    std::vector<Constraint> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(constraint_from_json(j[i], p, where + "[" + std::to_string(i) + "]"));
    return out;
}

Constraint constraint_from_json(const json& j, const CSP& p, const std::string& where) {
    if (!j.is_object() || !j.contains("kind"))
        throw ParseError(where + ": constraint must be an object with a 'kind'");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "table") {
        std::vector<int> scope = scope_from_json(j.at("scope"), p, where);
        if (!j.contains("tuples") || !j["tuples"].is_array())
            throw ParseError(where + ": table needs a 'tuples' array");
        std::vector<std::vector<Value>> tuples;
        for (const json& row : j["tuples"]) {
            if (!row.is_array() || row.size() != scope.size())
                throw ParseError(where + ": tuple arity must match the scope");
            std::vector<Value> t;
            for (const json& v : row)
                t.push_back(value_from_json(v, where));
            tuples.push_back(std::move(t));
        }
        return make_extensional(std::move(scope), std::move(tuples));
    }
    if (kind == "builtin") {
        std::vector<int> scope = scope_from_json(j.at("scope"), p, where);
        std::string op = j.at("op").get<std::string>();
        Builtin b;
        if (op == "lt") {
            b.kind = BuiltinKind::Lt;
        } else if (op == "eq_offset") {
            b.kind = BuiltinKind::EqOffset;
            b.offset = j.at("offset").get<std::int64_t>();
        } else if (op == "abs_diff_eq") {
            b.kind = BuiltinKind::AbsDiffEq;
            b.offset = j.at("value").get<std::int64_t>();
        } else if (op == "not_equal_value") {
            b.kind = BuiltinKind::NotEqualValue;
            b.value = value_from_json(j.at("value"), where);
        } else if (op == "in_set") {
            b.kind = BuiltinKind::InSet;
            std::vector<Value> vals;
            for (const json& v : j.at("values"))
                vals.push_back(value_from_json(v, where));
            b.set = Domain(std::move(vals));
        } else {
            throw ParseError(where + ": unknown builtin op '" + op + "'");
        }
        try {
            return make_builtin(std::move(scope), std::move(b));
        } catch (const ContractViolation& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (kind == "disjunction") {
        if (!j.contains("branches") || !j["branches"].is_array() || j["branches"].size() != 2)
            throw ParseError(where + ": disjunction needs exactly two branches");
        return make_disjunctive(branch_from_json(j["branches"][0], p, where + ".branches[0]"),
                                branch_from_json(j["branches"][1], p, where + ".branches[1]"));
    }
    throw ParseError(where + ": unknown constraint kind '" + kind + "'");
}

json constraint_to_json(const Constraint& c, const CSP& p) {
    json out = json::object();
    auto scope_names = [&p](const std::vector<int>& scope) {
        json names = json::array();
        for (int v : scope)
            names.push_back(p.variables[static_cast<std::size_t>(v)].name);
        return names;
    };
    if (c.is_extensional()) {
        out["kind"] = "table";
        out["scope"] = scope_names(c.scope);
        json tuples = json::array();
        for (const auto& t : c.extensional().tuples) {
            json row = json::array();
            for (const Value& v : t)
                row.push_back(value_to_json(v));
            tuples.push_back(std::move(row));
        }
        out["tuples"] = std::move(tuples);
        return out;
    }
    if (c.is_builtin()) {
        const Builtin& b = c.builtin();
        out["kind"] = "builtin";
        out["scope"] = scope_names(c.scope);
        switch (b.kind) {
        case BuiltinKind::Lt:
            out["op"] = "lt";
            break;
        case BuiltinKind::EqOffset:
            out["op"] = "eq_offset";
            out["offset"] = b.offset;
            break;
        case BuiltinKind::AbsDiffEq:
            out["op"] = "abs_diff_eq";
            out["value"] = b.offset;
            break;
        case BuiltinKind::NotEqualValue:
            out["op"] = "not_equal_value";
            out["value"] = value_to_json(b.value);
            break;
        case BuiltinKind::InSet: {
            out["op"] = "in_set";
            json vals = json::array();
            for (const Value& v : b.set.values())
                vals.push_back(value_to_json(v));
            out["values"] = std::move(vals);
            break;
        }
        }
        return out;
    }
    const Disjunctive& dj = c.disjunctive();
    out["kind"] = "disjunction";
    json branches = json::array();
    for (const std::vector<Constraint>* branch : {&dj.left, &dj.right}) {
        json arr = json::array();
        for (const Constraint& inner : *branch)
            arr.push_back(constraint_to_json(inner, p));
        branches.push_back(std::move(arr));
    }
    out["branches"] = std::move(branches);
    return out;
}

void check_homogeneous(const CSP& p) {
    bool saw_int = false, saw_sym = false;
    for (const Variable& v : p.variables)
        for (const Value& val : v.domain.values())
            (val.is_int() ? saw_int : saw_sym) = true;
    if (saw_int && saw_sym)
        throw ParseError("value universes must be homogeneous: "
                         "mixing integers and symbols");
}

} // namespace

CSP parse_problem(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("json parse error at byte ") +
                         std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("variables"))
        throw ParseError("problem must be an object with 'variables'");
    CSP p;
    for (const json& v : doc["variables"]) {
        if (!v.is_object() || !v.contains("name") || !v.contains("domain"))
            throw ParseError("each variable needs 'name' and 'domain'");
        std::string name = v["name"].get<std::string>();
        if (p.variable_index(name) >= 0)
            throw ParseError("duplicate variable '" + name + "'");
        std::vector<Value> vals;
        for (const json& x : v["domain"])
            vals.push_back(value_from_json(x, "variable " + name));
        p.variables.push_back(Variable{std::move(name), Domain(std::move(vals))});
    }
    if (doc.contains("constraints")) {
        const json& cs = doc["constraints"];
        if (!cs.is_array())
            throw ParseError("'constraints' must be an array");
        for (std::size_t i = 0; i < cs.size(); ++i)
            p.constraints.push_back(
                constraint_from_json(cs[i], p, "constraints[" + std::to_string(i) + "]"));
    }
    check_homogeneous(p);
    return p;
}

std::string format_problem(const CSP& p) {
    json doc = json::object();
    json vars = json::array();
    for (const Variable& v : p.variables) {
        json jv = json::object();
        jv["name"] = v.name;
        json dom = json::array();
        for (const Value& x : v.domain.values())
            dom.push_back(value_to_json(x));
        jv["domain"] = std::move(dom);
        vars.push_back(std::move(jv));
    }
    doc["variables"] = std::move(vars);
    json cs = json::array();
    for (const Constraint& c : p.constraints)
        cs.push_back(constraint_to_json(c, p));
    doc["constraints"] = std::move(cs);
    return doc.dump(2) + "\n";
}

CSP TableFile::as_csp() const {
    CSP p;
    std::vector<int> scope;
    for (std::size_t i = 0; i < names.size(); ++i) {
        p.variables.push_back(Variable{names[i], universes[i]});
        scope.push_back(static_cast<int>(i));
    }
    p.constraints.push_back(Constraint{std::move(scope), relation});
    return p;
}

TableFile parse_table(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    TableFile out;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok)
            tokens.push_back(tok);
        if (tokens.empty() || tokens[0][0] == '#')
            continue;
        if (out.names.empty()) {
            out.names = tokens;
            continue;
        }
        if (tokens.size() != out.names.size())
            throw ParseError("table line " + std::to_string(lineno) + ": expected " +
                             std::to_string(out.names.size()) + " values, got " +
                             std::to_string(tokens.size()));
        std::vector<Value> row;
        row.reserve(tokens.size());
        for (const std::string& t : tokens)
            row.push_back(parse_value_token(t));
        out.relation.tuples.push_back(std::move(row));
    }
    if (out.names.empty())
        throw ParseError("table file has no header line");
    std::sort(out.relation.tuples.begin(), out.relation.tuples.end());
    out.relation.tuples.erase(
        std::unique(out.relation.tuples.begin(), out.relation.tuples.end()),
        out.relation.tuples.end());

    out.universes.resize(out.names.size());
    std::vector<std::vector<Value>> columns(out.names.size());
    for (const auto& t : out.relation.tuples)
        for (std::size_t k = 0; k < t.size(); ++k)
            columns[k].push_back(t[k]);
    for (std::size_t k = 0; k < columns.size(); ++k)
        out.universes[k] = Domain(std::move(columns[k]));
    return out;
}

std::string format_table(const TableFile& table) {
    std::ostringstream os;
    for (std::size_t i = 0; i < table.names.size(); ++i) {
        if (i)
            os << ' ';
        os << table.names[i];
    }
    os << '\n';
    for (const auto& t : table.relation.tuples) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i)
                os << ' ';
            os << t[i].to_string();
        }
        os << '\n';
    }
    return os.str();
}

} // namespace rulecp
