// Serialization: JSON documents for networks and swap sequences, DOT export,
// a DIMACS-CNF reader for clause inputs, and small JSON formats for set
// systems, graphs, and value lists.
//
// Exact rationals are written as strings ("3", "7/2"), never as floating
// point.  Integral JSON numbers are accepted on input for convenience; floats
// are rejected.  Documents are strict: unknown keys are errors.
#pragma once

#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "clearing.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "gadgets.hpp"
#include "network.hpp"

namespace debtswap {

using Json = nlohmann::ordered_json;

inline constexpr const char* kNetworkSchema = "debtswap-network/1";
inline constexpr const char* kSequenceSchema = "debtswap-sequence/1";

namespace detail {

inline void check_keys(const Json& obj, const std::set<std::string>& allowed,
                       const std::string& where) {
    require(obj.is_object(), Errc::ValidationError, where + ": expected an object");
    for (const auto& [key, value] : obj.items())
        require(allowed.count(key) != 0, Errc::ValidationError,
                where + ": unknown key '" + key + "'");
}

inline const Json& get_field(const Json& obj, const std::string& key,
                             const std::string& where) {
    auto it = obj.find(key);
    require(it != obj.end(), Errc::ValidationError, where + ": missing key '" + key + "'");
    return *it;
}

inline Money money_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) {
        auto parsed = money_from_string(j.get<std::string>());
        require(parsed.has_value(), Errc::ValidationError,
                where + ": not a rational number: '" + j.get<std::string>() + "'");
        return *parsed;
    }
    if (j.is_number_integer())
        return Money(Integer(j.get<long long>()));
    raise(Errc::ValidationError,
          where + ": expected an integer or a rational string like \"7/2\"");
}

inline std::string get_string(const Json& j, const std::string& where) {
    require(j.is_string(), Errc::ValidationError, where + ": expected a string");
    return j.get<std::string>();
}

inline int get_int(const Json& j, const std::string& where) {
    require(j.is_number_integer(), Errc::ValidationError, where + ": expected an integer");
    return j.get<int>();
}

inline Json parse_json(const std::string& text, const std::string& where) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::ParseError, where + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), Errc::IoError, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    require(!in.bad(), Errc::IoError, "failed while reading '" + path + "'");
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), Errc::IoError, "cannot open '" + path + "' for writing");
    out << content;
    require(out.good(), Errc::IoError, "failed while writing '" + path + "'");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Network documents.
// ---------------------------------------------------------------------------

inline Json network_to_document(const FinancialNetwork& net) {
    Json doc;
    doc["schema"] = kNetworkSchema;
    doc["banks"] = Json::array();
    for (BankId v = 0; v < net.bank_count(); ++v)
        doc["banks"].push_back({{"name", net.bank(v).name},
                                {"externalAssets", money_to_string(net.bank(v).externalAssets)}});
    doc["edges"] = Json::array();
    for (EdgeId e = 0; e < net.edge_count(); ++e)
        doc["edges"].push_back({{"debtor", net.bank(net.edge(e).debtor).name},
                                {"creditor", net.bank(net.edge(e).creditor).name},
                                {"liability", money_to_string(net.edge(e).liability)}});
    doc["rules"] = Json::object();
    for (BankId v = 0; v < net.bank_count(); ++v) {
        Json rule;
        if (net.rule(v).type == RuleType::Proportional) {
            rule["type"] = "proportional";
        } else {
            rule["type"] = "ranking";
            Json order = Json::array();
            for (EdgeId e : net.rule(v).ranking)
                order.push_back(net.bank(net.edge(e).creditor).name);
            rule["ranking"] = std::move(order);
        }
        doc["rules"][net.bank(v).name] = std::move(rule);
    }
    return doc;
}

inline FinancialNetwork network_from_document(const Json& doc) {
    detail::check_keys(doc, {"schema", "banks", "edges", "rules"}, "document");
    require(detail::get_string(detail::get_field(doc, "schema", "document"), "schema") ==
                kNetworkSchema,
            Errc::ValidationError, std::string("document: schema must be '") +
                                       kNetworkSchema + "'");

    FinancialNetwork net;
    const Json& banks = detail::get_field(doc, "banks", "document");
    require(banks.is_array(), Errc::ValidationError, "banks: expected an array");
    for (std::size_t i = 0; i < banks.size(); ++i) {
        const std::string where = "banks[" + std::to_string(i) + "]";
        detail::check_keys(banks[i], {"name", "externalAssets"}, where);
        const std::string name =
            detail::get_string(detail::get_field(banks[i], "name", where), where + ".name");
        require(!name.empty(), Errc::ValidationError, where + ": empty bank name");
        require(!net.has_bank(name), Errc::ValidationError,
                where + ": duplicate bank '" + name + "'");
        Money assets = detail::money_from_json(
            detail::get_field(banks[i], "externalAssets", where), where + ".externalAssets");
        require(assets >= 0, Errc::ValidationError,
                where + ": external assets must be non-negative");
        net.add_bank(name, assets);
    }

    const Json& edges = detail::get_field(doc, "edges", "document");
    require(edges.is_array(), Errc::ValidationError, "edges: expected an array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        detail::check_keys(edges[i], {"debtor", "creditor", "liability"}, where);
        const std::string debtor = detail::get_string(
            detail::get_field(edges[i], "debtor", where), where + ".debtor");
        const std::string creditor = detail::get_string(
            detail::get_field(edges[i], "creditor", where), where + ".creditor");
        for (const std::string& name : {debtor, creditor})
            require(net.has_bank(name), Errc::ValidationError,
                    where + ": unknown bank '" + name + "'");
        require(debtor != creditor, Errc::ValidationError, where + ": self-loop");
        const BankId d = net.bank_id(debtor);
        const BankId c = net.bank_id(creditor);
        require(!net.has_edge(d, c), Errc::ValidationError,
                where + ": duplicate edge '" + debtor + "' -> '" + creditor + "'");
        Money liability = detail::money_from_json(
            detail::get_field(edges[i], "liability", where), where + ".liability");
        require(liability > 0, Errc::ValidationError, where + ": liability must be positive");
        net.add_edge(d, c, liability);
    }

    const Json& rules = detail::get_field(doc, "rules", "document");
    require(rules.is_object(), Errc::ValidationError, "rules: expected an object");
    for (const auto& [name, rule] : rules.items()) {
        const std::string where = "rules['" + name + "']";
        require(net.has_bank(name), Errc::ValidationError, where + ": unknown bank");
        const BankId v = net.bank_id(name);
        detail::check_keys(rule, {"type", "ranking"}, where);
        const std::string type =
            detail::get_string(detail::get_field(rule, "type", where), where + ".type");
        if (type == "proportional") {
            require(!rule.contains("ranking"), Errc::ValidationError,
                    where + ": a proportional rule takes no ranking");
            net.set_proportional(v);
        } else if (type == "ranking") {
            if (!rule.contains("ranking")) continue;  // keep insertion order
            const Json& order = rule["ranking"];
            require(order.is_array(), Errc::ValidationError,
                    where + ".ranking: expected an array");
            std::vector<EdgeId> ranking;
            for (const Json& item : order) {
                const std::string cn = detail::get_string(item, where + ".ranking");
                require(net.has_bank(cn) && net.has_edge(v, net.bank_id(cn)),
                        Errc::ValidationError,
                        where + ".ranking: no claim against '" + cn + "'");
                ranking.push_back(net.edge_id(v, net.bank_id(cn)));
            }
            net.set_ranking(v, ranking);  // validates the permutation
        } else {
            raise(Errc::ValidationError, where + ": unknown rule type '" + type + "'");
        }
    }
    return net;
}

inline FinancialNetwork parse_network(const std::string& text) {
    return network_from_document(detail::parse_json(text, "network"));
}

inline FinancialNetwork load_network(const std::string& path) {
    return network_from_document(detail::parse_json(detail::read_file(path), path));
}

inline std::string network_to_text(const FinancialNetwork& net) {
    return network_to_document(net).dump(2) + "\n";
}

inline void save_network(const FinancialNetwork& net, const std::string& path) {
    detail::write_file(path, network_to_text(net));
}

// ---------------------------------------------------------------------------
// Swap-sequence documents.
// ---------------------------------------------------------------------------

inline Json sequence_to_document(const std::vector<SwapSpec>& steps) {
    Json doc;
    doc["schema"] = kSequenceSchema;
    doc["steps"] = Json::array();
    for (const SwapSpec& s : steps)
        doc["steps"].push_back({{"debtor1", s.debtor1},
                                {"creditor1", s.creditor1},
                                {"debtor2", s.debtor2},
                                {"creditor2", s.creditor2},
                                {"liability", money_to_string(s.liability)}});
    return doc;
}

inline Json sequence_to_document(const SwapSequence& seq) {
    std::vector<SwapSpec> steps;
    steps.reserve(seq.steps.size());
    for (const SequenceStep& s : seq.steps) steps.push_back(s.spec);
    return sequence_to_document(steps);
}

inline std::vector<SwapSpec> sequence_from_document(const Json& doc) {
    detail::check_keys(doc, {"schema", "steps"}, "document");
    require(detail::get_string(detail::get_field(doc, "schema", "document"), "schema") ==
                kSequenceSchema,
            Errc::ValidationError, std::string("document: schema must be '") +
                                       kSequenceSchema + "'");
    const Json& steps = detail::get_field(doc, "steps", "document");
    require(steps.is_array(), Errc::ValidationError, "steps: expected an array");
    std::vector<SwapSpec> result;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const std::string where = "steps[" + std::to_string(i) + "]";
        detail::check_keys(steps[i],
                           {"debtor1", "creditor1", "debtor2", "creditor2", "liability"},
                           where);
        SwapSpec s;
        s.debtor1 = detail::get_string(detail::get_field(steps[i], "debtor1", where), where);
        s.creditor1 =
            detail::get_string(detail::get_field(steps[i], "creditor1", where), where);
        s.debtor2 = detail::get_string(detail::get_field(steps[i], "debtor2", where), where);
        s.creditor2 =
            detail::get_string(detail::get_field(steps[i], "creditor2", where), where);
        s.liability = detail::money_from_json(
            detail::get_field(steps[i], "liability", where), where + ".liability");
        require(s.liability > 0, Errc::ValidationError, where + ": liability must be positive");
        result.push_back(std::move(s));
    }
    return result;
}

inline std::vector<SwapSpec> load_sequence(const std::string& path) {
    return sequence_from_document(detail::parse_json(detail::read_file(path), path));
}

inline std::string sequence_to_text(const std::vector<SwapSpec>& steps) {
    return sequence_to_document(steps).dump(2) + "\n";
}

inline void save_sequence(const std::vector<SwapSpec>& steps, const std::string& path) {
    detail::write_file(path, sequence_to_text(steps));
}

// ---------------------------------------------------------------------------
// DOT export (deterministic, byte-stable for equal inputs).
// ---------------------------------------------------------------------------

inline std::string export_dot(const FinancialNetwork& net,
                              const ClearingState* state = nullptr) {
    std::ostringstream out;
    out << "digraph network {\n";
    out << "  rankdir=LR;\n";
    for (BankId v = 0; v < net.bank_count(); ++v) {
        out << "  \"" << net.bank(v).name << "\" [label=\"" << net.bank(v).name << "\\na="
            << money_to_string(net.bank(v).externalAssets) << "\"";
        if (net.rule(v).type == RuleType::Proportional) out << ", shape=box";
        out << "];\n";
    }
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
        out << "  \"" << net.bank(net.edge(e).debtor).name << "\" -> \""
            << net.bank(net.edge(e).creditor).name << "\" [label=\"";
        if (state) out << money_to_string(state->payments[e]) << "/";
        out << money_to_string(net.edge(e).liability) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// DIMACS CNF / WCNF reader (two literals per clause).
// ---------------------------------------------------------------------------

inline std::vector<Max2SatClause> parse_dimacs(std::istream& in) {
    std::string line;
    bool haveHeader = false;
    bool weighted = false;
    long long numVars = 0, numClauses = 0;
    std::vector<long long> tokens;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == '%') break;
        std::istringstream ls(line);
        if (!haveHeader) {
            std::string p, format;
            require(bool(ls >> p) && p == "p", Errc::ParseError,
                    "expected the DIMACS problem line 'p cnf ...'");
            require(bool(ls >> format >> numVars >> numClauses) &&
                        (format == "cnf" || format == "wcnf"),
                    Errc::ParseError, "malformed problem line");
            require(numVars >= 1 && numClauses >= 1, Errc::ValidationError,
                    "the formula must have at least one variable and one clause");
            weighted = format == "wcnf";
            haveHeader = true;
            continue;
        }
        long long t;
        while (ls >> t) tokens.push_back(t);
        require(ls.eof(), Errc::ParseError, "non-numeric token in clause data");
    }
    require(haveHeader, Errc::ParseError, "missing DIMACS problem line");

    std::vector<Max2SatClause> clauses;
    std::vector<long long> current;
    for (long long t : tokens) {
        if (t != 0) {
            current.push_back(t);
            continue;
        }
        const std::string where = "clause " + std::to_string(clauses.size() + 1);
        Max2SatClause cl;
        std::size_t firstLit = 0;
        if (weighted) {
            require(!current.empty(), Errc::ValidationError, where + ": missing weight");
            require(current[0] > 0, Errc::ValidationError, where + ": weight must be positive");
            cl.weight = Money(Integer(current[0]));
            firstLit = 1;
        }
        require(current.size() - firstLit == 2, Errc::ValidationError,
                where + ": exactly two literals required");
        cl.lit1 = static_cast<int>(current[firstLit]);
        cl.lit2 = static_cast<int>(current[firstLit + 1]);
        for (int lit : {cl.lit1, cl.lit2})
            require(lit != 0 && std::abs(lit) <= numVars, Errc::ValidationError,
                    where + ": literal out of range");
        clauses.push_back(cl);
        current.clear();
    }
    require(current.empty(), Errc::ParseError, "unterminated final clause");
    require(static_cast<long long>(clauses.size()) == numClauses, Errc::ValidationError,
            "clause count does not match the problem line");
    return clauses;
}

inline std::vector<Max2SatClause> parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

inline std::vector<Max2SatClause> load_dimacs(const std::string& path) {
    std::istringstream in(detail::read_file(path));
    return parse_dimacs(in);
}

// ---------------------------------------------------------------------------
// Small JSON inputs for the generators.
// ---------------------------------------------------------------------------

// {"universe": 4, "sets": [[1,2],[2,3,4]]}
inline std::pair<int, std::vector<std::vector<int>>> load_set_system(const std::string& path) {
    Json doc = detail::parse_json(detail::read_file(path), path);
    detail::check_keys(doc, {"universe", "sets"}, "set system");
    int universe = detail::get_int(detail::get_field(doc, "universe", "set system"),
                                   "universe");
    const Json& sets = detail::get_field(doc, "sets", "set system");
    require(sets.is_array(), Errc::ValidationError, "sets: expected an array of arrays");
    std::vector<std::vector<int>> result;
    for (std::size_t j = 0; j < sets.size(); ++j) {
        require(sets[j].is_array(), Errc::ValidationError,
                "sets[" + std::to_string(j) + "]: expected an array");
        std::vector<int> s;
        for (const Json& item : sets[j])
            s.push_back(detail::get_int(item, "sets[" + std::to_string(j) + "]"));
        result.push_back(std::move(s));
    }
    return {universe, std::move(result)};
}

// {"nodes": 4, "edges": [[1,2],[2,3]]}
inline std::pair<int, std::vector<std::pair<int, int>>> load_graph(const std::string& path) {
    Json doc = detail::parse_json(detail::read_file(path), path);
    detail::check_keys(doc, {"nodes", "edges"}, "graph");
    int nodes = detail::get_int(detail::get_field(doc, "nodes", "graph"), "nodes");
    const Json& edges = detail::get_field(doc, "edges", "graph");
    require(edges.is_array(), Errc::ValidationError, "edges: expected an array of pairs");
    std::vector<std::pair<int, int>> result;
    for (std::size_t j = 0; j < edges.size(); ++j) {
        const std::string where = "edges[" + std::to_string(j) + "]";
        require(edges[j].is_array() && edges[j].size() == 2, Errc::ValidationError,
                where + ": expected a pair");
        result.push_back({detail::get_int(edges[j][0], where),
                          detail::get_int(edges[j][1], where)});
    }
    return {nodes, std::move(result)};
}

// A plain JSON array of positive integers (or rational strings).
inline std::vector<Money> load_values(const std::string& path) {
    Json doc = detail::parse_json(detail::read_file(path), path);
    require(doc.is_array(), Errc::ValidationError, "values: expected a JSON array");
    std::vector<Money> values;
    for (std::size_t i = 0; i < doc.size(); ++i)
        values.push_back(detail::money_from_json(doc[i], "values[" + std::to_string(i) + "]"));
    return values;
}

}  // namespace debtswap
