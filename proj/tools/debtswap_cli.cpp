// Command-line front end for the debt-swap library.
//
// Exit codes: 0 success, 1 negative decision (inconsistent networks, failed
// verification, identical inputs), 2 usage or input error, 3 internal
// invariant violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <debtswap/debtswap.hpp>

using namespace debtswap;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

Json state_to_json(const FinancialNetwork& net, const ClearingState& st) {
    Json doc;
    doc["assets"] = Json::object();
    for (BankId v = 0; v < net.bank_count(); ++v)
        doc["assets"][net.bank(v).name] = money_to_string(st.totalAssets[v]);
    doc["payments"] = Json::array();
    for (EdgeId e = 0; e < net.edge_count(); ++e)
        doc["payments"].push_back({{"debtor", net.bank(net.edge(e).debtor).name},
                                   {"creditor", net.bank(net.edge(e).creditor).name},
                                   {"payment", money_to_string(st.payments[e])},
                                   {"liability", money_to_string(net.edge(e).liability)},
                                   {"saturated", st.saturated[e]}});
    doc["insolvent"] = Json::array();
    for (BankId v = 0; v < net.bank_count(); ++v)
        if (st.insolvent[v]) doc["insolvent"].push_back(net.bank(v).name);
    return doc;
}

Json classification_to_json(const FinancialNetwork& net, const SwapSpec& spec,
                            const SwapClassification& cls) {
    Json doc;
    doc["debtor1"] = spec.debtor1;
    doc["creditor1"] = spec.creditor1;
    doc["debtor2"] = spec.debtor2;
    doc["creditor2"] = spec.creditor2;
    doc["liability"] = money_to_string(spec.liability);
    doc["kind"] = swap_kind_name(cls.kind);
    doc["activity"] = extension_activity_name(cls.activity);
    doc["positive"] = cls.positive;
    doc["semiPositive"] = cls.semiPositive;
    doc["paretoImproving"] = cls.paretoImproving;
    doc["deltaCreditor1"] = money_to_string(cls.deltaV1);
    doc["deltaCreditor2"] = money_to_string(cls.deltaV2);
    doc["improvedBanks"] = Json::array();
    for (BankId v : cls.improvedBanks) doc["improvedBanks"].push_back(net.bank(v).name);
    return doc;
}

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

// Writes a network to `path`, or to stdout when the path is empty.
void emit_network(const FinancialNetwork& net, const std::string& path) {
    if (path.empty())
        std::cout << network_to_text(net);
    else
        save_network(net, path);
}

BankId need_bank(const FinancialNetwork& net, const std::string& name) {
    require(net.has_bank(name), Errc::NotFound, "no bank named '" + name + "'");
    return net.bank_id(name);
}

long long parse_int(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const long long value = std::stoll(text, &used);
        require(used == text.size(), Errc::ParseError,
                what + ": not an integer: '" + text + "'");
        return value;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        raise(Errc::ParseError, what + ": not an integer: '" + text + "'");
    }
}

std::vector<bool> parse_bits(const std::string& text, const std::string& what) {
    std::vector<bool> bits;
    for (char c : text) {
        require(c == '0' || c == '1', Errc::ParseError,
                what + ": expected a string of 0s and 1s, got '" + text + "'");
        bits.push_back(c == '1');
    }
    return bits;
}

int cmd_clear(const std::string& file) {
    const FinancialNetwork net = load_network(file);
    emit(state_to_json(net, clear(net)));
    return kOk;
}

int cmd_swaps(const std::string& file, bool semiOnly, const std::string& bankName) {
    const FinancialNetwork net = load_network(file);
    std::optional<BankId> bank;
    if (!bankName.empty()) bank = need_bank(net, bankName);

    Json list = Json::array();
    for (const DebtSwap& s : enumerate_swaps(net)) {
        const SwapClassification cls = classify_swap(net, s);
        if (semiOnly && !cls.semiPositive) continue;
        if (bank && cls.assetDeltas[*bank] <= 0) continue;
        list.push_back(classification_to_json(net, make_spec(net, s), cls));
    }
    emit(list);
    return kOk;
}

int cmd_classify(const std::string& file, const std::vector<std::string>& banks) {
    const FinancialNetwork net = load_network(file);
    const DebtSwap s{net.edge_id(need_bank(net, banks[0]), need_bank(net, banks[1])),
                     net.edge_id(need_bank(net, banks[2]), need_bank(net, banks[3]))};
    emit(classification_to_json(net, make_spec(net, s), classify_swap(net, s)));
    return kOk;
}

int cmd_dynamics(const std::string& file, const std::string& mode,
                 const std::string& bankName, long long limit) {
    const FinancialNetwork net = load_network(file);
    SwapSequence seq;
    if (mode == "v-improving") {
        require(!bankName.empty(), Errc::ParseError, "--v BANK is required for this mode");
        seq = run_v_improving(net, need_bank(net, bankName)).second;
    } else if (mode == "staged") {
        const int d = limit >= 0 ? static_cast<int>(limit) : net.bank_count();
        seq = run_staged_semiswap(net, d).second;
    } else if (mode == "local-search") {
        require(!bankName.empty(), Errc::ParseError, "--v BANK is required for this mode");
        const LocalSearchResult r = run_local_search_maxassets(
            net, need_bank(net, bankName), limit >= 0 ? limit : 10000);
        std::cerr << (r.status == LocalSearchStatus::LocalOptimum ? "local optimum"
                                                                  : "budget exhausted")
                  << " after " << r.sequence.steps.size() << " steps\n";
        seq = r.sequence;
    } else {
        raise(Errc::ParseError, "unknown mode '" + mode + "'");
    }
    emit(sequence_to_document(seq));
    return kOk;
}

int cmd_reach(const std::string& fromFile, const std::string& toFile) {
    const FinancialNetwork f = load_network(fromFile);
    const FinancialNetwork g = load_network(toFile);
    try {
        emit(sequence_to_document(greedy_reach(f, g)));
        return kOk;
    } catch (const Error& e) {
        if (e.code() == Errc::Inconsistent) {
            std::cout << "inconsistent\n";
            return kNegative;
        }
        if (e.code() == Errc::IdenticalNetworks) {
            std::cout << "identical networks\n";
            return kNegative;
        }
        throw;
    }
}

int cmd_verify(const std::string& fromFile, const std::string& toFile,
               const std::string& seqFile, const std::string& minAssets,
               const std::string& vImproving) {
    const FinancialNetwork f = load_network(fromFile);
    const FinancialNetwork g = load_network(toFile);

    SwapSequence seq;
    seq.initial = f;
    for (const SwapSpec& spec : load_sequence(seqFile))
        seq.steps.push_back(SequenceStep{spec, {}, {}});

    ReachConstraint constraint = ReachConstraint::none();
    if (!vImproving.empty()) constraint = ReachConstraint::v_improving(need_bank(f, vImproving));
    if (!minAssets.empty()) {
        const std::size_t colon = minAssets.rfind(':');
        require(colon != std::string::npos, Errc::ParseError,
                "--min-assets expects BANK:FLOOR");
        const auto floor = money_from_string(minAssets.substr(colon + 1));
        require(floor.has_value(), Errc::ParseError,
                "--min-assets floor is not a rational number");
        constraint =
            ReachConstraint::min_assets(need_bank(f, minAssets.substr(0, colon)), *floor);
    }

    const VerificationReport report = verify_sequence(f, g, seq, constraint);
    if (report.ok) {
        std::cout << "true\n";
        return kOk;
    }
    std::cout << "false: " << report.reason << "\n";
    return kNegative;
}

int cmd_gen(const std::string& kind, const std::vector<std::string>& args,
            const std::string& outFile, const std::string& targetOutFile, bool sumVariant) {
    auto needArgs = [&](std::size_t n, const std::string& usage) {
        require(args.size() == n, Errc::ParseError, "gen " + kind + " expects " + usage);
    };

    if (kind == "exponential") {
        needArgs(1, "N");
        emit_network(gen_exponential(static_cast<int>(parse_int(args[0], "N"))).network,
                     outFile);
    } else if (kind == "max2sat") {
        needArgs(1, "FORMULA.cnf");
        emit_network(gen_max2sat(load_dimacs(args[0])).network, outFile);
    } else if (kind == "setcover") {
        needArgs(2, "SETS.json C");
        const auto [universe, sets] = load_set_system(args[0]);
        emit_network(gen_setcover(universe, sets,
                                  static_cast<int>(parse_int(args[1], "C")), sumVariant)
                         .network,
                     outFile);
    } else if (kind == "is") {
        needArgs(1, "GRAPH.json");
        const auto [nodes, edges] = load_graph(args[0]);
        emit_network(gen_independent_set(nodes, edges, sumVariant).network, outFile);
    } else if (kind == "partition") {
        needArgs(1, "VALUES.json");
        emit_network(gen_partition(load_values(args[0]), sumVariant).network, outFile);
    } else if (kind == "3partition") {
        needArgs(2, "VALUES.json K");
        emit_network(gen_3partition(load_values(args[0]),
                                    static_cast<int>(parse_int(args[1], "K")))
                         .network,
                     outFile);
    } else if (kind == "satconn") {
        needArgs(3, "FORMULA.cnf INIT TARGET");
        std::vector<std::pair<int, int>> formula;
        for (const Max2SatClause& cl : load_dimacs(args[0]))
            formula.push_back({cl.lit1, cl.lit2});
        const SatConnectivityInstance inst = gen_sat_connectivity(
            formula, parse_bits(args[1], "INIT"), parse_bits(args[2], "TARGET"));
        if (outFile.empty() && targetOutFile.empty()) {
            Json doc;
            doc["initial"] = network_to_document(inst.gadget.network);
            doc["target"] = network_to_document(inst.target);
            doc["floor"] = money_to_string(inst.floor);
            emit(doc);
        } else {
            require(!outFile.empty() && !targetOutFile.empty(), Errc::ParseError,
                    "satconn needs both -o and --target-out (or neither)");
            save_network(inst.gadget.network, outFile);
            save_network(inst.target, targetOutFile);
            std::cout << "floor " << money_to_string(inst.floor) << "\n";
        }
    } else {
        raise(Errc::ParseError, "unknown generator '" + kind + "'");
    }
    return kOk;
}

int cmd_export(const std::string& file, bool withClearing) {
    const FinancialNetwork net = load_network(file);
    if (withClearing) {
        const ClearingState st = clear(net);
        std::cout << export_dot(net, &st);
    } else {
        std::cout << export_dot(net);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Debt-swap analysis for financial networks"};
    app.require_subcommand(1);

    std::string file, fromFile, toFile, seqFile, bankName, mode, minAssets, vImproving;
    std::string genKind, outFile, targetOutFile;
    std::vector<std::string> classifyBanks, genArgs;
    bool semiOnly = false, wantDot = false, withClearing = false, sumVariant = false;
    long long limit = -1;

    CLI::App* clearCmd = app.add_subcommand("clear", "Clear a network and print the state");
    clearCmd->add_option("file", file, "network JSON file")->required();

    CLI::App* swapsCmd = app.add_subcommand("swaps", "List and classify all valid swaps");
    swapsCmd->add_option("file", file)->required();
    swapsCmd->add_flag("--semi-positive", semiOnly, "only semi-positive swaps");
    swapsCmd->add_option("--v", bankName, "only swaps strictly improving this bank");

    CLI::App* classifyCmd =
        app.add_subcommand("classify", "Classify one swap given its four banks");
    classifyCmd->add_option("file", file)->required();
    classifyCmd
        ->add_option("banks", classifyBanks, "DEBTOR1 CREDITOR1 DEBTOR2 CREDITOR2")
        ->expected(4);

    CLI::App* dynamicsCmd =
        app.add_subcommand("dynamics", "Run a swap scheduler and emit the sequence");
    dynamicsCmd->add_option("file", file)->required();
    dynamicsCmd->add_option("--mode", mode, "v-improving | staged | local-search")
        ->required();
    dynamicsCmd->add_option("--v", bankName, "focus bank");
    dynamicsCmd->add_option("--limit", limit,
                            "staged: active in-degree cap (default: bank count); "
                            "local-search: step budget (default: 10000)");

    CLI::App* reachCmd =
        app.add_subcommand("reach", "Greedy swap sequence from one network to another");
    reachCmd->add_option("from", fromFile)->required();
    reachCmd->add_option("to", toFile)->required();

    CLI::App* verifyCmd = app.add_subcommand("verify", "Replay and check a swap sequence");
    verifyCmd->add_option("from", fromFile)->required();
    verifyCmd->add_option("to", toFile)->required();
    verifyCmd->add_option("seq", seqFile)->required();
    CLI::Option* minOpt =
        verifyCmd->add_option("--min-assets", minAssets, "BANK:FLOOR asset floor");
    verifyCmd->add_option("--v-improving", vImproving, "every step must improve BANK")
        ->excludes(minOpt);

    CLI::App* genCmd = app.add_subcommand("gen", "Generate a hardness-gadget network");
    genCmd->add_option("kind", genKind,
                       "exponential | max2sat | setcover | is | partition | "
                       "3partition | satconn")
        ->required();
    genCmd->add_option("args", genArgs, "generator arguments");
    genCmd->add_option("-o,--out", outFile, "write the network here instead of stdout");
    genCmd->add_option("--target-out", targetOutFile, "satconn: target network file");
    genCmd->add_flag("--sum", sumVariant,
                     "sum-of-assets variant (setcover, is, partition)");

    CLI::App* exportCmd = app.add_subcommand("export", "Export a network to DOT");
    exportCmd->add_option("file", file)->required();
    exportCmd->add_flag("--dot", wantDot, "emit Graphviz DOT (required)");
    exportCmd->add_flag("--clearing", withClearing, "annotate edges with payments");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints help/error text
        return e.get_exit_code() == 0 ? kOk : kUsage;
    }

    try {
        if (clearCmd->parsed()) return cmd_clear(file);
        if (swapsCmd->parsed()) return cmd_swaps(file, semiOnly, bankName);
        if (classifyCmd->parsed()) {
            require(classifyBanks.size() == 4, Errc::ParseError,
                    "classify expects DEBTOR1 CREDITOR1 DEBTOR2 CREDITOR2");
            return cmd_classify(file, classifyBanks);
        }
        if (dynamicsCmd->parsed()) return cmd_dynamics(file, mode, bankName, limit);
        if (reachCmd->parsed()) return cmd_reach(fromFile, toFile);
        if (verifyCmd->parsed())
            return cmd_verify(fromFile, toFile, seqFile, minAssets, vImproving);
        if (genCmd->parsed())
            return cmd_gen(genKind, genArgs, outFile, targetOutFile, sumVariant);
        if (exportCmd->parsed()) {
            require(wantDot, Errc::ParseError, "export currently requires --dot");
            return cmd_export(file, withClearing);
        }
        raise(Errc::Internal, "no subcommand dispatched");
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.internal() ? kInternal : kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
}
