// Command-line front end: read a timed automaton or a simply-timed graph,
// run the bandwidth pipeline, and print a human or JSON report. Intermediate
// graphs can be exported as DOT with --dump stage=path.
//
// Exit codes: 0 success, 2 bad input, 3 the automaton is not meager (a
// witness is reported instead of a bandwidth), 4 root finding failed to
// converge, 5 a work budget ran out.

#include <tband/tband.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw tband::ParseError("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Decide between automaton and graph input. Extensions win; JSON content is
// told apart by its top-level keys; bare text starting with the "stg" header
// is a graph, anything else is tried as an automaton.
std::string detect_mode(const std::string& path, const std::string& text) {
    auto ends_with = [&](const std::string& suffix) {
        return path.size() >= suffix.size() &&
               path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with(".stg")) return "stg";
    if (ends_with(".ta")) return "ta";
    std::size_t i = text.find_first_not_of(" \t\r\n");
    if (i == std::string::npos)
        throw tband::ParseError("input file is empty");
    if (text[i] == '{') {
        auto j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded()) throw tband::ParseError("input is not valid JSON");
        if (j.contains("locations")) return "ta";
        if (j.contains("states")) return "stg";
        throw tband::ParseError("JSON input has neither 'locations' nor 'states'");
    }
    std::size_t end = text.find_first_of(" \t\r\n#", i);
    std::string head = text.substr(i, end == std::string::npos ? end : end - i);
    return head == "stg" ? "stg" : "ta";
}

bool is_json_text(const std::string& text) {
    std::size_t i = text.find_first_not_of(" \t\r\n");
    return i != std::string::npos && text[i] == '{';
}

std::vector<tband::Rat> parse_horizons(const std::string& csv) {
    std::vector<tband::Rat> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto r = tband::parse_rat(item);
        if (!r) throw tband::ValidationError("bad horizon '" + item + "' in --oracle-T");
        out.push_back(*r);
    }
    if (out.empty()) throw tband::ValidationError("--oracle-T needs at least one horizon");
    return out;
}

void write_dumps(const std::map<std::string, std::string>& dumps,
                 const tband::AnalysisResult& res) {
    for (const auto& [stage, path] : dumps) {
        std::string dot;
        if (stage == "rsta") {
            if (!res.split) throw tband::ValidationError("no region split to dump (stg input)");
            dot = tband::rsta_dot(*res.split);
        } else if (stage == "abstraction") {
            if (!res.abstraction)
                throw tband::ValidationError("pipeline stopped before the abstraction stage");
            dot = tband::stg_dot(res.abstraction->graph);
        } else if (stage == "zero_free") {
            if (!res.zero_free)
                throw tband::ValidationError("pipeline stopped before zero-delay elimination");
            dot = tband::stg_dot(*res.zero_free);
        } else if (stage == "deterministic") {
            if (!res.deterministic)
                throw tband::ValidationError("pipeline stopped before determinization");
            dot = tband::stg_dot(*res.deterministic);
        } else {
            throw tband::ValidationError(
                "unknown dump stage '" + stage +
                "' (expected rsta, abstraction, zero_free or deterministic)");
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw tband::ValidationError("cannot write dump file '" + path + "'");
        out << dot;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"asymptotic bandwidth of deterministic timed automata"};

    std::string input;
    std::string mode = "auto";
    std::string horizons = "5,10,15";
    std::vector<std::string> dump_args;
    std::string report = "human";
    tband::PipelineOptions opt;

    app.add_option("--input", input, "automaton (.ta / JSON) or graph (.stg / JSON) file")
        ->required();
    app.add_option("--mode", mode, "input kind: ta, stg or auto (default auto)")
        ->check(CLI::IsMember({"ta", "stg", "auto"}));
    app.add_option("--oracle-T", horizons,
                   "comma-separated horizons for the word-counting oracle (default 5,10,15)");
    app.add_option("--dump", dump_args,
                   "export an intermediate graph as DOT, e.g. --dump zero_free=out.dot "
                   "(stages: rsta, abstraction, zero_free, deterministic)");
    app.add_option("--tolerance", opt.tolerance, "root residual tolerance (default 1e-12)");
    app.add_flag("--assume-meager", opt.assume_meager,
                 "skip the meagerness witness search");
    app.add_option("--witness-bound", opt.witness_bound,
                   "maximum cycle length explored by the witness search (default 6)");
    app.add_option("--report", report, "output format: human or structured (default human)")
        ->check(CLI::IsMember({"human", "structured"}));
    app.add_option("--budget", opt.budget,
                   "work budget for the counting oracle (default 5000000)");
    CLI11_PARSE(app, argc, argv);

    try {
        std::string text = read_file(input);
        if (mode == "auto") mode = detect_mode(input, text);

        opt.input_path = input;
        opt.digest = tband::fnv1a_hex(text);
        opt.oracle_horizons = parse_horizons(horizons);

        std::map<std::string, std::string> dumps;
        for (const auto& arg : dump_args) {
            std::size_t eq = arg.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size())
                throw tband::ValidationError("--dump expects stage=path, got '" + arg + "'");
            dumps[arg.substr(0, eq)] = arg.substr(eq + 1);
        }

        tband::AnalysisResult res;
        if (mode == "ta") {
            tband::TimedAutomaton ta = is_json_text(text)
                                           ? tband::parse_automaton_json(text)
                                           : tband::parse_automaton_text(text);
            res = tband::run_pipeline(ta, opt);
        } else {
            tband::Stg g = is_json_text(text)
                               ? tband::parse_stg_json(nlohmann::json::parse(text))
                               : tband::parse_stg_text(text);
            res = tband::run_pipeline(g, opt);
        }

        write_dumps(dumps, res);
        std::cout << tband::emit_report(res, report);
        return res.exit_code;
    } catch (const tband::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tband::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tband::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const tband::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
