#pragma once
// End-to-end driver: timed automaton -> region split -> witness search ->
// barycentric abstraction -> zero-delay elimination -> characteristic
// polynomial per weak component -> determinization -> smallest root ->
// asymptotic bandwidth, with oracle counts alongside. STG inputs enter the
// same pipeline after the abstraction stage. Produces a machine-stable
// structured report (JSON) and a human rendering, plus DOT exports of each
// intermediate graph.

#include <tband/barycentric.hpp>
#include <tband/model.hpp>
#include <tband/oracle.hpp>
#include <tband/orbit.hpp>
#include <tband/regions.hpp>
#include <tband/roots.hpp>
#include <tband/stg.hpp>
#include <tband/util.hpp>

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tband {

struct PipelineOptions {
    std::string input_path;  // reporting only
    std::string digest;      // reporting only
    std::vector<Rat> oracle_horizons{Rat(5), Rat(10), Rat(15)};
    double tolerance = 1e-12;
    bool assume_meager = false;
    int witness_bound = 6;
    std::size_t budget = 5000000;
};

struct AnalysisResult {
    std::string input_path;
    std::string mode;  // "ta" or "stg"
    std::string digest;

    std::optional<RegionSplitAutomaton> split;
    bool witness_searched = false;
    int witness_bound = 6;
    std::optional<ObesityWitness> witness;

    std::optional<Abstraction> abstraction;
    std::optional<Stg> zero_free;
    std::optional<CharacteristicResult> zero_free_char;
    std::optional<Stg> deterministic;
    bool was_deterministic = false;
    std::optional<CharacteristicResult> det_char;
    GrowthResult growth;
    BigInt common_denominator = 1;
    std::vector<OracleRow> oracle;

    std::vector<std::pair<std::string, double>> timings_ms;
    int exit_code = 0;
};

// Nearest fraction with a small denominator, when the value sits within
// absolute 1e-9 of one. The bandwidth is the logarithm of an algebraic
// number and on the worked examples it is an exact small rational; root
// finding then lands within floating noise of it, and reporting the exact
// value keeps the structured output stable.
inline double snap_small_rational(double x, long long max_den = 64, double tol = 1e-9) {
    if (!std::isfinite(x)) return x;
    for (long long q = 1; q <= max_den; ++q) {
        double scaled = x * static_cast<double>(q);
        double p = std::nearbyint(scaled);
        if (std::abs(x - p / static_cast<double>(q)) <= tol)
            return p / static_cast<double>(q);
    }
    return x;
}

namespace detail {

class StageClock {
  public:
    explicit StageClock(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}
    template <typename F>
    auto run(const std::string& stage, F&& f) {
        auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            record(stage, start);
        } else {
            auto value = f();
            record(stage, start);
            return value;
        }
    }

  private:
    void record(const std::string& stage,
                std::chrono::steady_clock::time_point start) {
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        sink_.emplace_back(stage, ms);
    }
    std::vector<std::pair<std::string, double>>& sink_;
};

}  // namespace detail

// Shared back half: zero-elimination onward, starting from any simply-timed
// graph (the abstraction of a TA or a direct STG input).
inline void analyze_stg(AnalysisResult& res, const Stg& g, const PipelineOptions& opt) {
    detail::StageClock clock(res.timings_ms);
    res.zero_free = clock.run("zero_elimination", [&] { return zero_eliminate(g); });
    res.zero_free_char =
        clock.run("characteristic", [&] { return characteristic(*res.zero_free); });
    res.was_deterministic = is_deterministic(*res.zero_free);
    res.deterministic =
        clock.run("determinization", [&] { return determinize(*res.zero_free); });
    res.det_char = clock.run("characteristic_deterministic",
                             [&] { return characteristic(*res.deterministic); });
    res.growth = clock.run("roots", [&] {
        return smallest_root(res.det_char->quasi, opt.tolerance);
    });
    res.common_denominator = stg_scale(*res.zero_free);
    res.oracle = clock.run("oracle", [&] {
        return oracle_growth(*res.zero_free, opt.oracle_horizons, opt.budget);
    });
}

inline AnalysisResult run_pipeline(const Stg& g, const PipelineOptions& opt = {}) {
    AnalysisResult res;
    res.input_path = opt.input_path;
    res.digest = opt.digest;
    res.mode = "stg";
    res.witness_bound = opt.witness_bound;
    validate_stg(g);
    analyze_stg(res, g, opt);
    return res;
}

inline AnalysisResult run_pipeline(const TimedAutomaton& ta, const PipelineOptions& opt = {}) {
    AnalysisResult res;
    res.input_path = opt.input_path;
    res.digest = opt.digest;
    res.mode = "ta";
    res.witness_bound = opt.witness_bound;
    detail::StageClock clock(res.timings_ms);

    res.split = clock.run("region_split", [&] { return region_split(ta); });

    if (!opt.assume_meager) {
        res.witness_searched = true;
        res.witness = clock.run("witness_search", [&] {
            return meagerness_witness_search(*res.split, opt.witness_bound);
        });
        if (res.witness) {
            // A doubled vertex return invalidates the analysis: stop here
            // and report the witness instead of a bandwidth.
            res.exit_code = 3;
            return res;
        }
    }

    res.abstraction = clock.run("abstraction", [&] { return build_abstraction(*res.split); });
    analyze_stg(res, res.abstraction->graph, opt);
    return res;
}

// ---------------------------------------------------------------------------
// DOT exports.

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

inline std::string stg_dot(const Stg& g) {
    std::string out = "digraph stg {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < g.states.size(); ++i)
        out += "  n" + std::to_string(i) + " [label=\"" + dot_escape(g.states[i]) + "\"];\n";
    for (const auto& t : g.transitions)
        out += "  n" + std::to_string(t.from) + " -> n" + std::to_string(t.to) + " [label=\"" +
               rat_string(t.delay) + ", " + dot_escape(label_string(t.label)) + "\"];\n";
    out += "}\n";
    return out;
}

inline std::string rsta_dot(const RegionSplitAutomaton& rs) {
    std::string out = "digraph region_split {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < rs.locations.size(); ++i) {
        std::string shape =
            !rs.final.empty() && rs.final[i] ? "doublecircle" : "circle";
        std::string marker = static_cast<int>(i) == rs.initial ? ", penwidth=2" : "";
        out += "  n" + std::to_string(i) + " [label=\"" + dot_escape(rs.locations[i].name) +
               "\", shape=" + shape + marker + "];\n";
    }
    for (const auto& e : rs.edges)
        out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) + " [label=\"" +
               dot_escape(rs.ta.alphabet[static_cast<std::size_t>(rs.base(e).letter)]) + " @ " +
               dot_escape(region_string(e.firing, rs.ta.clocks)) + "\"];\n";
    out += "}\n";
    return out;
}

// ---------------------------------------------------------------------------
// Reports.

inline nlohmann::ordered_json structured_report(const AnalysisResult& r) {
    using json = nlohmann::ordered_json;
    json out;
    out["input"] = {{"path", r.input_path}, {"mode", r.mode}, {"digest", r.digest}};

    if (r.split) {
        const auto& rs = *r.split;
        out["region_split"] = {{"locations", rs.locations.size()},
                               {"edges", rs.edges.size()},
                               {"removed_states", rs.removed_states},
                               {"empty_language", rs.empty_language},
                               {"trivial_language", rs.trivial_language}};
    }
    if (r.mode == "ta") {
        json w;
        w["searched"] = r.witness_searched;
        w["bound"] = r.witness_bound;
        w["found"] = static_cast<bool>(r.witness);
        w["description"] = r.witness ? json(r.witness->description) : json(nullptr);
        out["witness"] = w;
    }
    if (r.abstraction) {
        json dims = json::object();
        for (const auto& [d, n] : r.abstraction->by_dimension)
            dims[std::to_string(d)] = n;
        out["abstraction"] = {{"states", r.abstraction->states.size()},
                              {"transitions", r.abstraction->graph.transitions.size()},
                              {"states_by_dimension", dims}};
    }
    if (r.zero_free) {
        json comps = json::array();
        if (r.zero_free_char)
            for (const auto& c : r.zero_free_char->components) {
                json cj;
                json names = json::array();
                for (int s : c.states)
                    names.push_back(r.zero_free->states[static_cast<std::size_t>(s)]);
                cj["states"] = names;
                cj["characteristic"] = poly_string(c.char_poly, "zeta");
                comps.push_back(cj);
            }
        out["zero_free"] = {
            {"states", r.zero_free->states.size()},
            {"transitions", r.zero_free->transitions.size()},
            {"components", comps},
            {"characteristic_product",
             r.zero_free_char ? poly_string(r.zero_free_char->zeta_product, "zeta") : ""}};
    }
    if (r.deterministic) {
        out["determinized"] = {{"states", r.deterministic->states.size()},
                               {"transitions", r.deterministic->transitions.size()},
                               {"was_deterministic", r.was_deterministic}};
    }
    if (r.exit_code != 3 && r.det_char) {
        out["common_denominator"] = r.common_denominator.convert_to<std::uint64_t>();
        out["epsilon_validity"] = "1/" + BigInt(2 * r.common_denominator).convert_to<std::string>();
        json ch;
        json coeffs = json::array();
        for (const auto& c : r.growth.zeta_polynomial.c) {
            static const BigInt lo = -(BigInt(1) << 62), hi = BigInt(1) << 62;
            if (c > lo && c < hi)
                coeffs.push_back(c.convert_to<std::int64_t>());
            else
                coeffs.push_back(c.convert_to<std::string>());
        }
        ch["zeta_coefficients"] = coeffs;
        ch["scale_m"] = r.growth.scale_m.convert_to<std::uint64_t>();
        ch["zeta_form"] = poly_string(r.growth.zeta_polynomial, "zeta");
        ch["z_form"] = quasi_string(r.growth.characteristic, "z");
        out["characteristic"] = ch;
        json roots = json::array();
        for (const auto& ri : r.growth.roots)
            roots.push_back({{"re", static_cast<double>(ri.zeta.real())},
                             {"im", static_cast<double>(ri.zeta.imag())},
                             {"modulus", static_cast<double>(ri.modulus)},
                             {"residual", static_cast<double>(ri.residual)}});
        out["roots"] = roots;
        out["z0"] =
            r.growth.has_root ? json(snap_small_rational(r.growth.z0_modulus)) : json(nullptr);
        out["bandwidth"] = snap_small_rational(r.growth.beta);
        out["growth_cross_check"] = r.growth.cross_check;
        json rows = json::array();
        for (const auto& row : r.oracle) {
            json rj;
            rj["horizon"] = rat_string(row.horizon);
            rj["count"] = row.count.convert_to<std::string>();
            rj["plain"] = row.plain;
            rj["windowed"] = row.windowed ? json(*row.windowed) : json(nullptr);
            rows.push_back(rj);
        }
        out["oracle"] = rows;
    } else if (r.exit_code == 3) {
        out["z0"] = nullptr;
        out["bandwidth"] = nullptr;
    }
    json times = json::object();
    for (const auto& [stage, ms] : r.timings_ms) times[stage] = ms;
    out["timings_ms"] = times;
    return out;
}

inline std::string human_report(const AnalysisResult& r) {
    std::string out;
    out += "input: " + (r.input_path.empty() ? "(memory)" : r.input_path) + " [" + r.mode +
           ", digest " + r.digest + "]\n";
    if (r.split) {
        const auto& rs = *r.split;
        out += "region split: " + std::to_string(rs.locations.size()) + " locations, " +
               std::to_string(rs.edges.size()) + " edges (" +
               std::to_string(rs.removed_states) + " states trimmed)\n";
        if (rs.empty_language) out += "  the automaton accepts no word at all\n";
        if (rs.trivial_language)
            out += "  every accepted word has bounded duration; the growth rate is 0\n";
    }
    if (r.mode == "ta") {
        if (!r.witness_searched)
            out += "witness search: skipped (meagerness assumed by flag)\n";
        else if (r.witness)
            out += "witness search: NOT meager - " + r.witness->description + "\n";
        else
            out += "witness search: no witness up to bound " + std::to_string(r.witness_bound) +
                   " - meagerness assumed\n";
    }
    if (r.exit_code == 3) {
        out += "bandwidth: refused (the input is not meager; see witness above)\n";
        return out;
    }
    if (r.abstraction) {
        out += "abstraction: " + std::to_string(r.abstraction->states.size()) + " states (";
        std::vector<std::string> parts;
        for (const auto& [d, n] : r.abstraction->by_dimension)
            parts.push_back("dimension " + std::to_string(d) + ": " + std::to_string(n));
        out += join(parts, ", ") + "), " +
               std::to_string(r.abstraction->graph.transitions.size()) + " transitions\n";
    }
    if (r.zero_free)
        out += "zero-delay elimination: " + std::to_string(r.zero_free->states.size()) +
               " states, " + std::to_string(r.zero_free->transitions.size()) + " transitions\n";
    if (r.zero_free_char) {
        out += "components:\n";
        for (const auto& c : r.zero_free_char->components)
            out += "  " + std::to_string(c.states.size()) +
                   " states: det(I - M) = " + poly_string(c.char_poly, "zeta") + "\n";
    }
    if (r.deterministic)
        out += std::string("determinization: ") +
               (r.was_deterministic ? "already deterministic, " : "") +
               std::to_string(r.deterministic->states.size()) + " states, " +
               std::to_string(r.deterministic->transitions.size()) + " transitions\n";
    if (r.det_char) {
        std::string n2 = BigInt(2 * r.common_denominator).convert_to<std::string>();
        out += "common denominator: N = " + r.common_denominator.convert_to<std::string>() +
               "; distances below 1/(2N) = 1/" + n2 +
               " cannot separate realized words, so the rate below is exact for every epsilon < 1/" +
               n2 + "\n";
        out += "characteristic: det(I - M) = " + quasi_string(r.growth.characteristic, "z");
        if (r.growth.scale_m != 1)
            out += "  [zeta-form " + poly_string(r.growth.zeta_polynomial, "zeta") +
                   ", z = zeta^" + r.growth.scale_m.convert_to<std::string>() + "]";
        out += "\n";
        if (r.growth.has_root) {
            out += "z0 = " + std::to_string(snap_small_rational(r.growth.z0_modulus)) +
                   " (cross-check: " + r.growth.cross_check + ")\n";
        } else {
            out += "no root inside the unit disk: no positive-duration cycle remains\n";
        }
        out += "bandwidth: " + std::to_string(snap_small_rational(r.growth.beta)) +
               " bits per time unit\n";
        if (!r.oracle.empty()) {
            out += "oracle counts (from the zero-free graph):\n";
            for (const auto& row : r.oracle) {
                out += "  T = " + rat_string(row.horizon) + ": " +
                       row.count.convert_to<std::string>() + " words, log2/T = " +
                       std::to_string(row.plain);
                if (row.windowed) out += ", windowed = " + std::to_string(*row.windowed);
                out += "\n";
            }
        }
    }
    out += "timings:";
    for (const auto& [stage, ms] : r.timings_ms)
        out += " " + stage + "=" + std::to_string(ms) + "ms";
    out += "\n";
    return out;
}

inline std::string emit_report(const AnalysisResult& r, const std::string& format) {
    if (format == "human") return human_report(r);
    if (format == "structured") return structured_report(r).dump(2) + "\n";
    throw ValidationError("unknown report format '" + format + "'");
}

}  // namespace tband
