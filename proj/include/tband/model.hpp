#pragma once
// The timed-automaton input model: locations, clocks, letters, rectangular
// clock guards (single clock compared to a natural constant; equality is
// sugar for >= and <=), per-location entry ("start") and acceptance
// ("final") guards, one initial location with an integer clock valuation,
// and edges that may reset clocks.
//
// Two interchangeable renderings are supported: a line-oriented text format
// and a JSON rendering with the same field names. Identifiers must be
// declared before use and every error carries a source position.

#include <tband/util.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tband {

enum class Rel { Lt, Le, Gt, Ge };

inline std::string rel_string(Rel r) {
    switch (r) {
        case Rel::Lt: return "<";
        case Rel::Le: return "<=";
        case Rel::Gt: return ">";
        case Rel::Ge: return ">=";
    }
    return "?";
}

struct ClockConstraint {
    int clock = -1;
    Rel rel = Rel::Lt;
    long long bound = 0;  // natural number
    bool operator==(const ClockConstraint& o) const {
        return clock == o.clock && rel == o.rel && bound == o.bound;
    }
};

// A conjunction of constraints; the empty conjunction is `true`.
struct Guard {
    std::vector<ClockConstraint> atoms;
    bool operator==(const Guard& o) const { return atoms == o.atoms; }
};

struct TaEdge {
    int from = -1;
    int to = -1;
    int letter = -1;
    Guard guard;
    std::vector<int> resets;  // sorted clock indices
    bool operator==(const TaEdge& o) const {
        return from == o.from && to == o.to && letter == o.letter && guard == o.guard &&
               resets == o.resets;
    }
};

struct TimedAutomaton {
    std::vector<std::string> clocks;
    std::vector<std::string> alphabet;
    std::vector<std::string> locations;
    int initial_location = -1;
    std::vector<long long> initial_valuation;        // per clock, integers
    std::vector<std::optional<Guard>> start_guard;   // per location; nullopt = unconstrained
    std::vector<std::optional<Guard>> final_guard;   // per location; nullopt = not accepting
    std::vector<TaEdge> edges;

    bool operator==(const TimedAutomaton& o) const {
        return clocks == o.clocks && alphabet == o.alphabet && locations == o.locations &&
               initial_location == o.initial_location && initial_valuation == o.initial_valuation &&
               start_guard == o.start_guard && final_guard == o.final_guard && edges == o.edges;
    }
};

// ---------------------------------------------------------------------------
// Guard semantics via per-clock intervals.

struct ClockInterval {
    Rat lo = 0;
    bool lo_strict = false;
    std::optional<Rat> hi;  // absent = unbounded
    bool hi_strict = false;
};

inline bool interval_nonempty(const ClockInterval& iv) {
    if (!iv.hi) return true;
    if (iv.lo < *iv.hi) return true;
    return iv.lo == *iv.hi && !iv.lo_strict && !iv.hi_strict;
}

inline void constrain(ClockInterval& iv, const ClockConstraint& a) {
    Rat b(a.bound);
    switch (a.rel) {
        case Rel::Lt:
            if (!iv.hi || b < *iv.hi || (b == *iv.hi && !iv.hi_strict)) {
                iv.hi = b;
                iv.hi_strict = true;
            }
            break;
        case Rel::Le:
            if (!iv.hi || b < *iv.hi) {
                iv.hi = b;
                iv.hi_strict = false;
            }
            break;
        case Rel::Gt:
            if (b > iv.lo || (b == iv.lo && !iv.lo_strict)) {
                iv.lo = b;
                iv.lo_strict = true;
            }
            break;
        case Rel::Ge:
            if (b > iv.lo) {
                iv.lo = b;
                iv.lo_strict = false;
            }
            break;
    }
}

// Per-clock interval of a guard, starting from clock values in [0, inf).
inline std::vector<ClockInterval> guard_intervals(std::size_t clock_count, const Guard& g) {
    std::vector<ClockInterval> ivs(clock_count);
    for (const auto& a : g.atoms) constrain(ivs[static_cast<std::size_t>(a.clock)], a);
    return ivs;
}

inline bool guard_satisfiable(std::size_t clock_count, const Guard& g) {
    for (const auto& iv : guard_intervals(clock_count, g))
        if (!interval_nonempty(iv)) return false;
    return true;
}

inline bool guards_overlap(std::size_t clock_count, const Guard& a, const Guard& b) {
    Guard both = a;
    both.atoms.insert(both.atoms.end(), b.atoms.begin(), b.atoms.end());
    return guard_satisfiable(clock_count, both);
}

inline bool valuation_satisfies(const std::vector<Rat>& v, const Guard& g) {
    for (const auto& a : g.atoms) {
        const Rat& x = v[static_cast<std::size_t>(a.clock)];
        Rat b(a.bound);
        bool ok = false;
        switch (a.rel) {
            case Rel::Lt: ok = x < b; break;
            case Rel::Le: ok = x <= b; break;
            case Rel::Gt: ok = x > b; break;
            case Rel::Ge: ok = x >= b; break;
        }
        if (!ok) return false;
    }
    return true;
}

// Largest constant appearing anywhere: edge guards, start and final guards,
// and the initial valuation. Region bookkeeping is relative to this bound.
inline long long max_constant(const TimedAutomaton& ta) {
    long long m = 0;
    auto visit = [&](const Guard& g) {
        for (const auto& a : g.atoms) m = std::max(m, a.bound);
    };
    for (const auto& e : ta.edges) visit(e.guard);
    for (const auto& g : ta.start_guard)
        if (g) visit(*g);
    for (const auto& g : ta.final_guard)
        if (g) visit(*g);
    for (long long v : ta.initial_valuation) m = std::max(m, v);
    return m;
}

// ---------------------------------------------------------------------------
// Determinism: at most one run per timed word. Violated exactly when two
// same-source same-letter edges with distinct targets have jointly
// satisfiable guards.

struct DeterminismReport {
    bool deterministic = true;
    std::vector<std::pair<std::size_t, std::size_t>> conflicts;  // edge index pairs
};

inline DeterminismReport check_determinism(const TimedAutomaton& ta) {
    DeterminismReport rep;
    for (std::size_t i = 0; i < ta.edges.size(); ++i)
        for (std::size_t j = i + 1; j < ta.edges.size(); ++j) {
            const TaEdge& a = ta.edges[i];
            const TaEdge& b = ta.edges[j];
            if (a.from != b.from || a.letter != b.letter || a.to == b.to) continue;
            if (guards_overlap(ta.clocks.size(), a.guard, b.guard)) {
                rep.deterministic = false;
                rep.conflicts.emplace_back(i, j);
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Text format.
//
//   clocks x y
//   alphabet a b
//   locations q p
//   initial q            (or: initial q x=0 y=0)
//   start q [x<1]
//   final q p            (or: final q [x<1])
//   edge q -> p : a,b [1<y<2] reset {y}
//
// '#' starts a comment. Guards list atoms `x<1`, `x>=2`, `x=3` (shorthand
// for >= and <=) or the double form `1<y<2`; an empty or omitted guard is
// `true`. Guards over pairs of clocks are not supported.

namespace detail {

struct Token {
    std::string text;
    int col;
};

inline std::vector<Token> tokenize_line(const std::string& raw, int line_no) {
    std::vector<Token> out;
    std::string s = raw;
    auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    std::size_t i = 0;
    auto ident_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '/' ||
               c == '\'';
    };
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        int col = static_cast<int>(i) + 1;
        if (s.compare(i, 2, "->") == 0) {
            out.push_back({"->", col});
            i += 2;
        } else if (s.compare(i, 2, "<=") == 0 || s.compare(i, 2, ">=") == 0) {
            out.push_back({s.substr(i, 2), col});
            i += 2;
        } else if (std::string("[]{},:=<>&").find(s[i]) != std::string::npos) {
            out.push_back({std::string(1, s[i]), col});
            ++i;
        } else if (ident_char(s[i])) {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            out.push_back({s.substr(i, j - i), col});
            i = j;
        } else {
            throw ParseError("unexpected character '" + std::string(1, s[i]) + "'", line_no, col);
        }
    }
    return out;
}

// Cursor over one line of tokens.
struct Cursor {
    const std::vector<Token>& toks;
    std::size_t pos = 0;
    int line;

    bool done() const { return pos >= toks.size(); }
    const Token& peek() const {
        if (done()) throw ParseError("unexpected end of line", line);
        return toks[pos];
    }
    Token take() {
        Token t = peek();
        ++pos;
        return t;
    }
    bool accept(const std::string& text) {
        if (!done() && toks[pos].text == text) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(const std::string& text) {
        if (!accept(text))
            throw ParseError("expected '" + text + "'", line, done() ? -1 : peek().col);
    }
};

inline bool is_number(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
    });
}

inline long long parse_nat(Cursor& cur) {
    Token t = cur.take();
    if (!is_number(t.text)) throw ParseError("expected a natural number, got '" + t.text + "'",
                                             cur.line, t.col);
    return std::stoll(t.text);
}

}  // namespace detail

namespace detail {

struct TaBuilder {
    TimedAutomaton ta;
    std::map<std::string, int> clock_ids, letter_ids, location_ids;
    bool saw_initial = false;

    int clock(const Token& t, int line) {
        auto it = clock_ids.find(t.text);
        if (it == clock_ids.end()) throw ParseError("undeclared clock '" + t.text + "'", line, t.col);
        return it->second;
    }
    int letter(const Token& t, int line) {
        auto it = letter_ids.find(t.text);
        if (it == letter_ids.end())
            throw ParseError("undeclared letter '" + t.text + "'", line, t.col);
        return it->second;
    }
    int location(const Token& t, int line) {
        auto it = location_ids.find(t.text);
        if (it == location_ids.end())
            throw ParseError("undeclared location '" + t.text + "'", line, t.col);
        return it->second;
    }

    void declare(std::vector<std::string>& into, std::map<std::string, int>& ids, Cursor& cur) {
        if (cur.done()) throw ParseError("empty declaration", cur.line);
        while (!cur.done()) {
            Token t = cur.take();
            if (t.text == ",") continue;
            if (ids.count(t.text)) throw ParseError("duplicate name '" + t.text + "'", cur.line, t.col);
            ids[t.text] = static_cast<int>(into.size());
            into.push_back(t.text);
        }
    }

    // One relational atom; returns one or two constraints.
    void parse_atom(Cursor& cur, Guard& g) {
        Token first = cur.take();
        auto rel_tok = [&]() -> std::string {
            Token t = cur.take();
            if (t.text != "<" && t.text != "<=" && t.text != ">" && t.text != ">=" && t.text != "=")
                throw ParseError("expected a comparison operator, got '" + t.text + "'", cur.line,
                                 t.col);
            return t.text;
        };
        if (is_number(first.text)) {
            // Double form: NUM (< | <=) clock (< | <=) NUM.
            long long lo = std::stoll(first.text);
            std::string r1 = rel_tok();
            if (r1 != "<" && r1 != "<=")
                throw ParseError("double constraints must use < or <=", cur.line, first.col);
            Token ct = cur.take();
            if (is_number(ct.text))
                throw ParseError("expected a clock name between the bounds", cur.line, ct.col);
            int c = clock(ct, cur.line);
            std::string r2 = rel_tok();
            if (r2 != "<" && r2 != "<=")
                throw ParseError("double constraints must use < or <=", cur.line, ct.col);
            long long hi = parse_nat_from(cur);
            g.atoms.push_back({c, r1 == "<" ? Rel::Gt : Rel::Ge, lo});
            g.atoms.push_back({c, r2 == "<" ? Rel::Lt : Rel::Le, hi});
            return;
        }
        int c = clock(first, cur.line);
        std::string r = rel_tok();
        Token bt = cur.peek();
        if (!is_number(bt.text))
            throw ParseError("guards compare a clock to a constant; '" + bt.text +
                                 "' is not a natural number",
                             cur.line, bt.col);
        long long b = parse_nat_from(cur);
        if (r == "=") {
            g.atoms.push_back({c, Rel::Ge, b});
            g.atoms.push_back({c, Rel::Le, b});
        } else if (r == "<")
            g.atoms.push_back({c, Rel::Lt, b});
        else if (r == "<=")
            g.atoms.push_back({c, Rel::Le, b});
        else if (r == ">")
            g.atoms.push_back({c, Rel::Gt, b});
        else
            g.atoms.push_back({c, Rel::Ge, b});
    }

    long long parse_nat_from(Cursor& cur) { return parse_nat(cur); }

    // Bracketed guard: '[' atoms ']' with ',' or '&' separators.
    Guard parse_guard(Cursor& cur) {
        Guard g;
        cur.expect("[");
        while (!cur.accept("]")) {
            if (!g.atoms.empty()) {
                if (!cur.accept(",")) cur.accept("&");
            }
            if (cur.accept("]")) break;
            parse_atom(cur, g);
            if (cur.done()) throw ParseError("unterminated guard", cur.line);
        }
        return g;
    }

    void line_edge(Cursor& cur) {
        Token ft = cur.take();
        int from = location(ft, cur.line);
        cur.expect("->");
        Token tt = cur.take();
        int to = location(tt, cur.line);
        cur.expect(":");
        std::vector<int> letters;
        while (!cur.done() && cur.peek().text != "[" && cur.peek().text != "reset") {
            Token lt = cur.take();
            if (lt.text == ",") continue;
            letters.push_back(letter(lt, cur.line));
        }
        if (letters.empty()) throw ParseError("edge needs at least one letter", cur.line);
        Guard g;
        if (!cur.done() && cur.peek().text == "[") g = parse_guard(cur);
        std::vector<int> resets;
        if (cur.accept("reset")) {
            cur.expect("{");
            while (!cur.accept("}")) {
                Token ct = cur.take();
                if (ct.text == ",") continue;
                resets.push_back(clock(ct, cur.line));
            }
        }
        std::sort(resets.begin(), resets.end());
        resets.erase(std::unique(resets.begin(), resets.end()), resets.end());
        if (!cur.done())
            throw ParseError("unexpected trailing '" + cur.peek().text + "'", cur.line,
                             cur.peek().col);
        for (int l : letters) {
            TaEdge e;
            e.from = from;
            e.to = to;
            e.letter = l;
            e.guard = g;
            e.resets = resets;
            ta.edges.push_back(e);
        }
    }

    void line_initial(Cursor& cur) {
        if (saw_initial) throw ParseError("duplicate initial declaration", cur.line);
        saw_initial = true;
        Token lt = cur.take();
        ta.initial_location = location(lt, cur.line);
        ta.initial_valuation.assign(ta.clocks.size(), 0);
        std::vector<bool> set(ta.clocks.size(), false);
        while (!cur.done()) {
            Token ct = cur.take();
            if (ct.text == ",") continue;
            int c = clock(ct, cur.line);
            cur.expect("=");
            long long v = parse_nat(cur);
            if (set[static_cast<std::size_t>(c)])
                throw ParseError("clock '" + ct.text + "' assigned twice", cur.line, ct.col);
            set[static_cast<std::size_t>(c)] = true;
            ta.initial_valuation[static_cast<std::size_t>(c)] = v;
        }
    }

    void line_final(Cursor& cur) {
        Token lt = cur.take();
        int l = location(lt, cur.line);
        if (!cur.done() && cur.peek().text == "[") {
            if (ta.final_guard[static_cast<std::size_t>(l)])
                throw ParseError("location '" + lt.text + "' declared final twice", cur.line, lt.col);
            ta.final_guard[static_cast<std::size_t>(l)] = parse_guard(cur);
            if (!cur.done())
                throw ParseError("unexpected trailing '" + cur.peek().text + "'", cur.line,
                                 cur.peek().col);
            return;
        }
        // Plain list: final q p ...
        for (;;) {
            if (ta.final_guard[static_cast<std::size_t>(l)])
                throw ParseError("location declared final twice", cur.line, lt.col);
            ta.final_guard[static_cast<std::size_t>(l)] = Guard{};
            if (cur.done()) break;
            Token t = cur.take();
            if (t.text == ",") {
                if (cur.done()) throw ParseError("dangling ','", cur.line, t.col);
                t = cur.take();
            }
            l = location(t, cur.line);
            lt = t;
        }
    }

    void line_start(Cursor& cur) {
        Token lt = cur.take();
        int l = location(lt, cur.line);
        if (ta.start_guard[static_cast<std::size_t>(l)])
            throw ParseError("location '" + lt.text + "' has two start guards", cur.line, lt.col);
        ta.start_guard[static_cast<std::size_t>(l)] = parse_guard(cur);
        if (!cur.done())
            throw ParseError("unexpected trailing '" + cur.peek().text + "'", cur.line,
                             cur.peek().col);
    }
};

}  // namespace detail

inline TimedAutomaton parse_automaton_text(const std::string& text) {
    detail::TaBuilder b;
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    bool sized = false;
    while (std::getline(is, raw)) {
        ++line_no;
        auto toks = detail::tokenize_line(raw, line_no);
        if (toks.empty()) continue;
        detail::Cursor cur{toks, 0, line_no};
        std::string head = cur.take().text;
        bool is_decl = head == "clocks" || head == "alphabet" || head == "locations";
        if (is_decl && sized)
            throw ParseError("declarations must precede initial/start/final/edge lines", line_no,
                             toks[0].col);
        if (head == "clocks")
            b.declare(b.ta.clocks, b.clock_ids, cur);
        else if (head == "alphabet")
            b.declare(b.ta.alphabet, b.letter_ids, cur);
        else if (head == "locations")
            b.declare(b.ta.locations, b.location_ids, cur);
        else {
            if (!sized) {
                // First non-declaration line freezes the signature.
                b.ta.start_guard.assign(b.ta.locations.size(), std::nullopt);
                b.ta.final_guard.assign(b.ta.locations.size(), std::nullopt);
                sized = true;
            }
            if (head == "initial")
                b.line_initial(cur);
            else if (head == "final")
                b.line_final(cur);
            else if (head == "start")
                b.line_start(cur);
            else if (head == "edge")
                b.line_edge(cur);
            else
                throw ParseError("unknown directive '" + head + "'", line_no, toks[0].col);
        }
    }
    if (!sized) {
        b.ta.start_guard.assign(b.ta.locations.size(), std::nullopt);
        b.ta.final_guard.assign(b.ta.locations.size(), std::nullopt);
    }
    if (b.ta.locations.empty()) throw ParseError("no locations declared");
    if (!b.saw_initial) throw ParseError("missing initial declaration");
    return b.ta;
}

// ---------------------------------------------------------------------------
// JSON rendering (same field names, accepted interchangeably).

inline Guard guard_from_json(const nlohmann::json& j, const std::map<std::string, int>& clocks) {
    Guard g;
    for (const auto& a : j) {
        std::string cn = a.at("clock").get<std::string>();
        auto it = clocks.find(cn);
        if (it == clocks.end()) throw ParseError("undeclared clock '" + cn + "'");
        std::string op = a.at("op").get<std::string>();
        long long b = a.at("const").get<long long>();
        if (b < 0) throw ParseError("guard constants must be natural numbers");
        Rel r;
        if (op == "<")
            r = Rel::Lt;
        else if (op == "<=")
            r = Rel::Le;
        else if (op == ">")
            r = Rel::Gt;
        else if (op == ">=")
            r = Rel::Ge;
        else if (op == "=") {
            g.atoms.push_back({it->second, Rel::Ge, b});
            g.atoms.push_back({it->second, Rel::Le, b});
            continue;
        } else
            throw ParseError("unknown comparison '" + op + "'");
        g.atoms.push_back({it->second, r, b});
    }
    return g;
}

inline TimedAutomaton parse_automaton_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        TimedAutomaton ta;
        std::map<std::string, int> clocks, letters, locations;
        for (const auto& c : j.at("clocks")) {
            std::string n = c.get<std::string>();
            if (clocks.count(n)) throw ParseError("duplicate clock '" + n + "'");
            clocks[n] = static_cast<int>(ta.clocks.size());
            ta.clocks.push_back(n);
        }
        for (const auto& c : j.at("alphabet")) {
            std::string n = c.get<std::string>();
            if (letters.count(n)) throw ParseError("duplicate letter '" + n + "'");
            letters[n] = static_cast<int>(ta.alphabet.size());
            ta.alphabet.push_back(n);
        }
        for (const auto& c : j.at("locations")) {
            std::string n = c.get<std::string>();
            if (locations.count(n)) throw ParseError("duplicate location '" + n + "'");
            locations[n] = static_cast<int>(ta.locations.size());
            ta.locations.push_back(n);
        }
        ta.start_guard.assign(ta.locations.size(), std::nullopt);
        ta.final_guard.assign(ta.locations.size(), std::nullopt);

        auto loc_id = [&](const std::string& n) {
            auto it = locations.find(n);
            if (it == locations.end()) throw ParseError("undeclared location '" + n + "'");
            return it->second;
        };

        const auto& ini = j.at("initial");
        ta.initial_location = loc_id(ini.at("location").get<std::string>());
        ta.initial_valuation.assign(ta.clocks.size(), 0);
        if (ini.contains("valuation"))
            for (auto it = ini["valuation"].begin(); it != ini["valuation"].end(); ++it) {
                auto cit = clocks.find(it.key());
                if (cit == clocks.end()) throw ParseError("undeclared clock '" + it.key() + "'");
                if (!it.value().is_number_integer())
                    throw ParseError("initial valuation must use integers");
                long long v = it.value().get<long long>();
                if (v < 0) throw ParseError("initial valuation must be nonnegative");
                ta.initial_valuation[static_cast<std::size_t>(cit->second)] = v;
            }

        if (j.contains("start"))
            for (const auto& s : j["start"]) {
                int l = loc_id(s.at("location").get<std::string>());
                ta.start_guard[static_cast<std::size_t>(l)] = guard_from_json(s.at("guard"), clocks);
            }
        if (j.contains("final"))
            for (const auto& f : j["final"]) {
                int l;
                Guard g;
                if (f.is_string())
                    l = loc_id(f.get<std::string>());
                else {
                    l = loc_id(f.at("location").get<std::string>());
                    if (f.contains("guard")) g = guard_from_json(f["guard"], clocks);
                }
                ta.final_guard[static_cast<std::size_t>(l)] = g;
            }
        for (const auto& e : j.at("edges")) {
            TaEdge edge;
            edge.from = loc_id(e.at("from").get<std::string>());
            edge.to = loc_id(e.at("to").get<std::string>());
            std::string label = e.at("label").get<std::string>();
            auto lit = letters.find(label);
            if (lit == letters.end()) throw ParseError("undeclared letter '" + label + "'");
            edge.letter = lit->second;
            if (e.contains("guard")) edge.guard = guard_from_json(e["guard"], clocks);
            if (e.contains("resets"))
                for (const auto& r : e["resets"]) {
                    auto cit = clocks.find(r.get<std::string>());
                    if (cit == clocks.end())
                        throw ParseError("undeclared clock '" + r.get<std::string>() + "'");
                    edge.resets.push_back(cit->second);
                }
            std::sort(edge.resets.begin(), edge.resets.end());
            edge.resets.erase(std::unique(edge.resets.begin(), edge.resets.end()),
                              edge.resets.end());
            ta.edges.push_back(edge);
        }
        if (ta.locations.empty()) throw ParseError("no locations declared");
        return ta;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid automaton JSON: ") + e.what());
    }
}

inline nlohmann::json guard_to_json(const TimedAutomaton& ta, const Guard& g) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& a : g.atoms)
        atoms.push_back({{"clock", ta.clocks[static_cast<std::size_t>(a.clock)]},
                         {"op", rel_string(a.rel)},
                         {"const", a.bound}});
    return atoms;
}

inline nlohmann::json automaton_to_json(const TimedAutomaton& ta) {
    nlohmann::json j;
    j["clocks"] = ta.clocks;
    j["alphabet"] = ta.alphabet;
    j["locations"] = ta.locations;
    nlohmann::json val = nlohmann::json::object();
    for (std::size_t c = 0; c < ta.clocks.size(); ++c) val[ta.clocks[c]] = ta.initial_valuation[c];
    j["initial"] = {{"location", ta.locations[static_cast<std::size_t>(ta.initial_location)]},
                    {"valuation", val}};
    nlohmann::json start = nlohmann::json::array();
    for (std::size_t l = 0; l < ta.locations.size(); ++l)
        if (ta.start_guard[l])
            start.push_back({{"location", ta.locations[l]}, {"guard", guard_to_json(ta, *ta.start_guard[l])}});
    if (!start.empty()) j["start"] = start;
    nlohmann::json fin = nlohmann::json::array();
    for (std::size_t l = 0; l < ta.locations.size(); ++l)
        if (ta.final_guard[l]) {
            if (ta.final_guard[l]->atoms.empty())
                fin.push_back(ta.locations[l]);
            else
                fin.push_back(
                    {{"location", ta.locations[l]}, {"guard", guard_to_json(ta, *ta.final_guard[l])}});
        }
    j["final"] = fin;
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : ta.edges) {
        nlohmann::json je;
        je["from"] = ta.locations[static_cast<std::size_t>(e.from)];
        je["to"] = ta.locations[static_cast<std::size_t>(e.to)];
        je["label"] = ta.alphabet[static_cast<std::size_t>(e.letter)];
        je["guard"] = guard_to_json(ta, e.guard);
        nlohmann::json rs = nlohmann::json::array();
        for (int r : e.resets) rs.push_back(ta.clocks[static_cast<std::size_t>(r)]);
        je["resets"] = rs;
        edges.push_back(je);
    }
    j["edges"] = edges;
    return j;
}

inline std::string guard_text(const TimedAutomaton& ta, const Guard& g) {
    std::vector<std::string> parts;
    for (const auto& a : g.atoms)
        parts.push_back(ta.clocks[static_cast<std::size_t>(a.clock)] + rel_string(a.rel) +
                        std::to_string(a.bound));
    return join(parts, ", ");
}

inline std::string serialize_automaton(const TimedAutomaton& ta) {
    std::ostringstream os;
    os << "clocks " << join(ta.clocks, " ") << "\n";
    os << "alphabet " << join(ta.alphabet, " ") << "\n";
    os << "locations " << join(ta.locations, " ") << "\n";
    os << "initial " << ta.locations[static_cast<std::size_t>(ta.initial_location)];
    for (std::size_t c = 0; c < ta.clocks.size(); ++c)
        if (ta.initial_valuation[c] != 0)
            os << " " << ta.clocks[c] << "=" << ta.initial_valuation[c];
    os << "\n";
    for (std::size_t l = 0; l < ta.locations.size(); ++l)
        if (ta.start_guard[l])
            os << "start " << ta.locations[l] << " [" << guard_text(ta, *ta.start_guard[l]) << "]\n";
    for (std::size_t l = 0; l < ta.locations.size(); ++l)
        if (ta.final_guard[l]) {
            os << "final " << ta.locations[l];
            if (!ta.final_guard[l]->atoms.empty())
                os << " [" << guard_text(ta, *ta.final_guard[l]) << "]";
            os << "\n";
        }
    for (const auto& e : ta.edges) {
        os << "edge " << ta.locations[static_cast<std::size_t>(e.from)] << " -> "
           << ta.locations[static_cast<std::size_t>(e.to)] << " : "
           << ta.alphabet[static_cast<std::size_t>(e.letter)];
        if (!e.guard.atoms.empty()) os << " [" << guard_text(ta, e.guard) << "]";
        if (!e.resets.empty()) {
            std::vector<std::string> rs;
            for (int r : e.resets) rs.push_back(ta.clocks[static_cast<std::size_t>(r)]);
            os << " reset {" << join(rs, ",") << "}";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace tband
