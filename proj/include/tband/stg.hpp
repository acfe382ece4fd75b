#pragma once
// Simply-timed graphs: finite graphs whose transitions carry an exact
// rational delay and a nonempty set of letters read simultaneously.
// This header provides the text/JSON formats, the zero-delay elimination
// (folding instantaneous suffixes into the preceding timed transition),
// subset determinization, weakly connected components, and the
// characteristic polynomial det(I - M(z)) whose smallest root determines
// the growth rate of the number of distinguishable words per unit time.

#include <tband/model.hpp>
#include <tband/polynomial.hpp>
#include <tband/roots.hpp>
#include <tband/util.hpp>
#include <tband/words.hpp>

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace tband {

struct StgTransition {
    int from = -1;
    Rat delay;
    Label label;  // letters read together at this instant
    int to = -1;

    friend bool operator==(const StgTransition& a, const StgTransition& b) {
        return a.from == b.from && a.delay == b.delay && a.label == b.label && a.to == b.to;
    }
    friend bool operator<(const StgTransition& a, const StgTransition& b) {
        if (a.from != b.from) return a.from < b.from;
        if (a.delay != b.delay) return a.delay < b.delay;
        if (a.label != b.label) return a.label < b.label;
        return a.to < b.to;
    }
};

struct Stg {
    std::vector<std::string> states;
    std::vector<std::string> alphabet;  // base letters (labels are subsets)
    std::vector<StgTransition> transitions;

    void canonicalize() {
        std::sort(transitions.begin(), transitions.end());
        transitions.erase(std::unique(transitions.begin(), transitions.end()),
                          transitions.end());
    }
    bool operator==(const Stg& o) const {
        return states == o.states && alphabet == o.alphabet && transitions == o.transitions;
    }
};

inline void validate_stg(const Stg& g) {
    std::set<std::string> seen(g.states.begin(), g.states.end());
    if (seen.size() != g.states.size())
        throw ValidationError("duplicate state names in simply-timed graph");
    std::set<std::string> letters(g.alphabet.begin(), g.alphabet.end());
    for (const auto& t : g.transitions) {
        if (t.from < 0 || t.from >= static_cast<int>(g.states.size()) || t.to < 0 ||
            t.to >= static_cast<int>(g.states.size()))
            throw ValidationError("transition endpoint out of range");
        if (t.delay < 0) throw ValidationError("transition delays must be nonnegative");
        if (t.label.empty()) throw ValidationError("transition labels must be nonempty");
        for (const auto& l : t.label)
            if (!letters.count(l))
                throw ValidationError("transition letter '" + l + "' not in the alphabet");
    }
}

// ---------------------------------------------------------------------------
// Text format.
//
//   stg
//   states q p
//   alphabet a b c        (optional; inferred from transitions when absent)
//   trans q -> p : 3 a
//   trans q -> q : 5 b
//   trans p -> q : 1/2 a,b    (two letters read together)

inline Stg parse_stg_text(const std::string& text) {
    Stg g;
    std::map<std::string, int> state_ids;
    bool saw_header = false;
    bool alphabet_given = false;
    std::set<std::string> used_letters;

    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        auto toks = detail::tokenize_line(line, line_no);
        if (toks.empty()) continue;
        detail::Cursor cur{toks, 0, line_no};
        detail::Token head = cur.take();
        if (!saw_header) {
            if (head.text != "stg") throw ParseError("expected 'stg' header", line_no, head.col);
            saw_header = true;
        } else if (head.text == "states") {
            if (cur.done()) throw ParseError("empty state list", line_no, head.col);
            while (!cur.done()) {
                detail::Token name = cur.take();
                if (state_ids.count(name.text))
                    throw ParseError("duplicate state '" + name.text + "'", line_no, name.col);
                state_ids[name.text] = static_cast<int>(g.states.size());
                g.states.push_back(name.text);
            }
        } else if (head.text == "alphabet") {
            alphabet_given = true;
            while (!cur.done()) g.alphabet.push_back(cur.take().text);
        } else if (head.text == "trans") {
            StgTransition t;
            detail::Token from = cur.take();
            cur.expect("->");
            detail::Token to = cur.take();
            cur.expect(":");
            detail::Token delay_tok = cur.take();
            auto d = parse_rat(delay_tok.text);
            if (!d)
                throw ParseError("bad delay '" + delay_tok.text + "'", line_no, delay_tok.col);
            t.delay = *d;
            std::vector<std::string> letters;
            letters.push_back(cur.take().text);
            while (cur.accept(",")) letters.push_back(cur.take().text);
            t.label = make_label(letters);
            auto fi = state_ids.find(from.text);
            auto ti = state_ids.find(to.text);
            if (fi == state_ids.end())
                throw ParseError("undeclared state '" + from.text + "'", line_no, from.col);
            if (ti == state_ids.end())
                throw ParseError("undeclared state '" + to.text + "'", line_no, to.col);
            t.from = fi->second;
            t.to = ti->second;
            for (const auto& l : t.label) used_letters.insert(l);
            g.transitions.push_back(t);
        } else {
            throw ParseError("unknown directive '" + head.text + "'", line_no, head.col);
        }
        if (!cur.done())
            throw ParseError("unexpected trailing '" + cur.peek().text + "'", line_no,
                             cur.peek().col);
    }
    if (!saw_header) throw ParseError("expected 'stg' header", 1, 1);
    if (!alphabet_given) g.alphabet.assign(used_letters.begin(), used_letters.end());
    g.canonicalize();
    validate_stg(g);
    return g;
}

inline std::string serialize_stg(const Stg& g) {
    std::string out = "stg\n";
    out += "states " + join(g.states, " ") + "\n";
    out += "alphabet " + join(g.alphabet, " ") + "\n";
    for (const auto& t : g.transitions)
        out += "trans " + g.states[static_cast<std::size_t>(t.from)] + " -> " +
               g.states[static_cast<std::size_t>(t.to)] + " : " + rat_string(t.delay) + " " +
               join(t.label, ",") + "\n";
    return out;
}

inline Stg parse_stg_json(const nlohmann::json& j) {
    Stg g;
    std::map<std::string, int> state_ids;
    for (const auto& s : j.at("states")) {
        state_ids[s.get<std::string>()] = static_cast<int>(g.states.size());
        g.states.push_back(s.get<std::string>());
    }
    if (j.contains("alphabet"))
        for (const auto& a : j.at("alphabet")) g.alphabet.push_back(a.get<std::string>());
    std::set<std::string> used_letters;
    for (const auto& tj : j.at("transitions")) {
        StgTransition t;
        std::string from = tj.at("from").get<std::string>();
        std::string to = tj.at("to").get<std::string>();
        if (!state_ids.count(from)) throw ValidationError("undeclared state '" + from + "'");
        if (!state_ids.count(to)) throw ValidationError("undeclared state '" + to + "'");
        t.from = state_ids[from];
        t.to = state_ids[to];
        std::string ds = tj.at("delay").is_string() ? tj.at("delay").get<std::string>()
                                                    : tj.at("delay").dump();
        auto d = parse_rat(ds);
        if (!d) throw ValidationError("bad delay '" + ds + "'");
        t.delay = *d;
        std::vector<std::string> letters;
        if (tj.at("label").is_string())
            letters.push_back(tj.at("label").get<std::string>());
        else
            for (const auto& l : tj.at("label")) letters.push_back(l.get<std::string>());
        t.label = make_label(letters);
        for (const auto& l : t.label) used_letters.insert(l);
        g.transitions.push_back(t);
    }
    if (g.alphabet.empty()) g.alphabet.assign(used_letters.begin(), used_letters.end());
    g.canonicalize();
    validate_stg(g);
    return g;
}

inline nlohmann::ordered_json stg_to_json(const Stg& g) {
    nlohmann::ordered_json j;
    j["states"] = g.states;
    j["alphabet"] = g.alphabet;
    j["transitions"] = nlohmann::ordered_json::array();
    for (const auto& t : g.transitions) {
        nlohmann::ordered_json tj;
        tj["from"] = g.states[static_cast<std::size_t>(t.from)];
        tj["to"] = g.states[static_cast<std::size_t>(t.to)];
        tj["delay"] = rat_string(t.delay);
        tj["label"] = t.label;
        j["transitions"].push_back(tj);
    }
    return j;
}

// ---------------------------------------------------------------------------
// Zero-delay elimination. Every maximal run  p --d,A--> q0 --0,B1--> q1 ...
// with d > 0 is contracted to single transitions p --d,A∪B1∪..∪Bk--> qk for
// every prefix of the instantaneous chain; pure zero-delay behavior
// disappears (it contributes nothing once simultaneous letters are merged).

inline Stg zero_eliminate(const Stg& g) {
    Stg out;
    out.states = g.states;
    out.alphabet = g.alphabet;
    std::set<StgTransition> result;
    std::vector<StgTransition> work;
    for (const auto& t : g.transitions)
        if (t.delay > 0) {
            if (result.insert(t).second) work.push_back(t);
        }
    while (!work.empty()) {
        StgTransition t = work.back();
        work.pop_back();
        for (const auto& z : g.transitions) {
            if (z.delay != 0 || z.from != t.to) continue;
            StgTransition ext = t;
            std::vector<std::string> letters(t.label.begin(), t.label.end());
            letters.insert(letters.end(), z.label.begin(), z.label.end());
            ext.label = make_label(letters);
            ext.to = z.to;
            if (result.insert(ext).second) work.push_back(ext);
        }
    }
    out.transitions.assign(result.begin(), result.end());
    out.canonicalize();
    return out;
}

inline bool is_zero_free(const Stg& g) {
    for (const auto& t : g.transitions)
        if (t.delay == 0) return false;
    return true;
}

// Deterministic: from any state, a (delay, label) pair leads to at most one
// target.
inline bool is_deterministic(const Stg& g) {
    std::set<std::tuple<int, Rat, Label>> seen;
    for (const auto& t : g.transitions)
        if (!seen.insert({t.from, t.delay, t.label}).second) return false;
    return true;
}

// Subset determinization of a zero-delay-free graph, starting from the set
// of all states (a word is realizable if some state can read it). Already
// deterministic graphs are returned unchanged.
inline Stg determinize(const Stg& g) {
    if (!is_zero_free(g))
        throw ValidationError("determinization requires a zero-delay-free graph");
    if (is_deterministic(g)) return g;

    std::vector<std::vector<int>> subsets;
    std::map<std::vector<int>, int> ids;
    auto intern = [&](std::vector<int> s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(subsets.size());
        ids.emplace(s, id);
        subsets.push_back(std::move(s));
        return id;
    };

    Stg out;
    out.alphabet = g.alphabet;
    std::vector<int> all(g.states.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    std::vector<int> queue{intern(all)};
    std::size_t qi = 0;
    while (qi < queue.size()) {
        int id = queue[qi++];
        std::vector<int> members = subsets[static_cast<std::size_t>(id)];
        std::map<std::pair<Rat, Label>, std::vector<int>> moves;
        for (const auto& t : g.transitions)
            if (std::binary_search(members.begin(), members.end(), t.from))
                moves[{t.delay, t.label}].push_back(t.to);
        for (auto& [key, targets] : moves) {
            bool known = false;
            {
                std::vector<int> s = targets;
                std::sort(s.begin(), s.end());
                s.erase(std::unique(s.begin(), s.end()), s.end());
                known = ids.count(s) != 0;
            }
            int to = intern(targets);
            if (!known) queue.push_back(to);
            StgTransition t;
            t.from = id;
            t.to = to;
            t.delay = key.first;
            t.label = key.second;
            out.transitions.push_back(t);
        }
    }
    for (const auto& members : subsets) {
        std::vector<std::string> names;
        for (int m : members) names.push_back(g.states[static_cast<std::size_t>(m)]);
        out.states.push_back("{" + join(names, ",") + "}");
    }
    out.canonicalize();
    return out;
}

// Weakly connected components, each a sorted list of state indices, ordered
// by smallest member. Isolated states form singleton components.
inline std::vector<std::vector<int>> weak_components(const Stg& g) {
    std::size_t n = g.states.size();
    std::vector<int> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& t : g.transitions) {
        int a = find(t.from), b = find(t.to);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
    }
    std::map<int, std::vector<int>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));
    std::vector<std::vector<int>> comps;
    for (auto& [root, members] : groups) comps.push_back(std::move(members));
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

// ---------------------------------------------------------------------------
// Characteristic polynomial. The transition matrix M(z) has entries
// M[i][j] = sum of z^delay over transitions i -> j (one term per labeled
// transition). With delays scaled to integers via the common denominator m
// (z = zeta^m), det(I - M) is an integer polynomial in zeta whose smallest
// root zeta0 gives the growth rate -m*log2|zeta0|.

inline BigInt stg_scale(const Stg& g) {
    std::vector<Rat> delays;
    for (const auto& t : g.transitions) delays.push_back(t.delay);
    return lcm_denominators(delays);
}

// I - M over the given states (indices into g.states), with delays scaled
// by m: a transition of delay d contributes zeta^(d*m).
inline PolyMatrix characteristic_matrix(const Stg& g, const std::vector<int>& states,
                                        const BigInt& m) {
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < states.size(); ++i) index[states[i]] = i;
    std::size_t n = states.size();
    PolyMatrix A(n, std::vector<Poly>(n, Poly::zero()));
    for (std::size_t i = 0; i < n; ++i) A[i][i] = Poly::constant(1);
    for (const auto& t : g.transitions) {
        auto fi = index.find(t.from);
        auto ti = index.find(t.to);
        if (fi == index.end() || ti == index.end()) continue;
        Rat scaled = t.delay * Rat(m);
        if (denominator(scaled) != 1)
            throw Error("delay scaling produced a non-integer exponent (internal error)");
        std::size_t e = numerator(scaled).convert_to<std::size_t>();
        A[fi->second][ti->second] = A[fi->second][ti->second] - Poly::monomial(1, e);
    }
    return A;
}

struct ComponentChar {
    std::vector<int> states;
    Poly char_poly;  // det(I - M) restricted to this component, in zeta
};

struct CharacteristicResult {
    BigInt scale_m = 1;                    // z = zeta^m
    std::vector<ComponentChar> components;
    Poly zeta_product;                     // product over components
    QuasiPoly quasi;                       // same, with exponents back in z-units
};

inline Poly det_auto(const PolyMatrix& a) {
    return a.size() <= 8 ? det_cofactor(a) : det_bareiss(a);
}

inline CharacteristicResult characteristic(const Stg& g) {
    if (!is_zero_free(g))
        throw ValidationError("characteristic polynomial requires a zero-delay-free graph");
    CharacteristicResult res;
    res.scale_m = stg_scale(g);
    res.zeta_product = Poly::constant(1);
    for (const auto& comp : weak_components(g)) {
        ComponentChar cc;
        cc.states = comp;
        cc.char_poly = det_auto(characteristic_matrix(g, comp, res.scale_m));
        res.zeta_product = res.zeta_product * cc.char_poly;
        res.components.push_back(std::move(cc));
    }
    // M(0) = 0 because every delay exponent is positive, so det(I - M)
    // always has constant term exactly 1.
    if (res.zeta_product.c.empty() || res.zeta_product.c[0] != 1)
        throw Error("characteristic polynomial must have constant term 1 (internal error)");
    res.quasi = poly_to_quasi(res.zeta_product, res.scale_m);
    return res;
}

inline GrowthResult growth_rate(const Stg& g, double tolerance = 1e-12) {
    return smallest_root(characteristic(g).quasi, tolerance);
}

}  // namespace tband
