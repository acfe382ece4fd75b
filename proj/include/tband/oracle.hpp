#pragma once
// Brute-force ground truth for the growth analysis: enumerate or count the
// distinct canonical words a zero-delay-free simply-timed graph realizes
// within a duration horizon, starting from any state. The counter is a
// subset dynamic program (word prefixes determinize the graph on the fly),
// so it stays exact far beyond what enumeration can reach and shares no
// code with the determinization used by the main pipeline.

#include <tband/stg.hpp>
#include <tband/util.hpp>
#include <tband/words.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace tband {

// Expand a canonical set-event word into a plain timed word (simultaneous
// letters in their label order).
inline TimedWord timed_of(const ZeroFreeWord& w) {
    TimedWord out;
    for (const auto& e : w.events)
        for (const auto& l : e.letters) out.events.push_back(Event{l, e.time});
    return out;
}

// Every distinct word realizable within duration T, as canonical set-event
// sequences. The empty word always counts. Throws past the step budget.
inline std::set<ZeroFreeWord> enumerate_words(const Stg& g, const Rat& T,
                                              std::size_t budget = 5000000) {
    if (!is_zero_free(g))
        throw ValidationError("word enumeration requires a zero-delay-free graph");
    std::set<ZeroFreeWord> words;
    words.insert(ZeroFreeWord{});
    std::vector<std::vector<const StgTransition*>> out(g.states.size());
    for (const auto& t : g.transitions) out[static_cast<std::size_t>(t.from)].push_back(&t);
    struct Cfg {
        int state;
        Rat time;
        ZeroFreeWord word;
    };
    std::vector<Cfg> stack;
    for (std::size_t s = 0; s < g.states.size(); ++s)
        stack.push_back({static_cast<int>(s), Rat(0), {}});
    std::size_t steps = 0;
    while (!stack.empty()) {
        Cfg c = std::move(stack.back());
        stack.pop_back();
        for (const StgTransition* t : out[static_cast<std::size_t>(c.state)]) {
            Rat nt = c.time + t->delay;
            if (nt > T) continue;
            if (++steps > budget)
                throw BudgetError("word enumeration exceeded its step budget");
            Cfg n{t->to, nt, c.word};
            n.word.events.push_back(SetEvent{t->label, nt});
            words.insert(n.word);
            stack.push_back(std::move(n));
        }
    }
    return words;
}

// Exact count of the words enumerate_words would produce, via memoized
// recursion on (set of states some run could be in, remaining duration).
// Distinct first events separate words, so
//   W(S, tau) = 1 + sum over distinct (d, A) with d <= tau of
//               W({targets of (d, A) from S}, tau - d).
inline BigInt count_words(const Stg& g, const Rat& T, std::size_t budget = 5000000) {
    if (!is_zero_free(g))
        throw ValidationError("word counting requires a zero-delay-free graph");
    if (g.states.size() > 63)
        throw ValidationError("word counting supports at most 63 states");

    std::map<std::pair<Rat, Label>, std::vector<std::pair<int, int>>> grouped;
    std::vector<Rat> delays;
    for (const auto& t : g.transitions) {
        grouped[{t.delay, t.label}].emplace_back(t.from, t.to);
        delays.push_back(t.delay);
    }
    delays.push_back(T);
    BigInt N = lcm_denominators(delays);
    auto scaled = [&](const Rat& r) {
        Rat s = r * Rat(N);
        return numerator(s).convert_to<long long>();
    };
    struct Move {
        long long d;
        std::vector<std::pair<int, int>> arrows;
    };
    std::vector<Move> moves;
    for (const auto& [key, arrows] : grouped) moves.push_back({scaled(key.first), arrows});

    std::map<std::pair<std::uint64_t, long long>, BigInt> memo;
    std::size_t steps = 0;
    std::function<BigInt(std::uint64_t, long long)> count = [&](std::uint64_t mask,
                                                                long long tau) -> BigInt {
        auto it = memo.find({mask, tau});
        if (it != memo.end()) return it->second;
        BigInt total = 1;  // the empty continuation
        for (const auto& mv : moves) {
            if (mv.d > tau) continue;
            if (++steps > budget)
                throw BudgetError("word counting exceeded its step budget");
            std::uint64_t tmask = 0;
            for (auto [f, t] : mv.arrows)
                if (mask >> f & 1) tmask |= std::uint64_t(1) << t;
            if (!tmask) continue;
            total += count(tmask, tau - mv.d);
        }
        memo.emplace(std::make_pair(mask, tau), total);
        return total;
    };
    std::uint64_t full =
        g.states.empty() ? 0 : (std::uint64_t(1) << g.states.size()) - 1;
    return count(full, scaled(T));
}

// Growth-rate estimates from counts at increasing horizons. The plain
// column log2(count)/T converges slowly (from above); the windowed column
// differences consecutive horizons and settles much faster.
struct OracleRow {
    Rat horizon;
    BigInt count;
    double plain = 0;
    std::optional<double> windowed;
};

inline std::vector<OracleRow> oracle_growth(const Stg& g, const std::vector<Rat>& horizons,
                                            std::size_t budget = 5000000) {
    std::vector<OracleRow> rows;
    for (const Rat& T : horizons) {
        if (T <= 0) throw ValidationError("oracle horizons must be positive");
        OracleRow row;
        row.horizon = T;
        row.count = count_words(g, T, budget);
        row.plain = std::log2(row.count.convert_to<double>()) / rat_double(T);
        if (!rows.empty()) {
            const OracleRow& prev = rows.back();
            double num = std::log2(row.count.convert_to<double>()) -
                         std::log2(prev.count.convert_to<double>());
            double den = rat_double(T) - rat_double(prev.horizon);
            if (den > 0) row.windowed = num / den;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace tband
