#pragma once
// Clock regions relative to the automaton's largest constant M, the
// time-elapse successor chain, resets, and the region-split form of a
// deterministic timed automaton: locations become (location, entry region)
// pairs and every edge records the exact region it fires in.
//
// A region stores, per clock: "above M" (no further bookkeeping), or an
// integer part in [0, M] plus a fractional class — class 0 means fractional
// part zero, classes 1..m enumerate the distinct positive fractional values
// in ascending order.
//
// The split form is trimmed: states must be reachable from the initial
// state and able to reach an accepting state, and states that cannot be
// left at all are removed repeatedly (they carry only duration-bounded
// behavior, which cannot affect the growth rate; this also keeps the
// construction minimal on inputs whose boundary regions dead-end).

#include <tband/model.hpp>
#include <tband/util.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tband {

struct Region {
    long long M = 0;
    std::vector<long long> ip;  // integer part per clock (meaningful when cls >= 0)
    std::vector<int> cls;       // -1: above M; 0: fractional part zero; k>=1: k-th class

    bool operator==(const Region& o) const { return M == o.M && ip == o.ip && cls == o.cls; }
    bool operator!=(const Region& o) const { return !(*this == o); }
    bool operator<(const Region& o) const {
        if (ip != o.ip) return ip < o.ip;
        return cls < o.cls;
    }

    std::size_t clock_count() const { return cls.size(); }

    // Number of distinct positive fractional classes = simplex dimension.
    int dimension() const {
        int m = 0;
        for (int k : cls) m = std::max(m, k);
        return m;
    }
    bool bounded() const {
        for (int k : cls)
            if (k < 0) return false;
        return true;
    }
    bool all_above() const {
        for (int k : cls)
            if (k >= 0) return false;
        return !cls.empty();
    }

    // A canonical interior point: class k sits at fractional value k/(m+1).
    std::vector<Rat> representative() const {
        int m = dimension();
        std::vector<Rat> v(cls.size());
        for (std::size_t c = 0; c < cls.size(); ++c) {
            if (cls[c] < 0)
                v[c] = Rat(M + 1);
            else
                v[c] = Rat(ip[c]) + Rat(cls[c], m + 1);
        }
        return v;
    }
};

// Region containing an arbitrary nonnegative valuation.
inline Region region_of(long long M, const std::vector<Rat>& v) {
    Region r;
    r.M = M;
    r.ip.assign(v.size(), 0);
    r.cls.assign(v.size(), 0);
    std::vector<Rat> fracs;
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (v[c] < 0) throw ValidationError("clock valuations must be nonnegative");
        if (v[c] > M) {
            r.cls[c] = -1;
            r.ip[c] = 0;
            continue;
        }
        BigInt fl = rat_floor(v[c]);
        r.ip[c] = fl.convert_to<long long>();
        Rat frac = v[c] - Rat(fl);
        if (frac > 0) fracs.push_back(frac);
    }
    std::sort(fracs.begin(), fracs.end());
    fracs.erase(std::unique(fracs.begin(), fracs.end()), fracs.end());
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (r.cls[c] < 0) continue;
        Rat frac = v[c] - Rat(r.ip[c]);
        if (frac > 0) {
            auto it = std::lower_bound(fracs.begin(), fracs.end(), frac);
            r.cls[c] = static_cast<int>(it - fracs.begin()) + 1;
        }
    }
    return r;
}

// The region entered immediately after letting time elapse out of r
// (r itself when r is absorbing: every clock above M, or no clocks at all).
inline Region time_successor(const Region& r) {
    std::vector<Rat> rep = r.representative();
    int m = r.dimension();
    bool has_zero = false;
    bool has_bounded = false;
    for (int k : r.cls) {
        if (k == 0) has_zero = true;
        if (k >= 0) has_bounded = true;
    }
    if (!has_bounded) return r;
    Rat delta;
    if (has_zero) {
        // Any small delay; half the gap to the next boundary event.
        delta = Rat(1, 2 * (m + 1));
    } else {
        // The top class reaches the next integer: fractional part m/(m+1).
        delta = Rat(1) - Rat(m, m + 1);
    }
    for (auto& x : rep) x += delta;
    Region next = region_of(r.M, rep);
    return next;
}

// Strict successor chain of r (excluding r), ending at the absorbing region.
// Empty when r is itself absorbing.
inline std::vector<Region> time_successors(const Region& r) {
    std::vector<Region> chain;
    Region cur = r;
    for (;;) {
        Region next = time_successor(cur);
        if (next == cur) break;
        chain.push_back(next);
        cur = next;
    }
    return chain;
}

// Region after resetting the given clocks to zero.
inline Region reset_region(const Region& r, const std::vector<int>& resets) {
    std::vector<Rat> rep = r.representative();
    for (int c : resets) rep[static_cast<std::size_t>(c)] = 0;
    return region_of(r.M, rep);
}

// Whether every point of r satisfies the guard. Region boundaries never
// cross guard constants (all constants are folded into M), so a region
// either satisfies a constraint uniformly or misses it uniformly.
inline bool region_satisfies(const Region& r, const Guard& g) {
    for (const auto& a : g.atoms) {
        if (a.bound > r.M)
            throw Error("guard constant exceeds the region bound M");
        std::size_t c = static_cast<std::size_t>(a.clock);
        bool above = r.cls[c] < 0;
        bool int_frac = !above && r.cls[c] == 0;
        long long ip = above ? 0 : r.ip[c];
        bool ok = false;
        switch (a.rel) {
            case Rel::Lt: ok = !above && ip < a.bound; break;
            case Rel::Le: ok = !above && (int_frac ? ip <= a.bound : ip < a.bound); break;
            case Rel::Gt: ok = above || (int_frac ? ip > a.bound : ip >= a.bound); break;
            case Rel::Ge: ok = above || ip >= a.bound; break;
        }
        if (!ok) return false;
    }
    return true;
}

// Human-readable description, e.g. "x=0, 0<y<1" with the fractional order
// appended when more than one positive class exists.
inline std::string region_string(const Region& r, const std::vector<std::string>& clocks) {
    std::vector<std::string> parts;
    for (std::size_t c = 0; c < r.cls.size(); ++c) {
        if (r.cls[c] < 0)
            parts.push_back(clocks[c] + ">" + std::to_string(r.M));
        else if (r.cls[c] == 0)
            parts.push_back(clocks[c] + "=" + std::to_string(r.ip[c]));
        else
            parts.push_back(std::to_string(r.ip[c]) + "<" + clocks[c] + "<" +
                            std::to_string(r.ip[c] + 1));
    }
    std::string out = join(parts, ", ");
    if (r.dimension() > 1) {
        // Order of the fractional parts, ascending by class.
        std::vector<std::string> order;
        for (int k = 1; k <= r.dimension(); ++k) {
            std::vector<std::string> group;
            for (std::size_t c = 0; c < r.cls.size(); ++c)
                if (r.cls[c] == k) group.push_back(clocks[c]);
            order.push_back(join(group, "="));
        }
        out += "; fr(" + join(order, ") < fr(") + ")";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Region-split form.

struct SplitLocation {
    int base = -1;     // location of the input automaton
    Region start;      // region the location is entered with
    std::string name;  // base name + region description
};

struct SplitEdge {
    int from = -1;
    int to = -1;
    int base_edge = -1;  // index into the input automaton's edge list
    Region firing;       // region the guard is satisfied in when firing
};

struct RegionSplitAutomaton {
    TimedAutomaton ta;  // the input, kept for letters/resets/guards
    long long M = 0;
    std::vector<SplitLocation> locations;
    std::vector<SplitEdge> edges;
    int initial = -1;
    std::vector<bool> final;

    bool empty_language = false;    // no accepted word at all
    bool trivial_language = false;  // accepted words have bounded duration
    std::size_t removed_states = 0; // dropped by trimming/pruning

    const TaEdge& base(const SplitEdge& e) const {
        return ta.edges[static_cast<std::size_t>(e.base_edge)];
    }
};

// A split location is accepting when its entry region, or some time-elapse
// successor of it, satisfies the location's acceptance guard.
inline bool split_final(const TimedAutomaton& ta, int base, const Region& start) {
    const auto& fg = ta.final_guard[static_cast<std::size_t>(base)];
    if (!fg) return false;
    if (region_satisfies(start, *fg)) return true;
    for (const Region& s : time_successors(start))
        if (region_satisfies(s, *fg)) return true;
    return false;
}

inline RegionSplitAutomaton region_split(const TimedAutomaton& ta) {
    auto det = check_determinism(ta);
    if (!det.deterministic) {
        std::string msg = "input automaton is nondeterministic; overlapping edge pairs:";
        for (auto [i, j] : det.conflicts)
            msg += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
        throw ValidationError(msg);
    }

    RegionSplitAutomaton out;
    out.ta = ta;
    out.M = max_constant(ta);

    // Initial state: the region of the initial valuation, admitted only if
    // it meets the location's entry guard.
    std::vector<Rat> iv;
    for (long long v : ta.initial_valuation) iv.emplace_back(v);
    Region init_region = region_of(out.M, iv);

    std::map<std::pair<int, Region>, int> ids;
    auto intern = [&](int base, const Region& r) {
        auto key = std::make_pair(base, r);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(out.locations.size());
        ids.emplace(key, id);
        SplitLocation loc;
        loc.base = base;
        loc.start = r;
        loc.name = ta.locations[static_cast<std::size_t>(base)] + "[" +
                   region_string(r, ta.clocks) + "]";
        out.locations.push_back(loc);
        return id;
    };

    auto admitted = [&](int base, const Region& r) {
        const auto& sg = ta.start_guard[static_cast<std::size_t>(base)];
        return !sg || region_satisfies(r, *sg);
    };

    std::vector<int> worklist;
    if (admitted(ta.initial_location, init_region)) {
        out.initial = intern(ta.initial_location, init_region);
        worklist.push_back(out.initial);
    }

    while (!worklist.empty()) {
        int id = worklist.back();
        worklist.pop_back();
        SplitLocation loc = out.locations[static_cast<std::size_t>(id)];
        std::vector<Region> firings;
        firings.push_back(loc.start);
        for (const Region& s : time_successors(loc.start)) firings.push_back(s);
        for (std::size_t ei = 0; ei < ta.edges.size(); ++ei) {
            const TaEdge& e = ta.edges[ei];
            if (e.from != loc.base) continue;
            for (const Region& f : firings) {
                if (!region_satisfies(f, e.guard)) continue;
                Region target = reset_region(f, e.resets);
                if (!admitted(e.to, target)) continue;
                bool known = ids.count(std::make_pair(e.to, target)) != 0;
                int to = intern(e.to, target);
                if (!known) worklist.push_back(to);
                SplitEdge se;
                se.from = id;
                se.to = to;
                se.base_edge = static_cast<int>(ei);
                se.firing = f;
                out.edges.push_back(se);
            }
        }
    }

    // Trim. First reachability and co-reachability; if nothing remains the
    // language is empty. Then repeatedly drop states that cannot be left
    // (only duration-bounded behavior) and re-trim to a fixpoint.
    std::size_t n = out.locations.size();
    std::vector<bool> keep(n, true);
    std::vector<bool> is_final(n, false);
    for (std::size_t i = 0; i < n; ++i)
        is_final[i] = split_final(ta, out.locations[i].base, out.locations[i].start);

    auto trim_pass = [&](bool prune_sinks) {
        bool changed = false;
        // Forward reachability.
        std::vector<bool> reach(n, false);
        if (out.initial >= 0 && keep[static_cast<std::size_t>(out.initial)]) {
            std::vector<int> stack{out.initial};
            reach[static_cast<std::size_t>(out.initial)] = true;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (const auto& e : out.edges)
                    if (e.from == u && keep[static_cast<std::size_t>(e.to)] &&
                        !reach[static_cast<std::size_t>(e.to)]) {
                        reach[static_cast<std::size_t>(e.to)] = true;
                        stack.push_back(e.to);
                    }
            }
        }
        // Backward reachability from accepting states.
        std::vector<bool> coreach(n, false);
        std::vector<int> stack;
        for (std::size_t i = 0; i < n; ++i)
            if (keep[i] && is_final[i]) {
                coreach[i] = true;
                stack.push_back(static_cast<int>(i));
            }
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (const auto& e : out.edges)
                if (e.to == u && keep[static_cast<std::size_t>(e.from)] &&
                    !coreach[static_cast<std::size_t>(e.from)]) {
                    coreach[static_cast<std::size_t>(e.from)] = true;
                    stack.push_back(e.from);
                }
        }
        for (std::size_t i = 0; i < n; ++i)
            if (keep[i] && (!reach[i] || !coreach[i])) {
                keep[i] = false;
                changed = true;
            }
        if (prune_sinks) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!keep[i]) continue;
                bool has_out = false;
                for (const auto& e : out.edges)
                    if (e.from == static_cast<int>(i) && keep[static_cast<std::size_t>(e.to)]) {
                        has_out = true;
                        break;
                    }
                if (!has_out) {
                    keep[i] = false;
                    changed = true;
                }
            }
        }
        return changed;
    };

    trim_pass(false);
    bool any_before_prune = std::any_of(keep.begin(), keep.end(), [](bool k) { return k; });
    if (!any_before_prune) {
        out.empty_language = true;
        out.locations.clear();
        out.edges.clear();
        out.initial = -1;
        out.removed_states = n;
        return out;
    }
    while (trim_pass(true)) {
    }
    bool any_after = std::any_of(keep.begin(), keep.end(), [](bool k) { return k; });
    if (!any_after) {
        out.trivial_language = true;
        out.locations.clear();
        out.edges.clear();
        out.initial = -1;
        out.removed_states = n;
        return out;
    }

    // Compact to the surviving states (discovery order preserved).
    std::vector<int> remap(n, -1);
    std::vector<SplitLocation> locs;
    std::vector<bool> finals;
    for (std::size_t i = 0; i < n; ++i)
        if (keep[i]) {
            remap[i] = static_cast<int>(locs.size());
            locs.push_back(out.locations[i]);
            finals.push_back(is_final[i]);
        }
    std::vector<SplitEdge> edges;
    for (const auto& e : out.edges)
        if (keep[static_cast<std::size_t>(e.from)] && keep[static_cast<std::size_t>(e.to)]) {
            SplitEdge ne = e;
            ne.from = remap[static_cast<std::size_t>(e.from)];
            ne.to = remap[static_cast<std::size_t>(e.to)];
            edges.push_back(ne);
        }
    out.removed_states = n - locs.size();
    out.locations = std::move(locs);
    out.edges = std::move(edges);
    out.final = std::move(finals);
    out.initial = out.initial >= 0 ? remap[static_cast<std::size_t>(out.initial)] : -1;

    // The growth analysis needs every surviving entry region bounded.
    for (const auto& loc : out.locations)
        if (!loc.start.bounded())
            throw ValidationError(
                "entry region of '" + loc.name +
                "' is unbounded (a clock can exceed every constant); the automaton keeps "
                "accepting while some clock grows without bound, which this analysis rejects");

    // Internal consistency: every edge's target region is the reset of its
    // firing region.
    for (const auto& e : out.edges) {
        const TaEdge& be = out.base(e);
        if (reset_region(e.firing, be.resets) != out.locations[static_cast<std::size_t>(e.to)].start)
            throw Error("region-split edge equation violated (internal error)");
    }
    return out;
}

}  // namespace tband
