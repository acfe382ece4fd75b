#pragma once
// The pseudo-distance on timed words and the counting tools built on it:
//
//   directed_distance(u, v) = max over events (a,t) of u of the smallest
//                             |t - s| over events (a,s) of v (min of an
//                             empty set being infinite),
//   distance(u, v)          = max of both directions,
//
// plus the number of distance-0 classes of a finite word set (upsilon), the
// size of a largest eps-separated subset (eps-capacity, exact via a small
// branch-and-bound or fast via a greedy), and a greedy eps-net.

#include <tband/util.hpp>
#include <tband/words.hpp>

#include <algorithm>
#include <set>
#include <vector>

namespace tband {

inline ExtRat directed_distance(const TimedWord& u, const TimedWord& v) {
    ExtRat worst = ExtRat::of(0);
    for (const auto& e : u.events) {
        ExtRat best = ExtRat::inf();
        for (const auto& f : v.events) {
            if (f.letter != e.letter) continue;
            Rat d = e.time >= f.time ? e.time - f.time : f.time - e.time;
            best = ext_min(best, ExtRat::of(d));
        }
        worst = ext_max(worst, best);
    }
    return worst;
}

inline ExtRat distance(const TimedWord& u, const TimedWord& v) {
    return ext_max(directed_distance(u, v), directed_distance(v, u));
}

// Number of distance-0 classes in S. Equivalent to the size of a largest
// 0-separated subset, but computable without pairwise distances.
inline std::size_t upsilon(const std::vector<TimedWord>& s) {
    std::set<ZeroClassKey> keys;
    for (const auto& w : s) keys.insert(zero_class_key(w));
    return keys.size();
}

// ---------------------------------------------------------------------------
// eps-separation. A subset M is eps-separated when all distinct members are
// at distance strictly greater than eps; the capacity is the size of a
// largest such subset. Exact computation is a maximum-independent-set search
// on the "conflict" graph (edges between words at distance <= eps) with a
// node budget; the greedy variant returns a certified lower bound.

enum class CapacityMode { Exact, Greedy };

struct CapacityResult {
    std::size_t count = 0;
    bool exact = false;
    std::vector<std::size_t> witness;  // indices into the deduplicated class list
};

namespace detail {

// Branch and bound maximum independent set on an adjacency-list graph.
struct MisSearch {
    const std::vector<std::vector<std::size_t>>& adj;
    std::size_t node_budget;
    std::size_t nodes_used = 0;
    std::vector<std::size_t> best;

    MisSearch(const std::vector<std::vector<std::size_t>>& a, std::size_t budget)
        : adj(a), node_budget(budget) {}

    void run() {
        std::vector<std::size_t> all(adj.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        std::vector<std::size_t> chosen;
        expand(all, chosen);
    }

    void expand(std::vector<std::size_t> candidates, std::vector<std::size_t>& chosen) {
        if (++nodes_used > node_budget)
            throw BudgetError("eps-capacity search exceeded its node budget");
        if (chosen.size() > best.size()) best = chosen;
        if (chosen.size() + candidates.size() <= best.size()) return;
        if (candidates.empty()) return;
        // Branch on the highest-degree candidate to shrink the subproblem.
        std::size_t pick = 0;
        std::size_t deg = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            std::size_t d = adj[candidates[i]].size();
            if (d >= deg) {
                deg = d;
                pick = i;
            }
        }
        std::size_t v = candidates[pick];
        candidates.erase(candidates.begin() + static_cast<long>(pick));

        // Include v.
        std::vector<std::size_t> rest;
        for (std::size_t u : candidates)
            if (!std::binary_search(adj[v].begin(), adj[v].end(), u)) rest.push_back(u);
        chosen.push_back(v);
        expand(rest, chosen);
        chosen.pop_back();

        // Exclude v.
        expand(candidates, chosen);
    }
};

}  // namespace detail

inline CapacityResult eps_capacity(const std::vector<TimedWord>& s, const Rat& eps,
                                   CapacityMode mode, std::size_t node_budget = 1000000) {
    // Words at distance 0 can never be separated; collapse classes first.
    std::set<ZeroClassKey> seen;
    std::vector<TimedWord> reps;
    for (const auto& w : s)
        if (seen.insert(zero_class_key(w)).second) reps.push_back(key_representative(zero_class_key(w)));

    const ExtRat bound = ExtRat::of(eps);
    CapacityResult res;
    if (mode == CapacityMode::Greedy) {
        for (std::size_t i = 0; i < reps.size(); ++i) {
            bool ok = true;
            for (std::size_t j : res.witness)
                if (distance(reps[i], reps[j]) <= bound) {
                    ok = false;
                    break;
                }
            if (ok) res.witness.push_back(i);
        }
        res.count = res.witness.size();
        res.exact = false;
        return res;
    }

    std::vector<std::vector<std::size_t>> adj(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            if (distance(reps[i], reps[j]) <= bound) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    detail::MisSearch mis(adj, node_budget);
    mis.run();
    res.witness = mis.best;
    std::sort(res.witness.begin(), res.witness.end());
    res.count = res.witness.size();
    res.exact = true;
    return res;
}

// Greedy eps-net: every word of S is within eps of some center, and the
// centers are pairwise more than eps apart (so the result is simultaneously
// an eps-net and an eps-separated set).
inline std::vector<TimedWord> eps_net_greedy(const std::vector<TimedWord>& s, const Rat& eps) {
    const ExtRat bound = ExtRat::of(eps);
    std::vector<TimedWord> centers;
    for (const auto& w : s) {
        bool covered = false;
        for (const auto& c : centers)
            if (distance(w, c) <= bound) {
                covered = true;
                break;
            }
        if (!covered) centers.push_back(w);
    }
    return centers;
}

}  // namespace tband
