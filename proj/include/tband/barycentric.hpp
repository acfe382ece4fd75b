#pragma once
// Barycentric abstraction of a region-split automaton. Every bounded region
// is a simplex: its closure is the convex hull of the d+1 integer vertices
// obtained by rounding the fractional classes down or up in order. The
// abstraction keeps one state per face of each entry-region simplex,
// positioned at the face's barycenter, and one timed transition per edge
// whose delay is forced exactly by the chosen source and target points.
// The result is a simply-timed graph that realizes the same set of words
// up to vanishing perturbations, dimension class by dimension class.

#include <tband/model.hpp>
#include <tband/regions.hpp>
#include <tband/stg.hpp>
#include <tband/util.hpp>

#include <bit>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tband {

// Vertices of the closure of a bounded region, ordered from the all-floors
// corner upward: vertex j rounds the top j fractional classes up to their
// ceilings (class k is raised in vertex j exactly when j >= m-k+1, m the
// region's dimension). Zero-fraction clocks stay at their integer value.
inline std::vector<std::vector<long long>> region_vertices(const Region& r) {
    if (!r.bounded()) throw Error("vertices of an unbounded region");
    int m = r.dimension();
    std::vector<std::vector<long long>> verts;
    for (int j = 0; j <= m; ++j) {
        std::vector<long long> v(r.cls.size());
        for (std::size_t c = 0; c < r.cls.size(); ++c)
            v[c] = r.ip[c] + (r.cls[c] >= 1 && r.cls[c] >= m - j + 1 ? 1 : 0);
        verts.push_back(std::move(v));
    }
    return verts;
}

// Nonempty vertex subsets (bitmask over vertices 0..m), ordered by
// dimension first, then numerically.
inline std::vector<unsigned> all_faces(const Region& r) {
    int m = r.dimension();
    if (m + 1 > 20) throw ValidationError("too many fractional classes in one region");
    std::vector<unsigned> masks;
    for (unsigned mask = 1; mask < (1u << (m + 1)); ++mask) masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
        return a < b;
    });
    return masks;
}

inline std::vector<Rat> barycenter(const Region& r, unsigned mask) {
    auto verts = region_vertices(r);
    std::vector<Rat> p(r.cls.size(), Rat(0));
    long long count = 0;
    for (std::size_t j = 0; j < verts.size(); ++j) {
        if (!(mask & (1u << j))) continue;
        ++count;
        for (std::size_t c = 0; c < p.size(); ++c) p[c] += Rat(verts[j][c]);
    }
    if (count == 0) throw Error("barycenter of an empty face");
    for (auto& x : p) x /= count;
    return p;
}

// The unique face whose relative interior contains a point of the closure.
// With mu_k the common fractional offset of class k at the point, the
// barycentric coordinates are lambda_0 = 1 - mu_m and
// lambda_{m-k+1} = mu_k - mu_{k-1}; the face collects the vertices with
// positive coordinate.
inline unsigned smallest_face(const Region& r, const std::vector<Rat>& point) {
    if (!r.bounded()) throw Error("face of an unbounded region");
    int m = r.dimension();
    std::vector<Rat> mu(static_cast<std::size_t>(m) + 1, Rat(0));
    std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
    seen[0] = true;
    for (std::size_t c = 0; c < r.cls.size(); ++c) {
        Rat off = point[c] - Rat(r.ip[c]);
        int k = r.cls[c];
        if (k == 0) {
            if (off != 0) throw Error("point does not lie in the region closure");
            continue;
        }
        if (off < 0 || off > 1) throw Error("point does not lie in the region closure");
        std::size_t ki = static_cast<std::size_t>(k);
        if (seen[ki] && mu[ki] != off)
            throw Error("point does not lie in the region closure");
        mu[ki] = off;
        seen[ki] = true;
    }
    unsigned mask = 0;
    Rat prev(0);
    for (int k = 1; k <= m; ++k) {
        Rat lam = mu[static_cast<std::size_t>(k)] - prev;
        if (lam < 0) throw Error("point does not lie in the region closure");
        if (lam > 0) mask |= 1u << (m - k + 1);
        prev = mu[static_cast<std::size_t>(k)];
    }
    if (Rat(1) - prev > 0) mask |= 1u;  // lambda_0
    return mask;
}

// ---------------------------------------------------------------------------
// Delay sets. Given a point x in the closure of a source region, a firing
// region and a reset set, the delays t >= 0 with x + t in the closure of
// the firing region and (x + t)[resets := 0] equal to the target point form
// a (possibly empty, possibly degenerate) closed interval.

struct DelaySet {
    bool nonempty = false;
    Rat lo;                  // valid when nonempty
    std::optional<Rat> hi;   // absent: unbounded above

    bool singleton() const { return nonempty && hi && *hi == lo; }
};

inline DelaySet closed_delay_set(const std::vector<Rat>& x, const Region& firing,
                                 const std::vector<int>& resets,
                                 const std::vector<Rat>& target) {
    DelaySet out;
    Rat lo(0);
    std::optional<Rat> hi;
    auto pin = [&](const Rat& v) {
        if (v > lo) lo = v;
        if (!hi || v < *hi) hi = v;
    };
    auto lower = [&](const Rat& v) {
        if (v > lo) lo = v;
    };
    auto upper = [&](const Rat& v) {
        if (!hi || v < *hi) hi = v;
    };

    std::vector<bool> reset(x.size(), false);
    for (int c : resets) reset[static_cast<std::size_t>(c)] = true;

    // The reset maps x+t to the target: reset clocks must land on zero,
    // every other clock pins the delay exactly.
    for (std::size_t c = 0; c < x.size(); ++c) {
        if (reset[c]) {
            if (target[c] != 0) return out;
        } else {
            pin(target[c] - x[c]);
        }
    }

    // x+t must lie in the closure of the firing region.
    for (std::size_t c = 0; c < x.size(); ++c) {
        int k = firing.cls[c];
        if (k < 0) {
            lower(Rat(firing.M) - x[c]);
        } else if (k == 0) {
            pin(Rat(firing.ip[c]) - x[c]);
        } else {
            lower(Rat(firing.ip[c]) - x[c]);
            upper(Rat(firing.ip[c] + 1) - x[c]);
        }
    }
    // Fractional offsets keep their order inside the closure; the delay
    // cancels, so these constraints hold or fail outright.
    for (std::size_t c = 0; c < x.size(); ++c)
        for (std::size_t d = 0; d < x.size(); ++d) {
            int kc = firing.cls[c], kd = firing.cls[d];
            if (kc < 1 || kd < 1) continue;
            Rat oc = x[c] - Rat(firing.ip[c]);
            Rat od = x[d] - Rat(firing.ip[d]);
            if (kc < kd && oc > od) return out;
            if (kc == kd && oc != od) return out;
        }

    if (hi && lo > *hi) return out;
    out.nonempty = true;
    out.lo = lo;
    out.hi = hi;
    return out;
}

// ---------------------------------------------------------------------------
// The abstraction itself.

struct AbsState {
    int split_loc = -1;
    unsigned mask = 0;          // face, as a vertex bitmask
    std::vector<Rat> point;     // barycenter of the face
    int dim = 0;                // face dimension = popcount(mask) - 1
    std::string name;
};

struct Abstraction {
    Stg graph;                     // states parallel to `states`
    std::vector<AbsState> states;
    std::map<int, std::size_t> by_dimension;  // face dimension -> state count
};

inline Abstraction build_abstraction(const RegionSplitAutomaton& rs) {
    Abstraction ab;
    ab.graph.alphabet = rs.ta.alphabet;
    std::map<std::pair<int, unsigned>, int> index;
    for (std::size_t li = 0; li < rs.locations.size(); ++li) {
        const auto& loc = rs.locations[li];
        for (unsigned mask : all_faces(loc.start)) {
            AbsState st;
            st.split_loc = static_cast<int>(li);
            st.mask = mask;
            st.point = barycenter(loc.start, mask);
            st.dim = std::popcount(mask) - 1;
            std::vector<std::string> coords;
            for (const auto& v : st.point) coords.push_back(rat_string(v));
            st.name = loc.name + "@(" + join(coords, ",") + ")";
            index[{static_cast<int>(li), mask}] = static_cast<int>(ab.states.size());
            ab.graph.states.push_back(st.name);
            ab.by_dimension[st.dim] += 1;
            ab.states.push_back(std::move(st));
        }
    }
    for (const auto& e : rs.edges) {
        const TaEdge& be = rs.base(e);
        for (unsigned fm : all_faces(rs.locations[static_cast<std::size_t>(e.from)].start)) {
            int from = index.at({e.from, fm});
            const AbsState& src = ab.states[static_cast<std::size_t>(from)];
            for (unsigned tm : all_faces(rs.locations[static_cast<std::size_t>(e.to)].start)) {
                int to = index.at({e.to, tm});
                const AbsState& dst = ab.states[static_cast<std::size_t>(to)];
                if (src.dim != dst.dim) continue;
                DelaySet ds = closed_delay_set(src.point, e.firing, be.resets, dst.point);
                if (!ds.singleton()) continue;
                StgTransition t;
                t.from = from;
                t.to = to;
                t.delay = ds.lo;
                t.label = make_label({rs.ta.alphabet[static_cast<std::size_t>(be.letter)]});
                ab.graph.transitions.push_back(t);
            }
        }
    }
    ab.graph.canonicalize();
    validate_stg(ab.graph);
    return ab;
}

}  // namespace tband
