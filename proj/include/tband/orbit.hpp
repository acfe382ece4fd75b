#pragma once
// Vertex-level reachability through closed paths of a region-split
// automaton. Each edge induces a relation between the integer vertices of
// its source and target entry regions: vertex v reaches vertex w when some
// integer delay t lets v+t satisfy the closed firing region and reset onto
// w. Composing these relations along paths gives orbit graphs; counting
// the ways (in the natural-number semiring, capped at 2) exposes cycles
// where a vertex returns to itself along two distinct closed runs — a
// witness that the automaton is NOT meager and the growth analysis does
// not apply. On meager inputs every cycle step's relation is a rotation
// P^{kl} with timing D^{kld} (l slow vertices take d+1, the rest take d),
// and the matching barycenter transition takes exactly d + l/k.

#include <tband/barycentric.hpp>
#include <tband/regions.hpp>
#include <tband/util.hpp>

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace tband {

using BoolMatrix = std::vector<std::vector<int>>;      // entries 0/1
using NatMatrix = std::vector<std::vector<long long>>; // path counts, capped
using RatMatrix = std::vector<std::vector<Rat>>;

// All moves of an integer vertex through one split edge: pairs (t, j) such
// that v+t lies in the closure of the firing region and resets onto vertex
// j of the target entry region. Delays range over 0..M+1.
inline std::vector<std::pair<long long, int>> vertex_step(const RegionSplitAutomaton& rs,
                                                          const SplitEdge& e,
                                                          const std::vector<long long>& v) {
    const SplitLocation& src = rs.locations[static_cast<std::size_t>(e.from)];
    const SplitLocation& dst = rs.locations[static_cast<std::size_t>(e.to)];
    std::vector<Rat> x;
    for (long long c : v) x.emplace_back(c);
    if (!v.empty()) {
        DelaySet here = closed_delay_set(x, src.start, {}, x);
        if (!here.singleton() || here.lo != 0)
            throw ValidationError("vertex does not lie in the closure of the source region");
    }
    const TaEdge& be = rs.base(e);
    auto targets = region_vertices(dst.start);
    std::vector<std::pair<long long, int>> out;
    for (long long t = 0; t <= rs.M + 1; ++t) {
        if (v.empty()) {
            // No clocks: every delay works and the only vertex is empty.
            out.emplace_back(t, 0);
            continue;
        }
        std::vector<Rat> moved = x;
        for (auto& c : moved) c += t;
        DelaySet ds = closed_delay_set(x, e.firing, {}, moved);
        if (!ds.singleton()) continue;  // v+t outside the closed firing region
        std::vector<long long> w = v;
        for (auto& c : w) c += t;
        for (int rc : be.resets) w[static_cast<std::size_t>(rc)] = 0;
        for (std::size_t j = 0; j < targets.size(); ++j)
            if (targets[j] == w) {
                out.emplace_back(t, static_cast<int>(j));
                break;
            }
    }
    return out;
}

// Per-edge vertex relation as a counted matrix: entry (i, j) = number of
// integer delays taking source vertex i to target vertex j, capped at 2.
inline NatMatrix edge_orbit_matrix(const RegionSplitAutomaton& rs, const SplitEdge& e) {
    auto sources = region_vertices(rs.locations[static_cast<std::size_t>(e.from)].start);
    std::size_t cols =
        region_vertices(rs.locations[static_cast<std::size_t>(e.to)].start).size();
    NatMatrix m(sources.size(), std::vector<long long>(cols, 0));
    for (std::size_t i = 0; i < sources.size(); ++i)
        for (auto [t, j] : vertex_step(rs, e, sources[i]))
            m[i][static_cast<std::size_t>(j)] = std::min<long long>(2, m[i][static_cast<std::size_t>(j)] + 1);
    return m;
}

inline NatMatrix nat_product_capped(const NatMatrix& a, const NatMatrix& b) {
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    NatMatrix out(n, std::vector<long long>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t x = 0; x < k; ++x) {
            if (a[i][x] == 0) continue;
            for (std::size_t j = 0; j < m; ++j)
                out[i][j] = std::min<long long>(2, out[i][j] + a[i][x] * b[x][j]);
        }
    return out;
}

inline BoolMatrix bool_of(const NatMatrix& a) {
    BoolMatrix out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (long long v : a[i]) out[i].push_back(v > 0 ? 1 : 0);
    return out;
}

inline BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    BoolMatrix out(n, std::vector<int>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t x = 0; x < k; ++x) {
            if (!a[i][x]) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (b[x][j]) out[i][j] = 1;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Orbit graphs of paths.

struct OrbitGraph {
    std::vector<std::vector<long long>> source_vertices;
    std::vector<std::vector<long long>> target_vertices;
    BoolMatrix edges;
};

// Relational composition along a path of split edges. The empty path at a
// location is the identity relation on its entry-region vertices.
inline OrbitGraph orbit_graph(const RegionSplitAutomaton& rs, const std::vector<int>& path,
                              int location_if_empty = -1) {
    OrbitGraph g;
    if (path.empty()) {
        if (location_if_empty < 0)
            throw ValidationError("empty path needs an anchor location");
        auto verts =
            region_vertices(rs.locations[static_cast<std::size_t>(location_if_empty)].start);
        g.source_vertices = verts;
        g.target_vertices = verts;
        g.edges.assign(verts.size(), std::vector<int>(verts.size(), 0));
        for (std::size_t i = 0; i < verts.size(); ++i) g.edges[i][i] = 1;
        return g;
    }
    const SplitEdge& first = rs.edges[static_cast<std::size_t>(path[0])];
    g.source_vertices =
        region_vertices(rs.locations[static_cast<std::size_t>(first.from)].start);
    int at = first.from;
    BoolMatrix acc;
    for (std::size_t i = 0; i < g.source_vertices.size(); ++i) {
        acc.emplace_back(g.source_vertices.size(), 0);
        acc[i][i] = 1;
    }
    for (int ei : path) {
        const SplitEdge& e = rs.edges[static_cast<std::size_t>(ei)];
        if (e.from != at) throw ValidationError("path edges do not compose");
        acc = bool_product(acc, bool_of(edge_orbit_matrix(rs, e)));
        at = e.to;
    }
    g.target_vertices = region_vertices(rs.locations[static_cast<std::size_t>(at)].start);
    g.edges = std::move(acc);
    return g;
}

// Smallest j with (B^j)^2 = B^j in the boolean matrix monoid.
inline std::pair<int, BoolMatrix> idempotent_power(const BoolMatrix& b) {
    if (b.empty() || b.size() != b[0].size())
        throw ValidationError("idempotent power of a non-square matrix");
    BoolMatrix p = b;
    for (int j = 1; j <= 4096; ++j) {
        if (bool_product(p, p) == p) return {j, p};
        p = bool_product(p, b);
    }
    throw Error("no idempotent power found within 4096 steps (internal error)");
}

// ---------------------------------------------------------------------------
// Standard forms. On meager inputs, every cycle step's reachability matrix
// is the rotation
//     P^{kl} = [[0, I_l], [I_{k-l}, 0]]
// (the l slow vertices land on the last l target vertices) and its timing
// matrix is D^{kld}: d+1 over the I_l block, d over the I_{k-l} block.

inline BoolMatrix rotation_matrix(int k, int l) {
    BoolMatrix p(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
    for (int i = 0; i < l; ++i) p[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - l + i)] = 1;
    for (int i = l; i < k; ++i) p[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - l)] = 1;
    return p;
}

inline RatMatrix timing_matrix(int k, int l, long long d) {
    RatMatrix m(static_cast<std::size_t>(k), std::vector<Rat>(static_cast<std::size_t>(k), Rat(0)));
    for (int i = 0; i < l; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - l + i)] = Rat(d + 1);
    for (int i = l; i < k; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - l)] = Rat(d);
    return m;
}

struct StandardFormReport {
    bool ok = false;
    int k = 0;
    int l = 0;
    long long d = 0;
    Rat barycentric_delay;  // d + l/k when ok
    std::string mismatch;   // reason when not ok
};

inline StandardFormReport standard_form_check(const BoolMatrix& p, const RatMatrix& d) {
    StandardFormReport rep;
    std::size_t k = p.size();
    if (k == 0 || p[0].size() != k) {
        rep.mismatch = "reachability matrix is not square";
        return rep;
    }
    rep.k = static_cast<int>(k);
    for (std::size_t i = 0; i < k; ++i) {
        int row = 0, col = 0;
        for (std::size_t j = 0; j < k; ++j) {
            row += p[i][j] ? 1 : 0;
            col += p[j][i] ? 1 : 0;
        }
        if (row != 1 || col != 1) {
            rep.mismatch = "reachability matrix is not a bijection on vertices";
            return rep;
        }
    }
    // Locate l from the image of the first vertex and verify the rotation.
    std::size_t col0 = 0;
    while (!p[0][col0]) ++col0;
    int l = col0 == 0 ? 0 : static_cast<int>(k - col0);
    if (p != rotation_matrix(static_cast<int>(k), l)) {
        rep.mismatch = "bijection is not a rotation of the canonical vertex order";
        return rep;
    }
    rep.l = l;
    // Timing entries: zero off the rotation, d+1 on the slow block, d on the
    // fast block, for one consistent natural d.
    if (d.size() != k || d[0].size() != k) {
        rep.mismatch = "timing matrix dimensions do not match";
        return rep;
    }
    Rat fast = d[static_cast<std::size_t>(l)][0];  // row l maps to column 0
    if (denominator(fast) != 1 || fast < 0) {
        rep.mismatch = "fast delay is not a natural number";
        return rep;
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Rat want = p[i][j] ? (static_cast<int>(i) < l ? fast + 1 : fast) : Rat(0);
            if (d[i][j] != want) {
                rep.mismatch = "timing entries deviate from the slow/fast pattern";
                return rep;
            }
        }
    rep.d = numerator(fast).convert_to<long long>();
    rep.barycentric_delay = Rat(rep.d) + Rat(rep.l, rep.k);
    rep.ok = true;
    return rep;
}

// Consistency check of one cycle step against its barycenter delay t0:
// t0 = d + l/k forces the rotation P^{kl} and timing D^{kld}, whose moves
// must all be realizable in the closed vertex semantics.
struct CycleStepCheck {
    bool ok = false;
    int k = 0;
    int l = 0;
    long long d = 0;
    std::string detail;
};

inline CycleStepCheck check_cycle_step(const RegionSplitAutomaton& rs, const SplitEdge& e,
                                       const Rat& t0) {
    CycleStepCheck res;
    const Region& src = rs.locations[static_cast<std::size_t>(e.from)].start;
    const Region& dst = rs.locations[static_cast<std::size_t>(e.to)].start;
    if (src.dimension() != dst.dimension()) {
        res.detail = "cycle step joins faces of different dimensions";
        return res;
    }
    int k = src.dimension() + 1;
    if (t0 < 0) {
        res.detail = "negative delay";
        return res;
    }
    Rat lk = (t0 - Rat(rat_floor(t0))) * k;
    if (denominator(lk) != 1) {
        res.detail = "barycenter delay is not of the form d + l/k";
        return res;
    }
    res.k = k;
    res.l = numerator(lk).convert_to<int>();
    res.d = rat_floor(t0).convert_to<long long>();
    BoolMatrix p = rotation_matrix(k, res.l);
    RatMatrix dm = timing_matrix(k, res.l, res.d);
    auto verts = region_vertices(src);
    for (int i = 0; i < k; ++i) {
        auto moves = vertex_step(rs, e, verts[static_cast<std::size_t>(i)]);
        for (int j = 0; j < k; ++j) {
            if (!p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
            Rat want = dm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            bool found = false;
            for (auto [t, tgt] : moves)
                if (tgt == j && Rat(t) == want) found = true;
            if (!found) {
                res.detail = "predicted vertex move " + std::to_string(i) + " -> " +
                             std::to_string(j) + " at delay " + rat_string(want) +
                             " is not realizable";
                return res;
            }
        }
    }
    res.ok = true;
    return res;
}

// ---------------------------------------------------------------------------
// Witness search. Enumerates simple cycles (by location) over shape-distinct
// edges, and flags any cycle whose capped path-count matrix, raised to any
// power up to the idempotent power of its boolean shape, shows a vertex
// returning to itself in two distinct ways.

struct ObesityWitness {
    std::vector<int> edges;  // split-edge indices around the cycle
    int power = 1;           // cycle power exhibiting the doubled return
    int vertex = 0;          // row of the >= 2 diagonal entry
    std::string description;
};

inline std::optional<ObesityWitness> meagerness_witness_search(const RegionSplitAutomaton& rs,
                                                               int max_len = 6) {
    // Deduplicate edges that induce the same vertex relation: parallel
    // letters share (from, to, firing, resets).
    std::vector<int> shape_edges;
    {
        std::set<std::tuple<int, int, Region, std::vector<int>>> seen;
        for (std::size_t i = 0; i < rs.edges.size(); ++i) {
            const SplitEdge& e = rs.edges[i];
            if (seen.insert({e.from, e.to, e.firing, rs.base(e).resets}).second)
                shape_edges.push_back(static_cast<int>(i));
        }
    }

    std::optional<ObesityWitness> found;
    auto inspect = [&](const std::vector<int>& cycle) {
        if (found) return;
        NatMatrix c;
        bool first = true;
        for (int ei : cycle) {
            NatMatrix m = edge_orbit_matrix(rs, rs.edges[static_cast<std::size_t>(ei)]);
            c = first ? m : nat_product_capped(c, m);
            first = false;
        }
        auto [j, idem] = idempotent_power(bool_of(c));
        (void)idem;
        NatMatrix power = c;
        for (int pw = 1; pw <= j; ++pw) {
            for (std::size_t v = 0; v < power.size(); ++v)
                if (power[v][v] >= 2) {
                    ObesityWitness w;
                    w.edges = cycle;
                    w.power = pw;
                    w.vertex = static_cast<int>(v);
                    std::vector<std::string> names;
                    for (int ei : cycle)
                        names.push_back(
                            rs.locations[static_cast<std::size_t>(
                                             rs.edges[static_cast<std::size_t>(ei)].from)]
                                .name);
                    w.description = "cycle " + join(names, " -> ") + " -> (start): vertex " +
                                    std::to_string(v) + " returns two distinct ways at cycle power " +
                                    std::to_string(pw);
                    found = w;
                    return;
                }
            if (pw < j) power = nat_product_capped(power, c);
        }
    };

    int n = static_cast<int>(rs.locations.size());
    std::vector<int> path;
    std::vector<bool> visited(static_cast<std::size_t>(n), false);
    std::function<void(int, int)> dfs = [&](int start, int at) {
        if (found) return;
        for (int ei : shape_edges) {
            const SplitEdge& e = rs.edges[static_cast<std::size_t>(ei)];
            if (e.from != at) continue;
            if (static_cast<int>(path.size()) + 1 > max_len) continue;
            if (e.to == start) {
                path.push_back(ei);
                inspect(path);
                path.pop_back();
                if (found) return;
            } else if (e.to > start && !visited[static_cast<std::size_t>(e.to)]) {
                visited[static_cast<std::size_t>(e.to)] = true;
                path.push_back(ei);
                dfs(start, e.to);
                path.pop_back();
                visited[static_cast<std::size_t>(e.to)] = false;
                if (found) return;
            }
        }
    };
    for (int s = 0; s < n && !found; ++s) {
        path.clear();
        std::fill(visited.begin(), visited.end(), false);
        dfs(s, s);
    }
    return found;
}

}  // namespace tband
