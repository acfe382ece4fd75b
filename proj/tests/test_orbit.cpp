#include <catch2/catch_amalgamated.hpp>

#include <tband/barycentric.hpp>
#include <tband/model.hpp>
#include <tband/orbit.hpp>
#include <tband/regions.hpp>

#include "helpers.hpp"

#include <utility>
#include <vector>

using namespace tband;

namespace {

RegionSplitAutomaton split_of(const char* name) {
    return region_split(
        parse_automaton_text(testutil::read_file(testutil::data_path(name))));
}

// First split edge from -> to (the parallel-letter twin has the same shape).
int find_edge(const RegionSplitAutomaton& rs, int from, int to) {
    for (std::size_t i = 0; i < rs.edges.size(); ++i)
        if (rs.edges[i].from == from && rs.edges[i].to == to) return static_cast<int>(i);
    FAIL("no such split edge");
    return -1;
}

}  // namespace

TEST_CASE("vertex moves through the ping-pong cycle edges") {
    RegionSplitAutomaton rs = split_of("a6.ta");
    // Location 1 = p[x=0, 0<y<1], location 2 = q[0<x<1, y=0].
    const SplitEdge& pq = rs.edges[static_cast<std::size_t>(find_edge(rs, 1, 2))];
    const SplitEdge& qp = rs.edges[static_cast<std::size_t>(find_edge(rs, 2, 1))];

    using Moves = std::vector<std::pair<long long, int>>;
    CHECK(vertex_step(rs, pq, {0, 0}) == Moves{{1, 1}});
    CHECK(vertex_step(rs, pq, {0, 1}) == Moves{{0, 0}, {1, 1}});
    CHECK(vertex_step(rs, qp, {0, 0}) == Moves{{0, 0}, {1, 1}});
    CHECK(vertex_step(rs, qp, {1, 0}) == Moves{{0, 0}});

    CHECK(edge_orbit_matrix(rs, pq) == NatMatrix{{0, 1}, {1, 1}});
    CHECK(edge_orbit_matrix(rs, qp) == NatMatrix{{1, 1}, {1, 0}});

    // Around the cycle both ways: no vertex returns twice, so the capped
    // diagonal stays at 1 and the automaton stays meager.
    NatMatrix cycle_p = nat_product_capped(edge_orbit_matrix(rs, pq), edge_orbit_matrix(rs, qp));
    NatMatrix cycle_q = nat_product_capped(edge_orbit_matrix(rs, qp), edge_orbit_matrix(rs, pq));
    CHECK(cycle_p == NatMatrix{{1, 0}, {2, 1}});
    CHECK(cycle_q == NatMatrix{{1, 2}, {0, 1}});

    CHECK_THROWS_AS(vertex_step(rs, pq, {5, 5}), ValidationError);
}

TEST_CASE("orbit graphs compose relationally") {
    RegionSplitAutomaton rs = split_of("a6.ta");
    int pq = find_edge(rs, 1, 2), qp = find_edge(rs, 2, 1);

    OrbitGraph id = orbit_graph(rs, {}, 1);
    CHECK(id.edges == BoolMatrix{{1, 0}, {0, 1}});
    CHECK(id.source_vertices == id.target_vertices);
    CHECK_THROWS_AS(orbit_graph(rs, {}), ValidationError);

    OrbitGraph around = orbit_graph(rs, {pq, qp});
    CHECK(around.edges == bool_product(bool_of(edge_orbit_matrix(rs, rs.edges[static_cast<std::size_t>(pq)])),
                                       bool_of(edge_orbit_matrix(rs, rs.edges[static_cast<std::size_t>(qp)]))));
    CHECK(around.edges == BoolMatrix{{1, 0}, {1, 1}});

    // Composition against every composable pair, not just the cycle.
    for (std::size_t i = 0; i < rs.edges.size(); ++i)
        for (std::size_t j = 0; j < rs.edges.size(); ++j) {
            if (rs.edges[i].to != rs.edges[j].from) continue;
            OrbitGraph two = orbit_graph(rs, {static_cast<int>(i), static_cast<int>(j)});
            CHECK(two.edges == bool_product(bool_of(edge_orbit_matrix(rs, rs.edges[i])),
                                            bool_of(edge_orbit_matrix(rs, rs.edges[j]))));
        }
    CHECK_THROWS_AS(orbit_graph(rs, {pq, pq}), ValidationError);  // endpoints do not chain
}

TEST_CASE("idempotent powers in the boolean monoid") {
    BoolMatrix identity{{1, 0}, {0, 1}};
    auto [ji, pi] = idempotent_power(identity);
    CHECK(ji == 1);
    CHECK(pi == identity);

    BoolMatrix swap{{0, 1}, {1, 0}};
    auto [js, ps] = idempotent_power(swap);
    CHECK(js == 2);
    CHECK(ps == identity);

    CHECK_THROWS_AS(idempotent_power(BoolMatrix{{1, 0}}), ValidationError);
}

TEST_CASE("rotations and timings reproduce their parameters") {
    CHECK(rotation_matrix(2, 1) == BoolMatrix{{0, 1}, {1, 0}});
    CHECK(rotation_matrix(1, 0) == BoolMatrix{{1}});
    CHECK(timing_matrix(2, 1, 0) == RatMatrix{{Rat(0), Rat(1)}, {Rat(0), Rat(0)}});

    for (int k = 1; k <= 4; ++k)
        for (int l = 0; l < k; ++l)
            for (long long d = 0; d <= 2; ++d) {
                StandardFormReport rep =
                    standard_form_check(rotation_matrix(k, l), timing_matrix(k, l, d));
                REQUIRE(rep.ok);
                CHECK(rep.k == k);
                CHECK(rep.l == l);
                CHECK(rep.d == d);
                CHECK(rep.barycentric_delay == Rat(d) + Rat(l, k));
            }
}

TEST_CASE("standard form rejects deviations") {
    CHECK(standard_form_check(BoolMatrix{{1, 1}, {1, 0}}, timing_matrix(2, 1, 0)).mismatch ==
          "reachability matrix is not a bijection on vertices");
    BoolMatrix not_rotation{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
    CHECK(standard_form_check(not_rotation, timing_matrix(3, 2, 0)).mismatch ==
          "bijection is not a rotation of the canonical vertex order");
    RatMatrix wrong = timing_matrix(2, 1, 0);
    wrong[0][1] = Rat(2);
    CHECK(standard_form_check(rotation_matrix(2, 1), wrong).mismatch ==
          "timing entries deviate from the slow/fast pattern");
    RatMatrix halves = timing_matrix(2, 1, 0);
    halves[1][0] = Rat(1, 2);
    CHECK(standard_form_check(rotation_matrix(2, 1), halves).mismatch ==
          "fast delay is not a natural number");
    CHECK_FALSE(standard_form_check(BoolMatrix{}, RatMatrix{}).ok);
}

TEST_CASE("cycle steps agree with the forced barycenter delays") {
    for (const char* name : {"a5.ta", "a6.ta"}) {
        INFO(name);
        RegionSplitAutomaton rs = split_of(name);
        int checked = 0;
        for (const auto& e : rs.edges) {
            const Region& src = rs.locations[static_cast<std::size_t>(e.from)].start;
            const Region& dst = rs.locations[static_cast<std::size_t>(e.to)].start;
            if (src.dimension() != dst.dimension()) continue;
            unsigned full = (1u << (src.dimension() + 1)) - 1;
            DelaySet ds = closed_delay_set(barycenter(src, full), e.firing,
                                           rs.base(e).resets, barycenter(dst, full));
            if (!ds.singleton()) continue;
            CycleStepCheck step = check_cycle_step(rs, e, ds.lo);
            REQUIRE(step.ok);
            REQUIRE(Rat(step.d) + Rat(step.l, step.k) == ds.lo);
            ++checked;
        }
        REQUIRE(checked > 0);
    }
}

TEST_CASE("cycle step fixtures and failure modes") {
    RegionSplitAutomaton rs = split_of("a6.ta");
    const SplitEdge& pq = rs.edges[static_cast<std::size_t>(find_edge(rs, 1, 2))];
    CycleStepCheck good = check_cycle_step(rs, pq, Rat(1, 2));
    REQUIRE(good.ok);
    CHECK(good.k == 2);
    CHECK(good.l == 1);
    CHECK(good.d == 0);

    CHECK(check_cycle_step(rs, pq, Rat(1, 3)).detail ==
          "barycenter delay is not of the form d + l/k");
    CHECK(check_cycle_step(rs, pq, Rat(-1)).detail == "negative delay");
    const SplitEdge& mixed = rs.edges[static_cast<std::size_t>(find_edge(rs, 0, 1))];
    CHECK(check_cycle_step(rs, mixed, Rat(1)).detail ==
          "cycle step joins faces of different dimensions");
    // Wrong delay: the induced rotation's moves are not all realizable.
    CHECK_FALSE(check_cycle_step(rs, pq, Rat(3, 2)).ok);
}

TEST_CASE("witness search separates the fixture families") {
    for (const char* name : {"a1.ta", "a2.ta", "a4.ta", "a7.ta"}) {
        INFO(name);
        CHECK(meagerness_witness_search(split_of(name)).has_value());
    }
    for (const char* name : {"a3.ta", "a5.ta", "a6.ta"}) {
        INFO(name);
        CHECK_FALSE(meagerness_witness_search(split_of(name)).has_value());
    }
}

TEST_CASE("the doubled return of the all-reset window loop") {
    // Firing anywhere in 2<x<3 and resetting, a vertex can wait either 2 or
    // 3 time units: both integer delays return it to x=0.
    RegionSplitAutomaton rs = split_of("a1.ta");
    CHECK(edge_orbit_matrix(rs, rs.edges[0]) == NatMatrix{{2}});
    auto w = meagerness_witness_search(rs);
    REQUIRE(w.has_value());
    CHECK(w->edges == std::vector<int>{0});
    CHECK(w->power == 1);
    CHECK(w->vertex == 0);
    CHECK_THAT(w->description,
               Catch::Matchers::ContainsSubstring("returns two distinct ways"));
    CHECK_THAT(w->description, Catch::Matchers::ContainsSubstring("q[x=0]"));
}

TEST_CASE("clockless self-loops admit every delay") {
    TimedAutomaton ta = parse_automaton_text(
        "alphabet a\nlocations q\ninitial q\nfinal q\nedge q -> q : a\n");
    RegionSplitAutomaton rs = region_split(ta);
    REQUIRE(rs.locations.size() == 1);
    REQUIRE(rs.edges.size() == 1);
    CHECK(vertex_step(rs, rs.edges[0], {}) ==
          std::vector<std::pair<long long, int>>{{0, 0}, {1, 0}});
    CHECK(meagerness_witness_search(rs).has_value());
}
