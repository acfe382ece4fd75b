#include <catch2/catch_amalgamated.hpp>

#include <tband/metric.hpp>

#include <random>
#include <vector>

using namespace tband;

namespace {

TimedWord random_word(std::mt19937& rng, int max_len = 6, int letters = 2,
                      bool allow_zero = true) {
    std::uniform_int_distribution<int> len(0, max_len), letter(0, letters - 1);
    std::uniform_int_distribution<int> num(allow_zero ? 0 : 1, 5), den(1, 2);
    TimedWord w;
    Rat t = allow_zero ? Rat(0) : Rat(num(rng), den(rng));
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
        w.events.push_back(Event{std::string(1, char('a' + letter(rng))), t});
        t += Rat(num(rng), den(rng));
    }
    return w;
}

}  // namespace

TEST_CASE("worked two-word example: directed 0.2 and 0.3, symmetric 0.3") {
    TimedWord u = parse_timed_word("a@0.7 b@1.8 a@3 b@4 a@4.1");
    TimedWord v = parse_timed_word("a@0.6 a@1 b@1.7 a@3 a@4.1 b@4.2");
    CHECK(directed_distance(u, v) == ExtRat::of(Rat(1, 5)));
    CHECK(directed_distance(v, u) == ExtRat::of(Rat(3, 10)));
    CHECK(distance(u, v) == ExtRat::of(Rat(3, 10)));
}

TEST_CASE("distance degenerates on reordered simultaneous letters") {
    TimedWord w = parse_timed_word("a@1 b@1");
    TimedWord v = parse_timed_word("b@1 b@1 a@1");
    CHECK(w.events != v.events);
    CHECK(distance(w, v) == ExtRat::of(Rat(0)));
}

TEST_CASE("unmatched letters make the distance infinite") {
    TimedWord u = parse_timed_word("a@1");
    TimedWord v = parse_timed_word("b@1");
    CHECK(distance(u, v) == ExtRat::inf());
    CHECK(directed_distance(TimedWord{}, u) == ExtRat::of(Rat(0)));
    CHECK(directed_distance(u, TimedWord{}) == ExtRat::inf());
}

TEST_CASE("pseudo-metric axioms hold on random words") {
    std::mt19937 rng(777);
    for (int it = 0; it < 1000; ++it) {
        TimedWord a = random_word(rng), b = random_word(rng), c = random_word(rng);
        REQUIRE(distance(a, a) == ExtRat::of(Rat(0)));
        REQUIRE(distance(a, b) == distance(b, a));
        REQUIRE(distance(a, b) >= ExtRat::of(Rat(0)));
        // Triangle inequality, with infinity absorbing.
        REQUIRE(distance(a, c) <= distance(a, b) + distance(b, c));
    }
}

TEST_CASE("distance zero coincides with equal zero-class keys") {
    std::mt19937 rng(778);
    int zeros = 0;
    for (int it = 0; it < 1000; ++it) {
        TimedWord a = random_word(rng, 4), b = random_word(rng, 4);
        bool d0 = distance(a, b) == ExtRat::of(Rat(0));
        bool k0 = zero_class_key(a) == zero_class_key(b);
        REQUIRE(d0 == k0);
        zeros += d0;
    }
    CHECK(zeros > 0);  // the generator does produce coinciding pairs
}

TEST_CASE("on 0-free words the distance separates points") {
    std::mt19937 rng(779);
    for (int it = 0; it < 1000; ++it) {
        TimedWord a = random_word(rng, 5, 2, false), b = random_word(rng, 5, 2, false);
        // Strictly increasing timestamps: dedupe times to make them 0-free.
        auto strictify = [](TimedWord w) {
            TimedWord out;
            for (const auto& e : w.events)
                if (out.events.empty() || e.time > out.events.back().time)
                    out.events.push_back(e);
            return out;
        };
        a = strictify(a);
        b = strictify(b);
        bool zero = distance(a, b) == ExtRat::of(Rat(0));
        REQUIRE(zero == (a == b));
    }
}

TEST_CASE("upsilon counts distance-0 classes") {
    std::vector<TimedWord> s = {
        parse_timed_word("a@1 b@1"),
        parse_timed_word("b@1 a@1 a@1"),  // same class as the first
        parse_timed_word("a@1"),
        parse_timed_word("a@0 a@1"),      // differs only at time 0: new class
        TimedWord{},
    };
    CHECK(upsilon(s) == 4);
    CHECK(upsilon({}) == 0);

    // Cross-check on random sets: upsilon equals the number of classes under
    // pairwise distance-0, and any largest 0-separated subset has that size.
    std::mt19937 rng(780);
    for (int it = 0; it < 200; ++it) {
        std::vector<TimedWord> set;
        std::uniform_int_distribution<int> n(0, 6);
        int k = n(rng);
        for (int i = 0; i < k; ++i) set.push_back(random_word(rng, 4));
        std::vector<TimedWord> reps;
        for (const auto& w : set) {
            bool fresh = true;
            for (const auto& r : reps)
                if (distance(w, r) == ExtRat::of(Rat(0))) fresh = false;
            if (fresh) reps.push_back(w);
        }
        REQUIRE(upsilon(set) == reps.size());
    }
}

TEST_CASE("upsilon against 0-elimination counts") {
    // Lower bound: distinct 0-eliminations are 0-separated.
    // Upper bound: each 0-elimination image splits into at most one class per
    // time-0 letter set, i.e. at most 2^|alphabet| classes -- and the empty
    // time-0 set is a real possibility, so the factor cannot be lowered to
    // 2^|alphabet| - 1: {a@1} and {a@0 a@1} share one image yet form two
    // classes over a one-letter alphabet.
    TimedWord u = parse_timed_word("a@1");
    TimedWord v = parse_timed_word("a@0 a@1");
    REQUIRE(nu_word(u) == nu_word(v));
    REQUIRE(upsilon({u, v}) == 2);  // exceeds #images * (2^1 - 1) = 1

    std::mt19937 rng(781);
    for (int it = 0; it < 1000; ++it) {
        std::vector<TimedWord> set;
        std::uniform_int_distribution<int> n(0, 6);
        int k = n(rng);
        for (int i = 0; i < k; ++i) set.push_back(random_word(rng, 4));
        std::set<ZeroFreeWord> images;
        for (const auto& w : set) images.insert(nu_word(w));
        std::size_t ups = upsilon(set);
        REQUIRE(images.size() <= ups);
        REQUIRE(ups <= images.size() * 4);  // 2^|{a,b}|
    }
}

TEST_CASE("eps-capacity: exact search and greedy lower bound") {
    std::vector<TimedWord> s = {
        parse_timed_word("a@1"),
        parse_timed_word("a@2"),
        parse_timed_word("a@3"),
        parse_timed_word("a@1 b@1"),
    };
    // Distances: a@1..a@3 pairwise 1 or 2; the b word is infinitely far.
    auto exact = eps_capacity(s, Rat(1), CapacityMode::Exact);
    CHECK(exact.exact);
    CHECK(exact.count == 3);  // {a@1, a@3, a@1 b@1}
    auto loose = eps_capacity(s, Rat(1, 2), CapacityMode::Exact);
    CHECK(loose.count == 4);

    std::mt19937 rng(782);
    for (int it = 0; it < 200; ++it) {
        std::vector<TimedWord> set;
        std::uniform_int_distribution<int> n(0, 7), eps_num(0, 3);
        int k = n(rng);
        for (int i = 0; i < k; ++i) set.push_back(random_word(rng, 3));
        Rat eps(eps_num(rng), 2);
        auto ex = eps_capacity(set, eps, CapacityMode::Exact);
        auto gr = eps_capacity(set, eps, CapacityMode::Greedy);
        REQUIRE(gr.count <= ex.count);
        REQUIRE(ex.exact);
        REQUIRE_FALSE(gr.exact);
        // Both witnesses must really be eps-separated (over class reps).
        std::set<ZeroClassKey> seen;
        std::vector<TimedWord> reps;
        for (const auto& w : set)
            if (seen.insert(zero_class_key(w)).second)
                reps.push_back(key_representative(zero_class_key(w)));
        for (const auto& witness : {ex.witness, gr.witness})
            for (std::size_t i = 0; i < witness.size(); ++i)
                for (std::size_t j = i + 1; j < witness.size(); ++j)
                    REQUIRE(distance(reps[witness[i]], reps[witness[j]]) > ExtRat::of(eps));
    }
}

TEST_CASE("eps-capacity budget is enforced") {
    // A big all-pairwise-conflicting clique makes the search branch a lot.
    std::vector<TimedWord> s;
    for (int i = 0; i < 24; ++i) {
        TimedWord w;
        w.events.push_back(Event{"a", Rat(i, 24)});
        s.push_back(w);
    }
    CHECK_THROWS_AS(eps_capacity(s, Rat(2), CapacityMode::Exact, 3), BudgetError);
}

TEST_CASE("greedy eps-net covers and separates") {
    std::mt19937 rng(783);
    for (int it = 0; it < 200; ++it) {
        std::vector<TimedWord> set;
        std::uniform_int_distribution<int> n(0, 7);
        int k = n(rng);
        for (int i = 0; i < k; ++i) set.push_back(random_word(rng, 3));
        Rat eps(1, 2);
        auto net = eps_net_greedy(set, eps);
        for (const auto& w : set) {
            bool covered = false;
            for (const auto& c : net)
                if (distance(w, c) <= ExtRat::of(eps)) covered = true;
            REQUIRE(covered);
        }
        for (std::size_t i = 0; i < net.size(); ++i)
            for (std::size_t j = i + 1; j < net.size(); ++j)
                REQUIRE(distance(net[i], net[j]) > ExtRat::of(eps));
    }
}
