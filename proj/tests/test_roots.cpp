#include <catch2/catch_amalgamated.hpp>

#include <tband/polynomial.hpp>
#include <tband/roots.hpp>

#include <algorithm>
#include <cmath>

using namespace tband;

namespace {

QuasiPoly quasi(std::initializer_list<std::pair<Rat, long long>> terms) {
    QuasiPoly q;
    for (const auto& [e, c] : terms) q.add_term(e, c);
    return q;
}

Poly make_poly(std::initializer_list<long long> coeffs) {
    Poly p;
    for (long long c : coeffs) p.c.push_back(c);
    p.normalize();
    return p;
}

}  // namespace

TEST_CASE("doubling chain has growth exponent 1") {
    GrowthResult g = smallest_root(quasi({{Rat(0), 1}, {Rat(1), -2}}));
    REQUIRE(g.has_root);
    CHECK(g.scale_m == 1);
    CHECK(g.z0_modulus == Catch::Approx(0.5).margin(1e-12));
    CHECK(g.beta == Catch::Approx(1.0).margin(1e-12));
    CHECK(g.cross_check == "ok");
}

TEST_CASE("period-five doubling gives exponent 0.2") {
    GrowthResult g = smallest_root(quasi({{Rat(0), 1}, {Rat(5), -2}}));
    REQUIRE(g.has_root);
    CHECK(g.roots.size() == 5);
    CHECK(g.z0_modulus == Catch::Approx(std::pow(0.5, 0.2)).margin(1e-10));
    CHECK(g.beta == Catch::Approx(0.2).margin(1e-12));
    CHECK(g.cross_check == "ok");
}

TEST_CASE("half-integer exponents are rescaled before solving") {
    // 1 - 2 z^(1/2) - 3 z + 6 z^(3/2) = (1 - 2 zeta)(1 - 3 zeta^2) with
    // z = zeta^2; the smallest zeta-root 1/2 gives z0 = 1/4.
    GrowthResult g = smallest_root(
        quasi({{Rat(0), 1}, {Rat(1, 2), -2}, {Rat(1), -3}, {Rat(3, 2), 6}}));
    REQUIRE(g.has_root);
    CHECK(g.scale_m == 2);
    CHECK(g.zeta_polynomial == make_poly({1, -2, -3, 6}));
    CHECK(g.z0_modulus == Catch::Approx(0.25).margin(1e-10));
    CHECK(g.beta == Catch::Approx(2.0).margin(1e-9));
    CHECK(g.cross_check == "ok");
}

TEST_CASE("constant characteristic means no growth") {
    GrowthResult g = smallest_root(quasi({{Rat(0), 1}}));
    CHECK_FALSE(g.has_root);
    CHECK(g.beta == 0.0);
    CHECK(g.cross_check == "trivial");
}

TEST_CASE("ties in modulus prefer the positive real root") {
    // 1 - z^4 has all four roots on the unit circle.
    GrowthResult g = smallest_root(quasi({{Rat(0), 1}, {Rat(4), -1}}));
    REQUIRE(g.has_root);
    CHECK(g.zeta0.real() == Catch::Approx(1.0).margin(1e-9));
    CHECK(std::fabs(static_cast<double>(g.zeta0.imag())) < 1e-9);
    CHECK(g.beta == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("all roots are located with small residuals") {
    Poly p = make_poly({1, -2}) * make_poly({1, -3}) * make_poly({1, 1});
    auto roots = find_roots(p);
    REQUIRE(roots.size() == 3);
    std::vector<double> mods;
    for (const auto& r : roots) {
        CHECK(r.residual <= 1e-12);
        mods.push_back(static_cast<double>(r.modulus));
    }
    std::sort(mods.begin(), mods.end());
    CHECK(mods[0] == Catch::Approx(1.0 / 3).margin(1e-9));
    CHECK(mods[1] == Catch::Approx(0.5).margin(1e-9));
    CHECK(mods[2] == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("roots at zero are split off exactly") {
    auto roots = find_roots(make_poly({0, -1, 1}));  // z(z - 1)
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].modulus == 0.0L);
    CHECK(roots[1].modulus == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("unreachable tolerance raises a convergence error") {
    CHECK_THROWS_AS(smallest_root(quasi({{Rat(0), 1}, {Rat(7), -2}, {Rat(3), 1}}), 1e-300),
                    ConvergenceError);
    CHECK_THROWS_WITH(smallest_root(quasi({{Rat(0), 1}, {Rat(7), -2}, {Rat(3), 1}}), 1e-300),
                      Catch::Matchers::ContainsSubstring("residual tolerance"));
}

TEST_CASE("vanishing constant term is rejected") {
    CHECK_THROWS_AS(smallest_root(quasi({{Rat(1), 1}})), Error);
    CHECK_THROWS_AS(find_roots(Poly::zero()), Error);
}

TEST_CASE("real-axis scan fixtures") {
    auto r = first_real_root(make_poly({1, -2}));
    REQUIRE(r.has_value());
    CHECK(static_cast<double>(*r) == Catch::Approx(0.5).margin(1e-9));

    // Even multiplicity: no sign change, found via the |p| minimum.
    auto dbl = first_real_root(make_poly({1, -6, 9}));
    REQUIRE(dbl.has_value());
    CHECK(static_cast<double>(*dbl) == Catch::Approx(1.0 / 3).margin(1e-3));

    CHECK_FALSE(first_real_root(make_poly({1, 0, 1})).has_value());
    CHECK_FALSE(first_real_root(make_poly({5})).has_value());
}
