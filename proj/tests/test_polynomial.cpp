#include <catch2/catch_amalgamated.hpp>

#include <tband/polynomial.hpp>

#include <complex>
#include <random>

using namespace tband;

namespace {

Poly make_poly(std::initializer_list<long long> coeffs) {
    Poly p;
    for (long long c : coeffs) p.c.push_back(c);
    p.normalize();
    return p;
}

Poly random_poly(std::mt19937& rng, int max_deg, int max_coeff) {
    std::uniform_int_distribution<int> deg(-1, max_deg), coeff(-max_coeff, max_coeff);
    Poly p;
    int d = deg(rng);
    for (int i = 0; i <= d; ++i) p.c.push_back(coeff(rng));
    p.normalize();
    return p;
}

}  // namespace

TEST_CASE("polynomial ring basics") {
    Poly a = make_poly({1, 2});       // 1 + 2z
    Poly b = make_poly({0, 0, 3});    // 3z^2
    CHECK((a + b) == make_poly({1, 2, 3}));
    CHECK((a - a).is_zero());
    CHECK((a * b) == make_poly({0, 0, 3, 6}));
    CHECK((-a) == make_poly({-1, -2}));
    CHECK(Poly::constant(0).is_zero());
    CHECK(Poly::monomial(5, 3) == make_poly({0, 0, 0, 5}));
    CHECK(Poly::zero().degree() == -1);
    CHECK(poly_string(make_poly({1, 0, -10, 0, 33, 0, -36}), "zeta") ==
          "1 - 10*zeta^2 + 33*zeta^4 - 36*zeta^6");
    CHECK(poly_string(Poly::zero()) == "0");
    CHECK(poly_string(make_poly({0, -1})) == "-z");
}

TEST_CASE("exact division inverts multiplication") {
    std::mt19937 rng(31337);
    for (int it = 0; it < 1000; ++it) {
        Poly a = random_poly(rng, 4, 5);
        Poly b = random_poly(rng, 3, 5);
        if (b.is_zero()) continue;
        Poly prod = a * b;
        if (prod.is_zero()) continue;
        CHECK(divide_exact(prod, b) == a);
    }
    CHECK_THROWS_AS(divide_exact(make_poly({1, 1}), make_poly({0, 2})), Error);
    CHECK_THROWS_AS(divide_exact(make_poly({1}), Poly::zero()), Error);
}

TEST_CASE("quasi-polynomials scale to and from integer exponents") {
    QuasiPoly q;
    q.add_term(Rat(0), 1);
    q.add_term(Rat(1, 2), -2);
    q.add_term(Rat(1), -3);
    q.add_term(Rat(3, 2), 6);
    CHECK(quasi_scale(q) == 2);
    Poly p = quasi_to_poly(q, 2);
    CHECK(p == make_poly({1, -2, -3, 6}));
    CHECK(poly_to_quasi(p, 2) == q);
    CHECK(quasi_string(q) == "1 - 2*z^(1/2) - 3*z + 6*z^(3/2)");
    CHECK_THROWS_AS(quasi_to_poly(q, 3), Error);

    QuasiPoly sum = q + q;
    CHECK(sum.terms.at(Rat(1, 2)) == -4);
    QuasiPoly cancel;
    cancel.add_term(Rat(1, 2), 2);
    CHECK((q + cancel).terms.count(Rat(1, 2)) == 0);

    // Product respects the scaled polynomial product.
    QuasiPoly r;
    r.add_term(Rat(0), 1);
    r.add_term(Rat(1, 2), 1);
    Poly lhs = quasi_to_poly(q * r, 2);
    CHECK(lhs == p * make_poly({1, 1}));
}

TEST_CASE("cofactor and fraction-free determinants agree") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> size(1, 5);
    for (int it = 0; it < 1000; ++it) {
        std::size_t n = static_cast<std::size_t>(size(rng));
        PolyMatrix m(n, std::vector<Poly>(n));
        for (auto& row : m)
            for (auto& cell : row) cell = random_poly(rng, 2, 3);
        Poly a = det_cofactor(m);
        Poly b = det_bareiss(m);
        REQUIRE(a == b);
    }
}

TEST_CASE("determinant fixtures") {
    // Diagonal and permutation cases keep the sign conventions honest.
    PolyMatrix diag = {{make_poly({1, -3}), Poly::zero()},
                       {Poly::zero(), make_poly({1, -3})}};
    CHECK(det_cofactor(diag) == make_poly({1, -6, 9}));
    CHECK(det_bareiss(diag) == make_poly({1, -6, 9}));

    PolyMatrix swapped = {{Poly::zero(), Poly::constant(1)},
                          {Poly::constant(1), Poly::zero()}};
    CHECK(det_cofactor(swapped) == Poly::constant(-1));
    CHECK(det_bareiss(swapped) == Poly::constant(-1));

    PolyMatrix singular = {{Poly::constant(1), Poly::constant(1)},
                           {Poly::constant(1), Poly::constant(1)}};
    CHECK(det_cofactor(singular).is_zero());
    CHECK(det_bareiss(singular).is_zero());

    CHECK(det_cofactor({}) == Poly::constant(1));
    CHECK(det_bareiss({}) == Poly::constant(1));
}

TEST_CASE("sparse 5x5 block factors through both determinant routes") {
    // Hand-checked: expanding along the first column and then the (1-3z)
    // pivot leaves a lower-triangular minor, so det = (1-3z)^2.
    auto z = [](long long k) { return make_poly({0, k}); };
    const Poly one = Poly::constant(1);
    const Poly zero = Poly::zero();
    PolyMatrix m = {
        {one, -z(3), zero, -z(3), -z(2)},
        {zero, make_poly({1, -3}), zero, -z(3), -z(2)},
        {zero, zero, one, zero, zero},
        {zero, zero, -z(2), make_poly({1, -3}), zero},
        {zero, zero, -z(2), -z(3), one},
    };
    Poly want = make_poly({1, -6, 9});
    Poly via_cofactor = det_cofactor(m);
    Poly via_bareiss = det_bareiss(m);
    CHECK(via_cofactor == want);
    CHECK(via_bareiss == want);
    CHECK(via_cofactor == via_bareiss);
}

TEST_CASE("evaluation matches coefficients") {
    Poly p = make_poly({1, 0, -10, 0, 33, 0, -36});
    std::complex<long double> x(0.5L, 0.0L);
    auto v = poly_eval(p, x);
    // 1 - 10/4 + 33/16 - 36/64 = 0
    CHECK(std::abs(v) < 1e-15L);
    CHECK(poly_eval(make_poly({1, -2}), std::complex<long double>(0.5L, 0)) ==
          std::complex<long double>(0, 0));
}
