#include <catch2/catch_amalgamated.hpp>

#include "silt/poly.hpp"

using namespace silt;

namespace {

template <class F>
Poly<F> poly(F f, std::initializer_list<long long> asc) {
    std::vector<typename F::Elem> c;
    for (auto v : asc) c.push_back(f.from_int(v));
    return Poly<F>(f, std::move(c));
}

}  // namespace

TEST_CASE("char_poly via Berkowitz", "[poly]") {
    RationalField q;
    auto I3 = Matrix<RationalField>::identity(q, 3);
    CHECK(char_poly(I3) == poly(q, {-1, 3, -3, 1}));  // (x-1)^3

    // companion matrix of x^3 + 2x + 5
    Matrix<RationalField> c(q, 3, 3);
    c(0, 2) = q.from_int(-5);
    c(1, 0) = q.one();
    c(1, 2) = q.from_int(-2);
    c(2, 1) = q.one();
    CHECK(char_poly(c) == poly(q, {5, 2, 0, 1}));

    Matrix<RationalField> nil(q, 2, 2);
    nil(0, 1) = q.one();
    CHECK(char_poly(nil) == poly(q, {0, 0, 1}));

    PrimeField f2(2);
    auto j = Matrix<PrimeField>::identity(f2, 2);
    j(0, 1) = f2.one();
    CHECK(char_poly(j) == poly(f2, {1, 0, 1}));  // (x-1)^2 = x^2 + 1 over F2
}

TEST_CASE("elem_symmetric reads char poly coefficients", "[poly]") {
    RationalField q;
    Matrix<RationalField> d(q, 3, 3);
    d(0, 0) = q.from_int(1);
    d(1, 1) = q.from_int(2);
    d(2, 2) = q.from_int(3);
    auto chi = char_poly(d);
    CHECK(q.eq(elem_symmetric(chi, 3, 1), q.from_int(6)));
    CHECK(q.eq(elem_symmetric(chi, 3, 2), q.from_int(11)));
    CHECK(q.eq(elem_symmetric(chi, 3, 3), q.from_int(6)));
}

TEST_CASE("min_poly", "[poly]") {
    RationalField q;
    Matrix<RationalField> d(q, 3, 3);
    d(0, 0) = q.from_int(1);
    d(1, 1) = q.from_int(1);
    d(2, 2) = q.from_int(2);
    CHECK(min_poly(d) == poly(q, {2, -3, 1}));  // (x-1)(x-2)

    auto z = Matrix<RationalField>(q, 2, 2);
    CHECK(min_poly(z) == poly(q, {0, 1}));
    CHECK(min_poly(Matrix<RationalField>::identity(q, 4)) == poly(q, {-1, 1}));
}

TEST_CASE("poly gcd and xgcd", "[poly]") {
    PrimeField f(7);
    auto a = poly(f, {0, 1}) * poly(f, {1, 1});  // x(x+1)
    auto b = poly(f, {0, 1}) * poly(f, {2, 1});  // x(x+2)
    CHECK(poly_gcd(a, b) == poly(f, {0, 1}));
    Poly<PrimeField> g(f), s(f), t(f);
    poly_xgcd(a, b, g, s, t);
    CHECK(g == poly(f, {0, 1}));
    CHECK(s * a + t * b == g);
}

TEST_CASE("poly_radical over F2", "[poly]") {
    PrimeField f2(2);
    auto x = poly(f2, {0, 1});
    auto x1 = poly(f2, {1, 1});
    auto irr = poly(f2, {1, 1, 1});  // x^2+x+1
    CHECK(poly_radical(x * x * x1) == x * x1);
    CHECK(poly_radical(irr * irr) == irr);  // derivative vanishes -> p-th root path
    CHECK(poly_radical(irr) == irr);
}

TEST_CASE("coprime_split", "[poly]") {
    PrimeField f2(2);
    auto x = poly(f2, {0, 1});
    auto x1 = poly(f2, {1, 1});
    auto irr = poly(f2, {1, 1, 1});

    auto s = coprime_split(x * x1);
    REQUIRE(s.has_value());
    CHECK(poly_gcd(s->first, s->second).deg() == 0);
    CHECK((s->first * s->second).monic() == (x * x1).monic());

    CHECK_FALSE(coprime_split(x * x).has_value());
    CHECK_FALSE(coprime_split(irr).has_value());
    CHECK_FALSE(coprime_split(irr * irr).has_value());

    auto mixed = coprime_split(irr * x * x);  // multiplicity carried to the right factor
    REQUIRE(mixed.has_value());
    CHECK(poly_gcd(mixed->first, mixed->second).deg() == 0);
    CHECK((mixed->first * mixed->second) == (irr * x * x).monic());

    // equal-degree case over F3: x^2+1 and x^2+x+2 are distinct irreducibles
    PrimeField f3(3);
    auto p1 = poly(f3, {1, 0, 1});
    auto p2 = poly(f3, {2, 1, 1});
    auto eq = coprime_split(p1 * p2);
    REQUIRE(eq.has_value());
    CHECK(poly_gcd(eq->first, eq->second).deg() == 0);
    CHECK((eq->first * eq->second) == (p1 * p2).monic());
}
