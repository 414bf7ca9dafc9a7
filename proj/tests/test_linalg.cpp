#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "silt/linalg.hpp"

using namespace silt;

namespace {

template <class F>
Matrix<F> mat(F f, std::size_t r, std::size_t c, std::initializer_list<long long> vals) {
    Matrix<F> m(f, r, c);
    auto it = vals.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(*it++);
    return m;
}

template <class F>
Matrix<F> random_mat(F f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Matrix<F> m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(static_cast<long long>(rng() % 7) - 3);
    return m;
}

}  // namespace

TEMPLATE_TEST_CASE("solve_linear spec cases", "[linalg]", PrimeField, RationalField) {
    auto make_field = [] {
        if constexpr (TestType::is_rational)
            return TestType{};
        else
            return TestType{5};
    };
    auto f = make_field();

    auto I2 = Matrix<TestType>::identity(f, 2);
    auto b = mat(f, 2, 1, {1, 0});
    auto x = solve_linear(I2, b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    Matrix<TestType> Z(f, 2, 2);
    CHECK_FALSE(solve_linear(Z, b).has_value());
}

TEST_CASE("solve_linear over F2 derived case", "[linalg]") {
    PrimeField f(2);
    auto a = mat(f, 2, 2, {1, 1, 0, 1});
    auto b = mat(f, 2, 1, {0, 1});
    auto x = solve_linear(a, b);
    REQUIRE(x.has_value());
    CHECK(*x == mat(f, 2, 1, {1, 1}));
    CHECK(a * *x == b);
}

TEST_CASE("nullspace spec cases", "[linalg]") {
    RationalField q;
    CHECK(nullspace(Matrix<RationalField>::identity(q, 3)).cols() == 0);
    CHECK(nullspace(Matrix<RationalField>(q, 2, 3)).cols() == 3);

    auto a = mat(q, 1, 3, {1, 2, 3});
    auto n = nullspace(a);
    REQUIRE(n.cols() == 2);
    CHECK((a * n).is_zero());
    CHECK(rank(n) == 2);
}

TEMPLATE_TEST_CASE("rank-nullity and exact solve on random matrices", "[linalg]", PrimeField,
                   RationalField) {
    auto make_field = [] {
        if constexpr (TestType::is_rational)
            return TestType{};
        else
            return TestType{3};
    };
    auto f = make_field();
    std::mt19937_64 rng(20240901);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = rng() % 6, c = rng() % 6;
        auto a = random_mat(f, r, c, rng);
        auto n = nullspace(a);
        CHECK(rank(a) + n.cols() == c);
        CHECK((a * n).is_zero());
        CHECK(rank(n) == n.cols());

        auto xs = random_mat(f, c, 2, rng);
        auto b = a * xs;
        auto x = solve_linear(a, b);
        REQUIRE(x.has_value());
        CHECK(a * *x == b);
    }
}

TEST_CASE("rational arithmetic is exact with large intermediates", "[linalg]") {
    RationalField q;
    // Hilbert-like matrix: notorious for floating point, trivial for exact arithmetic
    std::size_t n = 6;
    Matrix<RationalField> h(q, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = mpq_class(1, static_cast<long>(i + j + 1));
    REQUIRE(rank(h) == n);
    auto inv = inverse(h);
    REQUIRE(inv.has_value());
    CHECK(*inv * h == Matrix<RationalField>::identity(q, n));
}

TEST_CASE("field parsing round trips", "[field]") {
    PrimeField f5(5);
    CHECK(f5.parse("7") == 2);
    CHECK(f5.parse("-1") == 4);
    CHECK(f5.parse("1/2") == 3);  // 2 * 3 = 6 = 1 mod 5
    CHECK(f5.to_string(f5.parse("3")) == "3");

    RationalField q;
    CHECK(q.to_string(q.parse("-4/6")) == "-2/3");
    CHECK(q.eq(q.parse("2/4"), mpq_class(1, 2)));
    CHECK_THROWS_AS(PrimeField(6), Error);
}

TEST_CASE("span utilities", "[linalg]") {
    RationalField q;
    auto a = mat(q, 3, 2, {1, 0, 0, 1, 0, 0});
    auto b = mat(q, 3, 2, {0, 0, 1, 0, 0, 1});
    auto s = span_sum(a, b);
    CHECK(rank(s) == 3);
    auto i = span_intersect(a, b);
    REQUIRE(i.cols() == 1);
    CHECK(span_contains(a, i));
    CHECK(span_contains(b, i));
    CHECK(span_contains(mat(q, 3, 1, {0, 1, 0}), i));
}
