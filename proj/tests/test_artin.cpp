#include "ramify/artin.hpp"

#include <doctest.h>

#include <memory>

using namespace ramify;

namespace {

FpVector e(std::size_t n, std::size_t i)
{
    FpVector v(n, 0);
    v[i] = 1;
    return v;
}

Subspace span_of(std::uint32_t p, std::size_t n, std::initializer_list<std::size_t> idx)
{
    std::vector<FpVector> v;
    for (auto i : idx)
        v.push_back(e(n, i));
    return Subspace::span(p, n, v);
}

} // namespace

TEST_CASE("radicals and nilpotency exponents")
{
    auto A = truncated_polynomial(5, 3);
    CHECK(radical(A) == span_of(5, 3, {1, 2}));
    CHECK(nilpotency_exponent(A) == 3);
    CHECK(radical(prime_field(3)).dim() == 0);
    CHECK(nilpotency_exponent(prime_field(3)) == 1);
    auto T = tensor_algebra(truncated_polynomial(2, 2), truncated_polynomial(2, 2, "z"));
    CHECK(T.dim() == 4);
    CHECK(radical(T).dim() == 3);
    CHECK(nilpotency_exponent(T) == 3);
    CHECK(radical_power(T, 2).dim() == 1);
    for (std::size_t m = 2; m <= 9; ++m)
        CHECK(nilpotency_exponent(truncated_polynomial(3, m)) == m);
    CHECK(tensor_algebra(A, prime_field(5)).dim() == A.dim());
    CHECK(nilpotency_exponent(tensor_algebra(A, prime_field(5))) == 3);
    CHECK_THROWS_AS(tensor_algebra(A, prime_field(3)), PreconditionError);
}

TEST_CASE("structure validation")
{
    // F_2 x F_2 is augmented but not local.
    FinAlgebra split(2, {"a", "b"}, {Parity(0), Parity(0)}, {{0, 0, 0, 1}, {1, 1, 1, 1}}, {1, 1}, {1, 0});
    CHECK_THROWS_AS(radical(split), PreconditionError);
    // yz = 1 breaks the augmentation.
    CHECK_THROWS_AS(FinAlgebra(2, {"1", "y"}, {Parity(0), Parity(0)}, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}},
                               {1, 0}, {1, 0}),
                    PreconditionError);
    // an odd generator squaring to 1 violates graded commutativity at odd p
    CHECK_THROWS_AS(FinAlgebra(3, {"1", "e"}, {Parity(0), Parity(1)}, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}},
                               {1, 0}, {1, 0}),
                    PreconditionError);
}

TEST_CASE("exterior algebra signs")
{
    auto L = exterior_algebra(3);
    auto T = tensor_algebra(L, exterior_algebra(3, "f"));
    CHECK(T.dim() == 4);
    // e f = - f e
    auto ef = T.multiply(T.basis_vector(1), T.basis_vector(2));
    auto fe = T.multiply(T.basis_vector(2), T.basis_vector(1));
    for (std::size_t i = 0; i < 4; ++i)
        CHECK((ef[i] + fe[i]) % 3 == 0);
    CHECK(nilpotency_exponent(T) == 3);
}

TEST_CASE("socle series of truncated polynomial algebras")
{
    for (std::uint32_t p : {2u, 3u})
        for (std::size_t m = 2; m <= 9; ++m) {
            auto A = std::make_shared<const FinAlgebra>(truncated_polynomial(p, m));
            auto M = regular_module(A);
            auto S = socle_series(M);
            REQUIRE(S.length() == m);
            for (std::size_t k = 0; k <= m; ++k) {
                std::vector<FpVector> v;
                for (std::size_t i = m - k; i < m; ++i)
                    v.push_back(e(m, i));
                CHECK(S.levels[k] == Subspace::span(p, m, v));
                if (k + 1 <= m)
                    CHECK(S.levels[k].contains(radical_times(M, S.levels[k + 1])));
            }
        }
}

TEST_CASE("socle series edge cases")
{
    auto A = std::make_shared<const FinAlgebra>(truncated_polynomial(3, 3));
    auto Z = socle_series(zero_module(A));
    CHECK(Z.length() == 0);
    // J as a module, generated by y
    std::vector<FpVector> gen{e(3, 1)};
    auto J = regular_module(A).submodule(gen);
    CHECK(J.dim() == 2);
    CHECK(socle_series(J).dimensions() == std::vector<std::size_t>{0, 1, 2});
    // the simple module: J^2 acting on the regular module has image y^2
    std::vector<FpVector> top{e(3, 2)};
    CHECK(socle_series(regular_module(A).submodule(top)).dimensions() == std::vector<std::size_t>{0, 1});
    auto T = std::make_shared<const FinAlgebra>(tensor_algebra(truncated_polynomial(2, 2), truncated_polynomial(2, 2, "z")));
    auto S = socle_series(free_module(T, 2));
    CHECK(S.dimensions() == std::vector<std::size_t>{0, 2, 6, 8});
}

TEST_CASE("Nakayama")
{
    auto A = std::make_shared<const FinAlgebra>(truncated_polynomial(5, 2));
    auto v = nakayama_check(regular_module(A));
    CHECK(v.module_dim == 2);
    CHECK(v.top_dim == 1);
    CHECK(v.consistent);
    auto z = nakayama_check(zero_module(A));
    CHECK(z.module_dim == 0);
    CHECK(z.top_dim == 0);
    CHECK(z.consistent);
    auto B = std::make_shared<const FinAlgebra>(truncated_polynomial(3, 3));
    std::vector<FpVector> gen{e(3, 1)};
    CHECK(nakayama_check(regular_module(B).submodule(gen)).top_dim == 1);
    for (std::uint32_t p : {2u, 3u}) {
        auto sweep = nakayama_sweep(std::make_shared<const FinAlgebra>(truncated_polynomial(p, 4)), 100, 16, p);
        CHECK(sweep.trials == 100);
        CHECK(sweep.violations == 0);
        CHECK(sweep.max_module_dim <= 16);
    }
}

TEST_CASE("Betti numbers")
{
    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::size_t m = 2; m <= 5; ++m)
            CHECK(betti_numbers(truncated_polynomial(p, m), 10) == std::vector<std::size_t>(11, 1));
    auto field = betti_numbers(prime_field(3), 4);
    CHECK(field == std::vector<std::size_t>{1, 0, 0, 0, 0});
    auto T = tensor_algebra(truncated_polynomial(2, 2), truncated_polynomial(2, 2, "z"));
    CHECK(betti_numbers(T, 10) == std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
    for (std::uint64_t seed : {1u, 2u, 3u})
        CHECK(betti_numbers(T, 6, seed) == betti_numbers(T, 6));
}

TEST_CASE("resolution of F_p[y]/(y^m) alternates y and y^{m-1}")
{
    const std::size_t m = 4;
    auto r = minimal_resolution(truncated_polynomial(3, m), 4);
    for (std::size_t s = 1; s <= 4; ++s) {
        REQUIRE(r.generators[s].size() == 1);
        const auto& g = r.generators[s][0];
        std::size_t order = 0;
        while (order < m && g[order] == 0)
            ++order;
        CHECK(order == (s % 2 ? 1 : m - 1));
    }
}
