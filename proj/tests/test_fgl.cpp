#include "ramify/fgl.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace ramify;

namespace {

// Dense trivariate polynomials mod m, truncated to total degree < M.
struct Tri {
    std::size_t M;
    std::uint64_t m;
    std::vector<std::uint64_t> c;

    Tri(std::size_t M_, std::uint64_t m_) : M(M_), m(m_), c(M_ * M_ * M_, 0) {}
    std::uint64_t& at(std::size_t i, std::size_t j, std::size_t k) { return c[(i * M + j) * M + k]; }
    std::uint64_t at(std::size_t i, std::size_t j, std::size_t k) const { return c[(i * M + j) * M + k]; }
};

Tri tri_mul(const Tri& a, const Tri& b)
{
    Tri out(a.M, a.m);
    for (std::size_t i = 0; i < a.M; ++i)
        for (std::size_t j = 0; i + j < a.M; ++j)
            for (std::size_t k = 0; i + j + k < a.M; ++k) {
                if (!a.at(i, j, k))
                    continue;
                for (std::size_t u = 0; i + j + k + u < a.M; ++u)
                    for (std::size_t v = 0; i + j + k + u + v < a.M; ++v)
                        for (std::size_t w = 0; i + j + k + u + v + w < a.M; ++w) {
                            auto prod = static_cast<unsigned __int128>(a.at(i, j, k)) * b.at(u, v, w) % a.m;
                            auto& t = out.at(i + u, j + v, k + w);
                            t = static_cast<std::uint64_t>((t + prod) % a.m);
                        }
            }
    return out;
}

// F(a, b) from the law's coefficient table.
Tri substitute(const BivariateSeries& law, const Tri& a, const Tri& b)
{
    const std::size_t M = a.M;
    Tri out(M, a.m);
    std::vector<Tri> apow{Tri(M, a.m)}, bpow{Tri(M, a.m)};
    apow[0].at(0, 0, 0) = 1;
    bpow[0].at(0, 0, 0) = 1;
    for (std::size_t e = 1; e < M; ++e) {
        apow.push_back(tri_mul(apow.back(), a));
        bpow.push_back(tri_mul(bpow.back(), b));
    }
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = 0; i + j < M; ++j) {
            std::uint64_t c = law.at(i, j).integer().get_ui();
            if (!c)
                continue;
            Tri term = tri_mul(apow[i], bpow[j]);
            for (std::size_t t = 0; t < out.c.size(); ++t)
                out.c[t] = static_cast<std::uint64_t>((out.c[t] + static_cast<unsigned __int128>(c) * term.c[t]) % a.m);
        }
    return out;
}

TruncatedSeries random_series(const Context& ctx, std::size_t M, std::mt19937_64& rng)
{
    std::vector<Coefficient> c{Coefficient::zero(ctx)};
    for (std::size_t i = 1; i < M; ++i)
        c.emplace_back(static_cast<long>(rng() % ctx.modulus()), ctx);
    return TruncatedSeries(std::move(c));
}

TruncatedSeries from_longs(const Context& ctx, std::vector<long> v)
{
    return TruncatedSeries(ctx, std::span<const long>(v));
}

} // namespace

TEST_CASE("multiplicative law examples")
{
    const auto ctx = Context::mod_pn(2, 8);
    auto F = make_multiplicative_fgl(2, 6, ctx);
    CHECK(F.law().at(1, 1) == Coefficient::one(ctx));
    CHECK(F.law().at(2, 1).is_zero());
    auto y = TruncatedSeries::variable(ctx, 6);
    CHECK(formal_sum(F, y, TruncatedSeries(ctx, 6)) == y);
    CHECK(formal_sum(F, y, y) == from_longs(ctx, {0, 2, 1, 0, 0, 0}));
    CHECK(p_series(F, 0) == y);
    CHECK(p_series(F, 1) == from_longs(ctx, {0, 2, 1, 0, 0, 0}));
    CHECK(p_series(F, 2) == from_longs(ctx, {0, 4, 6, 4, 1, 0}));
    CHECK(exact_quotient_by_y(y) == TruncatedSeries::constant(Coefficient::one(ctx), 5));
    CHECK(exact_quotient_by_y(p_series(F, 1)) == from_longs(ctx, {2, 1, 0, 0, 0}));
    CHECK_THROWS_AS(exact_quotient_by_y(TruncatedSeries::constant(Coefficient::one(ctx), 4)), PreconditionError);
    CHECK_THROWS_AS(formal_sum(F, TruncatedSeries::constant(Coefficient::one(ctx), 6), y), PreconditionError);
}

TEST_CASE("multiplicative p-series agrees with binomial expansion")
{
    // [p^r]y = (1+y)^{p^r} - 1
    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::uint32_t r : {1u, 2u}) {
            std::size_t q = 1;
            for (std::uint32_t i = 0; i < r; ++i)
                q *= p;
            const auto ctx = Context::mod_pn(p, 6);
            auto F = make_multiplicative_fgl(p, q + 1, ctx);
            auto s = p_series(F, r);
            for (std::size_t i = 1; i <= q; ++i) {
                mpz_class b;
                mpz_bin_uiui(b.get_mpz_t(), q, i);
                CHECK(s[i] == Coefficient(b, ctx));
            }
            CHECK(s[0].is_zero());
        }
}

TEST_CASE("honda p-series reduces to a pure power mod p")
{
    struct Case {
        std::uint32_t p, n, r;
    };
    for (auto c : {Case{2, 1, 1}, Case{2, 2, 1}, Case{3, 1, 1}, Case{2, 1, 2}, Case{3, 2, 1}}) {
        const std::size_t d = distinguished_degree(c.p, c.n, c.r);
        auto F = make_honda_fgl(c.p, c.n, d + 3, Context::mod_pn(c.p, 8));
        auto s = p_series(F, c.r);
        auto modp = s.reduced(Context::mod_p(c.p));
        CHECK(modp == TruncatedSeries::monomial(Coefficient::one(Context::mod_p(c.p)), d, d + 3));
        mpz_class pr = 1;
        for (std::uint32_t i = 0; i < c.r; ++i)
            pr *= c.p;
        CHECK(s[1] == Coefficient(pr, F.context()));
    }
}

TEST_CASE("p-series recursion matches iterated [p]")
{
    const auto ctx = Context::mod_pn(3, 6);
    auto F = make_honda_fgl(3, 1, 28, ctx);
    auto once = p_series(F, 1);
    CHECK(p_series(F, 2) == compose(once, once));
    CHECK(p_series(F, 3) == compose(once, compose(once, once)));
}

TEST_CASE("p-series rejects insufficient precision")
{
    auto F = make_honda_fgl(2, 2, 5, Context::mod_pn(2, 8));
    CHECK_NOTHROW(p_series(F, 1));
    CHECK_THROWS_AS(p_series(F, 2), PreconditionError);
    CHECK_THROWS_AS(make_honda_fgl(3, 2, 5, Context::mod_pn(3, 4)), PreconditionError);
    CHECK_THROWS_AS(make_multiplicative_fgl(4, 5, Context::mod_pn(2, 4)), PreconditionError);
}

TEST_CASE("honda logarithm leading term")
{
    auto l0 = honda_logarithm(2, 1, 6, 0);
    CHECK(l0 == TruncatedSeries::variable(Context::rational(), 6));
    auto l = honda_logarithm(2, 1, 6);
    CHECK(l[2] == Coefficient(mpq_class(1, 2), Context::rational()));
    CHECK(l[4] == Coefficient(mpq_class(1, 4), Context::rational()));
    CHECK(l[3].is_zero());
}

TEST_CASE("law axioms hold exactly as trivariate polynomials")
{
    for (std::uint32_t p : {2u, 3u, 5u})
        for (int kind = 0; kind < (p < 5 ? 3 : 2); ++kind) {
            const std::size_t M = 7;
            const auto ctx = Context::mod_pn(p, 4);
            FormalGroupLaw F = kind == 0   ? make_multiplicative_fgl(p, M, ctx)
                               : kind == 1 ? make_honda_fgl(p, 1, M, ctx)
                                           : make_honda_fgl(p, 2, std::max<std::size_t>(M, p * p + 1), ctx);
            const auto& law = F.law();
            for (std::size_t i = 0; i < M; ++i)
                for (std::size_t j = 0; i + j < M; ++j) {
                    CHECK(law.at(i, j) == law.at(j, i));
                    if (i == 0 || j == 0)
                        CHECK(law.at(i, j) == Coefficient(long(i + j == 1), ctx));
                }
            Tri x(M, ctx.modulus()), y(M, ctx.modulus()), z(M, ctx.modulus());
            x.at(1, 0, 0) = 1;
            y.at(0, 1, 0) = 1;
            z.at(0, 0, 1) = 1;
            Tri left = substitute(law, substitute(law, x, y), z);
            Tri right = substitute(law, x, substitute(law, y, z));
            CHECK(left.c == right.c);
        }
}

TEST_CASE("randomized associativity and commutativity at precision 40")
{
    std::mt19937_64 rng(11);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const auto ctx = Context::mod_pn(p, 5);
        for (auto F : {make_multiplicative_fgl(p, 40, ctx), make_honda_fgl(p, 1, 40, ctx),
                       make_honda_fgl(p, 2, 40, ctx)}) {
            for (int t = 0; t < 3; ++t) {
                auto a = random_series(ctx, 40, rng);
                auto b = random_series(ctx, 40, rng);
                auto c = random_series(ctx, 40, rng);
                CHECK(formal_sum(F, formal_sum(F, a, b), c) == formal_sum(F, a, formal_sum(F, b, c)));
                CHECK(formal_sum(F, a, b) == formal_sum(F, b, a));
            }
        }
    }
}

TEST_CASE("weierstrass preparation")
{
    const auto ctx = Context::mod_pn(2, 8);
    SUBCASE("multiplicative q_1 is already distinguished")
    {
        auto F = make_multiplicative_fgl(2, 6, ctx);
        auto q = exact_quotient_by_y(p_series(F, 1));
        auto w = weierstrass_preparation(q);
        REQUIRE(w.degree() == 1);
        CHECK(w.distinguished[0] == Coefficient(2L, ctx));
        CHECK(w.distinguished[1] == Coefficient::one(ctx));
        CHECK(w.unit == TruncatedSeries::constant(Coefficient::one(ctx), q.precision()));
    }
    SUBCASE("a unit factors trivially")
    {
        auto u = from_longs(ctx, {3, 2, 5, 0, 1});
        auto w = weierstrass_preparation(u);
        CHECK(w.degree() == 0);
        CHECK(w.unit == u);
    }
    SUBCASE("no unit coefficient below the precision")
    {
        CHECK_THROWS_AS(weierstrass_preparation(from_longs(ctx, {2, 4, 6})), PreconditionError);
    }
    SUBCASE("honda quotients")
    {
        for (std::uint32_t p : {2u, 3u})
            for (std::uint32_t n : {1u, 2u})
                for (std::uint32_t r : {1u, 2u}) {
                    const std::size_t d = distinguished_degree(p, n, r);
                    const auto c = Context::mod_pn(p, 8);
                    auto F = make_honda_fgl(p, n, d + 2, c);
                    auto q = exact_quotient_by_y(p_series(F, r));
                    auto w = weierstrass_preparation(q);
                    CHECK(w.degree() == d - 1);
                    CHECK(w.distinguished.back() == Coefficient::one(c));
                    for (std::size_t i = 0; i + 1 < w.distinguished.size(); ++i)
                        CHECK(w.distinguished[i].valuation() >= 1);
                    CHECK(w.distinguished[0].valuation() == r);
                    CHECK(w.unit[0].is_unit());
                    CHECK(multiply(w.distinguished_series(q.precision()), w.unit) == q);
                    auto again = weierstrass_preparation(q);
                    CHECK(again.distinguished == w.distinguished);
                }
    }
}
