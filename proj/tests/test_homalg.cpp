#include "ramify/homalg.hpp"

#include <doctest.h>

#include <random>

using namespace ramify;

namespace {

CyclicCochainRing ring(std::uint32_t p, std::uint32_t n, std::uint32_t r, std::uint32_t N = 8)
{
    auto F = make_honda_fgl(p, n, distinguished_degree(p, n, r) + 1, Context::mod_pn(p, N));
    return make_cochain_ring(F, r, N);
}

mpz_class power(std::uint32_t p, std::uint32_t e)
{
    mpz_class out = 1;
    for (std::uint32_t i = 0; i < e; ++i)
        out *= p;
    return out;
}

RingElement random_element(const CyclicCochainRing& R, std::mt19937_64& rng)
{
    std::vector<Coefficient> c;
    for (std::size_t i = 0; i < R.rank(); ++i)
        c.emplace_back(static_cast<long>(rng() % R.context().modulus()), R.context());
    return R.element(c);
}

} // namespace

TEST_CASE("resolution alternates y and the cofactor")
{
    auto R = ring(3, 1, 1);
    auto c = build_resolution(R, 5);
    REQUIRE(c.length() == 5);
    for (std::size_t s = 1; s <= 5; ++s) {
        CHECK(c.multipliers[s - 1] == (s % 2 ? R.generator() : R.cofactor()));
        if (s > 1)
            CHECK((c.multipliers[s - 1] * c.multipliers[s - 2]).is_zero());
    }
    auto down = tensor_down(c);
    for (std::size_t s = 1; s <= 5; ++s)
        CHECK(down.differential(s)(0, 0) == (s % 2 ? mpz_class(0) : mpz_class(3)));
}

TEST_CASE("Tor closed form over the grid")
{
    for (std::uint32_t p : {2u, 3u})
        for (std::uint32_t n : {1u, 2u})
            for (std::uint32_t r : {1u, 2u}) {
                auto t = tor_table(ring(p, n, r), 6);
                CHECK(t.max_degree() == 6);
                CHECK(t.at(0) == ModuleDescriptor{1, {}});
                for (std::size_t s = 1; s <= 6; ++s) {
                    if (s % 2)
                        CHECK(t.at(s) == ModuleDescriptor{0, {power(p, r)}});
                    else
                        CHECK(t.at(s).is_zero());
                }
            }
}

TEST_CASE("example table for p = 3, r = 2")
{
    auto t = tor_table(ring(3, 1, 2), 4);
    CHECK(t.at(1).to_string() == "Z/9");
    CHECK(t.at(3).to_string() == "Z/9");
    CHECK(t.at(2).to_string() == "0");
    CHECK(t.at(4).to_string() == "0");
}

TEST_CASE("rational Tor collapses to degree zero")
{
    for (std::uint32_t p : {2u, 3u})
        for (std::uint32_t r : {1u, 2u}) {
            auto t = rational_tor(ring(p, 1, r), 6);
            CHECK(t.at(0) == ModuleDescriptor{1, {}});
            for (std::size_t s = 1; s <= 6; ++s)
                CHECK(t.at(s).is_zero());
        }
}

TEST_CASE("Kunneth page collapses with odd witnesses")
{
    auto k = kunneth_page(ring(2, 1, 1), 6);
    CHECK(k.collapses);
    for (const auto& d : k.differentials) {
        CHECK(d.forced_zero);
        CHECK_FALSE(d.reason.empty());
        CHECK(d.page >= 2);
    }
    CHECK(k.odd_witnesses == std::vector<std::size_t>{1, 3, 5});
}

TEST_CASE("comparison chain map squares commute")
{
    std::mt19937_64 rng(41);
    for (std::uint32_t p : {2u, 3u})
        for (std::uint32_t k : {2u, 3u}) {
            auto F = make_honda_fgl(p, 1, distinguished_degree(p, 1, k) + 1, Context::mod_pn(p, 8));
            auto cm = comparison_chain_map(F, k, 6, 8);
            CHECK(cm.squares_checked > 0);
            for (std::size_t s = 1; s <= 6; ++s)
                for (int t = 0; t < 4; ++t) {
                    auto g = random_element(cm.source.ring, rng);
                    CHECK(cm.apply(s - 1, cm.source.multipliers[s - 1] * g) ==
                          cm.target.multipliers[s - 1] * cm.apply(s, g));
                }
            for (const auto& m : induced_tor_morphism(F, k, 5, 8)) {
                if (m.s % 2 == 0)
                    continue;
                CHECK(m.source == ModuleDescriptor{0, {mpz_class(p)}});
                CHECK(m.target == ModuleDescriptor{0, {power(p, k)}});
                CHECK(m.multiplier == power(p, k - 1));
                CHECK(m.injective);
            }
        }
}

TEST_CASE("convergence verdicts")
{
    for (std::uint32_t p : {2u, 3u})
        for (std::uint32_t r : {1u, 2u}) {
            auto R = ring(p, 1, r);
            auto c = convergence_diagnostic(R, 6);
            CHECK(c.verdict == Verdict::Mismatch);
            CHECK_FALSE(c.observed_odd.is_zero());
            CHECK(c.witnesses.size() == 3);
            CHECK(c.expected == ModuleDescriptor{R.rank(), {}});
            CHECK(convergence_diagnostic(R, 6, true).verdict == Verdict::Match);
        }
    CHECK(convergence_diagnostic(ring(2, 1, 1), 0).verdict == Verdict::Inconclusive);
    CHECK(to_string(Verdict::Mismatch) == "MISMATCH");
}
