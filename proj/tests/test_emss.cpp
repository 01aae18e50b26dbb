#include "ramify/emss.hpp"

#include <doctest.h>

using namespace ramify;

namespace {

DPBasisElement gamma(std::uint32_t p, std::uint32_t S, std::uint64_t m, bool odd = false)
{
    DPBasisElement x;
    for (std::uint32_t i = 0; i < S; ++i) {
        x.digits.push_back(static_cast<std::uint32_t>(m % p));
        m /= p;
    }
    x.odd = odd;
    return x;
}

} // namespace

TEST_CASE("divided power products")
{
    auto [c, g2] = dp_multiply(3, gamma(3, 3, 1), gamma(3, 3, 1));
    CHECK(c == 2);
    CHECK(g2 == gamma(3, 3, 2));
    CHECK(dp_multiply(3, gamma(3, 3, 1), gamma(3, 3, 2)).first == 0);
    CHECK(dp_multiply(5, gamma(5, 2, 0, true), gamma(5, 2, 3, true)).first == 0);
    auto [c3, g4] = dp_multiply(3, gamma(3, 3, 3), gamma(3, 3, 1, true));
    CHECK(c3 == 1);
    CHECK(g4 == gamma(3, 3, 4, true));
    CHECK(gamma(3, 3, 0).label(3) == "1");
    CHECK(gamma(3, 3, 6).label(3) == "g6");
    CHECK(gamma(3, 3, 0, true).label(3) == "sy");
    CHECK(gamma(3, 3, 6, true).label(3) == "g6*sy");
}

TEST_CASE("bidegrees")
{
    auto x = gamma(3, 3, 4, true);
    CHECK(x.s(3) == 5);
    CHECK(x.t(3) == -6);
    CHECK(x.total_degree(3) == -1);
    CHECK(gamma(3, 3, 2).total_degree(3) == 0);
}

TEST_CASE("E2 dimensions")
{
    EmssModel model(3, 3);
    CHECK(model.dim() == 54);
    auto E2 = initial_page(model);
    CHECK(E2.total_dimension() == 54);
    CHECK(E2.dimension(model, 0, 0) == 1);
    CHECK(E2.dimension(model, 1, -1) == 1);
    CHECK(E2.dimension(model, 1, -2) == 1);
    CHECK(E2.dimension(model, 1, -3) == 0);
    for (long s = 0; s < 10; ++s)
        for (long t = -25; t <= 0; ++t) {
            std::size_t expected = (s + t == 0 ? 1 : 0) + (s >= 1 && s + t == -1 ? 1 : 0);
            CHECK(E2.dimension(model, s, t) == expected);
        }
}

TEST_CASE("model preconditions")
{
    CHECK_THROWS_AS(EmssModel(2, 3), PreconditionError);
    CHECK_THROWS_AS(EmssModel(3, 1), PreconditionError);
    CHECK_THROWS_AS(EmssModel(4, 3), PreconditionError);
}

TEST_CASE("page turning")
{
    for (std::uint32_t p : {3u, 5u}) {
        EmssModel model(p, 3);
        auto h = turn_pages(model, initial_page(model), 2);
        REQUIRE(h.rounds.size() == 2);
        for (const auto& r : h.rounds) {
            CHECK(r.length == p - 1);
            CHECK(r.square_zero);
            CHECK(r.leibniz);
            CHECK(r.well_defined);
            CHECK(r.ranks_non_increasing);
            CHECK(r.euler_preserved);
        }
        CHECK(h.rounds[0].source == "g" + std::to_string(p));
        CHECK(h.rounds[0].target == "sy");
        for (std::size_t i = 1; i < h.pages.size(); ++i)
            CHECK(h.pages[i].total_dimension() < h.pages[i - 1].total_dimension());
        CHECK_THROWS_AS(turn_pages(model, initial_page(model), 3), PreconditionError);
    }
}

TEST_CASE("final page report")
{
    for (std::uint32_t p : {3u, 5u}) {
        auto rep = final_page_report(p, 3);
        CHECK(rep.verdict == Verdict::Match);
        CHECK(rep.window == p * p);
        CHECK(rep.first_page_structure);
        CHECK(rep.first_page_odd_class == gamma(p, 3, p * (p - 1), true));
        REQUIRE(rep.window_survivors.size() == p);
        for (std::uint32_t a = 0; a < p; ++a)
            CHECK(rep.window_survivors[a] == gamma(p, 3, a));
        CHECK(rep.zeta_truncation);
        CHECK(rep.single_differential_agrees);
    }
    CHECK(final_page_report(3, 3, 100).verdict == Verdict::Inconclusive);
}
