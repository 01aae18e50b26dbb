#include "ramify/coeff.hpp"
#include "ramify/group.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace ramify;

namespace {

std::set<std::string> named(const FiniteGroup& G, const std::vector<std::size_t>& idx)
{
    std::set<std::string> out;
    for (auto i : idx)
        out.insert(cycle_notation(G.element(i)));
    return out;
}

} // namespace

TEST_CASE("parsing generators")
{
    auto g = parse_generators("(1,2);(1,2,3)");
    REQUIRE(g.size() == 2);
    CHECK(g[0] == Permutation{1, 0, 2});
    CHECK(g[1] == Permutation{1, 2, 0});
    CHECK(cycle_notation(g[1]) == "(1,2,3)");
    CHECK(cycle_notation(Permutation{0, 1}) == "()");
    CHECK(parse_generators("(1,2)(3,4)")[0] == Permutation{1, 0, 3, 2});
    CHECK_THROWS_AS(parse_generators("(1,2"), PreconditionError);
    CHECK_THROWS_AS(parse_generators("(1,1)"), PreconditionError);
    CHECK_THROWS_AS(parse_generators("(0,1)"), PreconditionError);
    CHECK_THROWS_AS(parse_generators("x(1,2)"), PreconditionError);
}

TEST_CASE("group orders and the size bound")
{
    CHECK(symmetric_group3().order() == 6);
    CHECK(alternating_group4().order() == 12);
    CHECK(dihedral_group8().order() == 8);
    CHECK(quaternion_group8().order() == 8);
    CHECK(cyclic_group(9).order() == 9);
    CHECK(cyclic_group(1).order() == 1);
    CHECK_THROWS_AS(FiniteGroup::generate(parse_generators("(1,2,3,4,5,6);(1,2)")), PreconditionError);
    auto Q = quaternion_group8();
    std::size_t involutions = 0;
    for (std::size_t g = 0; g < Q.order(); ++g)
        involutions += Q.element_order(g) == 2;
    CHECK(involutions == 1);
}

TEST_CASE("group axioms of the multiplication table")
{
    for (const auto& G : {symmetric_group3(), alternating_group4(), quaternion_group8()}) {
        const std::size_t n = G.order();
        for (std::size_t a = 0; a < n; ++a) {
            CHECK(G.multiply(a, G.inverse(a)) == G.identity());
            CHECK(G.multiply(G.identity(), a) == a);
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    CHECK(G.multiply(G.multiply(a, b), c) == G.multiply(a, G.multiply(b, c)));
        }
    }
}

TEST_CASE("Sylow subgroups")
{
    auto S3 = symmetric_group3();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto P = sylow_subgroup(S3, 2, seed);
        CHECK(P.size() == 2);
        CHECK(P == S3.closure(P));
        CHECK(sylow_subgroup(S3, 3, seed).size() == 3);
    }
    CHECK(sylow_subgroup(alternating_group4(), 2).size() == 4);
    CHECK(sylow_subgroup(S3, 5).size() == 1);
    CHECK_THROWS_AS(sylow_subgroup(S3, 4), PreconditionError);
}

TEST_CASE("normal p-complements")
{
    auto S3 = symmetric_group3();
    auto N = normal_p_complement(S3, 2);
    REQUIRE(N.has_value());
    CHECK(named(S3, *N) == std::set<std::string>{"()", "(1,2,3)", "(1,3,2)"});
    CHECK_FALSE(normal_p_complement(S3, 3).has_value());
    CHECK_FALSE(normal_p_complement(alternating_group4(), 2).has_value());
    auto A4 = alternating_group4();
    auto K = normal_p_complement(A4, 3);
    REQUIRE(K.has_value());
    CHECK(K->size() == 4);
    for (auto G : {dihedral_group8(), quaternion_group8(), cyclic_group(4)}) {
        auto T = normal_p_complement(G, 2);
        REQUIRE(T.has_value());
        CHECK(T->size() == 1);
    }
    auto full = normal_p_complement(S3, 5);
    REQUIRE(full.has_value());
    CHECK(full->size() == 6);
}

TEST_CASE("exhaustive search agrees with the p'-closure")
{
    // Every subgroup is the closure of at most two elements for these small groups.
    for (auto G : {symmetric_group3(), alternating_group4(), dihedral_group8(), cyclic_group(6)})
        for (std::uint32_t p : {2u, 3u}) {
            std::size_t pp = 1, n = G.order();
            while (n % p == 0) {
                n /= p;
                pp *= p;
            }
            std::set<std::vector<std::size_t>> found;
            for (std::size_t a = 0; a < G.order(); ++a)
                for (std::size_t b = 0; b < G.order(); ++b) {
                    auto H = G.closure({a, b});
                    if (H.size() * pp == G.order() && G.is_normal(H))
                        found.insert(H);
                }
            auto N = normal_p_complement(G, p);
            CHECK(found.size() <= 1);
            CHECK(N.has_value() == !found.empty());
            if (N)
                CHECK(*found.begin() == *N);
        }
}

TEST_CASE("conjugation nilpotence")
{
    auto r = conjugation_nilpotent(symmetric_group3(), 2);
    CHECK_FALSE(r.nilpotent);
    CHECK(r.stable.dim() >= 2);
    CHECK(r.stable_invariant);
    CHECK(r.stable_has_no_trivial_quotient);
    CHECK(r.dimensions.front() == 6);
    for (auto G : {dihedral_group8(), quaternion_group8(), cyclic_group(4), cyclic_group(8)}) {
        auto q = conjugation_nilpotent(G, 2);
        CHECK(q.nilpotent);
        CHECK(q.stable.dim() == 0);
        CHECK(q.dimensions.back() == 0);
    }
    CHECK(conjugation_nilpotent(cyclic_group(9), 3).nilpotent);
    CHECK_FALSE(conjugation_nilpotent(alternating_group4(), 2).nilpotent);
}
