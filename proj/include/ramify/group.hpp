#pragma once

#include "ramify/fp_linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ramify {

/// Permutation of {0..m-1} as an image table.
using Permutation = std::vector<std::uint8_t>;

/// "(1,2);(1,2,3)" -> generators on {1..m}, with m the largest point named.
std::vector<Permutation> parse_generators(const std::string& text);
std::string cycle_notation(const Permutation& g);

/// Finite permutation group with its elements sorted lexicographically.
class FiniteGroup {
public:
    static constexpr std::size_t default_bound = 200;

    /// Closure of the generators; throws PreconditionError beyond `bound` elements.
    static FiniteGroup generate(const std::vector<Permutation>& generators, std::size_t bound = default_bound);

    std::size_t order() const { return elements_.size(); }
    std::size_t degree() const { return degree_; }
    const std::vector<Permutation>& elements() const { return elements_; }
    const Permutation& element(std::size_t i) const { return elements_.at(i); }
    std::size_t index_of(const Permutation& g) const;
    std::size_t identity() const { return identity_; }

    /// Index of g*h, where (g*h)(x) = g(h(x)).
    std::size_t multiply(std::size_t g, std::size_t h) const { return table_[g * order() + h]; }
    std::size_t inverse(std::size_t g) const { return inverse_[g]; }
    std::size_t element_order(std::size_t g) const;

    /// Smallest subgroup containing the given elements, as sorted indices.
    std::vector<std::size_t> closure(const std::vector<std::size_t>& generators) const;
    bool is_normal(const std::vector<std::size_t>& subgroup) const;

private:
    std::size_t degree_ = 0;
    std::vector<Permutation> elements_;
    std::vector<std::size_t> table_;
    std::vector<std::size_t> inverse_;
    std::size_t identity_ = 0;
};

FiniteGroup symmetric_group3();
FiniteGroup alternating_group4();
FiniteGroup dihedral_group8();
FiniteGroup quaternion_group8();
FiniteGroup cyclic_group(std::size_t n);

/// A subgroup of order the p-part of |G|, grown greedily from p-elements in seeded order.
std::vector<std::size_t> sylow_subgroup(const FiniteGroup& G, std::uint32_t p, std::uint64_t seed = 0);

/// Normal subgroup N with p not dividing |N| and |N||P| = |G|, if one exists.
/// Such an N must contain every p'-element, so the closure of those is the only candidate.
std::optional<std::vector<std::size_t>> normal_p_complement(const FiniteGroup& G, std::uint32_t p);

/// F_p-linear representation, one invertible matrix per group element.
struct GroupModule {
    const FiniteGroup* group;
    std::vector<FpMatrix> actions;
};

/// F_p[G] with g acting by x -> g x g^{-1}.
GroupModule conjugation_module(const FiniteGroup& G, std::uint32_t p);

struct ConjugationNilpotence {
    bool nilpotent;
    std::size_t steps;  // length of the chain until it reached 0 or stabilized
    std::vector<std::size_t> dimensions;
    Subspace stable;    // zero when nilpotent
    bool stable_invariant;
    bool stable_has_no_trivial_quotient;
};

/// M_0 = F_p[G], M_{i+1} = span{g x g^{-1} - x}.
ConjugationNilpotence conjugation_nilpotent(const FiniteGroup& G, std::uint32_t p);

} // namespace ramify
