#pragma once

#include "ramify/artin.hpp"
#include "ramify/fgl.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ramify {

class RingElement;

/// Z/p^N[y]/(w) with w = y * (distinguished polynomial of [p^r]y / y),
/// a free module of rank p^{rn} on 1, y, ..., y^{rank-1}.
class CyclicCochainRing {
public:
    const FormalGroupLaw& fgl() const;
    std::uint32_t prime() const;
    std::uint32_t exponent() const;  // r
    std::size_t rank() const;
    const Context& context() const;
    /// Monic relation, low coefficients first (rank + 1 entries).
    const std::vector<Coefficient>& relation() const;

    RingElement zero() const;
    RingElement one() const;
    RingElement generator() const;
    RingElement element(const std::vector<Coefficient>& coefficients) const;
    /// Image of a power series; needs precision >= N * rank since y^{N*rank} = 0.
    RingElement from_series(const TruncatedSeries& s) const;
    /// [p^r]y / y as an element.
    RingElement cofactor() const;

    friend bool operator==(const CyclicCochainRing& a, const CyclicCochainRing& b) { return a.impl_ == b.impl_; }

    struct Impl;

private:
    explicit CyclicCochainRing(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    friend CyclicCochainRing make_cochain_ring(const FormalGroupLaw&, std::uint32_t, std::uint32_t);
    friend struct RingMorphism substitution_map(const FormalGroupLaw&, std::uint32_t, std::uint32_t);
    friend class RingElement;

    std::shared_ptr<const Impl> impl_;
};

class RingElement {
public:
    CyclicCochainRing ring() const { return CyclicCochainRing(owner_); }
    std::vector<Coefficient> coefficients() const;
    /// Residues in [0, p^N).
    const std::vector<std::uint64_t>& words() const { return words_; }
    bool is_zero() const;

    friend RingElement operator+(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    friend bool operator==(const RingElement& a, const RingElement& b)
    {
        return a.owner_ == b.owner_ && a.words_ == b.words_;
    }

    std::string to_string() const;

private:
    RingElement(std::shared_ptr<const CyclicCochainRing::Impl> owner, std::vector<std::uint64_t> words)
        : owner_(std::move(owner)), words_(std::move(words))
    {
    }
    friend class CyclicCochainRing;
    friend struct RingMorphism;

    std::shared_ptr<const CyclicCochainRing::Impl> owner_;
    std::vector<std::uint64_t> words_;
};

/// Ring over Z/p^N. F only needs precision p^{rn} + 1; it is rebuilt at the
/// precision the reduction requires.
CyclicCochainRing make_cochain_ring(const FormalGroupLaw& F, std::uint32_t r, std::uint32_t N);

RingElement multiply(const RingElement& a, const RingElement& b);
Coefficient augmentation(const RingElement& a);

/// F_p[y]/(y^rank), after checking the relation reduces to y^rank mod p.
FinAlgebra mod_m_reduction(const CyclicCochainRing& R);

/// Ring map A_1 -> A_k sending y to [p^{k-1}]y.
struct RingMorphism {
    CyclicCochainRing source;
    CyclicCochainRing target;
    RingElement generator_image;

    RingElement operator()(const RingElement& a) const;
    /// Matrix over F_p of the map on the bases, columns indexed by source basis.
    FpMatrix mod_p_matrix() const;
    bool injective() const;
};

RingMorphism substitution_map(const FormalGroupLaw& F, std::uint32_t k, std::uint32_t N);

} // namespace ramify
