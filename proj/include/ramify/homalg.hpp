#pragma once

#include "ramify/cochain.hpp"
#include "ramify/smith.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ramify {

/// A <-y- A <-q- A <-y- A ... resolving the coefficient ring over A, with
/// q = [p^r]y / y.
struct PeriodicFreeComplex {
    CyclicCochainRing ring;
    /// multipliers[s - 1] is d_s.
    std::vector<RingElement> multipliers;

    std::size_t length() const { return multipliers.size(); }
};

PeriodicFreeComplex build_resolution(const CyclicCochainRing& R, std::size_t length);

/// Applies the augmentation to every multiplier: 1x1 integer matrices.
IntMatrixComplex tensor_down(const PeriodicFreeComplex& c);

/// Tor_s indexed by (s, parity of t).
struct TorTable {
    std::map<std::pair<std::size_t, std::uint8_t>, ModuleDescriptor> entries;

    const ModuleDescriptor& at(std::size_t s, std::uint8_t parity = 0) const;
    std::size_t max_degree() const;
};

/// Tor over Z/p^N via Smith forms, cross-checked against the closed form.
TorTable tor_table(const CyclicCochainRing& R, std::size_t s_max);
/// Same complex over Q: only Tor_0 survives.
TorTable rational_tor(const CyclicCochainRing& R, std::size_t s_max);

struct KunnethDifferential {
    std::size_t page;
    std::size_t source_s;
    std::size_t target_s;
    bool forced_zero;
    std::string reason;
};

struct KunnethPage {
    TorTable e2;
    std::vector<KunnethDifferential> differentials;
    bool collapses;
    /// Degrees s with nonzero entries of odd total degree.
    std::vector<std::size_t> odd_witnesses;
};

KunnethPage kunneth_page(const CyclicCochainRing& R, std::size_t s_max);

/// Chain map between the resolutions of A_1 and A_k lying over y -> [p^{k-1}]y.
struct ComparisonChainMap {
    RingMorphism phi;
    PeriodicFreeComplex source;
    PeriodicFreeComplex target;
    /// Multiplier applied after phi at position s: 1 when s is even, [p^{k-1}]y / y when odd.
    std::vector<RingElement> multipliers;
    std::size_t squares_checked;

    RingElement apply(std::size_t s, const RingElement& g) const;
};

/// Throws IntegrityError on any square that fails to commute.
ComparisonChainMap comparison_chain_map(const FormalGroupLaw& F, std::uint32_t k, std::size_t length,
                                        std::uint32_t N);

struct InducedTorMap {
    std::size_t s;
    ModuleDescriptor source;
    ModuleDescriptor target;
    mpz_class multiplier;
    bool injective;
    bool identity;
};

std::vector<InducedTorMap> induced_tor_morphism(const FormalGroupLaw& F, std::uint32_t k, std::size_t s_max,
                                                std::uint32_t N);

enum class Verdict { Match, Mismatch, Inconclusive };
std::string to_string(Verdict v);

struct ConvergenceReport {
    Verdict verdict;
    /// The abutment: free of rank p^{rn} in even parity.
    ModuleDescriptor expected;
    /// Total E-infinity in even and odd total degree.
    ModuleDescriptor observed_even;
    ModuleDescriptor observed_odd;
    std::vector<std::pair<std::size_t, ModuleDescriptor>> witnesses;
};

ConvergenceReport convergence_diagnostic(const CyclicCochainRing& R, std::size_t s_max, bool rational = false);

} // namespace ramify
