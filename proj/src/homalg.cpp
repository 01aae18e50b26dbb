#include "ramify/homalg.hpp"

#include <algorithm>

namespace ramify {

namespace {

mpz_class lift(const Coefficient& c)
{
    return c.integer();
}

void accumulate(ModuleDescriptor& into, const ModuleDescriptor& m)
{
    into.free += m.free;
    into.torsion.insert(into.torsion.end(), m.torsion.begin(), m.torsion.end());
    std::sort(into.torsion.begin(), into.torsion.end());
}

ModuleDescriptor closed_form_tor(std::size_t s, const mpz_class& pr)
{
    ModuleDescriptor d;
    if (s == 0)
        d.free = 1;
    else if (s % 2 == 1)
        d.torsion.push_back(pr);
    return d;
}

std::size_t p_valuation(mpz_class m, std::uint32_t p)
{
    std::size_t v = 0;
    while (m != 0 && m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

} // namespace

PeriodicFreeComplex build_resolution(const CyclicCochainRing& R, std::size_t length)
{
    if (length < 1)
        throw PreconditionError("build_resolution needs length >= 1");
    RingElement y = R.generator();
    RingElement q = R.cofactor();
    if (!(y * q).is_zero())
        throw IntegrityError("y * q_r is nonzero in the cochain ring");
    PeriodicFreeComplex c{R, {}};
    for (std::size_t s = 1; s <= length; ++s) {
        const RingElement& m = s % 2 == 1 ? y : q;
        if (!reduce(augmentation(m), Context::mod_p(R.prime())).is_zero())
            throw IntegrityError("resolution differential d_" + std::to_string(s) + " is not in the radical");
        c.multipliers.push_back(m);
    }
    return c;
}

IntMatrixComplex tensor_down(const PeriodicFreeComplex& c)
{
    std::vector<IntMatrix> d;
    for (const auto& m : c.multipliers)
        d.emplace_back(1, 1, std::vector<mpz_class>{lift(augmentation(m))});
    return IntMatrixComplex(std::move(d));
}

const ModuleDescriptor& TorTable::at(std::size_t s, std::uint8_t parity) const
{
    auto it = entries.find({s, parity});
    if (it == entries.end())
        throw PreconditionError("Tor table has no entry at s = " + std::to_string(s));
    return it->second;
}

std::size_t TorTable::max_degree() const
{
    std::size_t top = 0;
    for (const auto& [key, _] : entries)
        top = std::max(top, key.first);
    return top;
}

TorTable tor_table(const CyclicCochainRing& R, std::size_t s_max)
{
    if (s_max < 1)
        throw PreconditionError("tor_table needs s_max >= 1");
    IntMatrixComplex c = tensor_down(build_resolution(R, s_max + 1));
    mpz_class pr;
    mpz_ui_pow_ui(pr.get_mpz_t(), R.prime(), R.exponent());
    TorTable t;
    for (std::size_t s = 0; s <= s_max; ++s) {
        ModuleDescriptor h = snf_homology(c, s);
        if (!(h == closed_form_tor(s, pr)))
            throw IntegrityError("Tor_" + std::to_string(s) + " = " + h.to_string() + " disagrees with the closed form " +
                                 closed_form_tor(s, pr).to_string());
        t.entries[{s, 0}] = std::move(h);
    }
    return t;
}

TorTable rational_tor(const CyclicCochainRing& R, std::size_t s_max)
{
    IntMatrixComplex c = tensor_down(build_resolution(R, s_max + 1));
    TorTable t;
    for (std::size_t s = 0; s <= s_max; ++s) {
        // Over Q only ranks survive.
        ModuleDescriptor h = snf_homology(c, s);
        h.torsion.clear();
        t.entries[{s, 0}] = std::move(h);
    }
    return t;
}

KunnethPage kunneth_page(const CyclicCochainRing& R, std::size_t s_max)
{
    KunnethPage page{tor_table(R, s_max), {}, true, {}};
    for (std::size_t k = 2; 2 * k - 1 <= s_max; ++k) {
        std::size_t src = 2 * k - 1;
        const ModuleDescriptor& a = page.e2.at(src);
        const ModuleDescriptor& b = page.e2.at(0);
        KunnethDifferential d{src, src, 0, false, ""};
        if (a.is_zero())
            d = {src, src, 0, true, "source is zero"};
        else if (b.is_zero())
            d = {src, src, 0, true, "target is zero"};
        else if (a.free == 0 && b.torsion.empty())
            d = {src, src, 0, true, "torsion source, torsion-free target"};
        else
            d.reason = "not forced by degree or torsion";
        page.collapses = page.collapses && d.forced_zero;
        page.differentials.push_back(std::move(d));
    }
    for (const auto& [key, m] : page.e2.entries)
        if ((key.first + key.second) % 2 == 1 && !m.is_zero())
            page.odd_witnesses.push_back(key.first);
    return page;
}

RingElement ComparisonChainMap::apply(std::size_t s, const RingElement& g) const
{
    return phi(g) * multipliers.at(s);
}

ComparisonChainMap comparison_chain_map(const FormalGroupLaw& F, std::uint32_t k, std::size_t length,
                                        std::uint32_t N)
{
    if (length < 2)
        throw PreconditionError("comparison_chain_map needs length >= 2");
    RingMorphism phi = substitution_map(F, k, N);
    const CyclicCochainRing& a1 = phi.source;
    const CyclicCochainRing& ak = phi.target;
    RingElement shift = k == 1 ? ak.one() : ak.from_series(exact_quotient_by_y(p_series(ak.fgl(), k - 1)));
    if (!(phi(a1.cofactor()) * shift == ak.cofactor()))
        throw IntegrityError("phi(q_1) * q_{k-1} != q_k in A_k");

    ComparisonChainMap cm{phi, build_resolution(a1, length), build_resolution(ak, length), {}, 0};
    for (std::size_t s = 0; s <= length; ++s)
        cm.multipliers.push_back(s % 2 == 0 ? ak.one() : shift);

    for (std::size_t s = 1; s <= length; ++s) {
        for (std::size_t i = 0; i < a1.rank(); ++i) {
            std::vector<Coefficient> e(a1.rank(), Coefficient::zero(a1.context()));
            e[i] = Coefficient::one(a1.context());
            RingElement g = a1.element(e);
            RingElement down_then_map = cm.apply(s - 1, cm.source.multipliers[s - 1] * g);
            RingElement map_then_down = cm.target.multipliers[s - 1] * cm.apply(s, g);
            if (!(down_then_map == map_then_down))
                throw IntegrityError("comparison square at position " + std::to_string(s) + " fails on y^" +
                                     std::to_string(i));
        }
        ++cm.squares_checked;
    }
    return cm;
}

std::vector<InducedTorMap> induced_tor_morphism(const FormalGroupLaw& F, std::uint32_t k, std::size_t s_max,
                                                std::uint32_t N)
{
    ComparisonChainMap cm = comparison_chain_map(F, k, std::max<std::size_t>(s_max + 1, 2), N);
    TorTable src = tor_table(cm.phi.source, std::max<std::size_t>(s_max, 1));
    TorTable dst = tor_table(cm.phi.target, std::max<std::size_t>(s_max, 1));
    const std::uint32_t p = cm.phi.source.prime();
    std::vector<InducedTorMap> out;
    for (std::size_t s = 0; s <= s_max; ++s) {
        InducedTorMap m{s, src.at(s), dst.at(s), lift(augmentation(cm.apply(s, cm.phi.source.one()))), true, false};
        if (m.source.is_zero()) {
            m.identity = m.target.is_zero();
        } else if (m.source.free == 1 && m.target.free == 1) {
            m.injective = m.multiplier != 0;
            m.identity = m.multiplier == 1;
        } else if (m.source.torsion.size() == 1 && m.target.torsion.size() == 1) {
            std::size_t a = p_valuation(m.source.torsion[0], p);
            std::size_t b = p_valuation(m.target.torsion[0], p);
            std::size_t v = p_valuation(m.multiplier, p);
            m.injective = m.multiplier != 0 && v < b && b - v == a;
            m.identity = a == b && m.multiplier % m.target.torsion[0] == 1;
        } else {
            throw IntegrityError("unexpected Tor shape at s = " + std::to_string(s));
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Match:
        return "MATCH";
    case Verdict::Mismatch:
        return "MISMATCH";
    case Verdict::Inconclusive:
        return "INCONCLUSIVE";
    }
    return "?";
}

ConvergenceReport convergence_diagnostic(const CyclicCochainRing& R, std::size_t s_max, bool rational)
{
    ConvergenceReport rep{Verdict::Inconclusive, {}, {}, {}, {}};
    rep.expected.free = R.rank();
    if (s_max < 1)
        return rep;
    TorTable table = rational ? rational_tor(R, s_max) : kunneth_page(R, s_max).e2;
    for (const auto& [key, m] : table.entries) {
        bool odd = (key.first + key.second) % 2 == 1;
        accumulate(odd ? rep.observed_odd : rep.observed_even, m);
        if (odd && !m.is_zero())
            rep.witnesses.emplace_back(key.first, m);
    }
    rep.verdict = rep.witnesses.empty() ? Verdict::Match : Verdict::Mismatch;
    return rep;
}

} // namespace ramify
