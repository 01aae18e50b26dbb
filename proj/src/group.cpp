#include "ramify/group.hpp"

#include "ramify/coeff.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <regex>
#include <sstream>

namespace ramify {

namespace {

Permutation compose(const Permutation& g, const Permutation& h)
{
    Permutation out(g.size());
    for (std::size_t x = 0; x < g.size(); ++x)
        out[x] = g[h[x]];
    return out;
}

Permutation from_cycles(std::size_t degree, const std::vector<std::vector<std::size_t>>& cycles)
{
    Permutation g(degree);
    for (std::size_t x = 0; x < degree; ++x)
        g[x] = static_cast<std::uint8_t>(x);
    for (const auto& c : cycles)
        for (std::size_t i = 0; i < c.size(); ++i)
            g[c[i] - 1] = static_cast<std::uint8_t>(c[(i + 1) % c.size()] - 1);
    return g;
}

bool is_p_power(std::size_t n, std::uint32_t p)
{
    while (n > 1 && n % p == 0)
        n /= p;
    return n == 1;
}

std::size_t p_part(std::size_t n, std::uint32_t p)
{
    std::size_t out = 1;
    while (n % p == 0) {
        n /= p;
        out *= p;
    }
    return out;
}

} // namespace

std::vector<Permutation> parse_generators(const std::string& text)
{
    std::vector<std::vector<std::vector<std::size_t>>> gens;
    std::size_t degree = 1;
    std::stringstream parts(text);
    std::string part;
    static const std::regex cycle_re(R"(\(\s*(\d+(\s*,\s*\d+)*)\s*\))");
    while (std::getline(parts, part, ';')) {
        std::vector<std::vector<std::size_t>> cycles;
        std::string rest = part;
        std::string leftover;
        auto begin = std::sregex_iterator(rest.begin(), rest.end(), cycle_re);
        std::size_t consumed = 0;
        for (auto it = begin; it != std::sregex_iterator(); ++it) {
            leftover += rest.substr(consumed, it->position() - consumed);
            consumed = it->position() + it->length();
            std::vector<std::size_t> cycle;
            std::stringstream nums((*it)[1].str());
            std::string n;
            while (std::getline(nums, n, ',')) {
                std::size_t v = std::stoul(n);
                if (v == 0 || v > 255)
                    throw PreconditionError("permutation points must lie in 1..255, got " + n);
                if (std::find(cycle.begin(), cycle.end(), v) != cycle.end())
                    throw PreconditionError("point " + n + " repeated inside a cycle");
                cycle.push_back(v);
                degree = std::max(degree, v);
            }
            cycles.push_back(std::move(cycle));
        }
        leftover += rest.substr(consumed);
        if (leftover.find_first_not_of(" \t") != std::string::npos)
            throw PreconditionError("malformed generator '" + part + "'");
        gens.push_back(std::move(cycles));
    }
    std::vector<Permutation> out;
    for (const auto& g : gens) {
        // Cycles within one generator are composed right to left.
        Permutation acc = from_cycles(degree, {});
        for (const auto& c : g)
            acc = compose(acc, from_cycles(degree, {c}));
        out.push_back(std::move(acc));
    }
    return out;
}

std::string cycle_notation(const Permutation& g)
{
    std::string out;
    std::vector<bool> seen(g.size(), false);
    for (std::size_t x = 0; x < g.size(); ++x) {
        if (seen[x] || g[x] == x)
            continue;
        out += "(";
        std::size_t y = x;
        bool first = true;
        while (!seen[y]) {
            seen[y] = true;
            out += (first ? "" : ",") + std::to_string(y + 1);
            first = false;
            y = g[y];
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

FiniteGroup FiniteGroup::generate(const std::vector<Permutation>& generators, std::size_t bound)
{
    FiniteGroup G;
    G.degree_ = 1;
    for (const auto& g : generators)
        G.degree_ = std::max(G.degree_, g.size());
    auto widen = [&](Permutation g) {
        for (std::size_t x = g.size(); x < G.degree_; ++x)
            g.push_back(static_cast<std::uint8_t>(x));
        return g;
    };
    Permutation id = widen({});
    std::vector<Permutation> gens;
    for (const auto& g : generators)
        gens.push_back(widen(g));

    std::map<Permutation, bool> seen{{id, true}};
    std::vector<Permutation> frontier{id};
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                Permutation y = compose(g, x);
                if (seen.emplace(y, true).second) {
                    if (seen.size() > bound)
                        throw PreconditionError("group exceeds the size bound of " + std::to_string(bound));
                    next.push_back(std::move(y));
                }
            }
        frontier = std::move(next);
    }
    for (const auto& [g, _] : seen)
        G.elements_.push_back(g);
    const std::size_t n = G.elements_.size();
    G.identity_ = G.index_of(id);
    G.table_.resize(n * n);
    G.inverse_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t k = G.index_of(compose(G.elements_[i], G.elements_[j]));
            G.table_[i * n + j] = k;
            if (k == G.identity_)
                G.inverse_[i] = j;
        }
    return G;
}

std::size_t FiniteGroup::index_of(const Permutation& g) const
{
    auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
    if (it == elements_.end() || *it != g)
        throw PreconditionError("permutation " + cycle_notation(g) + " is not in the group");
    return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t FiniteGroup::element_order(std::size_t g) const
{
    std::size_t k = 1;
    for (std::size_t x = g; x != identity_; x = multiply(x, g))
        ++k;
    return k;
}

std::vector<std::size_t> FiniteGroup::closure(const std::vector<std::size_t>& generators) const
{
    std::vector<bool> in(order(), false);
    in[identity_] = true;
    std::vector<std::size_t> members{identity_};
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t g : generators) {
            std::size_t y = multiply(g, members[i]);
            if (!in[y]) {
                in[y] = true;
                members.push_back(y);
            }
        }
    std::sort(members.begin(), members.end());
    return members;
}

bool FiniteGroup::is_normal(const std::vector<std::size_t>& subgroup) const
{
    std::vector<bool> in(order(), false);
    for (auto h : subgroup)
        in[h] = true;
    for (std::size_t g = 0; g < order(); ++g)
        for (auto h : subgroup)
            if (!in[multiply(multiply(g, h), inverse(g))])
                return false;
    return true;
}

FiniteGroup symmetric_group3()
{
    return FiniteGroup::generate(parse_generators("(1,2);(1,2,3)"));
}

FiniteGroup alternating_group4()
{
    return FiniteGroup::generate(parse_generators("(1,2,3);(1,2)(3,4)"));
}

FiniteGroup dihedral_group8()
{
    return FiniteGroup::generate(parse_generators("(1,2,3,4);(1,3)"));
}

FiniteGroup quaternion_group8()
{
    return FiniteGroup::generate(parse_generators("(1,2,3,4)(5,6,7,8);(1,5,3,7)(2,8,4,6)"));
}

FiniteGroup cyclic_group(std::size_t n)
{
    if (n < 1 || n > 255)
        throw PreconditionError("cyclic group order must lie in 1..255");
    if (n == 1)
        return FiniteGroup::generate({});
    std::string cycle = "(";
    for (std::size_t i = 1; i <= n; ++i)
        cycle += std::to_string(i) + (i < n ? "," : ")");
    return FiniteGroup::generate(parse_generators(cycle));
}

std::vector<std::size_t> sylow_subgroup(const FiniteGroup& G, std::uint32_t p, std::uint64_t seed)
{
    if (!is_prime(p))
        throw PreconditionError("sylow_subgroup needs a prime, got " + std::to_string(p));
    const std::size_t target = p_part(G.order(), p);
    std::vector<std::size_t> candidates;
    for (std::size_t g = 0; g < G.order(); ++g)
        if (g != G.identity() && is_p_power(G.element_order(g), p))
            candidates.push_back(g);
    std::mt19937_64 rng(seed);
    std::shuffle(candidates.begin(), candidates.end(), rng);

    std::vector<std::size_t> H{G.identity()};
    bool grew = true;
    while (H.size() < target && grew) {
        grew = false;
        for (auto g : candidates) {
            if (std::binary_search(H.begin(), H.end(), g))
                continue;
            std::vector<std::size_t> gens = H;
            gens.push_back(g);
            auto K = G.closure(gens);
            if (is_p_power(K.size(), p)) {
                H = std::move(K);
                grew = true;
                break;
            }
        }
    }
    if (H.size() != target)
        throw IntegrityError("p-subgroup growth stalled below the Sylow order");
    return H;
}

std::optional<std::vector<std::size_t>> normal_p_complement(const FiniteGroup& G, std::uint32_t p)
{
    if (!is_prime(p))
        throw PreconditionError("normal_p_complement needs a prime, got " + std::to_string(p));
    std::vector<std::size_t> coprime;
    for (std::size_t g = 0; g < G.order(); ++g)
        if (G.element_order(g) % p != 0)
            coprime.push_back(g);
    auto N = G.closure(coprime);
    const std::size_t sylow = p_part(G.order(), p);
    if (N.size() % p == 0 || N.size() * sylow != G.order() || !G.is_normal(N))
        return std::nullopt;

    // G = PN: the products of a Sylow subgroup and N cover G.
    auto P = sylow_subgroup(G, p);
    std::vector<bool> hit(G.order(), false);
    for (auto x : P)
        for (auto n : N)
            hit[G.multiply(x, n)] = true;
    if (std::count(hit.begin(), hit.end(), true) != static_cast<long>(G.order()))
        throw IntegrityError("normal p-complement candidate does not satisfy G = PN");
    return N;
}

GroupModule conjugation_module(const FiniteGroup& G, std::uint32_t p)
{
    GroupModule m{&G, {}};
    const std::size_t n = G.order();
    for (std::size_t g = 0; g < n; ++g) {
        FpMatrix a(p, n, n);
        for (std::size_t x = 0; x < n; ++x)
            a(G.multiply(G.multiply(g, x), G.inverse(g)), x) = 1;
        m.actions.push_back(std::move(a));
    }
    return m;
}

ConjugationNilpotence conjugation_nilpotent(const FiniteGroup& G, std::uint32_t p)
{
    if (!is_prime(p))
        throw PreconditionError("conjugation_nilpotent needs a prime, got " + std::to_string(p));
    GroupModule mod = conjugation_module(G, p);
    const std::size_t n = G.order();
    auto commutators = [&](const Subspace& M) {
        std::vector<FpVector> out;
        for (const auto& act : mod.actions)
            for (const auto& x : M.basis()) {
                FpVector y = act.apply(x);
                for (std::size_t i = 0; i < n; ++i)
                    y[i] = (y[i] + p - x[i]) % p;
                out.push_back(std::move(y));
            }
        return Subspace::span(p, n, out);
    };

    ConjugationNilpotence r{false, 0, {n}, Subspace::whole(p, n), true, true};
    Subspace M = Subspace::whole(p, n);
    for (;;) {
        Subspace next = commutators(M);
        ++r.steps;
        r.dimensions.push_back(next.dim());
        if (next.dim() == 0) {
            r.nilpotent = true;
            r.stable = next;
            break;
        }
        if (next == M) {
            r.stable = next;
            break;
        }
        M = std::move(next);
    }
    for (const auto& act : mod.actions)
        for (const auto& x : r.stable.basis())
            r.stable_invariant = r.stable_invariant && r.stable.contains(act.apply(x));
    r.stable_has_no_trivial_quotient = commutators(r.stable) == r.stable;
    return r;
}

} // namespace ramify
