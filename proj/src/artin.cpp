#include "ramify/artin.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace ramify {

namespace {

FpVector axpy(FpVector y, std::uint64_t a, const FpVector& x, std::uint32_t p)
{
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = static_cast<std::uint32_t>((y[i] + a * x[i]) % p);
    return y;
}

} // namespace

FinAlgebra::FinAlgebra(std::uint32_t p, std::vector<std::string> labels, std::vector<Parity> parities,
                       const std::vector<Product>& products, FpVector unit, FpVector augmentation)
    : p_(p), labels_(std::move(labels)), parities_(std::move(parities)), unit_(std::move(unit)),
      augmentation_(std::move(augmentation))
{
    if (!is_prime(p))
        throw PreconditionError("algebra base field needs a prime p, got " + std::to_string(p));
    const std::size_t n = labels_.size();
    if (n == 0)
        throw PreconditionError("algebra must have at least one basis element");
    if (parities_.size() != n || unit_.size() != n || augmentation_.size() != n)
        throw PreconditionError("algebra basis, parity, unit and augmentation sizes disagree");
    for (auto& x : unit_)
        x %= p;
    for (auto& x : augmentation_)
        x %= p;
    table_.assign(n * n, FpVector(n, 0));
    for (const auto& pr : products) {
        if (pr.left >= n || pr.right >= n || pr.target >= n)
            throw PreconditionError("structure constant index out of range");
        auto& slot = table_[pr.left * n + pr.right][pr.target];
        slot = (slot + pr.value) % p;
    }

    auto e = [&](std::size_t i) { return basis_vector(i); };
    for (std::size_t i = 0; i < n; ++i) {
        if (multiply(unit_, e(i)) != e(i) || multiply(e(i), unit_) != e(i))
            throw PreconditionError("unit vector is not a two-sided unit on basis element " + labels_[i]);
        for (std::size_t j = 0; j < n; ++j) {
            const FpVector& ab = basis_product(i, j);
            FpVector ba = basis_product(j, i);
            if (parities_[i].odd() && parities_[j].odd())
                for (auto& x : ba)
                    x = (p - x) % p;
            if (ab != ba)
                throw PreconditionError("algebra is not graded-commutative on (" + labels_[i] + ", " + labels_[j] + ")");
            if (augment(ab) != static_cast<std::uint32_t>(std::uint64_t(augmentation_[i]) * augmentation_[j] % p))
                throw PreconditionError("augmentation is not multiplicative on (" + labels_[i] + ", " + labels_[j] + ")");
            for (std::size_t k = 0; k < n; ++k)
                if (multiply(ab, e(k)) != multiply(e(i), basis_product(j, k)))
                    throw PreconditionError("algebra is not associative on (" + labels_[i] + ", " + labels_[j] + ", " +
                                            labels_[k] + ")");
        }
    }
    if (augment(unit_) != 1 % p)
        throw PreconditionError("augmentation must send the unit to 1");
}

FpVector FinAlgebra::basis_vector(std::size_t i) const
{
    FpVector v(dim(), 0);
    v.at(i) = 1;
    return v;
}

FpVector FinAlgebra::multiply(const FpVector& a, const FpVector& b) const
{
    const std::size_t n = dim();
    FpVector out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j] == 0)
                continue;
            std::uint64_t c = std::uint64_t(a[i]) * b[j] % p_;
            out = axpy(std::move(out), c, table_[i * n + j], p_);
        }
    }
    return out;
}

FpMatrix FinAlgebra::left_multiplication(const FpVector& a) const
{
    const std::size_t n = dim();
    FpMatrix m(p_, n, n);
    for (std::size_t j = 0; j < n; ++j) {
        FpVector col = multiply(a, basis_vector(j));
        for (std::size_t i = 0; i < n; ++i)
            m(i, j) = col[i];
    }
    return m;
}

std::uint32_t FinAlgebra::augment(const FpVector& a) const
{
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < dim(); ++i)
        acc += std::uint64_t(a[i]) * augmentation_[i];
    return static_cast<std::uint32_t>(acc % p_);
}

FinAlgebra prime_field(std::uint32_t p)
{
    return FinAlgebra(p, {"1"}, {Parity(0)}, {{0, 0, 0, 1}}, {1}, {1});
}

FinAlgebra truncated_polynomial(std::uint32_t p, std::size_t m, const std::string& variable)
{
    if (m < 1)
        throw PreconditionError("truncated_polynomial needs m >= 1");
    std::vector<std::string> labels;
    std::vector<Parity> parities(m, Parity(0));
    std::vector<FinAlgebra::Product> products;
    for (std::size_t i = 0; i < m; ++i) {
        labels.push_back(i == 0 ? "1" : i == 1 ? variable : variable + "^" + std::to_string(i));
        for (std::size_t j = 0; i + j < m; ++j)
            products.push_back({i, j, i + j, 1});
    }
    FpVector unit(m, 0), aug(m, 0);
    unit[0] = aug[0] = 1;
    return FinAlgebra(p, std::move(labels), std::move(parities), products, unit, aug);
}

FinAlgebra exterior_algebra(std::uint32_t p, const std::string& variable)
{
    return FinAlgebra(p, {"1", variable}, {Parity(0), Parity(1)}, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}},
                      {1, 0}, {1, 0});
}

FinAlgebra tensor_algebra(const FinAlgebra& a, const FinAlgebra& b)
{
    if (a.prime() != b.prime())
        throw PreconditionError("tensor_algebra: base fields F_" + std::to_string(a.prime()) + " and F_" +
                                std::to_string(b.prime()) + " differ");
    const std::uint32_t p = a.prime();
    const std::size_t na = a.dim(), nb = b.dim();
    auto idx = [nb](std::size_t i, std::size_t j) { return i * nb + j; };
    std::vector<std::string> labels;
    std::vector<Parity> parities;
    FpVector unit(na * nb, 0), aug(na * nb, 0);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            const std::string& la = a.labels()[i];
            const std::string& lb = b.labels()[j];
            labels.push_back(la == "1" ? lb : lb == "1" ? la : la + "*" + lb);
            parities.push_back(a.parities()[i] + b.parities()[j]);
            unit[idx(i, j)] = static_cast<std::uint32_t>(std::uint64_t(a.unit()[i]) * b.unit()[j] % p);
            aug[idx(i, j)] = static_cast<std::uint32_t>(std::uint64_t(a.augmentation()[i]) * b.augmentation()[j] % p);
        }
    // (a (x) b)(a' (x) b') = (-1)^{|b||a'|} aa' (x) bb'
    std::vector<FinAlgebra::Product> products;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < na; ++k)
                for (std::size_t l = 0; l < nb; ++l) {
                    const FpVector& ac = a.basis_product(i, k);
                    const FpVector& bc = b.basis_product(j, l);
                    bool negate = b.parities()[j].odd() && a.parities()[k].odd();
                    for (std::size_t s = 0; s < na; ++s) {
                        if (ac[s] == 0)
                            continue;
                        for (std::size_t t = 0; t < nb; ++t) {
                            if (bc[t] == 0)
                                continue;
                            std::uint32_t v = static_cast<std::uint32_t>(std::uint64_t(ac[s]) * bc[t] % p);
                            if (negate)
                                v = (p - v) % p;
                            products.push_back({idx(i, j), idx(k, l), idx(s, t), v});
                        }
                    }
                }
    return FinAlgebra(p, std::move(labels), std::move(parities), products, unit, aug);
}

namespace {

Subspace augmentation_kernel(const FinAlgebra& a)
{
    FpMatrix eps(a.prime(), 1, a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        eps(0, i) = a.augmentation()[i];
    auto k = eps.kernel();
    return Subspace::span(a.prime(), a.dim(), k);
}

Subspace product_space(const FinAlgebra& a, const Subspace& left, const Subspace& right)
{
    std::vector<FpVector> prods;
    for (const auto& x : left.basis())
        for (const auto& y : right.basis())
            prods.push_back(a.multiply(x, y));
    return Subspace::span(a.prime(), a.dim(), prods);
}

// J^0..J^e with J^e = 0; throws when the powers stall above zero.
std::vector<Subspace> radical_tower(const FinAlgebra& a)
{
    Subspace j = augmentation_kernel(a);
    std::vector<Subspace> tower{Subspace::whole(a.prime(), a.dim()), j};
    while (tower.back().dim() > 0) {
        Subspace next = product_space(a, j, tower.back());
        if (next.dim() == tower.back().dim())
            throw PreconditionError("algebra is not local: ker(eps) is not nilpotent (J^" +
                                    std::to_string(tower.size()) + " = J^" + std::to_string(tower.size() - 1) + ")");
        tower.push_back(std::move(next));
    }
    return tower;
}

} // namespace

Subspace radical(const FinAlgebra& a)
{
    return radical_tower(a)[1];
}

Subspace radical_power(const FinAlgebra& a, std::size_t k)
{
    auto tower = radical_tower(a);
    if (k >= tower.size())
        return Subspace(a.prime(), a.dim());
    return tower[k];
}

std::size_t nilpotency_exponent(const FinAlgebra& a)
{
    return radical_tower(a).size() - 1;
}

FinModule::FinModule(std::shared_ptr<const FinAlgebra> algebra, std::vector<FpMatrix> actions)
    : algebra_(std::move(algebra)), dim_(0), actions_(std::move(actions))
{
    const FinAlgebra& a = *algebra_;
    if (actions_.size() != a.dim())
        throw PreconditionError("module needs one action matrix per algebra basis element");
    dim_ = actions_.front().rows();
    for (const auto& m : actions_)
        if (m.rows() != dim_ || m.cols() != dim_ || m.prime() != a.prime())
            throw PreconditionError("module action matrices must be square of equal size over F_p");
    if (!(action(a.unit()) == FpMatrix::identity(a.prime(), dim_)))
        throw PreconditionError("unit does not act as the identity");
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (!(actions_[i] * actions_[j] == action(a.basis_product(i, j))))
                throw PreconditionError("module action does not respect the product of " + a.labels()[i] + " and " +
                                        a.labels()[j]);
}

FpMatrix FinModule::action(const FpVector& x) const
{
    const std::uint32_t p = algebra_->prime();
    FpMatrix m(p, dim_, dim_);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0)
            continue;
        FpMatrix scaled = actions_[i];
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c)
                scaled(r, c) = static_cast<std::uint32_t>(std::uint64_t(scaled(r, c)) * x[i] % p);
        m = m + scaled;
    }
    return m;
}

Subspace FinModule::generated(std::span<const FpVector> generators) const
{
    const std::uint32_t p = algebra_->prime();
    Subspace w = Subspace::span(p, dim_, generators);
    std::vector<FpVector> frontier = w.basis();
    while (!frontier.empty()) {
        std::vector<FpVector> next;
        for (const auto& v : frontier)
            for (const auto& act : actions_) {
                FpVector image = act.apply(v);
                if (w.insert(image))
                    next.push_back(std::move(image));
            }
        frontier = std::move(next);
    }
    return w;
}

FinModule FinModule::submodule(std::span<const FpVector> generators) const
{
    Subspace w = generated(generators);
    const std::uint32_t p = algebra_->prime();
    const std::size_t k = w.dim();
    std::vector<FpMatrix> restricted;
    for (const auto& act : actions_) {
        FpMatrix m(p, k, k);
        for (std::size_t j = 0; j < k; ++j) {
            FpVector coords = w.coordinates(act.apply(w.basis()[j]));
            for (std::size_t i = 0; i < k; ++i)
                m(i, j) = coords[i];
        }
        restricted.push_back(std::move(m));
    }
    if (k == 0)
        return zero_module(algebra_);
    return FinModule(algebra_, std::move(restricted));
}

FinModule regular_module(std::shared_ptr<const FinAlgebra> a)
{
    return free_module(std::move(a), 1);
}

FinModule free_module(std::shared_ptr<const FinAlgebra> a, std::size_t rank)
{
    const std::size_t n = a->dim();
    std::vector<FpMatrix> actions;
    for (std::size_t i = 0; i < n; ++i) {
        FpMatrix l = a->left_multiplication(a->basis_vector(i));
        FpMatrix block(a->prime(), n * rank, n * rank);
        for (std::size_t b = 0; b < rank; ++b)
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    block(b * n + r, b * n + c) = l(r, c);
        actions.push_back(std::move(block));
    }
    return FinModule(std::move(a), std::move(actions));
}

FinModule zero_module(std::shared_ptr<const FinAlgebra> a)
{
    std::vector<FpMatrix> actions(a->dim(), FpMatrix(a->prime(), 0, 0));
    return FinModule(std::move(a), std::move(actions));
}

Subspace radical_times(const FinModule& m, const Subspace& w)
{
    Subspace j = radical(m.algebra());
    std::vector<FpVector> images;
    for (const auto& x : j.basis()) {
        FpMatrix act = m.action(x);
        for (const auto& v : w.basis())
            images.push_back(act.apply(v));
    }
    return Subspace::span(m.algebra().prime(), m.dim(), images);
}

std::vector<std::size_t> SocleSeries::dimensions() const
{
    std::vector<std::size_t> d;
    for (const auto& s : levels)
        d.push_back(s.dim());
    return d;
}

SocleSeries socle_series(const FinModule& m)
{
    const FinAlgebra& a = m.algebra();
    const std::uint32_t p = a.prime();
    SocleSeries series;
    series.levels.push_back(Subspace(p, m.dim()));
    std::size_t e = nilpotency_exponent(a);
    for (std::size_t k = 1; series.levels.back().dim() < m.dim(); ++k) {
        if (k > e)
            throw IntegrityError("socle series did not reach M by k = e");
        // Joint kernel of the action of J^k.
        Subspace jk = radical_power(a, k);
        std::vector<FpVector> rows;
        for (const auto& x : jk.basis()) {
            FpMatrix act = m.action(x);
            for (std::size_t r = 0; r < act.rows(); ++r)
                rows.push_back(act.row(r));
        }
        Subspace level = rows.empty() ? Subspace::whole(p, m.dim())
                                      : Subspace::span(p, m.dim(), FpMatrix::from_rows(p, m.dim(), rows).kernel());
        series.levels.push_back(std::move(level));
    }
    return series;
}

NakayamaVerdict nakayama_check(const FinModule& m)
{
    Subspace jm = radical_times(m, Subspace::whole(m.algebra().prime(), m.dim()));
    NakayamaVerdict v{m.dim(), m.dim() - jm.dim(), true};
    v.consistent = !(v.top_dim == 0 && v.module_dim != 0);
    if (!v.consistent)
        throw IntegrityError("Nakayama violated: M/JM = 0 with dim M = " + std::to_string(m.dim()));
    return v;
}

NakayamaSweep nakayama_sweep(std::shared_ptr<const FinAlgebra> a, std::size_t trials, std::size_t max_dim,
                             std::uint64_t seed)
{
    if (a->dim() > max_dim)
        throw PreconditionError("algebra of dimension " + std::to_string(a->dim()) + " exceeds module bound " +
                                std::to_string(max_dim));
    std::mt19937_64 rng(seed);
    NakayamaSweep sweep;
    const std::size_t max_rank = max_dim / a->dim();
    for (std::size_t t = 0; t < trials; ++t) {
        std::size_t rank = 1 + rng() % max_rank;
        FinModule free = free_module(a, rank);
        std::size_t count = 1 + rng() % 3;
        std::vector<FpVector> gens;
        for (std::size_t g = 0; g < count; ++g) {
            FpVector v(free.dim());
            for (auto& x : v)
                x = static_cast<std::uint32_t>(rng() % a->prime());
            gens.push_back(std::move(v));
        }
        FinModule m = free.submodule(gens);
        ++sweep.trials;
        sweep.max_module_dim = std::max(sweep.max_module_dim, m.dim());
        if (m.dim() == 0)
            ++sweep.zero_modules;
        try {
            nakayama_check(m);
        } catch (const IntegrityError&) {
            ++sweep.violations;
        }
    }
    return sweep;
}

MinimalResolution minimal_resolution(const FinAlgebra& a, std::size_t s_max, std::uint64_t seed)
{
    const std::uint32_t p = a.prime();
    const std::size_t n = a.dim();
    Subspace j = radical(a);
    std::mt19937_64 rng(seed);

    std::vector<FpMatrix> left;
    for (const auto& x : j.basis())
        left.push_back(a.left_multiplication(x));
    auto act_blocks = [&](const FpMatrix& l, const FpVector& v) {
        FpVector out(v.size(), 0);
        for (std::size_t b = 0; b * n < v.size(); ++b) {
            FpVector block(v.begin() + b * n, v.begin() + (b + 1) * n);
            FpVector img = l.apply(block);
            std::copy(img.begin(), img.end(), out.begin() + b * n);
        }
        return out;
    };

    MinimalResolution res;
    res.betti.push_back(1);
    res.generators.emplace_back();
    Subspace kernel = j;  // ker(F_0 = A -> A/J)
    for (std::size_t s = 1; s <= s_max; ++s) {
        std::size_t amb = res.betti[s - 1] * n;
        std::vector<FpVector> jk;
        for (const auto& l : left)
            for (const auto& v : kernel.basis())
                jk.push_back(act_blocks(l, v));
        Subspace jkernel = Subspace::span(p, amb, jk);
        std::vector<FpVector> candidates = kernel.basis();
        std::shuffle(candidates.begin(), candidates.end(), rng);
        // Random invertible recombination so the chosen lift genuinely varies with the seed.
        if (seed != 0)
            for (std::size_t i = 0; i + 1 < candidates.size(); ++i)
                candidates[i] = axpy(candidates[i], rng() % p, candidates[i + 1], p);
        std::vector<FpVector> gens = complement_basis(jkernel, candidates);
        if (gens.size() + jkernel.dim() != kernel.dim())
            throw IntegrityError("minimal generator selection lost rank");
        res.betti.push_back(gens.size());
        if (gens.empty()) {
            for (std::size_t t = s + 1; t <= s_max; ++t) {
                res.betti.push_back(0);
                res.generators.emplace_back();
            }
            res.generators.push_back(std::move(gens));
            break;
        }
        // d_s : A^{b_s} -> A^{b_{s-1}}, column (i, t) = basis_t * g_i.
        FpMatrix d(p, amb, gens.size() * n);
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t t = 0; t < n; ++t) {
                FpVector img = act_blocks(a.left_multiplication(a.basis_vector(t)), gens[i]);
                for (std::size_t r = 0; r < amb; ++r)
                    d(r, i * n + t) = img[r];
            }
        kernel = Subspace::span(p, gens.size() * n, d.kernel());
        res.generators.push_back(std::move(gens));
    }
    return res;
}

std::vector<std::size_t> betti_numbers(const FinAlgebra& a, std::size_t s_max, std::uint64_t seed)
{
    return minimal_resolution(a, s_max, seed).betti;
}

} // namespace ramify
