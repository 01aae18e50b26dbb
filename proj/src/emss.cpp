#include "ramify/emss.hpp"


namespace ramify {

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint32_t e)
{
    std::uint64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

std::uint32_t binomial_mod(std::uint32_t n, std::uint32_t k, std::uint32_t p)
{
    if (k > n)
        return 0;
    std::uint64_t num = 1, den = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    return static_cast<std::uint32_t>(num * fp_inverse(static_cast<std::uint32_t>(den), p) % p);
}

// Every bidegree holds exactly one basis vector and all subspaces here are
// graded, so the graded piece of v at that bidegree is spanned by e_index or zero.
std::size_t homogeneous_dim(const Subspace& v, std::size_t index)
{
    FpVector e(v.ambient(), 0);
    e[index] = 1;
    return v.contains(e) ? 1 : 0;
}

FpVector column(const FpMatrix& d, std::size_t j)
{
    FpVector c(d.rows());
    for (std::size_t i = 0; i < d.rows(); ++i)
        c[i] = d(i, j);
    return c;
}

Subspace image(const FpMatrix& d, const Subspace& v)
{
    std::vector<FpVector> out;
    for (const auto& b : v.basis())
        out.push_back(d.apply(b));
    return Subspace::span(d.prime(), d.rows(), out);
}

// {z in Z : d z in B}
Subspace preimage_in(const FpMatrix& d, const Subspace& Z, const Subspace& B)
{
    const auto& zb = Z.basis();
    FpMatrix m(d.prime(), d.rows(), zb.size());
    for (std::size_t j = 0; j < zb.size(); ++j) {
        FpVector r = B.residue(d.apply(zb[j]));
        for (std::size_t i = 0; i < r.size(); ++i)
            m(i, j) = r[i];
    }
    std::vector<FpVector> out;
    for (const auto& c : m.kernel()) {
        FpVector v(d.cols(), 0);
        for (std::size_t j = 0; j < zb.size(); ++j)
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = static_cast<std::uint32_t>((v[i] + std::uint64_t(c[j]) * zb[j][i]) % d.prime());
        out.push_back(std::move(v));
    }
    return Subspace::span(d.prime(), d.cols(), out);
}

long euler_characteristic(const EmssModel& model, const BigradedPage& page)
{
    long chi = 0;
    for (const auto& e : page.survivors(model))
        chi += (e.total_degree(model.prime()) % 2 == 0) ? 1 : -1;
    return chi;
}

} // namespace

std::uint64_t DPBasisElement::degree(std::uint32_t p) const
{
    std::uint64_t m = 0;
    for (std::size_t j = digits.size(); j-- > 0;)
        m = m * p + digits[j];
    return m;
}

long DPBasisElement::s(std::uint32_t p) const
{
    return static_cast<long>(degree(p)) + (odd ? 1 : 0);
}

long DPBasisElement::t(std::uint32_t p) const
{
    return -static_cast<long>(degree(p)) - (odd ? 2 : 0);
}

std::string DPBasisElement::label(std::uint32_t p) const
{
    std::uint64_t m = degree(p);
    std::string g = m == 0 ? "" : "g" + std::to_string(m);
    if (!odd)
        return m == 0 ? "1" : g;
    return m == 0 ? "sy" : g + "*sy";
}

std::pair<std::uint32_t, DPBasisElement> dp_multiply(std::uint32_t p, const DPBasisElement& x,
                                                     const DPBasisElement& y)
{
    if (x.digits.size() != y.digits.size())
        throw PreconditionError("dp_multiply: digit vectors of different cutoffs");
    DPBasisElement out{std::vector<std::uint32_t>(x.digits.size(), 0), x.odd || y.odd};
    if (x.odd && y.odd)
        return {0, out};
    std::uint64_t c = 1;
    for (std::size_t j = 0; j < x.digits.size(); ++j) {
        std::uint32_t a = x.digits[j], b = y.digits[j];
        if (a + b >= p)
            return {0, out};
        out.digits[j] = a + b;
        c = c * binomial_mod(a + b, a, p) % p;
    }
    return {static_cast<std::uint32_t>(c), out};
}

EmssModel::EmssModel(std::uint32_t p, std::uint32_t S) : p_(p), S_(S), top_(0)
{
    if (p == 2)
        throw PreconditionError("the divided-power spectral sequence is implemented for odd primes only");
    if (!is_prime(p))
        throw PreconditionError("EMSS needs a prime, got " + std::to_string(p));
    if (S < 2)
        throw PreconditionError("divided-power cutoff S must be at least 2");
    top_ = ipow(p, S);
    if (2 * top_ > 6000)
        throw PreconditionError("truncated model of dimension " + std::to_string(2 * top_) + " is too large");
    for (int odd = 0; odd < 2; ++odd)
        for (std::uint64_t m = 0; m < top_; ++m)
            basis_.push_back(element(m, odd == 1));

    for (std::uint32_t round = 1; round < S; ++round) {
        const std::uint64_t ps = ipow(p, round);
        DPBasisElement w = element(ps - p, true);
        FpMatrix d(p, dim(), dim());
        for (std::size_t col = 0; col < dim(); ++col) {
            const DPBasisElement& e = basis_[col];
            if (e.odd || e.digits[round] == 0)
                continue;
            DPBasisElement lowered = e;
            --lowered.digits[round];
            auto [c, prod] = dp_multiply(p, lowered, w);
            if (c != 0)
                d(index_of(prod), col) = c;
        }
        differentials_.push_back(std::move(d));
    }
}

std::size_t EmssModel::index_of(const DPBasisElement& e) const
{
    return static_cast<std::size_t>((e.odd ? top_ : 0) + e.degree(p_));
}

DPBasisElement EmssModel::element(std::uint64_t m, bool odd) const
{
    DPBasisElement e{std::vector<std::uint32_t>(S_, 0), odd};
    for (std::uint32_t j = 0; j < S_; ++j) {
        e.digits[j] = static_cast<std::uint32_t>(m % p_);
        m /= p_;
    }
    if (m != 0)
        throw PreconditionError("divided power beyond the cutoff");
    return e;
}

FpVector EmssModel::multiply(const FpVector& a, const FpVector& b) const
{
    FpVector out(dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (b[j] == 0)
                continue;
            auto [c, prod] = dp_multiply(p_, basis_[i], basis_[j]);
            if (c == 0)
                continue;
            std::size_t k = index_of(prod);
            out[k] = static_cast<std::uint32_t>((out[k] + std::uint64_t(a[i]) * b[j] % p_ * c) % p_);
        }
    }
    return out;
}

std::uint64_t EmssModel::safe_window() const
{
    return top_ / p_;
}

std::size_t BigradedPage::dimension(const EmssModel& model, long s, long t) const
{
    std::size_t total = 0;
    for (std::size_t i = 0; i < model.dim(); ++i) {
        const auto& e = model.basis()[i];
        if (e.s(model.prime()) != s || e.t(model.prime()) != t)
            continue;
        total += homogeneous_dim(cycles, i) - homogeneous_dim(boundaries, i);
    }
    return total;
}

std::vector<DPBasisElement> BigradedPage::survivors(const EmssModel& model) const
{
    std::vector<DPBasisElement> out;
    for (std::size_t i = 0; i < model.dim(); ++i)
        if (homogeneous_dim(cycles, i) > homogeneous_dim(boundaries, i))
            out.push_back(model.basis()[i]);
    return out;
}

BigradedPage initial_page(const EmssModel& model)
{
    return {2, Subspace::whole(model.prime(), model.dim()), Subspace(model.prime(), model.dim())};
}

PageHistory turn_pages(const EmssModel& model, const BigradedPage& page, std::uint32_t rounds)
{
    const std::uint32_t p = model.prime();
    if (rounds >= model.cutoff())
        throw PreconditionError("cutoff S = " + std::to_string(model.cutoff()) + " supports at most " +
                                std::to_string(model.cutoff() - 1) + " rounds");
    PageHistory h{{page}, {}};
    const std::uint64_t window = model.safe_window();
    for (std::uint32_t round = 1; round <= rounds; ++round) {
        const BigradedPage& cur = h.pages.back();
        const FpMatrix& d = model.differential(round);
        const std::uint64_t ps = ipow(p, round);
        DPBasisElement src = model.element(ps, false);
        DPBasisElement dst = model.element(ps - p, true);

        RoundReport rep{round, static_cast<std::size_t>(src.s(p) - dst.s(p)), static_cast<std::size_t>(ps - ps / p - 1),
                        src.label(p), dst.label(p), (d * d).is_zero(), true, true, true, true};

        std::vector<FpVector> cols;
        for (std::size_t j = 0; j < model.dim(); ++j)
            cols.push_back(column(d, j));
        // Derivation check on basis pairs inside the window.
        for (std::size_t i = 0; i < model.dim() && rep.leibniz; ++i) {
            const auto& x = model.basis()[i];
            if (static_cast<std::uint64_t>(x.s(p)) > window)
                continue;
            FpVector ex(model.dim(), 0);
            ex[i] = 1;
            for (std::size_t j = 0; j < model.dim(); ++j) {
                const auto& y = model.basis()[j];
                if (static_cast<std::uint64_t>(x.s(p) + y.s(p)) > window)
                    continue;
                FpVector ey(model.dim(), 0);
                ey[j] = 1;
                FpVector lhs(model.dim(), 0);
                auto [c, prod] = dp_multiply(p, x, y);
                if (c != 0) {
                    const FpVector& dc = cols[model.index_of(prod)];
                    for (std::size_t k = 0; k < lhs.size(); ++k)
                        lhs[k] = static_cast<std::uint32_t>(std::uint64_t(dc[k]) * c % p);
                }
                FpVector a = model.multiply(cols[i], ey);
                FpVector b = model.multiply(ex, cols[j]);
                bool negate = x.total_degree(p) % 2 != 0;
                for (std::size_t k = 0; k < lhs.size(); ++k) {
                    std::uint32_t rhs = (a[k] + (negate ? (p - b[k]) % p : b[k])) % p;
                    if (lhs[k] != rhs) {
                        rep.leibniz = false;
                        break;
                    }
                }
                if (!rep.leibniz)
                    break;
            }
        }

        rep.well_defined = cur.cycles.contains(image(d, cur.cycles)) && cur.boundaries.contains(image(d, cur.boundaries));
        BigradedPage next{cur.index, preimage_in(d, cur.cycles, cur.boundaries),
                          cur.boundaries.sum(image(d, cur.cycles))};
        next.index = rep.length + 1;

        for (std::size_t i = 0; i < model.dim(); ++i)
            if (homogeneous_dim(next.cycles, i) - homogeneous_dim(next.boundaries, i) >
                homogeneous_dim(cur.cycles, i) - homogeneous_dim(cur.boundaries, i))
                rep.ranks_non_increasing = false;
        rep.euler_preserved = euler_characteristic(model, next) == euler_characteristic(model, cur);

        h.rounds.push_back(std::move(rep));
        h.pages.push_back(std::move(next));
    }
    return h;
}

EmssReport final_page_report(std::uint32_t p, std::uint32_t S, std::uint64_t window)
{
    EmssModel model(p, S);
    EmssReport rep{p, S, window == 0 ? model.safe_window() : window, Verdict::Inconclusive, {}, false, {}, {},
                   false, false};
    rep.history = turn_pages(model, initial_page(model), S - 1);
    if (rep.window > model.safe_window())
        return rep;

    // Round one: a_1 = 0 on even survivors, and exactly one odd generator.
    const BigradedPage& first = rep.history.pages.at(1);
    auto after_first = first.survivors(model);
    std::size_t even = 0, odd = 0;
    bool shape = true;
    for (const auto& e : after_first) {
        if (e.odd) {
            ++odd;
            if (odd == 1 || e.degree(p) < rep.first_page_odd_class.degree(p))
                rep.first_page_odd_class = e;
            shape = shape && e.digits[1] == p - 1;
        } else {
            ++even;
            shape = shape && e.digits[1] == 0;
        }
    }
    const std::uint64_t expected = ipow(p, S - 1);
    rep.first_page_structure = shape && even == expected && odd == expected && !rep.first_page_odd_class.digits.empty() &&
                               rep.first_page_odd_class.degree(p) == p * (p - 1);

    // zeta = g1 generates a truncated polynomial algebra of height p.
    FpVector zeta(model.dim(), 0), power(model.dim(), 0);
    zeta[model.index_of(model.element(1, false))] = 1;
    power[0] = 1;
    rep.zeta_truncation = true;
    for (std::uint32_t a = 1; a <= p; ++a) {
        power = model.multiply(power, zeta);
        bool zero = true;
        for (auto x : power)
            zero = zero && x == 0;
        rep.zeta_truncation = rep.zeta_truncation && (a < p ? !zero : zero);
    }

    const BigradedPage& last = rep.history.pages.back();
    for (const auto& e : last.survivors(model))
        if (static_cast<std::uint64_t>(e.s(p)) <= rep.window)
            rep.window_survivors.push_back(e);

    // All rounds have the same length, so they also act as one differential.
    FpMatrix total(p, model.dim(), model.dim());
    for (std::uint32_t r = 1; r < S; ++r)
        total = total + model.differential(r);
    Subspace z = Subspace::span(p, model.dim(), total.kernel());
    Subspace b = image(total, Subspace::whole(p, model.dim()));
    BigradedPage single{last.index, z, b};
    rep.single_differential_agrees = (total * total).is_zero() && single.survivors(model) == last.survivors(model);

    bool exact = rep.window_survivors.size() == p;
    for (std::size_t a = 0; exact && a < rep.window_survivors.size(); ++a)
        exact = rep.window_survivors[a] == model.element(a, false);
    rep.verdict = exact ? Verdict::Match : Verdict::Mismatch;
    return rep;
}

} // namespace ramify
