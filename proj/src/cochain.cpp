#include "ramify/cochain.hpp"

#include <sstream>

namespace ramify {

struct CyclicCochainRing::Impl {
    FormalGroupLaw fgl;
    std::uint32_t p;
    std::uint32_t r;
    std::size_t rank;
    Context ctx;
    std::uint64_t modulus;
    std::vector<Coefficient> relation;
    std::vector<std::uint64_t> relation_words;  // w without its leading 1
    std::vector<std::uint64_t> cofactor_words;
};

namespace {

using Words = std::vector<std::uint64_t>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t to_word(const Coefficient& c)
{
    return c.integer().get_ui();
}

// Reduces a polynomial (any length) modulo the monic relation, in place.
Words reduce_poly(Words poly, const CyclicCochainRing::Impl& R)
{
    const std::size_t D = R.rank;
    const std::uint64_t m = R.modulus;
    for (std::size_t deg = poly.size(); deg-- > D;) {
        std::uint64_t lead = poly[deg];
        if (lead == 0)
            continue;
        poly[deg] = 0;
        // y^deg = -y^{deg-D} (w - y^D)
        for (std::size_t i = 0; i < D; ++i) {
            std::uint64_t t = mulmod(lead, R.relation_words[i], m);
            std::uint64_t& slot = poly[deg - D + i];
            slot = slot >= t ? slot - t : slot + m - t;
        }
    }
    poly.resize(D, 0);
    return poly;
}

Words words_from_series(const TruncatedSeries& s, const CyclicCochainRing::Impl& R)
{
    const std::size_t need = std::size_t(R.ctx.precision()) * R.rank;
    if (s.precision() < need)
        throw PreconditionError("series precision " + std::to_string(s.precision()) +
                                " is too low to reduce into the ring; need " + std::to_string(need));
    TruncatedSeries t = s.context() == R.ctx ? s : s.reduced(R.ctx);
    Words poly(std::min(need, t.precision()), 0);
    for (std::size_t i = 0; i < poly.size(); ++i)
        poly[i] = to_word(t[i]);
    return reduce_poly(std::move(poly), R);
}

std::shared_ptr<const CyclicCochainRing::Impl> build_ring(const FormalGroupLaw& extended, std::uint32_t r,
                                                          std::uint32_t N)
{
    const std::uint32_t p = extended.prime();
    const std::size_t D = distinguished_degree(p, extended.height(), r);
    Context ctx = Context::mod_pn(p, N);

    TruncatedSeries s = p_series(extended, r).reduced(ctx);
    TruncatedSeries q = exact_quotient_by_y(s);
    WeierstrassFactorization wf = weierstrass_preparation(q);
    if (wf.degree() + 1 != D)
        throw IntegrityError("distinguished polynomial of [p^r]y/y has degree " + std::to_string(wf.degree()) +
                             ", expected " + std::to_string(D - 1));

    auto impl = std::make_shared<CyclicCochainRing::Impl>(CyclicCochainRing::Impl{
        extended, p, r, D, ctx, ctx.modulus(), {}, {}, {}});
    impl->relation.push_back(Coefficient::zero(ctx));
    for (const auto& c : wf.distinguished)
        impl->relation.push_back(c);
    for (std::size_t i = 0; i < D; ++i)
        impl->relation_words.push_back(to_word(impl->relation[i]));
    impl->cofactor_words = words_from_series(q, *impl);

    Words top = words_from_series(s, *impl);
    for (auto x : top)
        if (x != 0)
            throw IntegrityError("[p^r]y does not vanish in the cochain ring");
    return impl;
}

void check_fgl(const FormalGroupLaw& F, std::uint32_t r, std::uint32_t N)
{
    if (r < 1)
        throw PreconditionError("cochain ring needs r >= 1");
    if (N < 1)
        throw PreconditionError("cochain ring needs N >= 1");
    if (!F.context().is_padic() || F.context().prime() != F.prime() || F.context().precision() < N)
        throw PreconditionError("formal group law context " + F.context().to_string() +
                                " cannot be reduced to Z/p^" + std::to_string(N));
    const std::size_t D = distinguished_degree(F.prime(), F.height(), r);
    if (F.precision() < D + 1)
        throw PreconditionError("formal group law precision " + std::to_string(F.precision()) + " is below p^{rn} + 1 = " +
                                std::to_string(D + 1));
}

FormalGroupLaw extend(const FormalGroupLaw& F, std::size_t precision)
{
    return F.precision() >= precision ? F : F.with_precision(precision);
}

} // namespace

const FormalGroupLaw& CyclicCochainRing::fgl() const { return impl_->fgl; }
std::uint32_t CyclicCochainRing::prime() const { return impl_->p; }
std::uint32_t CyclicCochainRing::exponent() const { return impl_->r; }
std::size_t CyclicCochainRing::rank() const { return impl_->rank; }
const Context& CyclicCochainRing::context() const { return impl_->ctx; }
const std::vector<Coefficient>& CyclicCochainRing::relation() const { return impl_->relation; }

RingElement CyclicCochainRing::zero() const { return RingElement(impl_, Words(impl_->rank, 0)); }

RingElement CyclicCochainRing::one() const
{
    Words w(impl_->rank, 0);
    w[0] = 1 % impl_->modulus;
    return RingElement(impl_, std::move(w));
}

RingElement CyclicCochainRing::generator() const
{
    Words w(std::max<std::size_t>(impl_->rank, 2), 0);
    w[1] = 1;
    return RingElement(impl_, reduce_poly(std::move(w), *impl_));
}

RingElement CyclicCochainRing::element(const std::vector<Coefficient>& coefficients) const
{
    Words w(std::max(coefficients.size(), impl_->rank), 0);
    for (std::size_t i = 0; i < coefficients.size(); ++i)
        w[i] = to_word(reduce(coefficients[i], impl_->ctx));
    return RingElement(impl_, reduce_poly(std::move(w), *impl_));
}

RingElement CyclicCochainRing::from_series(const TruncatedSeries& s) const
{
    return RingElement(impl_, words_from_series(s, *impl_));
}

RingElement CyclicCochainRing::cofactor() const { return RingElement(impl_, impl_->cofactor_words); }

std::vector<Coefficient> RingElement::coefficients() const
{
    std::vector<Coefficient> out;
    for (auto x : words_)
        out.emplace_back(mpz_class(static_cast<unsigned long>(x)), owner_->ctx);
    return out;
}

bool RingElement::is_zero() const
{
    for (auto x : words_)
        if (x != 0)
            return false;
    return true;
}

namespace {

void same_owner(const RingElement& a, const RingElement& b)
{
    if (!(a.ring() == b.ring()))
        throw PreconditionError("ring elements belong to different cochain rings");
}

} // namespace

RingElement operator+(const RingElement& a, const RingElement& b)
{
    same_owner(a, b);
    const std::uint64_t m = a.owner_->modulus;
    Words w(a.words_.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::uint64_t s = a.words_[i] + b.words_[i];
        w[i] = s >= m ? s - m : s;
    }
    return RingElement(a.owner_, std::move(w));
}

RingElement operator-(const RingElement& a, const RingElement& b)
{
    same_owner(a, b);
    const std::uint64_t m = a.owner_->modulus;
    Words w(a.words_.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = a.words_[i] >= b.words_[i] ? a.words_[i] - b.words_[i] : a.words_[i] + m - b.words_[i];
    return RingElement(a.owner_, std::move(w));
}

RingElement operator*(const RingElement& a, const RingElement& b)
{
    same_owner(a, b);
    const auto& R = *a.owner_;
    const std::size_t D = R.rank;
    const std::uint64_t m = R.modulus;
    Words poly(2 * D, 0);
    for (std::size_t i = 0; i < D; ++i) {
        if (a.words_[i] == 0)
            continue;
        for (std::size_t j = 0; j < D; ++j) {
            if (b.words_[j] == 0)
                continue;
            std::uint64_t t = mulmod(a.words_[i], b.words_[j], m) + poly[i + j];
            poly[i + j] = t >= m ? t - m : t;
        }
    }
    return RingElement(a.owner_, reduce_poly(std::move(poly), R));
}

std::string RingElement::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (words_[i] == 0)
            continue;
        if (!first)
            out << " + ";
        first = false;
        if (i == 0 || words_[i] != 1)
            out << words_[i];
        if (i > 0)
            out << (words_[i] != 1 ? "*" : "") << "y" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    return first ? "0" : out.str();
}

CyclicCochainRing make_cochain_ring(const FormalGroupLaw& F, std::uint32_t r, std::uint32_t N)
{
    check_fgl(F, r, N);
    const std::size_t D = distinguished_degree(F.prime(), F.height(), r);
    return CyclicCochainRing(build_ring(extend(F, std::size_t(N) * D + 1), r, N));
}

RingElement multiply(const RingElement& a, const RingElement& b)
{
    return a * b;
}

Coefficient augmentation(const RingElement& a)
{
    return a.coefficients().front();
}

FinAlgebra mod_m_reduction(const CyclicCochainRing& R)
{
    const std::uint32_t p = R.prime();
    const auto& w = R.relation();
    for (std::size_t i = 0; i < R.rank(); ++i)
        if (!reduce(w[i], Context::mod_p(p)).is_zero())
            throw IntegrityError("relation does not reduce to y^" + std::to_string(R.rank()) + " mod p");
    return truncated_polynomial(p, R.rank());
}

RingElement RingMorphism::operator()(const RingElement& a) const
{
    if (!(a.ring() == source))
        throw PreconditionError("substitution map applied to an element of another ring");
    RingElement acc = target.zero();
    const Context& ctx = target.context();
    for (std::size_t i = a.words_.size(); i-- > 0;) {
        acc = acc * generator_image;
        acc = acc + target.element({Coefficient(mpz_class(static_cast<unsigned long>(a.words_[i])), ctx)});
    }
    return acc;
}

FpMatrix RingMorphism::mod_p_matrix() const
{
    const std::uint32_t p = source.prime();
    FpMatrix m(p, target.rank(), source.rank());
    RingElement power = target.one();
    for (std::size_t j = 0; j < source.rank(); ++j) {
        for (std::size_t i = 0; i < target.rank(); ++i)
            m(i, j) = static_cast<std::uint32_t>(power.words()[i] % p);
        power = power * generator_image;
    }
    return m;
}

bool RingMorphism::injective() const
{
    // Over the local ring Z/p^N a map of free modules is split injective iff it is so mod p.
    return mod_p_matrix().rank() == source.rank();
}

RingMorphism substitution_map(const FormalGroupLaw& F, std::uint32_t k, std::uint32_t N)
{
    if (k < 1)
        throw PreconditionError("substitution map needs k >= 1");
    check_fgl(F, 1, N);
    const std::size_t Dk = distinguished_degree(F.prime(), F.height(), k);
    if (F.precision() < Dk + 1)
        throw PreconditionError("formal group law precision " + std::to_string(F.precision()) +
                                " cannot evaluate [p^" + std::to_string(k) + "]y; need " + std::to_string(Dk + 1));
    FormalGroupLaw ext = extend(F, std::size_t(N) * Dk + 1);
    CyclicCochainRing a1(build_ring(ext, 1, N));
    CyclicCochainRing ak = k == 1 ? a1 : CyclicCochainRing(build_ring(ext, k, N));
    RingElement image = k == 1 ? a1.generator() : ak.from_series(p_series(ext, k - 1));
    RingMorphism phi{a1, ak, image};
    if (!phi(a1.element(a1.relation())).is_zero())
        throw IntegrityError("substitution map does not kill the relation of A_1");
    if (!phi.injective())
        throw IntegrityError("substitution map is not injective");
    return phi;
}

} // namespace ramify
