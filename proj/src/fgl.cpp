#include "ramify/fgl.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <utility>

namespace ramify {

namespace {

// Exact arithmetic over Q on dense coefficient vectors that are mostly zero.
// The Honda series only have terms in degrees = 1 mod (p^n - 1).
using QVec = std::vector<mpq_class>;

QVec qmul(const QVec& a, const QVec& b, std::size_t n)
{
    std::vector<std::size_t> na, nb;
    for (std::size_t i = 0; i < n && i < a.size(); ++i)
        if (sgn(a[i]) != 0)
            na.push_back(i);
    for (std::size_t j = 0; j < n && j < b.size(); ++j)
        if (sgn(b[j]) != 0)
            nb.push_back(j);
    QVec c(n);
    mpq_class t;
    for (std::size_t i : na)
        for (std::size_t j : nb) {
            if (i + j >= n)
                break;
            mpq_mul(t.get_mpq_t(), a[i].get_mpq_t(), b[j].get_mpq_t());
            c[i + j] += t;
        }
    return c;
}

QVec qpow(const QVec& a, std::size_t e, std::size_t n)
{
    QVec r(n);
    r[0] = 1;
    QVec base = a;
    base.resize(n);
    while (e > 0) {
        if (e & 1)
            r = qmul(r, base, n);
        e >>= 1;
        if (e > 0)
            base = qmul(base, base, n);
    }
    return r;
}

QVec qinverse(const QVec& a, std::size_t n)
{
    QVec b(n);
    b[0] = 1 / a[0];
    std::vector<std::size_t> nz;
    for (std::size_t i = 1; i < n; ++i)
        if (sgn(a[i]) != 0)
            nz.push_back(i);
    for (std::size_t d = 1; d < n; ++d) {
        mpq_class acc;
        for (std::size_t i : nz) {
            if (i > d)
                break;
            acc += a[i] * b[d - i];
        }
        b[d] = -acc * b[0];
    }
    return b;
}

struct LogTerm {
    std::size_t degree;   // p^{ni}
    std::uint32_t index;  // i
};

std::vector<LogTerm> log_terms(std::uint32_t p, std::uint32_t height, std::size_t precision)
{
    std::vector<LogTerm> terms;
    std::size_t deg = 1;
    std::size_t q = distinguished_degree(p, height, 1);
    for (std::uint32_t i = 0; deg < precision; ++i) {
        terms.push_back({deg, i});
        if (deg > SIZE_MAX / q)
            break;
        deg *= q;
    }
    return terms;
}

mpq_class inv_p_power(std::uint32_t p, std::uint32_t i)
{
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), p, i);
    return mpq_class(1, d);
}

// l(s) and l'(s) for the Honda logarithm.
QVec apply_log(const std::vector<LogTerm>& terms, std::uint32_t p, const QVec& s, std::size_t n)
{
    QVec out(n);
    for (const auto& t : terms) {
        QVec pw = qpow(s, t.degree, n);
        mpq_class c = inv_p_power(p, t.index);
        for (std::size_t d = 0; d < n; ++d)
            if (sgn(pw[d]) != 0)
                out[d] += c * pw[d];
    }
    return out;
}

QVec apply_log_derivative(const std::vector<LogTerm>& terms, std::uint32_t p, const QVec& s, std::size_t n)
{
    QVec out(n);
    for (const auto& t : terms) {
        QVec pw = qpow(s, t.degree - 1, n);
        mpq_class c = mpq_class(mpz_class(static_cast<unsigned long>(t.degree))) * inv_p_power(p, t.index);
        for (std::size_t d = 0; d < n; ++d)
            if (sgn(pw[d]) != 0)
                out[d] += c * pw[d];
    }
    return out;
}

bool all_zero(const QVec& v)
{
    for (const auto& x : v)
        if (sgn(x) != 0)
            return false;
    return true;
}

// Newton iteration for the root s of l(s) = rhs with s = y + ... or s = p*y + ....
QVec solve_log_equation(std::uint32_t p, std::uint32_t height, const QVec& rhs, QVec s, std::size_t n)
{
    auto terms = log_terms(p, height, n);
    for (std::size_t it = 0; it < 64; ++it) {
        QVec residual = apply_log(terms, p, s, n);
        for (std::size_t d = 0; d < n; ++d)
            residual[d] -= rhs[d];
        if (all_zero(residual))
            return s;
        QVec step = qmul(residual, qinverse(apply_log_derivative(terms, p, s, n), n), n);
        for (std::size_t d = 0; d < n; ++d)
            s[d] -= step[d];
    }
    throw IntegrityError("Honda Newton iteration did not converge");
}

QVec honda_log_vector(std::uint32_t p, std::uint32_t height, std::size_t n)
{
    QVec l(n);
    for (const auto& t : log_terms(p, height, n))
        l[t.degree] = inv_p_power(p, t.index);
    return l;
}

// [p]y over Z for the Honda law, cached per (p, n) at the largest precision seen.
std::vector<mpz_class> honda_p_series_exact(std::uint32_t p, std::uint32_t height, std::size_t n)
{
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<mpz_class>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({p, height});
        if (it != cache.end() && it->second.size() >= n)
            return std::vector<mpz_class>(it->second.begin(), it->second.begin() + n);
    }
    QVec rhs = honda_log_vector(p, height, n);
    for (auto& x : rhs)
        x *= p;
    QVec start(n);
    if (n > 1)
        start[1] = p;
    QVec s = solve_log_equation(p, height, rhs, std::move(start), n);
    std::vector<mpz_class> out(n);
    for (std::size_t d = 0; d < n; ++d) {
        if (s[d].get_den() != 1)
            throw IntegrityError("Honda [p]-series coefficient of y^" + std::to_string(d) + " is not p-integral");
        out[d] = s[d].get_num();
    }
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, height}];
    if (slot.size() < out.size())
        slot = out;
    return out;
}

BivariateSeries honda_law_exact(std::uint32_t p, std::uint32_t height, std::size_t n, const Context& ctx)
{
    // g = l^{-1}, then F = g(l(x) + l(y)) by accumulating powers of the sparse u = l(x) + l(y).
    QVec y(n);
    if (n > 1)
        y[1] = 1;
    QVec g = solve_log_equation(p, height, y, y, n);

    auto idx = [](std::size_t i, std::size_t j) {
        std::size_t d = i + j;
        return d * (d + 1) / 2 + j;
    };
    std::size_t size = n * (n + 1) / 2;
    struct Term {
        std::size_t i, j;
        mpq_class c;
    };
    std::vector<Term> u;
    for (const auto& t : log_terms(p, height, n)) {
        u.push_back({t.degree, 0, inv_p_power(p, t.index)});
        u.push_back({0, t.degree, inv_p_power(p, t.index)});
    }

    std::vector<mpq_class> acc(size), power(size), next(size);
    power[idx(0, 0)] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        std::fill(next.begin(), next.end(), mpq_class(0));
        for (std::size_t d = 0; d < n; ++d)
            for (std::size_t j = 0; j <= d; ++j) {
                const mpq_class& c = power[idx(d - j, j)];
                if (sgn(c) == 0)
                    continue;
                for (const auto& t : u)
                    if (d + t.i + t.j < n)
                        next[idx(d - j + t.i, j + t.j)] += c * t.c;
            }
        std::swap(power, next);
        if (sgn(g[k]) != 0)
            for (std::size_t e = 0; e < size; ++e)
                if (sgn(power[e]) != 0)
                    acc[e] += g[k] * power[e];
    }

    BivariateSeries F(ctx, n);
    for (std::size_t d = 0; d < n; ++d)
        for (std::size_t j = 0; j <= d; ++j) {
            const mpq_class& c = acc[idx(d - j, j)];
            if (c.get_den() != 1)
                throw IntegrityError("Honda law coefficient of x^" + std::to_string(d - j) + " y^" +
                                     std::to_string(j) + " is not p-integral");
            F.set(d - j, j, Coefficient(mpz_class(c.get_num()), ctx));
        }
    return F;
}

void check_law_context(std::uint32_t p, const Context& ctx)
{
    if (!is_prime(p))
        throw PreconditionError("p must be prime, got " + std::to_string(p));
    if (ctx.kind() == Context::Kind::Rational)
        return;
    if (ctx.is_padic() && ctx.prime() != p)
        throw PreconditionError("context prime " + std::to_string(ctx.prime()) + " differs from p = " +
                                std::to_string(p));
}

} // namespace

struct FormalGroupLaw::Impl {
    Kind kind;
    std::uint32_t p;
    std::uint32_t height;
    std::size_t precision;
    Context ctx;
    TruncatedSeries p_series;

    mutable std::once_flag law_once;
    mutable std::optional<BivariateSeries> law;

    Impl(Kind k, std::uint32_t p_, std::uint32_t h, std::size_t m, const Context& c, TruncatedSeries ps)
        : kind(k), p(p_), height(h), precision(m), ctx(c), p_series(std::move(ps))
    {
    }
};

FormalGroupLaw::Kind FormalGroupLaw::kind() const { return impl_->kind; }
std::uint32_t FormalGroupLaw::prime() const { return impl_->p; }
std::uint32_t FormalGroupLaw::height() const { return impl_->height; }
std::size_t FormalGroupLaw::precision() const { return impl_->precision; }
const Context& FormalGroupLaw::context() const { return impl_->ctx; }
const TruncatedSeries& FormalGroupLaw::p_series_generator() const { return impl_->p_series; }

const BivariateSeries& FormalGroupLaw::law() const
{
    std::call_once(impl_->law_once, [this] {
        const Impl& im = *impl_;
        if (im.kind == Kind::Multiplicative) {
            BivariateSeries F(im.ctx, im.precision);
            Coefficient one = Coefficient::one(im.ctx);
            F.set(1, 0, one);
            F.set(0, 1, one);
            if (im.precision > 2)
                F.set(1, 1, one);
            im.law.emplace(std::move(F));
        } else {
            im.law.emplace(honda_law_exact(im.p, im.height, im.precision, im.ctx));
        }
    });
    return *impl_->law;
}

FormalGroupLaw FormalGroupLaw::with_precision(std::size_t precision) const
{
    if (impl_->kind == Kind::Multiplicative)
        return make_multiplicative_fgl(impl_->p, precision, impl_->ctx);
    return make_honda_fgl(impl_->p, impl_->height, precision, impl_->ctx);
}

std::string FormalGroupLaw::name() const
{
    if (impl_->kind == Kind::Multiplicative)
        return "multiplicative(p=" + std::to_string(impl_->p) + ")";
    return "honda(p=" + std::to_string(impl_->p) + ",n=" + std::to_string(impl_->height) + ")";
}

std::size_t distinguished_degree(std::uint32_t p, std::uint32_t height, std::uint32_t r)
{
    std::size_t d = 1;
    for (std::uint64_t i = 0; i < std::uint64_t(height) * r; ++i) {
        if (d > SIZE_MAX / p)
            throw PreconditionError("p^(rn) overflows");
        d *= p;
    }
    return d;
}

FormalGroupLaw make_multiplicative_fgl(std::uint32_t p, std::size_t precision, const Context& ctx)
{
    check_law_context(p, ctx);
    if (precision < 2)
        throw PreconditionError("multiplicative law needs precision M >= 2");
    // [p]y = (1 + y)^p - 1
    std::vector<Coefficient> c(precision, Coefficient::zero(ctx));
    mpz_class binom = 1;
    for (std::uint32_t k = 1; k <= p && k < precision; ++k) {
        binom = binom * (p - k + 1) / k;
        c[k] = Coefficient(binom, ctx);
    }
    auto impl = std::make_shared<FormalGroupLaw::Impl>(FormalGroupLaw::Kind::Multiplicative, p, 1, precision, ctx,
                                                       TruncatedSeries(std::move(c)));
    return FormalGroupLaw(std::move(impl));
}

FormalGroupLaw make_honda_fgl(std::uint32_t p, std::uint32_t height, std::size_t precision, const Context& ctx)
{
    check_law_context(p, ctx);
    if (height < 1)
        throw PreconditionError("Honda law needs height n >= 1");
    std::size_t q = distinguished_degree(p, height, 1);
    if (precision < q + 1)
        throw PreconditionError("Honda law of height " + std::to_string(height) + " needs precision M >= " +
                                std::to_string(q + 1));
    auto exact = honda_p_series_exact(p, height, precision);
    std::vector<Coefficient> c;
    c.reserve(precision);
    for (const auto& x : exact)
        c.emplace_back(x, ctx);
    auto impl = std::make_shared<FormalGroupLaw::Impl>(FormalGroupLaw::Kind::Honda, p, height, precision, ctx,
                                                       TruncatedSeries(std::move(c)));
    return FormalGroupLaw(std::move(impl));
}

TruncatedSeries honda_logarithm(std::uint32_t p, std::uint32_t height, std::size_t precision, std::size_t max_term)
{
    Context q = Context::rational();
    std::vector<Coefficient> c(precision, Coefficient::zero(q));
    for (const auto& t : log_terms(p, height, precision)) {
        if (t.index > max_term)
            break;
        c[t.degree] = Coefficient(inv_p_power(p, t.index), q);
    }
    return TruncatedSeries(std::move(c));
}

TruncatedSeries formal_sum(const FormalGroupLaw& F, const TruncatedSeries& a, const TruncatedSeries& b)
{
    if (!a[0].is_zero() || !b[0].is_zero())
        throw PreconditionError("formal_sum: arguments must have zero constant term");
    if (!(a.context() == F.context()) || !(b.context() == F.context()))
        throw PreconditionError("formal_sum: series context differs from the law's context");
    std::size_t n = std::min({a.precision(), b.precision(), F.precision()});
    const BivariateSeries& law = F.law();
    const Context& ctx = F.context();

    std::vector<TruncatedSeries> bpow;
    bpow.reserve(n);
    bpow.push_back(TruncatedSeries::constant(Coefficient::one(ctx), n));
    TruncatedSeries bt = b.truncated(n);
    for (std::size_t j = 1; j < n; ++j)
        bpow.push_back(multiply(bpow.back(), bt));

    TruncatedSeries at = a.truncated(n);
    TruncatedSeries apow = TruncatedSeries::constant(Coefficient::one(ctx), n);
    TruncatedSeries result(ctx, n);
    for (std::size_t i = 0; i < n; ++i) {
        TruncatedSeries inner(ctx, n);
        bool any = false;
        for (std::size_t j = 0; i + j < n; ++j) {
            const Coefficient& c = law.at(i, j);
            if (c.is_zero())
                continue;
            inner += c * bpow[j];
            any = true;
        }
        if (any)
            result += multiply(apow, inner);
        apow = multiply(apow, at);
    }
    return result;
}

TruncatedSeries p_series(const FormalGroupLaw& F, std::uint32_t r)
{
    std::size_t top = distinguished_degree(F.prime(), F.height(), r);
    if (F.precision() < top + 1)
        throw PreconditionError("p_series: precision M = " + std::to_string(F.precision()) +
                                " cannot hold y^" + std::to_string(top) + "; need M >= " + std::to_string(top + 1));
    TruncatedSeries s = TruncatedSeries::variable(F.context(), F.precision());
    for (std::uint32_t i = 0; i < r; ++i)
        s = compose(F.p_series_generator(), s);
    return s;
}

TruncatedSeries exact_quotient_by_y(const TruncatedSeries& s)
{
    if (!s[0].is_zero())
        throw PreconditionError("exact_quotient_by_y: constant term " + s[0].to_string() + " is nonzero");
    return s.shifted_down();
}

TruncatedSeries WeierstrassFactorization::distinguished_series(std::size_t precision) const
{
    const Context& ctx = distinguished.front().context();
    std::vector<Coefficient> c(precision, Coefficient::zero(ctx));
    for (std::size_t i = 0; i < distinguished.size() && i < precision; ++i)
        c[i] = distinguished[i];
    return TruncatedSeries(std::move(c));
}

WeierstrassFactorization weierstrass_preparation(const TruncatedSeries& s)
{
    const Context& ctx = s.context();
    if (!ctx.is_padic())
        throw PreconditionError("weierstrass_preparation needs a mod-p^N context, got " + ctx.to_string());
    std::size_t m = s.precision();
    std::size_t d = 0;
    while (d < m && !s[d].is_unit())
        ++d;
    if (d == m)
        throw PreconditionError("weierstrass_preparation: no unit coefficient below y^" + std::to_string(m));
    if (d == 0)
        return {{Coefficient::one(ctx)}, s};

    // Weierstrass division of y^d by s. With s = L + y^d H, each pass
    // q = (res div y^d) H^{-1} leaves a high part divisible by one more p.
    TruncatedSeries high_s(std::vector<Coefficient>(s.coefficients().begin() + d, s.coefficients().end()));
    TruncatedSeries h_inv = inverse(high_s);

    TruncatedSeries res = TruncatedSeries::monomial(Coefficient::one(ctx), d, m);
    TruncatedSeries quotient(ctx, m);
    bool converged = false;
    for (std::uint32_t pass = 0; pass <= ctx.precision() + 1; ++pass) {
        TruncatedSeries high(std::vector<Coefficient>(res.coefficients().begin() + d, res.coefficients().end()));
        if (high.is_zero()) {
            converged = true;
            break;
        }
        TruncatedSeries q = multiply(high, h_inv);
        // Pad q (known mod y^{m-d}) with zeros; the identity res = y^d - Q s stays exact mod y^m.
        std::vector<Coefficient> qc = q.coefficients();
        qc.resize(m, Coefficient::zero(ctx));
        TruncatedSeries qpad(std::move(qc));
        quotient += qpad;
        res -= multiply(qpad, s);
    }
    if (!converged)
        throw IntegrityError("weierstrass_preparation: division did not converge in " +
                             std::to_string(ctx.precision() + 2) + " passes");

    WeierstrassFactorization out{std::vector<Coefficient>(d + 1, Coefficient::zero(ctx)), inverse(quotient)};
    for (std::size_t i = 0; i < d; ++i)
        out.distinguished[i] = -res[i];
    out.distinguished[d] = Coefficient::one(ctx);
    for (std::size_t i = 0; i < d; ++i)
        if (out.distinguished[i].is_unit())
            throw IntegrityError("weierstrass_preparation: distinguished coefficient of y^" + std::to_string(i) +
                                 " is a unit");
    return out;
}

} // namespace ramify
