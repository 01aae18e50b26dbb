#include "ramify/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ramify {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::vector<u64> to_words(const TruncatedSeries& s, std::size_t n)
{
    std::vector<u64> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = mpz_get_ui(s[i].value().get_num_mpz_t());
    return w;
}

TruncatedSeries from_words(const Context& ctx, const std::vector<u64>& w)
{
    std::vector<Coefficient> c;
    c.reserve(w.size());
    for (u64 x : w)
        c.emplace_back(mpz_class(static_cast<unsigned long>(x)), ctx);
    return TruncatedSeries(std::move(c));
}

// a*b mod y^n mod m; zero entries of a are skipped so sparse series stay cheap.
std::vector<u64> mul_words(const std::vector<u64>& a, const std::vector<u64>& b, std::size_t n, u64 m)
{
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < n && i < a.size(); ++i)
        if (a[i] != 0)
            nz.push_back(i);
    std::vector<u128> acc(n, 0);
    std::vector<unsigned> pending(n, 0);
    for (std::size_t i : nz) {
        const u64 ai = a[i];
        for (std::size_t j = 0; i + j < n && j < b.size(); ++j) {
            if (b[j] == 0)
                continue;
            std::size_t k = i + j;
            acc[k] += static_cast<u128>(ai) * b[j];
            if (++pending[k] == 15) {
                acc[k] %= m;
                pending[k] = 0;
            }
        }
    }
    std::vector<u64> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = static_cast<u64>(acc[k] % m);
    return out;
}

bool fast_path(const Context& ctx)
{
    return ctx.is_padic();
}

} // namespace

TruncatedSeries::TruncatedSeries(const Context& ctx, std::size_t precision)
    : ctx_(ctx), coeffs_(precision, Coefficient::zero(ctx))
{
}

TruncatedSeries::TruncatedSeries(std::vector<Coefficient> coefficients)
    : ctx_(coefficients.empty() ? Context::integer() : coefficients.front().context()), coeffs_(std::move(coefficients))
{
    if (coeffs_.empty())
        throw PreconditionError("series precision must be at least 1");
    for (const auto& c : coeffs_)
        if (!(c.context() == ctx_))
            throw PreconditionError("series coefficients must share one context");
}

TruncatedSeries::TruncatedSeries(const Context& ctx, std::span<const long> values) : ctx_(ctx)
{
    if (values.empty())
        throw PreconditionError("series precision must be at least 1");
    coeffs_.reserve(values.size());
    for (long v : values)
        coeffs_.emplace_back(v, ctx);
}

TruncatedSeries TruncatedSeries::variable(const Context& ctx, std::size_t precision)
{
    return monomial(Coefficient::one(ctx), 1, precision);
}

TruncatedSeries TruncatedSeries::constant(const Coefficient& c, std::size_t precision)
{
    return monomial(c, 0, precision);
}

TruncatedSeries TruncatedSeries::monomial(const Coefficient& c, std::size_t degree, std::size_t precision)
{
    TruncatedSeries s(c.context(), precision);
    if (degree < precision)
        s.coeffs_[degree] = c;
    return s;
}

std::size_t TruncatedSeries::order() const
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero())
            return i;
    return coeffs_.size();
}

TruncatedSeries TruncatedSeries::truncated(std::size_t precision) const
{
    if (precision > coeffs_.size())
        throw PreconditionError("cannot raise series precision from " + std::to_string(coeffs_.size()) + " to " +
                                std::to_string(precision));
    return TruncatedSeries(std::vector<Coefficient>(coeffs_.begin(), coeffs_.begin() + precision));
}

TruncatedSeries TruncatedSeries::reduced(const Context& target) const
{
    std::vector<Coefficient> c;
    c.reserve(coeffs_.size());
    for (const auto& x : coeffs_)
        c.push_back(reduce(x, target));
    return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::shifted_down() const
{
    if (coeffs_.size() < 2)
        throw PreconditionError("shifted_down needs precision at least 2");
    return TruncatedSeries(std::vector<Coefficient>(coeffs_.begin() + 1, coeffs_.end()));
}

TruncatedSeries TruncatedSeries::shifted_up(std::size_t k) const
{
    std::vector<Coefficient> c(k, Coefficient::zero(ctx_));
    c.insert(c.end(), coeffs_.begin(), coeffs_.end());
    return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::operator-() const
{
    TruncatedSeries r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o)
{
    if (!(ctx_ == o.ctx_))
        throw PreconditionError("series context mismatch");
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()), Coefficient::zero(ctx_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o)
{
    if (!(ctx_ == o.ctx_))
        throw PreconditionError("series context mismatch");
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()), Coefficient::zero(ctx_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
{
    return multiply(a, b);
}

TruncatedSeries operator*(const Coefficient& c, const TruncatedSeries& a)
{
    TruncatedSeries r = a;
    for (auto& x : r.coeffs_)
        x = c * x;
    return r;
}

std::string TruncatedSeries::to_string(std::size_t terms) const
{
    std::ostringstream os;
    std::size_t shown = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero())
            continue;
        if (shown == terms) {
            os << " + ...";
            break;
        }
        if (shown > 0)
            os << " + ";
        os << coeffs_[i].to_string();
        if (i == 1)
            os << "*y";
        else if (i > 1)
            os << "*y^" << i;
        ++shown;
    }
    if (shown == 0)
        os << "0";
    os << " + O(y^" << coeffs_.size() << ")";
    return os.str();
}

TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b)
{
    if (!(a.context() == b.context()))
        throw PreconditionError("series context mismatch");
    const Context& ctx = a.context();
    std::size_t n = std::min(a.precision(), b.precision());
    if (fast_path(ctx)) {
        auto wa = to_words(a, n);
        auto wb = to_words(b, n);
        // Iterate over the sparser operand.
        std::size_t nza = std::count_if(wa.begin(), wa.end(), [](u64 x) { return x != 0; });
        std::size_t nzb = std::count_if(wb.begin(), wb.end(), [](u64 x) { return x != 0; });
        return from_words(ctx, nza <= nzb ? mul_words(wa, wb, n, ctx.modulus()) : mul_words(wb, wa, n, ctx.modulus()));
    }
    std::vector<Coefficient> out(n, Coefficient::zero(ctx));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].is_zero())
            continue;
        for (std::size_t j = 0; i + j < n; ++j)
            if (!b[j].is_zero())
                out[i + j] += a[i] * b[j];
    }
    return TruncatedSeries(std::move(out));
}

TruncatedSeries inverse(const TruncatedSeries& s)
{
    const Context& ctx = s.context();
    Coefficient c0inv = invert(s[0]);
    std::size_t n = s.precision();
    std::vector<Coefficient> out(n, Coefficient::zero(ctx));
    out[0] = c0inv;
    std::vector<std::size_t> nz;
    for (std::size_t i = 1; i < n; ++i)
        if (!s[i].is_zero())
            nz.push_back(i);
    for (std::size_t d = 1; d < n; ++d) {
        Coefficient acc = Coefficient::zero(ctx);
        for (std::size_t i : nz) {
            if (i > d)
                break;
            acc += s[i] * out[d - i];
        }
        out[d] = -(acc * c0inv);
    }
    return TruncatedSeries(std::move(out));
}

TruncatedSeries power(const TruncatedSeries& s, std::size_t e)
{
    TruncatedSeries result = TruncatedSeries::constant(Coefficient::one(s.context()), s.precision());
    TruncatedSeries base = s;
    while (e > 0) {
        if (e & 1)
            result = multiply(result, base);
        e >>= 1;
        if (e > 0)
            base = multiply(base, base);
    }
    return result;
}

TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g)
{
    if (!g[0].is_zero())
        throw PreconditionError("compose: inner series must have zero constant term");
    if (!(f.context() == g.context()))
        throw PreconditionError("series context mismatch");
    const Context& ctx = f.context();
    std::size_t n = std::min(f.precision(), g.precision());
    // Only f_i with i < n matter since g^i = O(y^i).
    std::size_t deg = n;
    while (deg > 0 && f[deg - 1].is_zero())
        --deg;
    if (deg == 0)
        return TruncatedSeries(ctx, n);

    // Baby-step giant-step evaluation: f(g) = sum_k B_k(g) * (g^b)^k.
    std::size_t b = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(double(deg)))));
    TruncatedSeries gt = g.truncated(n);
    std::vector<TruncatedSeries> baby;
    baby.reserve(b + 1);
    baby.push_back(TruncatedSeries::constant(Coefficient::one(ctx), n));
    for (std::size_t j = 1; j <= b; ++j)
        baby.push_back(multiply(baby.back(), gt));
    const TruncatedSeries& giant = baby[b];

    std::size_t blocks = (deg + b - 1) / b;
    TruncatedSeries acc(ctx, n);
    for (std::size_t k = blocks; k-- > 0;) {
        TruncatedSeries block(ctx, n);
        for (std::size_t j = 0; j < b && k * b + j < deg; ++j) {
            const Coefficient& c = f[k * b + j];
            if (c.is_zero())
                continue;
            block += c * baby[j];
        }
        acc = multiply(acc, giant);
        acc += block;
    }
    return acc;
}

BivariateSeries::BivariateSeries(const Context& ctx, std::size_t precision)
    : ctx_(ctx), precision_(precision), coeffs_(precision * (precision + 1) / 2, Coefficient::zero(ctx))
{
}

void BivariateSeries::set(std::size_t i, std::size_t j, const Coefficient& c)
{
    if (i + j >= precision_)
        throw PreconditionError("bivariate index beyond precision");
    if (!(c.context() == ctx_))
        throw PreconditionError("bivariate coefficient context mismatch");
    coeffs_[index(i, j)] = c;
}

BivariateSeries BivariateSeries::reduced(const Context& target) const
{
    BivariateSeries out(target, precision_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        out.coeffs_[k] = reduce(coeffs_[k], target);
    return out;
}

} // namespace ramify
