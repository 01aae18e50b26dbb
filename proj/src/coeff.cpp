#include "ramify/coeff.hpp"

#include <sstream>

namespace ramify {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Context::Context(Kind kind, std::uint32_t p, std::uint32_t n) : kind_(kind), p_(p), n_(n), modulus_(0)
{
    if (!is_padic())
        return;
    if (!is_prime(p))
        throw PreconditionError("context prime must be prime, got " + std::to_string(p));
    if (n == 0)
        throw PreconditionError("p-adic precision must be at least 1");
    std::uint64_t m = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (m > (std::uint64_t(1) << 62) / p)
            throw PreconditionError("modulus " + std::to_string(p) + "^" + std::to_string(n) + " exceeds 62 bits");
        m *= p;
    }
    modulus_ = m;
}

Context Context::mod_pn(std::uint32_t p, std::uint32_t n)
{
    return Context(Kind::ModPN, p, n);
}

Context Context::mod_p(std::uint32_t p)
{
    return Context(Kind::ModP, p, 1);
}

bool Context::coarsens_to(const Context& coarser) const
{
    if (*this == coarser)
        return true;
    switch (kind_) {
    case Kind::Integer:
    case Kind::Rational:
        return coarser.is_padic();
    case Kind::ModPN:
    case Kind::ModP:
        return coarser.is_padic() && coarser.p_ == p_ && coarser.n_ <= n_;
    }
    return false;
}

std::string Context::to_string() const
{
    switch (kind_) {
    case Kind::Integer:
        return "Z";
    case Kind::Rational:
        return "Q";
    case Kind::ModPN:
        return "Z/" + std::to_string(p_) + "^" + std::to_string(n_);
    case Kind::ModP:
        return "F_" + std::to_string(p_);
    }
    return "?";
}

Coefficient::Coefficient() : ctx_(Context::integer()), value_(0) {}

Coefficient::Coefficient(long value, const Context& ctx) : ctx_(ctx), value_(value)
{
    canonicalize();
}

Coefficient::Coefficient(const mpz_class& value, const Context& ctx) : ctx_(ctx), value_(value)
{
    canonicalize();
}

Coefficient::Coefficient(const mpq_class& value, const Context& ctx) : ctx_(ctx), value_(value)
{
    value_.canonicalize();
    if (ctx.kind() != Context::Kind::Rational && value_.get_den() != 1)
        throw PreconditionError("non-integral rational in " + ctx.to_string() + "; use reduce()");
    canonicalize();
}

void Coefficient::canonicalize()
{
    if (!ctx_.is_padic())
        return;
    mpz_class& num = value_.get_num();
    mpz_fdiv_r_ui(num.get_mpz_t(), num.get_mpz_t(), ctx_.modulus());
}

void Coefficient::require_same(const Coefficient& o) const
{
    if (!(ctx_ == o.ctx_))
        throw PreconditionError("coefficient context mismatch: " + ctx_.to_string() + " vs " + o.ctx_.to_string());
}

mpz_class Coefficient::integer() const
{
    if (value_.get_den() != 1)
        throw PreconditionError("coefficient is not integral");
    return value_.get_num();
}

bool Coefficient::is_unit() const
{
    switch (ctx_.kind()) {
    case Context::Kind::Integer:
        return value_ == 1 || value_ == -1;
    case Context::Kind::Rational:
        return !is_zero();
    case Context::Kind::ModPN:
    case Context::Kind::ModP:
        return mpz_divisible_ui_p(value_.get_num().get_mpz_t(), ctx_.prime()) == 0;
    }
    return false;
}

std::uint32_t Coefficient::valuation() const
{
    if (!ctx_.is_padic())
        throw PreconditionError("valuation is defined only in p-adic contexts");
    if (is_zero())
        return ctx_.precision();
    mpz_class v = value_.get_num();
    std::uint32_t k = 0;
    while (mpz_divisible_ui_p(v.get_mpz_t(), ctx_.prime())) {
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), ctx_.prime());
        ++k;
    }
    return k;
}

Coefficient Coefficient::operator-() const
{
    Coefficient r = *this;
    r.value_ = -r.value_;
    r.canonicalize();
    return r;
}

Coefficient& Coefficient::operator+=(const Coefficient& o)
{
    require_same(o);
    if (ctx_.kind() == Context::Kind::Rational)
        value_ += o.value_;
    else
        value_.get_num() += o.value_.get_num();
    canonicalize();
    return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o)
{
    require_same(o);
    if (ctx_.kind() == Context::Kind::Rational)
        value_ -= o.value_;
    else
        value_.get_num() -= o.value_.get_num();
    canonicalize();
    return *this;
}

Coefficient& Coefficient::operator*=(const Coefficient& o)
{
    require_same(o);
    if (ctx_.kind() == Context::Kind::Rational)
        value_ *= o.value_;
    else
        value_.get_num() *= o.value_.get_num();
    canonicalize();
    return *this;
}

std::string Coefficient::to_string() const
{
    return value_.get_str();
}

Coefficient reduce(const Coefficient& c, const Context& target)
{
    const Context& from = c.context();
    if (!from.coarsens_to(target))
        throw PreconditionError("cannot reduce " + from.to_string() + " to " + target.to_string() +
                                " (refinement or prime change)");
    if (from == target)
        return c;
    const mpq_class& v = c.value();
    if (v.get_den() == 1)
        return Coefficient(mpz_class(v.get_num()), target);
    // Rational with denominator prime to p: multiply by the inverse of the denominator.
    mpz_class den = v.get_den();
    mpz_class mod(static_cast<unsigned long>(target.modulus()));
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw PreconditionError("denominator " + den.get_str() + " is divisible by p; no image in " +
                                target.to_string());
    return Coefficient(mpz_class(v.get_num() * inv), target);
}

Coefficient invert(const Coefficient& c)
{
    const Context& ctx = c.context();
    if (!c.is_unit())
        throw PreconditionError("invert: " + c.to_string() + " is not a unit in " + ctx.to_string());
    switch (ctx.kind()) {
    case Context::Kind::Integer:
        return c;
    case Context::Kind::Rational:
        return Coefficient(mpq_class(1 / c.value()), ctx);
    case Context::Kind::ModPN:
    case Context::Kind::ModP: {
        mpz_class mod(static_cast<unsigned long>(ctx.modulus()));
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), c.value().get_num().get_mpz_t(), mod.get_mpz_t());
        return Coefficient(inv, ctx);
    }
    }
    throw IntegrityError("invert: unknown context");
}

} // namespace ramify
