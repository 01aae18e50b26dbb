#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ramify {

/// Raised when an operation's input violates its stated precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an internal verification fails. Always a library bug.
class IntegrityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

bool is_prime(std::uint64_t n);

/// Arithmetic setting of a coefficient.
///
/// Only p-adic contexts carry a prime; their modulus p^N must fit in 62 bits so
/// that the series kernels can run on machine words.
class Context {
public:
    enum class Kind : std::uint8_t { Integer, Rational, ModPN, ModP };

    static Context integer() { return Context(Kind::Integer, 0, 0); }
    static Context rational() { return Context(Kind::Rational, 0, 0); }
    static Context mod_pn(std::uint32_t p, std::uint32_t n);
    static Context mod_p(std::uint32_t p);

    Kind kind() const { return kind_; }
    bool is_padic() const { return kind_ == Kind::ModPN || kind_ == Kind::ModP; }
    std::uint32_t prime() const { return p_; }
    /// Exponent N of the modulus p^N; 1 for mod-p, 0 for exact contexts.
    std::uint32_t precision() const { return n_; }
    std::uint64_t modulus() const { return modulus_; }

    /// True when `coarser` can be reached from this context by reduction.
    bool coarsens_to(const Context& coarser) const;

    std::string to_string() const;

    friend bool operator==(const Context& a, const Context& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_ && a.n_ == b.n_;
    }

private:
    Context(Kind kind, std::uint32_t p, std::uint32_t n);

    Kind kind_;
    std::uint32_t p_;
    std::uint32_t n_;
    std::uint64_t modulus_;
};

/// An element of Z, Q, Z/p^N or F_p, always stored in canonical form.
///
/// Mod contexts keep the representative in [0, p^N). Mixing contexts in one
/// operation throws PreconditionError.
class Coefficient {
public:
    /// Zero of the integers.
    Coefficient();
    Coefficient(long value, const Context& ctx);
    Coefficient(const mpz_class& value, const Context& ctx);
    /// Only valid in the rational context; use reduce() to bring a rational
    /// into a p-adic context.
    Coefficient(const mpq_class& value, const Context& ctx);

    static Coefficient zero(const Context& ctx) { return Coefficient(0L, ctx); }
    static Coefficient one(const Context& ctx) { return Coefficient(1L, ctx); }

    const Context& context() const { return ctx_; }
    const mpq_class& value() const { return value_; }
    /// The canonical integer representative. Throws for non-integral rationals.
    mpz_class integer() const;

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    /// Unit test for the context: coprime to p (p-adic), nonzero (Q), +-1 (Z).
    bool is_unit() const;
    /// p-adic valuation of the representative; `precision()` when zero.
    std::uint32_t valuation() const;

    Coefficient operator-() const;
    Coefficient& operator+=(const Coefficient& o);
    Coefficient& operator-=(const Coefficient& o);
    Coefficient& operator*=(const Coefficient& o);

    friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
    friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
    friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }

    friend bool operator==(const Coefficient& a, const Coefficient& b) {
        return a.ctx_ == b.ctx_ && a.value_ == b.value_;
    }

    std::string to_string() const;

private:
    void canonicalize();
    void require_same(const Coefficient& o) const;

    Context ctx_;
    mpq_class value_;
};

/// Reduce into a coarser context (Z -> Z/p^N -> F_p, Q -> Z/p^N when the
/// denominator is prime to p).
Coefficient reduce(const Coefficient& c, const Context& target);

/// Multiplicative inverse in the coefficient's own context.
Coefficient invert(const Coefficient& c);

/// Element of Z/2 carrying the degree of an object in a 2-periodic theory.
struct Parity {
    std::uint8_t value = 0;

    constexpr Parity() = default;
    constexpr explicit Parity(long degree) : value(static_cast<std::uint8_t>(((degree % 2) + 2) % 2)) {}

    constexpr bool odd() const { return value == 1; }
    friend constexpr Parity operator+(Parity a, Parity b) { return Parity(a.value + b.value); }
    friend constexpr bool operator==(Parity a, Parity b) { return a.value == b.value; }
};

} // namespace ramify
