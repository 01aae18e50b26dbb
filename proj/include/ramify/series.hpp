#pragma once

#include "ramify/coeff.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ramify {

/// Univariate power series c_0 + c_1 y + ... known modulo y^M.
///
/// The precision M is the vector length; every coefficient lives in the
/// series' context.
class TruncatedSeries {
public:
    TruncatedSeries(const Context& ctx, std::size_t precision);
    explicit TruncatedSeries(std::vector<Coefficient> coefficients);
    TruncatedSeries(const Context& ctx, std::span<const long> values);

    static TruncatedSeries variable(const Context& ctx, std::size_t precision);
    static TruncatedSeries constant(const Coefficient& c, std::size_t precision);
    static TruncatedSeries monomial(const Coefficient& c, std::size_t degree, std::size_t precision);

    const Context& context() const { return ctx_; }
    std::size_t precision() const { return coeffs_.size(); }
    const Coefficient& operator[](std::size_t i) const { return coeffs_.at(i); }
    const std::vector<Coefficient>& coefficients() const { return coeffs_; }

    /// Index of the first nonzero coefficient, or precision() when zero.
    std::size_t order() const;
    bool is_zero() const { return order() == precision(); }

    TruncatedSeries truncated(std::size_t precision) const;
    TruncatedSeries reduced(const Context& target) const;
    /// Drops the constant term and divides by y; precision drops by one.
    TruncatedSeries shifted_down() const;
    /// Multiplies by y^k; precision grows by k.
    TruncatedSeries shifted_up(std::size_t k) const;

    TruncatedSeries operator-() const;
    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const Coefficient& c, const TruncatedSeries& a);

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_;
    }

    /// "c0 + c1*y + ..." listing at most `terms` nonzero terms.
    std::string to_string(std::size_t terms = 12) const;

private:
    Context ctx_;
    std::vector<Coefficient> coeffs_;
};

/// Truncated product at the smaller of the two precisions.
TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b);

/// Multiplicative inverse of a series whose constant term is a unit.
TruncatedSeries inverse(const TruncatedSeries& s);

TruncatedSeries power(const TruncatedSeries& s, std::size_t e);

/// f(g) for g with zero constant term; precision is min(prec f, prec g).
TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g);

/// Bivariate series sum c_ij x^i y^j truncated to total degree < M.
class BivariateSeries {
public:
    BivariateSeries(const Context& ctx, std::size_t precision);

    const Context& context() const { return ctx_; }
    std::size_t precision() const { return precision_; }

    const Coefficient& at(std::size_t i, std::size_t j) const { return coeffs_.at(index(i, j)); }
    void set(std::size_t i, std::size_t j, const Coefficient& c);

    BivariateSeries reduced(const Context& target) const;

    friend bool operator==(const BivariateSeries& a, const BivariateSeries& b)
    {
        return a.ctx_ == b.ctx_ && a.precision_ == b.precision_ && a.coeffs_ == b.coeffs_;
    }

private:
    static std::size_t index(std::size_t i, std::size_t j)
    {
        std::size_t d = i + j;
        return d * (d + 1) / 2 + j;
    }

    Context ctx_;
    std::size_t precision_;
    std::vector<Coefficient> coeffs_;
};

} // namespace ramify
