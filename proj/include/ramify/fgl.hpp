#pragma once

#include "ramify/series.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace ramify {

/// One-dimensional commutative formal group law over Z_p, with its p-series.
///
/// The univariate data ([p]y) is built eagerly at y-precision M. The bivariate
/// law F(x, y) is materialized on first use, since consumers such as the
/// cochain ring need [p]y at precisions where the bivariate law is expensive.
class FormalGroupLaw {
public:
    enum class Kind { Multiplicative, Honda };

    Kind kind() const;
    std::uint32_t prime() const;
    std::uint32_t height() const;
    std::size_t precision() const;
    const Context& context() const;

    /// [p]y to precision M.
    const TruncatedSeries& p_series_generator() const;

    /// F(x, y) truncated to total degree < M. Thread-safe, computed once.
    const BivariateSeries& law() const;

    /// Same law rebuilt at another y-precision.
    FormalGroupLaw with_precision(std::size_t precision) const;

    std::string name() const;

private:
    struct Impl;
    explicit FormalGroupLaw(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    friend FormalGroupLaw make_multiplicative_fgl(std::uint32_t, std::size_t, const Context&);
    friend FormalGroupLaw make_honda_fgl(std::uint32_t, std::uint32_t, std::size_t, const Context&);

    std::shared_ptr<const Impl> impl_;
};

/// F(x, y) = x + y + xy, height one.
FormalGroupLaw make_multiplicative_fgl(std::uint32_t p, std::size_t precision,
                                       const Context& ctx = Context::mod_pn(2, 8));

/// Honda law of height n: F = l^{-1}(l(x) + l(y)) with l(x) = sum_i x^{p^{ni}} / p^i.
///
/// Built over Q, checked for p-integrality, then reduced to `ctx`.
FormalGroupLaw make_honda_fgl(std::uint32_t p, std::uint32_t height, std::size_t precision,
                              const Context& ctx = Context::mod_pn(2, 8));

/// sum_{i <= max_term} x^{p^{ni}} / p^i over Q.
TruncatedSeries honda_logarithm(std::uint32_t p, std::uint32_t height, std::size_t precision,
                                std::size_t max_term = SIZE_MAX);

/// F(a, b) for series without constant term.
TruncatedSeries formal_sum(const FormalGroupLaw& F, const TruncatedSeries& a, const TruncatedSeries& b);

/// [p^r]y by the recursion [p^r]y = [p]([p^{r-1}]y).
TruncatedSeries p_series(const FormalGroupLaw& F, std::uint32_t r);

/// s / y for s with zero constant term.
TruncatedSeries exact_quotient_by_y(const TruncatedSeries& s);

/// p^{rn}, throwing when it does not fit a size_t.
std::size_t distinguished_degree(std::uint32_t p, std::uint32_t height, std::uint32_t r);

struct WeierstrassFactorization {
    /// Monic, low coefficients first; the last entry is 1.
    std::vector<Coefficient> distinguished;
    TruncatedSeries unit;

    std::size_t degree() const { return distinguished.size() - 1; }
    TruncatedSeries distinguished_series(std::size_t precision) const;
};

/// s = distinguished * unit modulo (p^N, y^M) for s over Z/p^N with a unit
/// coefficient below y^M.
WeierstrassFactorization weierstrass_preparation(const TruncatedSeries& s);

} // namespace ramify
