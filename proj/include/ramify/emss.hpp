#pragma once

#include "ramify/fp_linalg.hpp"
#include "ramify/homalg.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ramify {

/// gamma_m * sy^eps in Gamma(sz) (x) Lambda(sy), with m given by its base-p digits.
struct DPBasisElement {
    std::vector<std::uint32_t> digits;  // a_0, ..., a_{S-1}, each < p
    bool odd = false;                   // carries the sy factor

    std::uint64_t degree(std::uint32_t p) const;  // m
    long s(std::uint32_t p) const;
    long t(std::uint32_t p) const;
    long total_degree(std::uint32_t p) const { return s(p) + t(p); }
    std::string label(std::uint32_t p) const;

    friend bool operator==(const DPBasisElement&, const DPBasisElement&) = default;
};

/// gamma_i gamma_j = C(i+j, i) gamma_{i+j}, zero on a digit carry; sy^2 = 0.
/// A zero scalar means the product vanishes.
std::pair<std::uint32_t, DPBasisElement> dp_multiply(std::uint32_t p, const DPBasisElement& x,
                                                     const DPBasisElement& y);

/// The whole truncated model, gamma_m for m < p^S, tensor Lambda(sy).
class EmssModel {
public:
    EmssModel(std::uint32_t p, std::uint32_t S);

    std::uint32_t prime() const { return p_; }
    std::uint32_t cutoff() const { return S_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<DPBasisElement>& basis() const { return basis_; }
    std::size_t index_of(const DPBasisElement& e) const;
    DPBasisElement element(std::uint64_t m, bool odd) const;

    FpVector multiply(const FpVector& a, const FpVector& b) const;
    /// Derivation with gamma_{p^round} -> gamma_{p^round - p} sy, zero on the other generators.
    const FpMatrix& differential(std::uint32_t round) const { return differentials_.at(round - 1); }
    /// Largest s at which truncation cannot be seen.
    std::uint64_t safe_window() const;

private:
    std::uint32_t p_, S_;
    std::uint64_t top_;  // p^S
    std::vector<DPBasisElement> basis_;
    std::vector<FpMatrix> differentials_;
};

/// Subquotient cycles / boundaries of the model.
struct BigradedPage {
    std::size_t index;  // r of E^r
    Subspace cycles;
    Subspace boundaries;

    std::size_t dimension(const EmssModel& model, long s, long t) const;
    /// Basis elements representing a basis of the page (each bidegree is at most one-dimensional).
    std::vector<DPBasisElement> survivors(const EmssModel& model) const;
    std::size_t total_dimension() const { return cycles.dim() - boundaries.dim(); }
};

struct RoundReport {
    std::uint32_t round;
    std::size_t length;         // r of d^r, from bidegrees
    std::size_t naive_length;  // p^s - p^{s-1} - 1, the length that would put the target at g_{p^{s-1}} sy
    std::string source;
    std::string target;
    bool square_zero;
    bool leibniz;
    bool well_defined;
    bool ranks_non_increasing;
    bool euler_preserved;
};

struct PageHistory {
    std::vector<BigradedPage> pages;
    std::vector<RoundReport> rounds;
};

BigradedPage initial_page(const EmssModel& model);
PageHistory turn_pages(const EmssModel& model, const BigradedPage& page, std::uint32_t rounds);

struct EmssReport {
    std::uint32_t prime;
    std::uint32_t cutoff;
    std::uint64_t window;
    Verdict verdict;
    PageHistory history;
    /// After round one: F_p[zeta]/(zeta^p) (x) higher divided powers (x) Lambda(one odd class).
    bool first_page_structure;
    DPBasisElement first_page_odd_class;
    std::vector<DPBasisElement> window_survivors;
    bool zeta_truncation;  // zeta^a != 0 for a < p, zeta^p = 0
    bool single_differential_agrees;
};

/// window = 0 selects the safe window; larger requests are INCONCLUSIVE.
EmssReport final_page_report(std::uint32_t p, std::uint32_t S, std::uint64_t window = 0);

} // namespace ramify
