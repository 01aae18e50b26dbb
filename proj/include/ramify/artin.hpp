#pragma once

#include "ramify/coeff.hpp"
#include "ramify/fp_linalg.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ramify {

/// Finite-dimensional augmented algebra over F_p with a Z/2-graded basis.
///
/// Construction verifies associativity, the unit, graded commutativity
/// (ab = (-1)^{|a||b|} ba on basis pairs) and that the augmentation is an
/// algebra map. Locality is checked lazily by radical().
class FinAlgebra {
public:
    struct Product {
        std::size_t left, right, target;
        std::uint32_t value;
    };

    FinAlgebra(std::uint32_t p, std::vector<std::string> labels, std::vector<Parity> parities,
               const std::vector<Product>& products, FpVector unit, FpVector augmentation);

    std::uint32_t prime() const { return p_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Parity>& parities() const { return parities_; }
    const FpVector& unit() const { return unit_; }
    const FpVector& augmentation() const { return augmentation_; }

    /// Product of basis elements i and j.
    const FpVector& basis_product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
    FpVector multiply(const FpVector& a, const FpVector& b) const;
    /// Matrix of x -> a x.
    FpMatrix left_multiplication(const FpVector& a) const;
    std::uint32_t augment(const FpVector& a) const;
    FpVector basis_vector(std::size_t i) const;

private:
    std::uint32_t p_;
    std::vector<std::string> labels_;
    std::vector<Parity> parities_;
    std::vector<FpVector> table_;
    FpVector unit_;
    FpVector augmentation_;
};

/// F_p itself.
FinAlgebra prime_field(std::uint32_t p);
/// F_p[y]/(y^m) in even degree, basis 1, y, ..., y^{m-1}.
FinAlgebra truncated_polynomial(std::uint32_t p, std::size_t m, const std::string& variable = "y");
/// Exterior algebra on one odd generator.
FinAlgebra exterior_algebra(std::uint32_t p, const std::string& variable = "e");
/// Graded tensor product with Koszul signs and augmentation eps_A (x) eps_B.
FinAlgebra tensor_algebra(const FinAlgebra& a, const FinAlgebra& b);

/// ker(eps). Throws PreconditionError when the algebra is not local, i.e.
/// the radical is not nilpotent.
Subspace radical(const FinAlgebra& a);
/// J^k as a subspace (J^0 = A).
Subspace radical_power(const FinAlgebra& a, std::size_t k);
/// Least e with J^e = 0.
std::size_t nilpotency_exponent(const FinAlgebra& a);

/// Left module given by one action matrix per algebra basis element.
class FinModule {
public:
    FinModule(std::shared_ptr<const FinAlgebra> algebra, std::vector<FpMatrix> actions);

    const FinAlgebra& algebra() const { return *algebra_; }
    std::shared_ptr<const FinAlgebra> algebra_ptr() const { return algebra_; }
    std::size_t dim() const { return dim_; }
    const FpMatrix& basis_action(std::size_t i) const { return actions_.at(i); }
    FpMatrix action(const FpVector& a) const;

    /// Submodule generated by `generators`, with the action restricted to an
    /// echelon basis of it.
    FinModule submodule(std::span<const FpVector> generators) const;
    /// The subspace underlying submodule(generators).
    Subspace generated(std::span<const FpVector> generators) const;

private:
    std::shared_ptr<const FinAlgebra> algebra_;
    std::size_t dim_;
    std::vector<FpMatrix> actions_;
};

FinModule regular_module(std::shared_ptr<const FinAlgebra> a);
FinModule free_module(std::shared_ptr<const FinAlgebra> a, std::size_t rank);
FinModule zero_module(std::shared_ptr<const FinAlgebra> a);

/// J·W for a subspace W of the module.
Subspace radical_times(const FinModule& m, const Subspace& w);

/// 0 = S^0 < S^1 < ... < S^{k0} = M with S^k = {x : J^k x = 0}.
struct SocleSeries {
    std::vector<Subspace> levels;

    std::size_t length() const { return levels.size() - 1; }
    std::vector<std::size_t> dimensions() const;
};

SocleSeries socle_series(const FinModule& m);

struct NakayamaVerdict {
    std::size_t module_dim;
    std::size_t top_dim;  // dim M/JM
    bool consistent;      // false only if M/JM = 0 while M != 0
};

NakayamaVerdict nakayama_check(const FinModule& m);

struct NakayamaSweep {
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::size_t zero_modules = 0;
    std::size_t max_module_dim = 0;
};

/// Random cyclic-or-small submodules of free modules A^b with dim <= max_dim.
NakayamaSweep nakayama_sweep(std::shared_ptr<const FinAlgebra> a, std::size_t trials, std::size_t max_dim,
                             std::uint64_t seed);

/// Minimal free resolution of the residue field A/J.
struct MinimalResolution {
    std::vector<std::size_t> betti;
    /// generators[s] lists the images in F_{s-1} of the basis of F_s (s >= 1),
    /// each a vector of length betti[s-1] * dim A.
    std::vector<std::vector<FpVector>> generators;
};

/// Resolution up to homological degree s_max. `seed` shuffles the order in
/// which candidate minimal generators are tried; Betti numbers do not depend on it.
MinimalResolution minimal_resolution(const FinAlgebra& a, std::size_t s_max, std::uint64_t seed = 0);

std::vector<std::size_t> betti_numbers(const FinAlgebra& a, std::size_t s_max, std::uint64_t seed = 0);

} // namespace ramify
