#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ramify {

using FpVector = std::vector<std::uint32_t>;

/// Dense matrix over the prime field F_p, row-major.
class FpMatrix {
public:
    FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);
    static FpMatrix identity(std::uint32_t p, std::size_t n);
    /// Matrix whose rows are the given vectors (all of length `cols`).
    static FpMatrix from_rows(std::uint32_t p, std::size_t cols, std::span<const FpVector> rows);

    std::uint32_t prime() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::uint32_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    FpVector row(std::size_t r) const;
    FpVector apply(std::span<const std::uint32_t> v) const;
    FpMatrix transpose() const;
    bool is_zero() const;

    friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
    friend FpMatrix operator+(const FpMatrix& a, const FpMatrix& b);
    friend bool operator==(const FpMatrix& a, const FpMatrix& b)
    {
        return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::size_t rank() const;
    /// Basis of {v : M v = 0}.
    std::vector<FpVector> kernel() const;

private:
    std::uint32_t p_;
    std::size_t rows_, cols_;
    std::vector<std::uint32_t> data_;
};

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p);

/// Subspace of F_p^n held as a reduced row-echelon basis, so equal subspaces
/// have equal bases.
class Subspace {
public:
    Subspace(std::uint32_t p, std::size_t ambient);
    static Subspace span(std::uint32_t p, std::size_t ambient, std::span<const FpVector> vectors);
    static Subspace whole(std::uint32_t p, std::size_t ambient);

    std::uint32_t prime() const { return p_; }
    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<FpVector>& basis() const { return basis_; }

    /// Adds v; returns false when v was already in the span.
    bool insert(FpVector v);
    bool contains(std::span<const std::uint32_t> v) const;
    /// v minus its projection along the echelon basis (zero iff v is contained).
    FpVector residue(std::span<const std::uint32_t> v) const;
    /// Coordinates of a contained vector with respect to basis().
    FpVector coordinates(std::span<const std::uint32_t> v) const;

    bool contains(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }

private:
    void normalize();

    std::uint32_t p_;
    std::size_t n_;
    std::vector<FpVector> basis_;
    std::vector<std::size_t> pivots_;
};

/// Vectors from `candidates`, in order, that extend `base` to a basis of
/// base + span(candidates).
std::vector<FpVector> complement_basis(const Subspace& base, std::span<const FpVector> candidates);

} // namespace ramify
