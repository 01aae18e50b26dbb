#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace ramify {

/// Dense matrix over the exact integers, row-major.
class IntMatrix {
public:
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    bool is_zero() const;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<mpz_class> data_;
};

/// Nonzero invariant factors d_1 | d_2 | ... (all positive); their count is the rank.
std::vector<mpz_class> smith_invariants(IntMatrix m);

/// Finitely generated abelian group Z^free + sum Z/torsion_i, torsion sorted ascending, all > 1.
struct ModuleDescriptor {
    std::size_t free = 0;
    std::vector<mpz_class> torsion;

    bool is_zero() const { return free == 0 && torsion.empty(); }
    std::string to_string() const;
    friend bool operator==(const ModuleDescriptor& a, const ModuleDescriptor& b)
    {
        return a.free == b.free && a.torsion == b.torsion;
    }
};

/// d_1, ..., d_L with d_s : C_s -> C_{s-1}.
class IntMatrixComplex {
public:
    explicit IntMatrixComplex(std::vector<IntMatrix> differentials);

    std::size_t length() const { return d_.size(); }
    /// Rank of C_s for 0 <= s <= length().
    std::size_t dimension(std::size_t s) const;
    const IntMatrix& differential(std::size_t s) const { return d_.at(s - 1); }

private:
    std::vector<IntMatrix> d_;
};

/// H_s from Smith forms of d_s and d_{s+1}; positions outside [1, L] count as zero maps.
ModuleDescriptor snf_homology(const IntMatrixComplex& c, std::size_t s);

} // namespace ramify
