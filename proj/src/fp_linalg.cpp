#include "ramify/fp_linalg.hpp"

#include "ramify/coeff.hpp"

#include <algorithm>
#include <tuple>
#include <utility>

namespace ramify {

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p)
{
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1)
        throw PreconditionError("fp_inverse: zero has no inverse");
    if (t < 0)
        t += p;
    return static_cast<std::uint32_t>(t);
}

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0)
{
}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n)
{
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1 % p;
    return m;
}

FpMatrix FpMatrix::from_rows(std::uint32_t p, std::size_t cols, std::span<const FpVector> rows)
{
    FpMatrix m(p, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw PreconditionError("from_rows: row length mismatch");
        std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + r * cols);
    }
    return m;
}

FpVector FpMatrix::row(std::size_t r) const
{
    return FpVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

FpVector FpMatrix::apply(std::span<const std::uint32_t> v) const
{
    if (v.size() != cols_)
        throw PreconditionError("apply: vector length mismatch");
    FpVector out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c)
            acc += std::uint64_t(data_[r * cols_ + c]) * v[c];
        out[r] = static_cast<std::uint32_t>(acc % p_);
    }
    return out;
}

FpMatrix FpMatrix::transpose() const
{
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

bool FpMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](std::uint32_t x) { return x == 0; });
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b)
{
    if (a.cols_ != b.rows_ || a.p_ != b.p_)
        throw PreconditionError("matrix product shape mismatch");
    FpMatrix c(a.p_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            std::uint64_t x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) = static_cast<std::uint32_t>((c(i, j) + x * b(k, j)) % a.p_);
        }
    return c;
}

FpMatrix operator+(const FpMatrix& a, const FpMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.p_ != b.p_)
        throw PreconditionError("matrix sum shape mismatch");
    FpMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] = (c.data_[i] + b.data_[i]) % a.p_;
    return c;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(std::vector<FpVector>& rows, std::uint32_t p, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0)
            ++sel;
        if (sel == rows.size())
            continue;
        std::swap(rows[r], rows[sel]);
        std::uint64_t inv = fp_inverse(rows[r][c], p);
        for (auto& x : rows[r])
            x = static_cast<std::uint32_t>(x * inv % p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            std::uint64_t f = p - rows[i][c];
            for (std::size_t j = c; j < cols; ++j)
                rows[i][j] = static_cast<std::uint32_t>((rows[i][j] + f * rows[r][j]) % p);
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

} // namespace

std::size_t FpMatrix::rank() const
{
    std::vector<FpVector> rows;
    for (std::size_t r = 0; r < rows_; ++r)
        rows.push_back(row(r));
    return rref(rows, p_, cols_).size();
}

std::vector<FpVector> FpMatrix::kernel() const
{
    std::vector<FpVector> rows;
    for (std::size_t r = 0; r < rows_; ++r)
        rows.push_back(row(r));
    auto pivots = rref(rows, p_, cols_);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<FpVector> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free])
            continue;
        FpVector v(cols_, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = (p_ - rows[i][free]) % p_;
        basis.push_back(std::move(v));
    }
    return basis;
}

Subspace::Subspace(std::uint32_t p, std::size_t ambient) : p_(p), n_(ambient) {}

Subspace Subspace::span(std::uint32_t p, std::size_t ambient, std::span<const FpVector> vectors)
{
    Subspace s(p, ambient);
    for (const auto& v : vectors) {
        if (v.size() != ambient)
            throw PreconditionError("span: vector length mismatch");
        s.basis_.push_back(v);
    }
    s.normalize();
    return s;
}

Subspace Subspace::whole(std::uint32_t p, std::size_t ambient)
{
    std::vector<FpVector> e;
    for (std::size_t i = 0; i < ambient; ++i) {
        FpVector v(ambient, 0);
        v[i] = 1;
        e.push_back(std::move(v));
    }
    return span(p, ambient, e);
}

void Subspace::normalize()
{
    for (auto& v : basis_)
        for (auto& x : v)
            x %= p_;
    pivots_ = rref(basis_, p_, n_);
}

FpVector Subspace::residue(std::span<const std::uint32_t> v) const
{
    FpVector r(v.begin(), v.end());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        std::size_t c = pivots_[i];
        if (r[c] == 0)
            continue;
        std::uint64_t f = p_ - r[c] % p_;
        for (std::size_t j = c; j < n_; ++j)
            r[j] = static_cast<std::uint32_t>((r[j] + f * basis_[i][j]) % p_);
    }
    return r;
}

FpVector Subspace::coordinates(std::span<const std::uint32_t> v) const
{
    if (!contains(v))
        throw PreconditionError("coordinates: vector is not in the subspace");
    FpVector c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i)
        c[i] = v[pivots_[i]] % p_;
    return c;
}

bool Subspace::contains(std::span<const std::uint32_t> v) const
{
    auto r = residue(v);
    return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; });
}

bool Subspace::insert(FpVector v)
{
    if (contains(v))
        return false;
    basis_.push_back(std::move(v));
    normalize();
    return true;
}

bool Subspace::contains(const Subspace& other) const
{
    return std::all_of(other.basis_.begin(), other.basis_.end(), [this](const FpVector& v) { return contains(v); });
}

Subspace Subspace::sum(const Subspace& other) const
{
    std::vector<FpVector> all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span(p_, n_, all);
}

Subspace Subspace::intersect(const Subspace& other) const
{
    // Solve a.B = b.C: kernel of the stacked transpose.
    std::size_t k1 = basis_.size(), k2 = other.basis_.size();
    FpMatrix m(p_, n_, k1 + k2);
    for (std::size_t i = 0; i < k1; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            m(j, i) = basis_[i][j];
    for (std::size_t i = 0; i < k2; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            m(j, k1 + i) = (p_ - other.basis_[i][j]) % p_;
    std::vector<FpVector> vecs;
    for (const auto& coeffs : m.kernel()) {
        FpVector v(n_, 0);
        for (std::size_t i = 0; i < k1; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                v[j] = static_cast<std::uint32_t>((v[j] + std::uint64_t(coeffs[i]) * basis_[i][j]) % p_);
        vecs.push_back(std::move(v));
    }
    return span(p_, n_, vecs);
}

std::vector<FpVector> complement_basis(const Subspace& base, std::span<const FpVector> candidates)
{
    Subspace acc = base;
    std::vector<FpVector> chosen;
    for (const auto& v : candidates)
        if (acc.insert(v))
            chosen.push_back(v);
    return chosen;
}

} // namespace ramify
