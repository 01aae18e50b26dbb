#include "ramify/smith.hpp"

#include "ramify/coeff.hpp"

#include <algorithm>
#include <sstream>

namespace ramify {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries))
{
    if (data_.size() != rows * cols)
        throw PreconditionError("IntMatrix: entry count does not match shape");
}

bool IntMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const mpz_class& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw PreconditionError("IntMatrix product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

std::vector<mpz_class> smith_invariants(IntMatrix m)
{
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<mpz_class> diag;
    for (std::size_t t = 0; t < std::min(R, C); ++t) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        auto find_pivot = [&](std::size_t& pr, std::size_t& pc) {
            bool found = false;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (m(i, j) != 0 && (!found || abs(m(i, j)) < abs(m(pr, pc)))) {
                        pr = i;
                        pc = j;
                        found = true;
                    }
            return found;
        };
        std::size_t pr = t, pc = t;
        if (!find_pivot(pr, pc))
            break;
        for (;;) {
            for (std::size_t j = 0; j < C; ++j)
                std::swap(m(t, j), m(pr, j));
            for (std::size_t i = 0; i < R; ++i)
                std::swap(m(i, t), m(i, pc));
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                mpz_class q = m(i, t) / m(t, t);
                if (q != 0)
                    for (std::size_t j = t; j < C; ++j)
                        m(i, j) -= q * m(t, j);
                if (m(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                mpz_class q = m(t, j) / m(t, t);
                if (q != 0)
                    for (std::size_t i = t; i < R; ++i)
                        m(i, j) -= q * m(i, t);
                if (m(t, j) != 0)
                    clean = false;
            }
            if (clean) {
                // Divisibility: fold in any entry the pivot does not divide.
                bool divides = true;
                for (std::size_t i = t + 1; i < R && divides; ++i)
                    for (std::size_t j = t + 1; j < C; ++j)
                        if (m(i, j) % m(t, t) != 0) {
                            for (std::size_t k = t; k < C; ++k)
                                m(t, k) += m(i, k);
                            divides = false;
                            break;
                        }
                if (divides)
                    break;
            }
            pr = t;
            pc = t;
            find_pivot(pr, pc);
        }
        diag.push_back(abs(m(t, t)));
    }
    return diag;
}

std::string ModuleDescriptor::to_string() const
{
    std::ostringstream out;
    bool first = true;
    if (free > 0) {
        out << "Z";
        if (free > 1)
            out << "^" << free;
        first = false;
    }
    for (const auto& t : torsion) {
        out << (first ? "" : " + ") << "Z/" << t.get_str();
        first = false;
    }
    return first ? "0" : out.str();
}

IntMatrixComplex::IntMatrixComplex(std::vector<IntMatrix> differentials) : d_(std::move(differentials))
{
    for (std::size_t s = 1; s < d_.size(); ++s) {
        if (d_[s - 1].cols() != d_[s].rows())
            throw PreconditionError("complex shapes do not compose at position " + std::to_string(s));
        if (!(d_[s - 1] * d_[s]).is_zero())
            throw IntegrityError("d o d != 0 at position " + std::to_string(s));
    }
}

std::size_t IntMatrixComplex::dimension(std::size_t s) const
{
    if (d_.empty())
        throw PreconditionError("empty complex has no positions");
    if (s == 0)
        return d_.front().rows();
    if (s > d_.size())
        throw PreconditionError("position " + std::to_string(s) + " beyond complex length");
    return d_[s - 1].cols();
}

ModuleDescriptor snf_homology(const IntMatrixComplex& c, std::size_t s)
{
    if (s > c.length())
        throw PreconditionError("snf_homology: position " + std::to_string(s) + " beyond complex length " +
                                std::to_string(c.length()));
    const std::size_t n = c.dimension(s);
    std::size_t rank_out = s == 0 ? 0 : smith_invariants(c.differential(s)).size();
    std::vector<mpz_class> incoming;
    if (s < c.length())
        incoming = smith_invariants(c.differential(s + 1));
    ModuleDescriptor h;
    h.free = n - rank_out - incoming.size();
    for (const auto& d : incoming)
        if (d != 1)
            h.torsion.push_back(d);
    std::sort(h.torsion.begin(), h.torsion.end());
    return h;
}

} // namespace ramify
