#ifndef MFHH_MATRIX_HPP
#define MFHH_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "mfhh/rational.hpp"

namespace mfhh {

// Dense matrix with exact entries.  Row-major.
template <typename T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c, T(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Mat operator*(const Mat& o) const {
        Mat out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const T& b = o(k, j);
                    if (b != 0) out(i, j) += a * b;
                }
            }
        return out;
    }

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row(i) += f * row(j), col analogue
    void add_row(std::size_t i, std::size_t j, const T& f);
    void add_col(std::size_t i, std::size_t j, const T& f);
    void scale_row(std::size_t i, const T& f);

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using IntMatrix = Mat<Int>;
using RatMatrix = Mat<Rat>;

// Smith normal form: U * M * V = D with U, V unimodular and D diagonal
// with divisibility chain d1 | d2 | ... , all di >= 0.
struct SNFResult {
    IntMatrix D, U, V;
    std::vector<Int> invariant_factors;  // nonzero diagonal entries, in order
};

SNFResult snf(const IntMatrix& m);

// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rank(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);

// Determinant of a square integer matrix (Bareiss).
Int det(const IntMatrix& m);

// Basis of the right null space { x : M x = 0 } over Q.
std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& m);

// Basis of the integer kernel lattice { x in Z^n : M x = 0 } (saturated,
// via SNF).
std::vector<std::vector<Int>> int_kernel_basis(const IntMatrix& m);

}  // namespace mfhh

#endif
