#include "mfhh/matrix.hpp"

#include <algorithm>

namespace mfhh {

template <typename T>
void Mat<T>::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

template <typename T>
void Mat<T>::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

template <typename T>
void Mat<T>::add_row(std::size_t i, std::size_t j, const T& f) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += f * (*this)(j, k);
}

template <typename T>
void Mat<T>::add_col(std::size_t i, std::size_t j, const T& f) {
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += f * (*this)(k, j);
}

template <typename T>
void Mat<T>::scale_row(std::size_t i, const T& f) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) *= f;
}

template class Mat<Int>;
template class Mat<Rat>;

namespace {

// True when D(s,s) is the only nonzero entry in row s and column s
// below/right of the corner.
bool corner_isolated(const IntMatrix& d, std::size_t s) {
    for (std::size_t i = s + 1; i < d.rows(); ++i)
        if (d(i, s) != 0) return false;
    for (std::size_t j = s + 1; j < d.cols(); ++j)
        if (d(s, j) != 0) return false;
    return true;
}

// Location of the nonzero entry of minimal absolute value in the
// trailing submatrix starting at (s,s).  Returns false if all zero.
bool locate_min_pivot(const IntMatrix& d, std::size_t s, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best = 0;
    for (std::size_t i = s; i < d.rows(); ++i)
        for (std::size_t j = s; j < d.cols(); ++j) {
            if (d(i, j) == 0) continue;
            Int a = abs(d(i, j));
            if (!found || a < best) {
                best = a;
                pi = i;
                pj = j;
                found = true;
            }
        }
    return found;
}

}  // namespace

SNFResult snf(const IntMatrix& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    SNFResult res;
    res.D = m;
    res.U = IntMatrix::identity(nr);
    res.V = IntMatrix::identity(nc);
    IntMatrix& D = res.D;
    IntMatrix& U = res.U;
    IntMatrix& V = res.V;

    const std::size_t nmin = std::min(nr, nc);
    for (std::size_t s = 0; s < nmin; ++s) {
        std::size_t pi = s, pj = s;
        if (!locate_min_pivot(D, s, pi, pj)) break;  // trailing block is zero

        // Reduce row/column s against the current minimal pivot and
        // re-pivot; the corner's absolute value strictly decreases, so
        // this terminates with an isolated corner.
        while (true) {
            D.swap_rows(s, pi);
            U.swap_rows(s, pi);
            D.swap_cols(s, pj);
            V.swap_cols(s, pj);
            for (std::size_t i = s + 1; i < nr; ++i) {
                if (D(i, s) == 0) continue;
                Int q = floor_div(D(i, s), D(s, s));
                D.add_row(i, s, -q);
                U.add_row(i, s, -q);
            }
            for (std::size_t j = s + 1; j < nc; ++j) {
                if (D(s, j) == 0) continue;
                Int q = floor_div(D(s, j), D(s, s));
                D.add_col(j, s, -q);
                V.add_col(j, s, -q);
            }
            if (corner_isolated(D, s)) break;
            locate_min_pivot(D, s, pi, pj);
        }

        // Enforce divisibility: fold any non-multiple into the corner and
        // redo the isolation loop for this s.
        bool redo = false;
        for (std::size_t i = s + 1; i < nr && !redo; ++i)
            for (std::size_t j = s + 1; j < nc && !redo; ++j)
                if (D(i, j) % D(s, s) != 0) {
                    D.add_row(s, i, Int(1));
                    U.add_row(s, i, Int(1));
                    redo = true;
                }
        if (redo) {
            --s;
            continue;
        }

        if (D(s, s) < 0) {
            D.scale_row(s, Int(-1));
            U.scale_row(s, Int(-1));
        }
    }

    for (std::size_t s = 0; s < nmin; ++s)
        if (D(s, s) != 0) res.invariant_factors.push_back(D(s, s));
    return res;
}

namespace {

// Fraction-free elimination; returns rank.  Destroys its argument.
std::size_t bareiss_rank(IntMatrix& a) {
    const std::size_t nr = a.rows(), nc = a.cols();
    Int prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t p = r;
        while (p < nr && a(p, c) == 0) ++p;
        if (p == nr) continue;
        a.swap_rows(r, p);
        for (std::size_t i = r + 1; i < nr; ++i) {
            for (std::size_t j = c + 1; j < nc; ++j)
                a(i, j) = (a(i, j) * a(r, c) - a(i, c) * a(r, j)) / prev;
            a(i, c) = 0;
        }
        prev = a(r, c);
        ++r;
    }
    return r;
}

}  // namespace

std::size_t rank(const IntMatrix& m) {
    IntMatrix a = m;
    return bareiss_rank(a);
}

std::size_t rank(const RatMatrix& m) {
    // Clear denominators row by row, then eliminate fraction-free.
    IntMatrix a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int l(1);
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, denominator(m(i, j)));
        for (std::size_t j = 0; j < m.cols(); ++j)
            a(i, j) = numerator(m(i, j)) * (l / denominator(m(i, j)));
    }
    return bareiss_rank(a);
}

Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw ShapeMismatch("det: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return Int(1);
    IntMatrix a = m;
    Int prev(1);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return Int(0);
        if (p != c) {
            a.swap_rows(c, p);
            sign = -sign;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(c, c) - a(i, c) * a(c, j)) / prev;
            a(i, c) = 0;
        }
        prev = a(c, c);
    }
    return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    RatMatrix a = m;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t p = r;
        while (p < nr && a(p, c) == 0) ++p;
        if (p == nr) continue;
        a.swap_rows(r, p);
        Rat inv = Rat(1) / a(r, c);
        for (std::size_t j = c; j < nc; ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rat f = a(i, c);
            for (std::size_t j = c; j < nc; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(nc, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;

    std::vector<std::vector<Rat>> basis;
    for (std::size_t c = 0; c < nc; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rat> v(nc, Rat(0));
        v[c] = Rat(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a(i, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<Int>> int_kernel_basis(const IntMatrix& m) {
    // M x = 0  <=>  (U M V) y = 0 with x = V y; the kernel lattice is
    // spanned by the columns of V at the zero diagonal positions.
    SNFResult s = snf(m);
    const std::size_t nc = m.cols();
    std::vector<std::vector<Int>> basis;
    for (std::size_t j = 0; j < nc; ++j) {
        bool zero_col = true;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (s.D(i, j) != 0) zero_col = false;
        if (!zero_col) continue;
        std::vector<Int> v(nc);
        for (std::size_t i = 0; i < nc; ++i) v[i] = s.V(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace mfhh
