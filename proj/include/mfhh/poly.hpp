#ifndef MFHH_POLY_HPP
#define MFHH_POLY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mfhh/matrix.hpp"
#include "mfhh/rational.hpp"

namespace mfhh {

// Exponent vector; entry k is the exponent of the k-th variable.
struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}

    std::size_t nvars() const { return e.size(); }
    int operator[](std::size_t i) const { return e[i]; }
    bool operator==(const Monomial& o) const { return e == o.e; }
    // lexicographic from the first variable; used as the tie-break order
    // for Jacobi basis selection and slice enumeration
    bool operator<(const Monomial& o) const { return e < o.e; }

    long long total_degree() const {
        long long t = 0;
        for (int v : e) t += v;
        return t;
    }
    Int weighted_degree(const std::vector<Int>& d) const {
        Int t = 0;
        for (std::size_t i = 0; i < e.size(); ++i) t += Int(e[i]) * d[i];
        return t;
    }
    std::string str(const std::vector<std::string>& vars) const;
};

struct WeightSystem {
    std::vector<Int> d;
    Int h;

    Int d0() const {
        Int s = h;
        for (const Int& w : d) s -= w;
        return s;
    }
    bool operator==(const WeightSystem& o) const { return d == o.d && h == o.h; }
};

struct WeightedPolynomial {
    std::vector<std::string> variables;
    std::vector<std::pair<Rat, Monomial>> terms;  // coefficients nonzero, monomials distinct
    std::optional<WeightSystem> weight_system;

    std::size_t nvars() const { return variables.size(); }
    std::string str() const;
};

// Build with validation (distinct monomials, coefficient sizes); infers
// and checks the weight system when `ws` given, infers when absent.
WeightedPolynomial make_polynomial(std::vector<std::string> vars,
                                   std::vector<std::pair<Rat, Monomial>> terms,
                                   std::optional<WeightSystem> ws = std::nullopt);

// The unique gcd-normalized positive solution of  sum_i d_i e_i = h
// over the monomials of w.  Throws NoWeightSystem / AmbiguousWeightSystem.
WeightSystem infer_weight_system(const WeightedPolynomial& w);

// Exponent matrix of an invertible-candidate polynomial (row i = monomial i).
// Requires #terms == #vars.
IntMatrix exponent_matrix(const WeightedPolynomial& w);
bool is_invertible(const WeightedPolynomial& w);

// Berglund--Huebsch transpose: exponent matrix transposed, coefficients 1.
WeightedPolynomial transpose(const WeightedPolynomial& w);

// Hilbert polynomial of the Jacobi ring, prod (1-T^{h-d_i}) / (1-T^{d_i}).
struct HilbertPoly {
    std::vector<Int> coeff;  // coeff[k] = dimension of the degree-k slice

    Int value_at_1() const {
        Int s = 0;
        for (const Int& c : coeff) s += c;
        return s;
    }
    long long degree() const {
        for (std::size_t k = coeff.size(); k-- > 0;)
            if (coeff[k] != 0) return static_cast<long long>(k);
        return -1;
    }
};

HilbertPoly jacobi_hilbert(const WeightSystem& ws);
Int milnor_number(const WeightSystem& ws);

// The non-decreasing sequence w~ with the Hilbert polynomial equal to
// sum_i T^{h - w_i}, plus its tail (all entries after the first).
struct WVector {
    std::vector<Int> full;  // w~ = (w_0 <= ... <= w_{mu-1})
    std::vector<Int> tail;  // (w_i)_{i >= 1}
};
WVector exponents_w_vector(const WeightSystem& ws);

// Monomial basis of Jac_w = k[x]/(dw), slice by slice; smallest
// representatives in graded-lex order.  Throws NotIsolated when a slice
// dimension disagrees with the Hilbert polynomial.
std::vector<Monomial> jacobi_monomial_basis(const WeightedPolynomial& w);

// Partial derivative with respect to variable i.
WeightedPolynomial partial_derivative(const WeightedPolynomial& w, std::size_t i);

// Named families used throughout.
WeightedPolynomial sylvester_polynomial(int n);
WeightedPolynomial fermat_polynomial(int n);        // x_1^{n+1} + ... + x_n^{n+1}
WeightedPolynomial double_cover_polynomial(int n);  // x_1^2 + x_2^{2n} + ... + x_n^{2n}

// Normal forms of the 14 exceptional unimodal singularities, by name
// (Q10..Q12, Z11..Z13, S11, S12, W12, W13, E12..E14, U12).
WeightedPolynomial unimodal_polynomial(const std::string& name);
const std::vector<std::string>& unimodal_names();

// JSON schema: {"variables":["x","y"],"terms":[{"coeff":"1","exp":[2,0]},...]}
WeightedPolynomial polynomial_from_json_text(const std::string& text);
std::string polynomial_to_json_text(const WeightedPolynomial& w);

}  // namespace mfhh

#endif
