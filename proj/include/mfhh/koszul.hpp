#ifndef MFHH_KOSZUL_HPP
#define MFHH_KOSZUL_HPP

#include <map>
#include <optional>
#include <vector>

#include "mfhh/lattice.hpp"
#include "mfhh/poly.hpp"

namespace mfhh {

// Degree bookkeeping.  The contraction differential of the Koszul complex
// is degree-preserving once position -k carries the twist degree +k*chi:
// an element (xi, m) at position -k has total degree
//     deg(m) - sum_{i in xi} chi_i + k*chi.
// This is the unique reading of the twist factors under which the
// contraction with dW is degree 0; its orientation is pinned by the
// convention self-test below.

struct DegreeTarget {
    DegreeClass cls;
    std::optional<Int> x0_weight;  // optional filter on the x0 exponent
};

// Monomials in the given subset of lattice variables of exact degree rho,
// graded-lex order.
std::vector<Monomial> enumerate_monomials(const CharacterLattice& L,
                                          const std::vector<std::size_t>& vars,
                                          const DegreeClass& rho);
std::vector<Monomial> enumerate_monomials(const CharacterLattice& L,
                                          const std::vector<std::size_t>& vars,
                                          const DegreeTarget& rho);
// Count of the above without materializing the list.
Int count_monomials(const CharacterLattice& L, const std::vector<std::size_t>& vars,
                    const DegreeClass& rho);

// dim H^{-k}(dW_gamma) in degree rho.  When W does not involve x0 the
// differential preserves the x0 exponent and the dimension is refined by
// x0-weight (the weight of (xi, m) is m[x0] minus one if x0 in xi).
struct CohomologyDim {
    Int total = 0;
    bool refined = false;
    std::map<Int, Int> by_x0_weight;  // only populated when refined
};

CohomologyDim koszul_cohomology_dim(const CharacterLattice& L, const WeightedPolynomial& W,
                                    const SectorData& gamma, long long k, const DegreeClass& rho,
                                    bool strict = false);

// Euler characteristic of the degree-rho slice of C^*(dW_gamma), computed
// from the character product series  prod_{i in V_gamma} (1 - T^{chi - chi_i})
// by coefficient extraction (no ranks).  Cross-checks the rank route.
Int koszul_euler_char(const CharacterLattice& L, const WeightedPolynomial& W,
                      const SectorData& gamma, const DegreeClass& rho);

// Convention self-test: Fermat n=3, identity sector, k=0, rho = chi must
// give dimension 2 with x0-weights {4, 1}.  Throws CalibrationFailed on
// mismatch; afterwards strict-mode slice computations are allowed.
void run_convention_selftest();
bool convention_validated();

// Image of the base polynomial w(x_1..x_n) in the lattice's variable list
// (prepending a zero x0 exponent when the lattice has the cone variable).
WeightedPolynomial ambient_polynomial(const CharacterLattice& L, const WeightedPolynomial& w);

// Ambient polynomial plus extra terms (e.g. the cusp term x_0 ... x_n);
// checks Gamma-degree-chi homogeneity of every term.
WeightedPolynomial ambient_with_terms(const CharacterLattice& L, const WeightedPolynomial& w,
                                      const std::vector<std::pair<Rat, Monomial>>& extra);

}  // namespace mfhh

#endif
