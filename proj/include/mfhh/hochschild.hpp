#ifndef MFHH_HOCHSCHILD_HPP
#define MFHH_HOCHSCHILD_HPP

#include <map>
#include <string>
#include <vector>

#include "mfhh/koszul.hpp"
#include "mfhh/lattice.hpp"

namespace mfhh {

// One direct summand's contribution to HH^t: which sector, the parity of
// t - dim N_gamma, the indices u and l, and the dimensions it added.
struct HHContribution {
    std::size_t sector = 0;
    int parity = 0;  // 0: H^{-2l}, 1: H^{-2l-1}
    long long u = 0;
    long long l = 0;
    Int dim = 0;
    std::map<Int, Int> weights;  // x0-weight -> multiplicity (when tracked)
};

struct HHRow {
    Int total = 0;
    std::map<Int, Int> by_weight;  // only when weights_tracked
    std::vector<HHContribution> provenance;
};

struct HHTable {
    bool weights_tracked = false;
    std::vector<HHRow> rows;  // index t

    long long t_max() const { return static_cast<long long>(rows.size()) - 1; }
    // paper-style rendering of one row, e.g. "k(-1)^{27} + k(1) + k(4)"
    std::string row_string(long long t) const;
};

struct HHOptions {
    bool strict = true;         // require the convention self-test
    int jobs = 1;               // parallel sector evaluation
    bool verify_euler = false;  // cross-check every evaluated slice degree
};

// General engine: Theorem-style sector sum with rank-computed Koszul
// cohomology.  W is a degree-chi polynomial in the lattice variables.
// Weight tracking is possible only when W does not involve x0.
HHTable hh_mf(const CharacterLattice& L, const WeightedPolynomial& W, long long t_max,
              bool track_weights, const HHOptions& opt = {});

// Cone fast path: W = image of w (no x0 dependence), evaluated through the
// closed-form H^0 / H^{-1} summands (Jacobi basis counting).  Must agree
// with hh_mf on the corresponding W.
HHTable hh_cone(const CharacterLattice& L, const WeightedPolynomial& w, long long t_max,
                const HHOptions& opt = {});

// Corollary-style structural report: HH^0 = k, HH^1 has a weight-0 class,
// HH^1 has no classes of positive x0-weight.
struct CrHH0Report {
    bool hh0_is_k = false;
    bool hh1_has_weight0 = false;
    bool hh1_no_deformation_part = false;
    std::vector<std::string> violations;
    bool pass() const { return hh0_is_k && hh1_has_weight0 && hh1_no_deformation_part; }
};
CrHH0Report check_cr_hh0(const HHTable& table);

// Twisted-deformation detector: every HH^2 class of positive x0-weight
// must arise from the identity sector with u = 1, l = 0, even parity.
struct TwistedDeformationReport {
    bool has_twisted = false;
    std::vector<std::pair<std::size_t, Int>> offenders;  // (sector, weight)
};
TwistedDeformationReport twisted_deformation_detector(const HHTable& table);

// Number of HH^2 classes with positive x0-weight (with multiplicity).
Int deformation_dimension(const HHTable& table);

// Families entering the worked computations: the cusp-type polynomial
// w + x0 x1 ... x n and the ordinary-double-point variants.
WeightedPolynomial cusp_family_polynomial(const CharacterLattice& L,
                                          const WeightedPolynomial& w);
// w + x0^k + x0 x1 ... x n with k chosen so that x0^k has degree chi
WeightedPolynomial odp_family_polynomial(const CharacterLattice& L, const WeightedPolynomial& w,
                                         const Rat& product_coefficient);

}  // namespace mfhh

#endif
