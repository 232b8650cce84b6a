#ifndef MFHH_LATTICE_HPP
#define MFHH_LATTICE_HPP

#include <string>
#include <vector>

#include "mfhh/matrix.hpp"
#include "mfhh/poly.hpp"
#include "mfhh/rational.hpp"

namespace mfhh {

// An element of the character group in normal-form coordinates:
// a free Z part, and one entry per torsion factor Z/m_k.
struct DegreeClass {
    Int z;
    std::vector<Int> tors;

    bool operator==(const DegreeClass& o) const { return z == o.z && tors == o.tors; }
    bool operator<(const DegreeClass& o) const {
        if (z != o.z) return z < o.z;
        return tors < o.tors;
    }
};

struct SubgroupSpec {
    enum class Kind { Full, PhiGm, Explicit };
    Kind kind = Kind::Full;
    // phase vectors in (Q/Z)^n generating a finite subgroup of ker chi_w;
    // must contain the grading element j_w = (d_1/h, ..., d_n/h)
    std::vector<std::vector<Rat>> generators;
};

// One element gamma of ker chi with its fixed/moved coordinate split.
struct SectorData {
    std::vector<Rat> phase;           // value of gamma on each variable, in [0,1)
    std::vector<std::size_t> fixed;   // V_gamma: indices with phase 0
    std::vector<std::size_t> moved;   // N_gamma
    DegreeClass det_N_dual;           // class of Lambda^top N_gamma^vee = -sum chi_i
    bool is_identity = false;
};

// Character lattice of the symmetry group Gamma acting on A^n (or A^{n+1}
// with the cone variable), in Smith normal form Z + sum Z/m_k.
class CharacterLattice {
public:
    std::vector<std::string> vars;        // x0 first when has_x0
    bool has_x0 = false;
    std::vector<DegreeClass> var_deg;     // degree of each variable
    std::vector<Int> var_weight;          // Z-components (d_0, d_1, ..., d_n)
    DegreeClass chi, chi0;
    std::vector<Int> moduli;              // torsion moduli, divisibility chain
    WeightSystem base_ws;                 // weights of x_1..x_n
    Int d0;

    // presentation kept for quotient constructions: generators
    // chi_1..chi_n, chi; rows are relations
    IntMatrix relations;

    std::size_t nvars() const { return vars.size(); }

    DegreeClass zero() const { return DegreeClass{Int(0), std::vector<Int>(moduli.size(), Int(0))}; }
    DegreeClass normalize(DegreeClass c) const;
    DegreeClass add(const DegreeClass& a, const DegreeClass& b) const;
    DegreeClass sub(const DegreeClass& a, const DegreeClass& b) const;
    DegreeClass neg(const DegreeClass& a) const;
    DegreeClass scale(const Int& k, const DegreeClass& a) const;
    bool is_zero(const DegreeClass& a) const;

    // degree of a monomial in all lattice variables
    DegreeClass monomial_degree(const Monomial& m) const;

    std::string degree_string(const DegreeClass& c) const;
    std::string normal_form_string() const;  // e.g. "Z x (Z/4)^2"
};

// Construct the lattice for (w, Gamma).  When include_x0, the cone
// variable x0 with character chi0 = chi - sum chi_i is prepended.
CharacterLattice build_lattice(const WeightedPolynomial& w, const SubgroupSpec& sub,
                               bool include_x0);

// All elements of ker chi as phase vectors, deterministically ordered
// (lexicographic); the identity sector comes first.
std::vector<SectorData> enumerate_ker_chi(const CharacterLattice& L);

struct SectorCensus {
    long long fixed_none = 0;     // V_gamma = 0
    long long fixed_x0_only = 0;  // V_gamma = span{x0}
    long long fixed_all = 0;      // identity
    long long other = 0;
};
SectorCensus sector_census(const CharacterLattice& L, const std::vector<SectorData>& sectors);

// JSON: {"group":{"kind":"full"|"phi_gm"|"explicit","generators":[["1/4","3/4"],...]}}
SubgroupSpec subgroup_from_json_text(const std::string& text);

}  // namespace mfhh

#endif
