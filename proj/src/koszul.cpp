#include "mfhh/koszul.hpp"

#include <algorithm>
#include <atomic>
#include <set>

namespace mfhh {

namespace {

void enumerate_rec(const CharacterLattice& L, const std::vector<std::size_t>& vars,
                   std::size_t pos, const Int& zleft, DegreeClass acc, Monomial& cur,
                   const DegreeClass& rho, std::vector<Monomial>* out, Int* count) {
    if (pos == vars.size()) {
        if (zleft == 0 && acc == rho) {
            if (out) out->push_back(cur);
            if (count) ++*count;
        }
        return;
    }
    const std::size_t v = vars[pos];
    const Int& wv = L.var_weight[v];
    Int maxe = floor_div(zleft, wv);
    for (Int e = 0; e <= maxe; ++e) {
        cur.e[v] = static_cast<int>(e.convert_to<long long>());
        enumerate_rec(L, vars, pos + 1, zleft - e * wv,
                      e == 0 ? acc : L.add(acc, L.scale(e, L.var_deg[v])), cur, rho, out, count);
    }
    cur.e[v] = 0;
}

}  // namespace

std::vector<Monomial> enumerate_monomials(const CharacterLattice& L,
                                          const std::vector<std::size_t>& vars,
                                          const DegreeClass& rho) {
    std::vector<Monomial> out;
    if (rho.z < 0) return out;
    for (std::size_t v : vars)
        if (L.var_weight[v] <= 0) throw NonFiniteRow("variable with non-positive weight");
    Monomial cur;
    cur.e.assign(L.nvars(), 0);
    enumerate_rec(L, vars, 0, rho.z, L.zero(), cur, rho, &out, nullptr);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Monomial> enumerate_monomials(const CharacterLattice& L,
                                          const std::vector<std::size_t>& vars,
                                          const DegreeTarget& rho) {
    auto all = enumerate_monomials(L, vars, rho.cls);
    if (!rho.x0_weight) return all;
    if (!L.has_x0) throw SchemaError("x0 weight filter without a cone variable");
    std::vector<Monomial> out;
    for (auto& m : all)
        if (Int(m[0]) == *rho.x0_weight) out.push_back(m);
    return out;
}

Int count_monomials(const CharacterLattice& L, const std::vector<std::size_t>& vars,
                    const DegreeClass& rho) {
    Int count = 0;
    if (rho.z < 0) return count;
    Monomial cur;
    cur.e.assign(L.nvars(), 0);
    enumerate_rec(L, vars, 0, rho.z, L.zero(), cur, rho, nullptr, &count);
    return count;
}

namespace {

std::atomic<bool> g_convention_ok{false};

struct Term {
    Rat c;
    Monomial m;
};

// restriction of W to the gamma-fixed coordinate subspace
std::vector<Term> restrict_terms(const WeightedPolynomial& W, const std::vector<bool>& is_fixed) {
    std::vector<Term> out;
    for (const auto& [c, m] : W.terms) {
        bool keep = true;
        for (std::size_t i = 0; i < m.nvars(); ++i)
            if (m[i] != 0 && !is_fixed[i]) keep = false;
        if (keep) out.push_back({c, m});
    }
    return out;
}

std::vector<Term> partial(const std::vector<Term>& terms, std::size_t i) {
    std::vector<Term> out;
    for (const auto& t : terms) {
        if (t.m[i] == 0) continue;
        Term d{t.c * t.m[i], t.m};
        d.m.e[i] -= 1;
        out.push_back(std::move(d));
    }
    return out;
}

// basis of C^{-j} in degree rho: pairs (xi, m), xi a j-subset of the fixed
// variables, deg(m) = rho + sum_{i in xi} chi_i - j*chi
struct PositionBasis {
    std::vector<std::pair<std::vector<std::size_t>, Monomial>> elems;
    std::map<std::pair<std::vector<std::size_t>, Monomial>, std::size_t> index;
};

void subsets_rec(const std::vector<std::size_t>& fixed, std::size_t start, std::size_t need,
                 std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
    if (need == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i + need <= fixed.size(); ++i) {
        cur.push_back(fixed[i]);
        subsets_rec(fixed, i + 1, need - 1, cur, out);
        cur.pop_back();
    }
}

PositionBasis build_basis(const CharacterLattice& L, const std::vector<std::size_t>& fixed,
                          long long j, const DegreeClass& rho) {
    PositionBasis b;
    if (j < 0 || j > static_cast<long long>(fixed.size())) return b;
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> cur;
    subsets_rec(fixed, 0, static_cast<std::size_t>(j), cur, subsets);
    for (const auto& xi : subsets) {
        // deg(m) = rho + sum_{i in xi} chi_i - j*chi
        DegreeClass target = L.sub(rho, L.scale(Int(j), L.chi));
        for (std::size_t i : xi) target = L.add(target, L.var_deg[i]);
        for (const Monomial& m : enumerate_monomials(L, fixed, target))
            b.elems.emplace_back(xi, m);
    }
    for (std::size_t k = 0; k < b.elems.size(); ++k) b.index[b.elems[k]] = k;
    return b;
}

// x0-weight of a basis element (only meaningful when refined)
Int elem_weight(const std::pair<std::vector<std::size_t>, Monomial>& e, bool has_x0) {
    Int w = has_x0 ? Int(e.second[0]) : Int(0);
    if (has_x0)
        for (std::size_t i : e.first)
            if (i == 0) w -= 1;
    return w;
}

// sparse differential C^{-j} -> C^{-j+1}: contraction with sum x_i (d_i W)
struct SparseMat {
    std::size_t rows = 0, cols = 0;                       // rows: target, cols: source
    std::vector<std::vector<std::pair<std::size_t, Rat>>> col;  // per source column

    IntMatrix densify_for_rank() const {
        // orient with the smaller dimension as rows and clear denominators
        bool transpose = rows > cols;
        std::size_t r = transpose ? cols : rows, c = transpose ? rows : cols;
        IntMatrix a(r, c);
        RatMatrix q(r, c);
        for (std::size_t j = 0; j < cols; ++j)
            for (const auto& [i, v] : col[j]) {
                if (transpose)
                    q(j, i) = v;
                else
                    q(i, j) = v;
            }
        for (std::size_t i = 0; i < r; ++i) {
            Int l(1);
            for (std::size_t j = 0; j < c; ++j) l = lcm(l, denominator(q(i, j)));
            for (std::size_t j = 0; j < c; ++j)
                a(i, j) = numerator(q(i, j)) * (l / denominator(q(i, j)));
        }
        return a;
    }
};

SparseMat build_differential(const CharacterLattice& L, const std::vector<std::vector<Term>>& dW,
                             const PositionBasis& src, const PositionBasis& dst) {
    SparseMat m;
    m.rows = dst.elems.size();
    m.cols = src.elems.size();
    m.col.resize(m.cols);
    for (std::size_t s = 0; s < src.elems.size(); ++s) {
        const auto& [xi, mono] = src.elems[s];
        for (std::size_t p = 0; p < xi.size(); ++p) {
            const std::size_t i = xi[p];
            const Rat sign = (p % 2 == 0) ? Rat(1) : Rat(-1);
            std::vector<std::size_t> xi2 = xi;
            xi2.erase(xi2.begin() + static_cast<long long>(p));
            for (const Term& t : dW[i]) {
                Monomial prod = mono;
                for (std::size_t v = 0; v < prod.nvars(); ++v) prod.e[v] += t.m[v];
                auto it = dst.index.find({xi2, prod});
                if (it == dst.index.end())
                    throw Error("internal: differential leaves the degree slice");
                m.col[s].emplace_back(it->second, sign * t.c);
            }
        }
    }
    return m;
}

std::size_t sparse_rank(const SparseMat& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    return rank(m.densify_for_rank());
}

// verify d o d = 0 exactly
void check_dd_zero(const SparseMat& d1, const SparseMat& d2) {
    // d1: C^{-k-1} -> C^{-k}, d2: C^{-k} -> C^{-k+1}
    for (std::size_t s = 0; s < d1.cols; ++s) {
        std::map<std::size_t, Rat> acc;
        for (const auto& [mid, v] : d1.col[s])
            for (const auto& [t, w] : d2.col[mid]) acc[t] += v * w;
        for (const auto& [t, v] : acc)
            if (v != 0) throw Error("internal: Koszul differential does not square to zero");
    }
}

}  // namespace

CohomologyDim koszul_cohomology_dim(const CharacterLattice& L, const WeightedPolynomial& W,
                                    const SectorData& gamma, long long k, const DegreeClass& rho,
                                    bool strict) {
    if (strict && !g_convention_ok.load())
        throw DegreeConventionUnvalidated(
            "strict mode: run_convention_selftest() has not passed in this session");

    CohomologyDim out;
    const auto& fixed = gamma.fixed;
    if (k < 0 || k > static_cast<long long>(fixed.size())) return out;

    std::vector<bool> is_fixed(L.nvars(), false);
    for (std::size_t i : fixed) is_fixed[i] = true;
    auto wg = restrict_terms(W, is_fixed);

    bool w_has_x0 = false;
    if (L.has_x0)
        for (const auto& [c, m] : W.terms)
            if (m[0] != 0) w_has_x0 = true;
    out.refined = L.has_x0 && !w_has_x0;

    std::vector<std::vector<Term>> dW(L.nvars());
    for (std::size_t i : fixed) dW[i] = partial(wg, i);

    PositionBasis below = build_basis(L, fixed, k + 1, rho);  // C^{-k-1}
    PositionBasis here = build_basis(L, fixed, k, rho);       // C^{-k}
    PositionBasis above = build_basis(L, fixed, k - 1, rho);  // C^{-k+1}

    SparseMat d_in = build_differential(L, dW, below, here);
    SparseMat d_out = build_differential(L, dW, here, above);
    check_dd_zero(d_in, d_out);

    if (!out.refined) {
        Int dim = Int(static_cast<long long>(here.elems.size()));
        dim -= Int(static_cast<long long>(sparse_rank(d_in)));
        dim -= Int(static_cast<long long>(sparse_rank(d_out)));
        out.total = dim;
        return out;
    }

    // block-decompose by x0-weight; the differential preserves it
    std::map<Int, std::vector<std::size_t>> blocks_here, blocks_below, blocks_above;
    for (std::size_t i = 0; i < here.elems.size(); ++i)
        blocks_here[elem_weight(here.elems[i], L.has_x0)].push_back(i);
    for (std::size_t i = 0; i < below.elems.size(); ++i)
        blocks_below[elem_weight(below.elems[i], L.has_x0)].push_back(i);
    for (std::size_t i = 0; i < above.elems.size(); ++i)
        blocks_above[elem_weight(above.elems[i], L.has_x0)].push_back(i);

    std::set<Int> weights;
    for (auto& [w, v] : blocks_here) weights.insert(w);

    for (const Int& w : weights) {
        const auto& hb = blocks_here[w];
        std::map<std::size_t, std::size_t> hpos;
        for (std::size_t i = 0; i < hb.size(); ++i) hpos[hb[i]] = i;

        auto block_rank = [&](const SparseMat& d, const std::vector<std::size_t>& src_ids,
                              const std::map<std::size_t, std::size_t>& dst_pos,
                              std::size_t dst_n) {
            SparseMat sub;
            sub.rows = dst_n;
            sub.cols = src_ids.size();
            sub.col.resize(sub.cols);
            for (std::size_t s = 0; s < src_ids.size(); ++s)
                for (const auto& [t, v] : d.col[src_ids[s]]) {
                    auto it = dst_pos.find(t);
                    if (it == dst_pos.end())
                        throw Error("internal: differential does not preserve the x0-weight");
                    sub.col[s].emplace_back(it->second, v);
                }
            return sparse_rank(sub);
        };

        // incoming: sources in below with this weight
        std::size_t rank_in = 0;
        if (auto it = blocks_below.find(w); it != blocks_below.end())
            rank_in = block_rank(d_in, it->second, hpos, hb.size());
        // outgoing: sources are this block; targets in above with this weight
        std::map<std::size_t, std::size_t> apos;
        std::size_t acount = 0;
        if (auto it = blocks_above.find(w); it != blocks_above.end()) {
            for (std::size_t i = 0; i < it->second.size(); ++i) apos[it->second[i]] = i;
            acount = it->second.size();
        }
        std::size_t rank_out = block_rank(d_out, hb, apos, acount);

        Int dim = Int(static_cast<long long>(hb.size())) -
                  Int(static_cast<long long>(rank_in)) - Int(static_cast<long long>(rank_out));
        if (dim < 0) throw Error("internal: negative cohomology dimension");
        if (dim > 0) out.by_x0_weight[w] = dim;
        out.total += dim;
    }
    return out;
}

Int koszul_euler_char(const CharacterLattice& L, const WeightedPolynomial& W,
                      const SectorData& gamma, const DegreeClass& rho) {
    (void)W;
    // [C^*(dW_gamma)] = prod_{i in V_gamma} (1 - T^{chi - chi_i}) * [S_gamma];
    // expand the product and extract the coefficient at rho by counting
    // monomials, without any rank computation.
    const auto& fixed = gamma.fixed;
    Int total = 0;
    const std::size_t nf = fixed.size();
    if (nf > 62) throw Error("too many fixed variables for subset expansion");
    for (unsigned long long mask = 0; mask < (1ull << nf); ++mask) {
        DegreeClass shift = rho;
        int bits = 0;
        for (std::size_t p = 0; p < nf; ++p)
            if (mask & (1ull << p)) {
                ++bits;
                shift = L.add(shift, L.var_deg[fixed[p]]);
                shift = L.sub(shift, L.chi);
            }
        Int c = count_monomials(L, fixed, shift);
        total += (bits % 2 == 0) ? c : -c;
    }
    return total;
}

bool convention_validated() { return g_convention_ok.load(); }

WeightedPolynomial ambient_polynomial(const CharacterLattice& L, const WeightedPolynomial& w) {
    WeightedPolynomial W;
    W.variables = L.vars;
    const std::size_t off = L.has_x0 ? 1 : 0;
    if (w.nvars() + off != L.nvars())
        throw ShapeMismatch("polynomial does not match the lattice's base variables");
    for (const auto& [c, m] : w.terms) {
        Monomial m2;
        m2.e.assign(L.nvars(), 0);
        for (std::size_t i = 0; i < m.nvars(); ++i) m2.e[i + off] = m[i];
        W.terms.emplace_back(c, m2);
    }
    return W;
}

WeightedPolynomial ambient_with_terms(const CharacterLattice& L, const WeightedPolynomial& w,
                                      const std::vector<std::pair<Rat, Monomial>>& extra) {
    WeightedPolynomial W = ambient_polynomial(L, w);
    for (const auto& [c, m] : extra) {
        if (m.nvars() != L.nvars()) throw ShapeMismatch("extra term has wrong variable count");
        W.terms.emplace_back(c, m);
    }
    for (const auto& [c, m] : W.terms)
        if (!(L.monomial_degree(m) == L.chi))
            throw SchemaError("term " + m.str(L.vars) + " is not of degree chi");
    return W;
}

void run_convention_selftest() {
    if (g_convention_ok.load()) return;
    SubgroupSpec full;
    auto w = fermat_polynomial(3);
    auto L = build_lattice(w, full, true);
    auto sectors = enumerate_ker_chi(L);
    const SectorData& id = sectors.front();
    if (!id.is_identity) throw CalibrationFailed("identity sector not first");
    WeightedPolynomial W = ambient_polynomial(L, w);
    auto dim = koszul_cohomology_dim(L, W, id, 0, L.chi, false);
    bool ok = dim.total == 2 && dim.refined && dim.by_x0_weight.size() == 2 &&
              dim.by_x0_weight.count(Int(1)) && dim.by_x0_weight.count(Int(4)) &&
              dim.by_x0_weight.at(Int(1)) == 1 && dim.by_x0_weight.at(Int(4)) == 1;
    if (!ok)
        throw CalibrationFailed(
            "convention self-test failed: Fermat n=3 slice did not produce weights {4,1}");
    g_convention_ok.store(true);
}

}  // namespace mfhh
