#include "mfhh/hochschild.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace mfhh {

std::string HHTable::row_string(long long t) const {
    const HHRow& r = rows.at(static_cast<std::size_t>(t));
    if (r.total == 0) return "0";
    std::ostringstream os;
    if (!weights_tracked) {
        os << "k";
        if (r.total != 1) os << "^{" << r.total << "}";
        return os.str();
    }
    bool first = true;
    for (const auto& [w, m] : r.by_weight) {
        if (!first) os << " + ";
        os << "k(" << w << ")";
        if (m != 1) os << "^{" << m << "}";
        first = false;
    }
    return os.str();
}

namespace {

bool polynomial_involves_x0(const CharacterLattice& L, const WeightedPolynomial& W) {
    if (!L.has_x0) return false;
    for (const auto& [c, m] : W.terms)
        if (m[0] != 0) return true;
    return false;
}

void run_over_sectors(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string what;
    std::mutex mu;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            try {
                for (std::size_t i = next.fetch_add(1); i < n && !failed.load();
                     i = next.fetch_add(1))
                    fn(i);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(mu);
                failed.store(true);
                if (what.empty()) what = e.what();
            }
        });
    for (auto& th : pool) th.join();
    if (failed.load()) throw Error(what);
}

// contribution of one sector to one row
struct Tagged {
    long long t;
    HHContribution c;
};

void merge(HHTable& table, std::vector<std::vector<Tagged>>& per_sector) {
    for (auto& list : per_sector)
        for (auto& tc : list) {
            HHRow& row = table.rows[static_cast<std::size_t>(tc.t)];
            row.total += tc.c.dim;
            if (table.weights_tracked)
                for (const auto& [w, m] : tc.c.weights) row.by_weight[w] += m;
            row.provenance.push_back(std::move(tc.c));
        }
}

}  // namespace

HHTable hh_mf(const CharacterLattice& L, const WeightedPolynomial& W, long long t_max,
              bool track_weights, const HHOptions& opt) {
    if (opt.strict) run_convention_selftest();
    if (t_max < 0) throw SchemaError("t_max must be non-negative");
    for (const Int& w : L.var_weight)
        if (w <= 0) throw NonFiniteRow("all variable weights must be positive");
    for (const auto& [c, m] : W.terms)
        if (!(L.monomial_degree(m) == L.chi))
            throw SchemaError("W is not homogeneous of degree chi");

    const bool tracked = track_weights && !polynomial_involves_x0(L, W);
    auto sectors = enumerate_ker_chi(L);

    HHTable table;
    table.weights_tracked = tracked;
    table.rows.resize(static_cast<std::size_t>(t_max) + 1);
    std::vector<std::vector<Tagged>> per_sector(sectors.size());

    run_over_sectors(sectors.size(), opt.jobs, [&](std::size_t si) {
        const SectorData& g = sectors[si];
        const long long nfix = static_cast<long long>(g.fixed.size());
        const long long nmoved = static_cast<long long>(g.moved.size());
        const DegreeClass sum_chi_N = L.neg(g.det_N_dual);
        const bool x0_moved =
            L.has_x0 && std::find(g.moved.begin(), g.moved.end(), std::size_t(0)) != g.moved.end();
        std::set<DegreeClass> euler_checked;

        auto verify_euler_at = [&](const DegreeClass& rho) {
            if (!opt.verify_euler || !euler_checked.insert(rho).second) return;
            Int from_ranks = 0;
            for (long long k = 0; k <= nfix; ++k) {
                auto d = koszul_cohomology_dim(L, W, g, k, rho, false);
                from_ranks += (k % 2 == 0 ? d.total : -d.total);
            }
            if (from_ranks != koszul_euler_char(L, W, g, rho))
                throw Error("euler characteristic cross-check failed on a slice");
        };

        auto add = [&](long long t, int parity, long long u, long long l,
                       const CohomologyDim& d) {
            if (d.total == 0) return;
            Tagged tc;
            tc.t = t;
            tc.c.sector = si;
            tc.c.parity = parity;
            tc.c.u = u;
            tc.c.l = l;
            tc.c.dim = d.total;
            if (tracked)
                for (const auto& [w, m] : d.by_x0_weight)
                    tc.c.weights[x0_moved ? Int(w - 1) : w] = m;
            per_sector[si].push_back(std::move(tc));
        };

        for (long long t = 0; t <= t_max; ++t) {
            const long long diff = t - nmoved;
            if (((diff % 2) + 2) % 2 == 0) {
                const long long u = diff / 2;
                for (long long l = 0; 2 * l <= nfix; ++l) {
                    DegreeClass rho = L.add(L.scale(Int(u + l), L.chi), sum_chi_N);
                    auto d = koszul_cohomology_dim(L, W, g, 2 * l, rho, opt.strict);
                    verify_euler_at(rho);
                    add(t, 0, u, l, d);
                }
            } else {
                const long long u = (diff - 1) / 2;
                for (long long l = 0; 2 * l + 1 <= nfix; ++l) {
                    DegreeClass rho = L.add(L.scale(Int(u + l + 1), L.chi), sum_chi_N);
                    auto d = koszul_cohomology_dim(L, W, g, 2 * l + 1, rho, opt.strict);
                    verify_euler_at(rho);
                    add(t, 1, u, l, d);
                }
            }
        }
    });

    merge(table, per_sector);
    return table;
}

namespace {

// Jacobi basis of the restriction of w to the gamma-fixed base variables,
// with each basis monomial's ambient lattice degree.  The restriction of
// an isolated singularity to a sector's fixed locus is isolated (moved
// partials vanish on the fixed locus since every monomial of w is
// gamma-invariant), so the slice dimensions follow the product formula.
struct GradedJacobiBasis {
    std::vector<Monomial> monomials;  // in ambient variable indexing
    std::vector<DegreeClass> degrees;
};

GradedJacobiBasis restricted_jacobi_basis(const CharacterLattice& L,
                                          const WeightedPolynomial& w,
                                          const SectorData& g) {
    const std::size_t off = L.has_x0 ? 1 : 0;
    // gamma-fixed base variables, in base indexing
    std::vector<std::size_t> fixed_base;
    for (std::size_t v : g.fixed)
        if (v >= off) fixed_base.push_back(v - off);

    GradedJacobiBasis out;
    if (fixed_base.empty()) {
        Monomial one;
        one.e.assign(L.nvars(), 0);
        out.monomials.push_back(one);
        out.degrees.push_back(L.zero());
        return out;
    }

    // restriction of w to the fixed variables, written in those variables
    std::vector<std::string> sub_vars;
    std::vector<Int> sub_d;
    for (std::size_t b : fixed_base) {
        sub_vars.push_back(w.variables[b]);
        sub_d.push_back(L.base_ws.d[b]);
    }
    WeightedPolynomial sub;
    sub.variables = sub_vars;
    for (const auto& [c, m] : w.terms) {
        bool keep = true;
        for (std::size_t b = 0; b < w.nvars(); ++b)
            if (m[b] != 0 &&
                std::find(fixed_base.begin(), fixed_base.end(), b) == fixed_base.end())
                keep = false;
        if (!keep) continue;
        Monomial sm;
        sm.e.resize(fixed_base.size());
        for (std::size_t k = 0; k < fixed_base.size(); ++k) sm.e[k] = m[fixed_base[k]];
        sub.terms.emplace_back(c, std::move(sm));
    }
    sub.weight_system = WeightSystem{sub_d, L.base_ws.h};

    for (const Monomial& bm : jacobi_monomial_basis(sub)) {
        Monomial amb;
        amb.e.assign(L.nvars(), 0);
        for (std::size_t k = 0; k < fixed_base.size(); ++k)
            amb.e[fixed_base[k] + off] = bm[k];
        out.degrees.push_back(L.monomial_degree(amb));
        out.monomials.push_back(std::move(amb));
    }
    return out;
}

}  // namespace

HHTable hh_cone(const CharacterLattice& L, const WeightedPolynomial& w, long long t_max,
                const HHOptions& opt) {
    if (opt.strict) run_convention_selftest();
    if (!L.has_x0) throw SchemaError("hh_cone requires a lattice with the cone variable");
    if (t_max < 0) throw SchemaError("t_max must be non-negative");
    auto sectors = enumerate_ker_chi(L);

    HHTable table;
    table.weights_tracked = true;
    table.rows.resize(static_cast<std::size_t>(t_max) + 1);
    std::vector<std::vector<Tagged>> per_sector(sectors.size());

    run_over_sectors(sectors.size(), opt.jobs, [&](std::size_t si) {
        const SectorData& g = sectors[si];
        const bool x0_fixed = g.phase[0] == 0;
        const long long nmoved = static_cast<long long>(g.moved.size());
        const DegreeClass sum_chi_N = L.neg(g.det_N_dual);
        GradedJacobiBasis jac = restricted_jacobi_basis(L, w, g);

        // count pairs (b, e >= 0) with deg b + e*chi0 = rho; per-weight
        auto count_slice = [&](const DegreeClass& rho, long long e_shift,
                               std::map<Int, Int>& weights) {
            Int total = 0;
            for (const DegreeClass& db : jac.degrees) {
                DegreeClass rem = L.sub(rho, db);
                if (rem.z < 0) continue;
                if (rem.z % L.d0 != 0) continue;
                Int e = rem.z / L.d0;
                if (!(L.scale(e, L.chi0) == rem)) continue;
                weights[e + e_shift] += 1;
                total += 1;
            }
            return total;
        };

        for (long long t = 0; t <= t_max; ++t) {
            const long long diff = t - nmoved;
            Tagged tc;
            tc.t = t;
            tc.c.sector = si;
            if (((diff % 2) + 2) % 2 == 0) {
                // H^0 summand at u = diff/2
                const long long u = diff / 2;
                DegreeClass rho = L.add(L.scale(Int(u), L.chi), sum_chi_N);
                std::map<Int, Int> weights;
                Int dim = 0;
                if (x0_fixed) {
                    dim = count_slice(rho, 0, weights);
                } else {
                    // no k[x0] factor; the monomial must hit rho on the nose
                    for (const DegreeClass& db : jac.degrees)
                        if (db == rho) {
                            weights[Int(-1)] += 1;  // x0^vee from Lambda^top N^vee
                            dim += 1;
                        }
                }
                if (dim != 0) {
                    tc.c.parity = 0;
                    tc.c.u = u;
                    tc.c.l = 0;
                    tc.c.dim = dim;
                    tc.c.weights = std::move(weights);
                    per_sector[si].push_back(tc);
                }
            } else if (x0_fixed) {
                // H^{-1} summand: x0^vee (x) Jac (x) k[x0], weight e - 1
                const long long u = (diff - 1) / 2;
                DegreeClass rho = L.add(L.scale(Int(u), L.chi), sum_chi_N);
                // deg b + (e-1) chi0 = rho  with e >= 0
                DegreeClass shifted = L.add(rho, L.chi0);
                std::map<Int, Int> weights;
                Int dim = count_slice(shifted, -1, weights);
                if (dim != 0) {
                    tc.c.parity = 1;
                    tc.c.u = u;
                    tc.c.l = 0;
                    tc.c.dim = dim;
                    tc.c.weights = std::move(weights);
                    per_sector[si].push_back(tc);
                }
            }
        }
    });

    merge(table, per_sector);
    return table;
}

CrHH0Report check_cr_hh0(const HHTable& table) {
    CrHH0Report rep;
    if (!table.weights_tracked) {
        rep.violations.push_back("weight tracking required for this report");
        return rep;
    }
    if (table.rows.empty()) {
        rep.violations.push_back("empty table");
        return rep;
    }
    const HHRow& r0 = table.rows[0];
    rep.hh0_is_k = r0.total == 1 && r0.by_weight.size() == 1 && r0.by_weight.count(Int(0)) &&
                   r0.by_weight.at(Int(0)) == 1;
    if (!rep.hh0_is_k) rep.violations.push_back("HH^0 is not k in weight 0");
    if (table.rows.size() >= 2) {
        const HHRow& r1 = table.rows[1];
        rep.hh1_has_weight0 = r1.by_weight.count(Int(0)) && r1.by_weight.at(Int(0)) >= 1;
        if (!rep.hh1_has_weight0) rep.violations.push_back("HH^1 has no weight-0 class");
        rep.hh1_no_deformation_part = true;
        for (const auto& [w, m] : r1.by_weight)
            if (w > 0 && m > 0) {
                rep.hh1_no_deformation_part = false;
                rep.violations.push_back("HH^1 has a class of positive x0-weight " + w.str());
            }
    }
    return rep;
}

TwistedDeformationReport twisted_deformation_detector(const HHTable& table) {
    TwistedDeformationReport rep;
    if (!table.weights_tracked) throw SchemaError("detector requires weight tracking");
    if (table.rows.size() < 3) throw SchemaError("detector requires the table up to t = 2");
    for (const HHContribution& c : table.rows[2].provenance) {
        bool allowed = c.sector == 0 && c.parity == 0 && c.u == 1 && c.l == 0;
        for (const auto& [w, m] : c.weights)
            if (w > 0 && m > 0 && !allowed)
                for (Int i = 0; i < m; ++i) rep.offenders.emplace_back(c.sector, w);
    }
    rep.has_twisted = !rep.offenders.empty();
    return rep;
}

Int deformation_dimension(const HHTable& table) {
    if (!table.weights_tracked) throw SchemaError("deformation dimension requires weights");
    if (table.rows.size() < 3) throw SchemaError("table must reach t = 2");
    Int total = 0;
    for (const auto& [w, m] : table.rows[2].by_weight)
        if (w > 0) total += m;
    return total;
}

WeightedPolynomial cusp_family_polynomial(const CharacterLattice& L,
                                          const WeightedPolynomial& w) {
    Monomial prod;
    prod.e.assign(L.nvars(), 1);
    return ambient_with_terms(L, w, {{Rat(1), prod}});
}

WeightedPolynomial odp_family_polynomial(const CharacterLattice& L, const WeightedPolynomial& w,
                                         const Rat& product_coefficient) {
    if (L.chi.z % L.d0 != 0)
        throw SchemaError("no pure x0 power of degree chi exists");
    Int k = L.chi.z / L.d0;
    if (!(L.scale(k, L.chi0) == L.chi))
        throw SchemaError("no pure x0 power of degree chi exists (torsion obstruction)");
    Monomial x0k;
    x0k.e.assign(L.nvars(), 0);
    x0k.e[0] = static_cast<int>(k.convert_to<long long>());
    Monomial prod;
    prod.e.assign(L.nvars(), 1);
    return ambient_with_terms(L, w, {{Rat(1), x0k}, {product_coefficient, prod}});
}

}  // namespace mfhh
