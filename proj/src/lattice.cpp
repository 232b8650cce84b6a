#include "mfhh/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace mfhh {

DegreeClass CharacterLattice::normalize(DegreeClass c) const {
    for (std::size_t k = 0; k < moduli.size(); ++k) c.tors[k] = pos_mod(c.tors[k], moduli[k]);
    return c;
}

DegreeClass CharacterLattice::add(const DegreeClass& a, const DegreeClass& b) const {
    DegreeClass c;
    c.z = a.z + b.z;
    c.tors.resize(moduli.size());
    for (std::size_t k = 0; k < moduli.size(); ++k) c.tors[k] = a.tors[k] + b.tors[k];
    return normalize(std::move(c));
}

DegreeClass CharacterLattice::sub(const DegreeClass& a, const DegreeClass& b) const {
    return add(a, neg(b));
}

DegreeClass CharacterLattice::neg(const DegreeClass& a) const {
    DegreeClass c;
    c.z = -a.z;
    c.tors.resize(moduli.size());
    for (std::size_t k = 0; k < moduli.size(); ++k) c.tors[k] = -a.tors[k];
    return normalize(std::move(c));
}

DegreeClass CharacterLattice::scale(const Int& k, const DegreeClass& a) const {
    DegreeClass c;
    c.z = k * a.z;
    c.tors.resize(moduli.size());
    for (std::size_t j = 0; j < moduli.size(); ++j) c.tors[j] = k * a.tors[j];
    return normalize(std::move(c));
}

bool CharacterLattice::is_zero(const DegreeClass& a) const {
    if (a.z != 0) return false;
    for (const Int& t : a.tors)
        if (t != 0) return false;
    return true;
}

DegreeClass CharacterLattice::monomial_degree(const Monomial& m) const {
    DegreeClass c = zero();
    for (std::size_t i = 0; i < m.nvars(); ++i)
        if (m[i] != 0) c = add(c, scale(Int(m[i]), var_deg[i]));
    return c;
}

std::string CharacterLattice::degree_string(const DegreeClass& c) const {
    std::ostringstream os;
    os << "(" << c.z;
    for (std::size_t k = 0; k < moduli.size(); ++k) os << ", " << c.tors[k] << " mod " << moduli[k];
    os << ")";
    return os.str();
}

std::string CharacterLattice::normal_form_string() const {
    std::ostringstream os;
    os << "Z";
    std::map<Int, int> counts;
    for (const Int& m : moduli) counts[m]++;
    for (const auto& [m, c] : counts) {
        os << " x (Z/" << m << ")";
        if (c > 1) os << "^" << c;
    }
    return os.str();
}

namespace {

// Group closure of phase vectors in (Q/Z)^n under addition.
std::set<std::vector<Rat>> close_group(const std::vector<std::vector<Rat>>& gens, std::size_t n) {
    std::set<std::vector<Rat>> elems;
    elems.insert(std::vector<Rat>(n, Rat(0)));
    std::vector<std::vector<Rat>> frontier(elems.begin(), elems.end());
    while (!frontier.empty()) {
        std::vector<std::vector<Rat>> next;
        for (const auto& e : frontier)
            for (const auto& g : gens) {
                std::vector<Rat> s(n);
                for (std::size_t i = 0; i < n; ++i) s[i] = frac_part(e[i] + g[i]);
                if (elems.insert(s).second) next.push_back(std::move(s));
            }
        frontier = std::move(next);
        if (elems.size() > 200000)
            throw SchemaError("explicit subgroup generators generate too large a group");
    }
    return elems;
}

}  // namespace

CharacterLattice build_lattice(const WeightedPolynomial& w, const SubgroupSpec& sub,
                               bool include_x0) {
    const std::size_t n = w.nvars();
    WeightSystem ws = w.weight_system ? *w.weight_system : infer_weight_system(w);

    // Presentation of the character group on generators chi_1..chi_n, chi:
    // one relation row (i_1, ..., i_n, -1) per monomial of w.
    std::vector<std::vector<Int>> rel;
    for (const auto& [c, m] : w.terms) {
        std::vector<Int> row(n + 1);
        for (std::size_t j = 0; j < n; ++j) row[j] = Int(m[j]);
        row[n] = Int(-1);
        rel.push_back(std::move(row));
    }

    // Subgroup selection: adjoin the characters annihilating Gamma.
    if (sub.kind == SubgroupSpec::Kind::PhiGm) {
        // characters trivial on phi(G_m): everything orthogonal to (d; h)
        IntMatrix wt(1, n + 1);
        for (std::size_t j = 0; j < n; ++j) wt(0, j) = ws.d[j];
        wt(0, n) = ws.h;
        for (auto& v : int_kernel_basis(wt)) rel.push_back(std::move(v));
    } else if (sub.kind == SubgroupSpec::Kind::Explicit) {
        for (const auto& g : sub.generators) {
            if (g.size() != n) throw SchemaError("subgroup generator has wrong length");
            // g must lie in Gamma_w (all monomial phases agree) and kill chi
            Rat first;
            bool have = false;
            for (const auto& [c, m] : w.terms) {
                Rat ph(0);
                for (std::size_t j = 0; j < n; ++j) ph += Rat(m[j]) * g[j];
                ph = frac_part(ph);
                if (!have) {
                    first = ph;
                    have = true;
                } else if (ph != first) {
                    throw SchemaError("subgroup generator does not lie in Gamma_w");
                }
            }
            if (have && first != 0)
                throw SchemaError("subgroup generator does not kill chi");
        }
        // grading element must be contained in the generated group
        std::vector<Rat> jw(n);
        for (std::size_t j = 0; j < n; ++j) jw[j] = frac_part(Rat(ws.d[j], ws.h));
        auto grp = close_group(sub.generators, n);
        if (!grp.count(jw))
            throw GradingElementMissing("explicit subgroup does not contain the grading element");

        // Ann(Gamma) = { a : a.(d,h) = 0 and a.g integral for all generators }.
        IntMatrix wt(1, n + 1);
        for (std::size_t j = 0; j < n; ++j) wt(0, j) = ws.d[j];
        wt(0, n) = ws.h;
        auto basis = int_kernel_basis(wt);  // rank n
        const std::size_t nb = basis.size();
        const std::size_t m = sub.generators.size();
        if (m == 0) {
            for (auto& v : basis) rel.push_back(std::move(v));
        } else {
            // congruences (g . B) y = 0 mod 1, cleared to R y = 0 mod D
            std::vector<std::vector<Rat>> rows(m, std::vector<Rat>(nb, Rat(0)));
            Int D(1);
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t k = 0; k < nb; ++k) {
                    Rat s(0);
                    for (std::size_t i = 0; i < n; ++i) s += sub.generators[a][i] * basis[k][i];
                    rows[a][k] = s;
                    D = lcm(D, denominator(s));
                }
            IntMatrix sys(m, nb + m);
            for (std::size_t a = 0; a < m; ++a) {
                for (std::size_t k = 0; k < nb; ++k)
                    sys(a, k) = numerator(rows[a][k]) * (D / denominator(rows[a][k]));
                sys(a, nb + a) = -D;
            }
            for (const auto& yz : int_kernel_basis(sys)) {
                std::vector<Int> v(n + 1, Int(0));
                for (std::size_t k = 0; k < nb; ++k)
                    for (std::size_t i = 0; i < n + 1; ++i) v[i] += yz[k] * basis[k][i];
                rel.push_back(std::move(v));
            }
        }
    }

    IntMatrix relmat(rel.size(), n + 1);
    for (std::size_t i = 0; i < rel.size(); ++i)
        for (std::size_t j = 0; j < n + 1; ++j) relmat(i, j) = rel[i][j];

    // Gamma^ = coker of relmat^T; SNF puts it in normal form.
    IntMatrix mt(n + 1, rel.size());
    for (std::size_t i = 0; i < rel.size(); ++i)
        for (std::size_t j = 0; j < n + 1; ++j) mt(j, i) = relmat(i, j);
    SNFResult s = snf(mt);

    std::vector<std::size_t> tors_rows, free_rows;
    std::vector<Int> moduli;
    for (std::size_t i = 0; i < n + 1; ++i) {
        Int di = (i < std::min(s.D.rows(), s.D.cols())) ? s.D(i, i) : Int(0);
        if (di == 0)
            free_rows.push_back(i);
        else if (di >= 2) {
            tors_rows.push_back(i);
            moduli.push_back(di);
        }
    }
    if (free_rows.size() != 1)
        throw RankNotOne("character lattice has free rank " + std::to_string(free_rows.size()));
    const std::size_t fr = free_rows[0];

    // class of generator j in normal form coordinates = column j of U,
    // restricted to the free and torsion rows
    auto gen_class = [&](std::size_t j) {
        DegreeClass c;
        c.z = s.U(fr, j);
        for (std::size_t t : tors_rows) c.tors.push_back(s.U(t, j));
        return c;
    };
    std::vector<DegreeClass> gcls(n + 1);
    for (std::size_t j = 0; j < n + 1; ++j) gcls[j] = gen_class(j);

    // orient the free coordinate so chi has Z-part +h
    if (gcls[n].z == -ws.h) {
        for (auto& c : gcls) c.z = -c.z;
    }
    if (gcls[n].z != ws.h)
        throw Error("internal: free component of chi is not +-h");
    for (std::size_t j = 0; j < n; ++j)
        if (gcls[j].z != ws.d[j])
            throw Error("internal: free component of chi_i does not match its weight");

    CharacterLattice L;
    L.base_ws = ws;
    L.moduli = moduli;
    L.relations = relmat;
    L.d0 = ws.d0();
    L.chi = L.normalize(gcls[n]);

    // chi0 = chi - chi_1 - ... - chi_n
    DegreeClass c0 = gcls[n];
    c0.tors.resize(moduli.size(), Int(0));
    for (std::size_t j = 0; j < n; ++j) {
        c0.z -= gcls[j].z;
        for (std::size_t k = 0; k < moduli.size(); ++k) c0.tors[k] -= gcls[j].tors[k];
    }
    L.chi0 = L.normalize(c0);

    L.has_x0 = include_x0;
    if (include_x0) {
        if (L.d0 <= 0)
            throw Error("cone variable requires d0 = h - sum d_i > 0, got d0 = " + L.d0.str());
        L.vars.push_back("x0");
        L.var_deg.push_back(L.chi0);
        L.var_weight.push_back(L.d0);
    }
    for (std::size_t j = 0; j < n; ++j) {
        L.vars.push_back(w.variables[j]);
        L.var_deg.push_back(L.normalize(gcls[j]));
        L.var_weight.push_back(ws.d[j]);
    }
    return L;
}

std::vector<SectorData> enumerate_ker_chi(const CharacterLattice& L) {
    const std::size_t n = L.base_ws.d.size();
    // Hom(Gamma^ / <chi>, Q/Z): quotient by the chi row, then read homs off
    // the torsion factors.
    std::vector<std::vector<Int>> rel;
    for (std::size_t i = 0; i < L.relations.rows(); ++i) {
        std::vector<Int> row(n + 1);
        for (std::size_t j = 0; j < n + 1; ++j) row[j] = L.relations(i, j);
        rel.push_back(std::move(row));
    }
    std::vector<Int> chirow(n + 1, Int(0));
    chirow[n] = 1;
    rel.push_back(chirow);

    IntMatrix mt(n + 1, rel.size());
    for (std::size_t i = 0; i < rel.size(); ++i)
        for (std::size_t j = 0; j < n + 1; ++j) mt(j, i) = rel[i][j];
    SNFResult s = snf(mt);

    std::vector<std::size_t> tors_rows;
    std::vector<Int> q;
    for (std::size_t i = 0; i < n + 1; ++i) {
        Int di = (i < std::min(s.D.rows(), s.D.cols())) ? s.D(i, i) : Int(0);
        if (di == 0)
            throw InfiniteKernel("ker chi is infinite: chi is torsion in the free part");
        if (di >= 2) {
            tors_rows.push_back(i);
            q.push_back(di);
        }
    }

    // generator-coordinate vectors of the tracked variables
    std::vector<std::vector<Int>> varvec;
    if (L.has_x0) {
        std::vector<Int> v(n + 1, Int(-1));
        v[n] = 1;
        varvec.push_back(std::move(v));
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Int> v(n + 1, Int(0));
        v[j] = 1;
        varvec.push_back(std::move(v));
    }
    // images in the quotient's torsion coordinates
    std::vector<std::vector<Int>> varq(varvec.size(), std::vector<Int>(q.size(), Int(0)));
    for (std::size_t v = 0; v < varvec.size(); ++v)
        for (std::size_t t = 0; t < tors_rows.size(); ++t) {
            Int acc = 0;
            for (std::size_t j = 0; j < n + 1; ++j) acc += s.U(tors_rows[t], j) * varvec[v][j];
            varq[v][t] = pos_mod(acc, q[t]);
        }

    std::vector<SectorData> sectors;
    std::vector<Int> tuple(q.size(), Int(0));
    while (true) {
        SectorData sd;
        sd.phase.resize(varvec.size());
        bool ident = true;
        for (std::size_t v = 0; v < varvec.size(); ++v) {
            Rat ph(0);
            for (std::size_t t = 0; t < q.size(); ++t) ph += Rat(tuple[t] * varq[v][t], q[t]);
            sd.phase[v] = frac_part(ph);
            if (sd.phase[v] != 0) ident = false;
        }
        sd.is_identity = ident;
        for (std::size_t v = 0; v < varvec.size(); ++v)
            (sd.phase[v] == 0 ? sd.fixed : sd.moved).push_back(v);
        sectors.push_back(std::move(sd));

        // next tuple
        std::size_t t = 0;
        while (t < q.size()) {
            tuple[t] += 1;
            if (tuple[t] < q[t]) break;
            tuple[t] = 0;
            ++t;
        }
        if (t == q.size()) break;
    }

    for (auto& sd : sectors) {
        DegreeClass d = L.zero();
        for (std::size_t v : sd.moved) d = L.sub(d, L.var_deg[v]);
        sd.det_N_dual = d;
    }

    std::sort(sectors.begin(), sectors.end(),
              [](const SectorData& a, const SectorData& b) { return a.phase < b.phase; });

    // chi evaluates to zero on every sector; with x0 the phases sum to 0
    for (const auto& sd : sectors) {
        if (L.has_x0) {
            Rat sum(0);
            for (const Rat& p : sd.phase) sum += p;
            if (frac_part(sum) != 0) throw Error("internal: sector phases do not sum to zero");
        }
    }
    return sectors;
}

SectorCensus sector_census(const CharacterLattice& L, const std::vector<SectorData>& sectors) {
    SectorCensus c;
    for (const auto& s : sectors) {
        if (s.fixed.size() == L.nvars())
            ++c.fixed_all;
        else if (s.fixed.empty())
            ++c.fixed_none;
        else if (L.has_x0 && s.fixed.size() == 1 && s.fixed[0] == 0)
            ++c.fixed_x0_only;
        else
            ++c.other;
    }
    return c;
}

}  // namespace mfhh
