#include "mfhh/poly.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace mfhh {

std::string Monomial::str(const std::vector<std::string>& vars) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << "*";
        os << vars[i];
        if (e[i] != 1) os << "^" << e[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

std::string WeightedPolynomial::str() const {
    std::ostringstream os;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const Rat& c = terms[t].first;
        if (t > 0) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rat a = c > 0 ? c : Rat(-c);
        if (a != 1 || terms[t].second.total_degree() == 0) os << rational_string(a) << "*";
        os << terms[t].second.str(variables);
    }
    if (terms.empty()) os << "0";
    return os.str();
}

WeightedPolynomial make_polynomial(std::vector<std::string> vars,
                                   std::vector<std::pair<Rat, Monomial>> terms,
                                   std::optional<WeightSystem> ws) {
    WeightedPolynomial w;
    w.variables = std::move(vars);
    std::set<Monomial> seen;
    for (auto& [c, m] : terms) {
        if (c == 0) throw SchemaError("zero coefficient in polynomial term");
        if (m.nvars() != w.variables.size())
            throw ShapeMismatch("monomial length does not match variable count");
        for (int x : m.e)
            if (x < 0) throw SchemaError("negative exponent");
        if (!seen.insert(m).second) throw SchemaError("duplicate monomial in polynomial");
    }
    // Term order is preserved: the exponent matrix (and hence the
    // transpose) pairs the i-th written monomial with the i-th variable.
    w.terms = std::move(terms);
    if (ws) {
        Int g = ws->h;
        for (const Int& di : ws->d) g = gcd(g, di);
        if (g != 1) throw SchemaError("weight system not gcd-normalized");
        for (const auto& [c, m] : w.terms)
            if (m.weighted_degree(ws->d) != ws->h)
                throw SchemaError("polynomial is not weighted homogeneous for the given weights");
        w.weight_system = ws;
    }
    return w;
}

WeightSystem infer_weight_system(const WeightedPolynomial& w) {
    const std::size_t n = w.nvars();
    if (w.terms.empty()) throw NoWeightSystem("empty polynomial");
    IntMatrix m(w.terms.size(), n + 1);
    for (std::size_t t = 0; t < w.terms.size(); ++t) {
        for (std::size_t j = 0; j < n; ++j) m(t, j) = Int(w.terms[t].second[j]);
        m(t, n) = Int(-1);
    }
    auto ker = int_kernel_basis(m);
    if (ker.empty()) throw NoWeightSystem("weight equations are inconsistent");
    if (ker.size() > 1)
        throw AmbiguousWeightSystem("weight system is not determined uniquely");
    std::vector<Int> v = ker[0];
    if (v[n] < 0)
        for (Int& x : v) x = -x;
    WeightSystem ws;
    ws.d.assign(v.begin(), v.begin() + n);
    ws.h = v[n];
    Int dmax = 0;
    for (const Int& di : ws.d) {
        if (di < 1) throw NoWeightSystem("weight system has a non-positive weight");
        dmax = std::max(dmax, di);
    }
    if (ws.h <= dmax) throw NoWeightSystem("total weight h does not exceed max weight");
    return ws;
}

IntMatrix exponent_matrix(const WeightedPolynomial& w) {
    if (w.terms.size() != w.nvars())
        throw ShapeMismatch("exponent matrix requires #terms == #variables");
    IntMatrix m(w.terms.size(), w.nvars());
    for (std::size_t t = 0; t < w.terms.size(); ++t)
        for (std::size_t j = 0; j < w.nvars(); ++j) m(t, j) = Int(w.terms[t].second[j]);
    return m;
}

bool is_invertible(const WeightedPolynomial& w) {
    if (w.terms.size() != w.nvars()) return false;
    return det(exponent_matrix(w)) != 0;
}

WeightedPolynomial transpose(const WeightedPolynomial& w) {
    if (!is_invertible(w)) throw NotInvertible("transpose requires an invertible polynomial");
    IntMatrix a = exponent_matrix(w);
    std::vector<std::pair<Rat, Monomial>> terms;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Monomial m;
        m.e.resize(a.rows());
        for (std::size_t i = 0; i < a.rows(); ++i)
            m.e[i] = static_cast<int>(a(i, j).convert_to<long long>());
        terms.emplace_back(Rat(1), std::move(m));
    }
    return make_polynomial(w.variables, std::move(terms));
}

namespace {

// (1 - T^k) * p
std::vector<Int> mul_one_minus_power(const std::vector<Int>& p, long long k) {
    std::vector<Int> q(p.size() + static_cast<std::size_t>(k), Int(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
        q[i] += p[i];
        q[i + k] -= p[i];
    }
    return q;
}

// exact division by (1 - T^k); throws if not divisible
std::vector<Int> div_one_minus_power(const std::vector<Int>& p, long long k) {
    // (1 - T^k) q = p  =>  q[i] = p[i] + q[i-k]
    std::vector<Int> q(p.size(), Int(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
        q[i] = p[i];
        if (i >= static_cast<std::size_t>(k)) q[i] += q[i - k];
    }
    // verify the top k coefficients of q vanish (no remainder)
    for (std::size_t i = p.size(); i-- > p.size() - std::min<std::size_t>(k, p.size());)
        if (q[i] != 0) throw NonPolynomialSeries("Hilbert series is not a polynomial");
    while (!q.empty() && q.back() == 0) q.pop_back();
    return q;
}

}  // namespace

HilbertPoly jacobi_hilbert(const WeightSystem& ws) {
    for (const Int& di : ws.d)
        if (ws.h - di <= 0) throw NonPolynomialSeries("need h - d_i > 0 for the Jacobi Hilbert series");
    std::vector<Int> p{Int(1)};
    for (const Int& di : ws.d) p = mul_one_minus_power(p, (ws.h - di).convert_to<long long>());
    for (const Int& di : ws.d) p = div_one_minus_power(p, di.convert_to<long long>());
    HilbertPoly hp;
    hp.coeff = std::move(p);
    for (const Int& c : hp.coeff)
        if (c < 0) throw NonPolynomialSeries("Hilbert series has a negative coefficient");
    return hp;
}

Int milnor_number(const WeightSystem& ws) { return jacobi_hilbert(ws).value_at_1(); }

WVector exponents_w_vector(const WeightSystem& ws) {
    HilbertPoly hp = jacobi_hilbert(ws);
    WVector wv;
    // Hilbert = sum_i T^{h - w_i}: read degrees off in decreasing order so
    // the w_i come out non-decreasing.
    for (std::size_t k = hp.coeff.size(); k-- > 0;)
        for (Int c = 0; c < hp.coeff[k]; ++c) wv.full.push_back(ws.h - Int(static_cast<long long>(k)));
    if (ws.d.size() == 3 && ws.d0() == 1 && !wv.full.empty() && wv.full.front() != -2)
        throw Error("internal: w_0 != -2 for a 3-variable weight system with d0 = 1");
    if (!wv.full.empty()) wv.tail.assign(wv.full.begin() + 1, wv.full.end());
    return wv;
}

WeightedPolynomial partial_derivative(const WeightedPolynomial& w, std::size_t i) {
    std::vector<std::pair<Rat, Monomial>> terms;
    for (const auto& [c, m] : w.terms) {
        if (m[i] == 0) continue;
        Monomial d = m;
        d.e[i] -= 1;
        terms.emplace_back(c * m[i], std::move(d));
    }
    WeightedPolynomial out;
    out.variables = w.variables;
    out.terms = std::move(terms);
    return out;
}

namespace {

// All monomials in `nv` variables with weights d and weighted degree
// exactly `target`, ascending lex order.
void enumerate_weighted(std::size_t pos, std::size_t nv, const std::vector<Int>& d,
                        const Int& target, Monomial& cur, std::vector<Monomial>& out) {
    if (pos == nv) {
        if (target == 0) out.push_back(cur);
        return;
    }
    if (target < 0) return;
    Int maxe = floor_div(target, d[pos]);
    for (Int e = 0; e <= maxe; ++e) {
        cur.e[pos] = static_cast<int>(e.convert_to<long long>());
        enumerate_weighted(pos + 1, nv, d, target - e * d[pos], cur, out);
    }
    cur.e[pos] = 0;
}

std::vector<Monomial> monomials_of_weighted_degree(std::size_t nv, const std::vector<Int>& d,
                                                   const Int& target) {
    std::vector<Monomial> out;
    Monomial cur;
    cur.e.assign(nv, 0);
    enumerate_weighted(0, nv, d, target, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

// Incremental exact row reduction used for quotient-basis selection.
struct Eliminator {
    // rows kept in echelon form: (pivot column, dense row)
    std::vector<std::pair<std::size_t, std::vector<Rat>>> rows;

    // Reduce v in place; returns false if v reduces to zero.
    bool reduce(std::vector<Rat>& v) const {
        for (const auto& [p, r] : rows) {
            if (v[p] == 0) continue;
            Rat f = v[p] / r[p];
            for (std::size_t j = p; j < v.size(); ++j)
                if (r[j] != 0) v[j] -= f * r[j];
        }
        for (const Rat& x : v)
            if (x != 0) return true;
        return false;
    }

    // Insert (assumes already reduced, nonzero).
    void insert(std::vector<Rat> v) {
        std::size_t p = 0;
        while (v[p] == 0) ++p;
        rows.emplace_back(p, std::move(v));
        std::sort(rows.begin(), rows.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
};

}  // namespace

std::vector<Monomial> jacobi_monomial_basis(const WeightedPolynomial& w) {
    WeightSystem ws = w.weight_system ? *w.weight_system : infer_weight_system(w);
    HilbertPoly hp = jacobi_hilbert(ws);
    const std::size_t n = w.nvars();
    std::vector<WeightedPolynomial> dw;
    for (std::size_t i = 0; i < n; ++i) dw.push_back(partial_derivative(w, i));

    std::vector<Monomial> basis;
    // Slices above the socle must vanish; max(d_i) consecutive zero slices
    // force all higher ones to vanish too (divide by one variable), so
    // checking that far is a complete isolatedness test.
    const long long socle = hp.degree();
    Int dmax = 0;
    for (const Int& di : ws.d) dmax = std::max(dmax, di);
    const long long top = socle + dmax.convert_to<long long>();
    for (long long deg = 0; deg <= top; ++deg) {
        Int want = deg < static_cast<long long>(hp.coeff.size()) ? hp.coeff[deg] : Int(0);
        auto mons = monomials_of_weighted_degree(n, ws.d, Int(deg));
        std::map<Monomial, std::size_t> index;
        for (std::size_t k = 0; k < mons.size(); ++k) index[mons[k]] = k;

        Eliminator elim;
        std::size_t ideal_rank = 0;
        // degree-deg slice of the Jacobian ideal: m' * dw_i with
        // wdeg(m') = deg - (h - d_i)
        for (std::size_t i = 0; i < n; ++i) {
            Int mdeg = Int(deg) - (ws.h - ws.d[i]);
            if (mdeg < 0) continue;
            for (const Monomial& mp : monomials_of_weighted_degree(n, ws.d, mdeg)) {
                std::vector<Rat> row(mons.size(), Rat(0));
                for (const auto& [c, t] : dw[i].terms) {
                    Monomial prod = t;
                    for (std::size_t j = 0; j < n; ++j) prod.e[j] += mp[j];
                    row[index.at(prod)] += c;
                }
                if (elim.reduce(row)) {
                    elim.insert(std::move(row));
                    ++ideal_rank;
                }
            }
        }
        if (Int(static_cast<long long>(mons.size() - ideal_rank)) != want)
            throw NotIsolated("slice dimension disagrees with the Hilbert polynomial at degree " +
                              std::to_string(deg));
        // greedy: take the lex-smallest monomials independent modulo the
        // ideal slice and the previously chosen ones
        for (const Monomial& m : mons) {
            std::vector<Rat> v(mons.size(), Rat(0));
            v[index.at(m)] = 1;
            if (elim.reduce(v)) {
                elim.insert(std::move(v));
                basis.push_back(m);
            }
        }
    }
    if (Int(static_cast<long long>(basis.size())) != hp.value_at_1())
        throw NotIsolated("total basis size does not match the Milnor number");
    return basis;
}

WeightedPolynomial sylvester_polynomial(int n) {
    if (n < 1) throw SchemaError("sylvester_polynomial requires n >= 1");
    std::vector<Int> s;
    Int prod = 1;
    for (int i = 0; i < n; ++i) {
        s.push_back(prod + 1);
        prod *= s.back();
    }
    Int h = prod;  // s_{n+1} - 1 = s_1 ... s_n
    std::vector<std::string> vars;
    std::vector<std::pair<Rat, Monomial>> terms;
    std::vector<Int> d;
    for (int i = 0; i < n; ++i) {
        vars.push_back("x" + std::to_string(i + 1));
        d.push_back(h / s[i]);
    }
    for (int i = 0; i < n; ++i) {
        Monomial m;
        m.e.assign(n, 0);
        m.e[i] = static_cast<int>(s[i].convert_to<long long>());
        terms.emplace_back(Rat(1), std::move(m));
    }
    WeightSystem ws{d, h};
    return make_polynomial(vars, std::move(terms), ws);
}

WeightedPolynomial fermat_polynomial(int n) {
    if (n < 1) throw SchemaError("fermat_polynomial requires n >= 1");
    std::vector<std::string> vars;
    std::vector<std::pair<Rat, Monomial>> terms;
    for (int i = 0; i < n; ++i) {
        vars.push_back("x" + std::to_string(i + 1));
        Monomial m;
        m.e.assign(n, 0);
        m.e[i] = n + 1;
        terms.emplace_back(Rat(1), std::move(m));
    }
    WeightSystem ws{std::vector<Int>(n, Int(1)), Int(n + 1)};
    return make_polynomial(vars, std::move(terms), ws);
}

namespace {

struct UnimodalForm {
    const char* name;
    // three monomials in (x, y, z)
    int e[3][3];
};

// Arnold's 14 exceptional unimodal singularities
const UnimodalForm kUnimodal[] = {
    {"Q10", {{2, 0, 1}, {0, 3, 0}, {0, 0, 4}}}, {"Q11", {{2, 0, 1}, {0, 3, 0}, {0, 1, 3}}},
    {"Q12", {{2, 0, 1}, {0, 3, 0}, {0, 0, 5}}}, {"Z11", {{2, 0, 0}, {0, 3, 1}, {0, 0, 5}}},
    {"Z12", {{2, 0, 0}, {0, 3, 1}, {0, 1, 4}}}, {"Z13", {{2, 0, 0}, {0, 3, 1}, {0, 0, 6}}},
    {"S11", {{2, 0, 1}, {1, 2, 0}, {0, 0, 4}}}, {"S12", {{2, 0, 1}, {1, 2, 0}, {0, 1, 3}}},
    {"W12", {{2, 0, 0}, {0, 4, 0}, {0, 0, 5}}}, {"W13", {{2, 0, 0}, {0, 4, 0}, {0, 1, 4}}},
    {"E12", {{2, 0, 0}, {0, 3, 0}, {0, 0, 7}}}, {"E13", {{2, 0, 0}, {0, 3, 0}, {0, 1, 5}}},
    {"E14", {{2, 0, 0}, {0, 3, 0}, {0, 0, 8}}}, {"U12", {{3, 0, 0}, {0, 3, 0}, {0, 0, 4}}},
};

}  // namespace

const std::vector<std::string>& unimodal_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& f : kUnimodal) v.push_back(f.name);
        return v;
    }();
    return names;
}

WeightedPolynomial unimodal_polynomial(const std::string& name) {
    for (const auto& f : kUnimodal) {
        if (name != f.name) continue;
        std::vector<std::pair<Rat, Monomial>> terms;
        for (int t = 0; t < 3; ++t)
            terms.emplace_back(Rat(1), Monomial({f.e[t][0], f.e[t][1], f.e[t][2]}));
        auto w = make_polynomial({"x", "y", "z"}, std::move(terms));
        w.weight_system = infer_weight_system(w);
        return w;
    }
    throw SchemaError("unknown singularity name: " + name);
}

WeightedPolynomial double_cover_polynomial(int n) {
    if (n < 2) throw SchemaError("double_cover_polynomial requires n >= 2");
    std::vector<std::string> vars;
    std::vector<std::pair<Rat, Monomial>> terms;
    for (int i = 0; i < n; ++i) {
        vars.push_back("x" + std::to_string(i + 1));
        Monomial m;
        m.e.assign(n, 0);
        m.e[i] = (i == 0) ? 2 : 2 * n;
        terms.emplace_back(Rat(1), std::move(m));
    }
    std::vector<Int> d(n, Int(1));
    d[0] = n;
    WeightSystem ws{d, Int(2 * n)};
    return make_polynomial(vars, std::move(terms), ws);
}

}  // namespace mfhh
