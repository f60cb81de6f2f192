#include "jewelkit/homology.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "jewelkit/multigraph.hpp"
#include "jewelkit/spheresys.hpp"

namespace jewelkit {

IntMatrix IntMatrix::zero(int r, int c) {
    IntMatrix m;
    m.rows = r;
    m.cols = c;
    m.a.assign(r, std::vector<Int>(c, Int(0)));
    return m;
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m = zero(n, n);
    for (int i = 0; i < n; ++i) m.a[i][i] = 1;
    return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
    if (cols != o.rows) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix r = zero(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < o.cols; ++j)
                if (o.a[k][j] != 0) r.a[i][j] += a[i][k] * o.a[k][j];
        }
    return r;
}

bool IntMatrix::is_zero() const {
    for (const auto& row : a)
        for (const Int& x : row)
            if (x != 0) return false;
    return true;
}

namespace {

constexpr int kVerifyThreshold = 160;

Int rounded_quotient(const Int& num, const Int& den) {
    // nearest integer quotient, ties toward zero magnitude control
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Int den_abs = abs(den);
    if (Int(2) * r > den_abs) q += (den > 0 ? 1 : -1);
    return q;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    SmithResult res;
    res.d = m;
    res.u = IntMatrix::identity(m.rows);
    res.v = IntMatrix::identity(m.cols);
    IntMatrix& d = res.d;
    IntMatrix& u = res.u;
    IntMatrix& v = res.v;

    auto row_op = [&](int dst, int src, const Int& q) {  // row dst -= q * row src
        for (int j = 0; j < d.cols; ++j) d.a[dst][j] -= q * d.a[src][j];
        for (int j = 0; j < m.rows; ++j) u.a[dst][j] -= q * u.a[src][j];
    };
    auto col_op = [&](int dst, int src, const Int& q) {
        for (int i = 0; i < d.rows; ++i) d.a[i][dst] -= q * d.a[i][src];
        for (int i = 0; i < m.cols; ++i) v.a[i][dst] -= q * v.a[i][src];
    };

    const int tmax = std::min(m.rows, m.cols);
    for (int t = 0; t < tmax; ++t) {
        for (;;) {
            // least-absolute-value nonzero pivot in the trailing submatrix
            int pi = -1, pj = -1;
            for (int i = t; i < d.rows; ++i)
                for (int j = t; j < d.cols; ++j)
                    if (d.a[i][j] != 0 &&
                        (pi < 0 || abs(d.a[i][j]) < abs(d.a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) { t = tmax; break; }
            if (pi != t) {
                std::swap(d.a[pi], d.a[t]);
                std::swap(u.a[pi], u.a[t]);
            }
            if (pj != t) {
                for (int i = 0; i < d.rows; ++i) std::swap(d.a[i][pj], d.a[i][t]);
                for (int i = 0; i < m.cols; ++i) std::swap(v.a[i][pj], v.a[i][t]);
            }
            if (d.a[t][t] < 0) {
                for (int j = 0; j < d.cols; ++j) d.a[t][j] = -d.a[t][j];
                for (int j = 0; j < m.rows; ++j) u.a[t][j] = -u.a[t][j];
            }

            bool dirty = false;
            for (int i = t + 1; i < d.rows; ++i)
                if (d.a[i][t] != 0) {
                    row_op(i, t, rounded_quotient(d.a[i][t], d.a[t][t]));
                    if (d.a[i][t] != 0) dirty = true;
                }
            for (int j = t + 1; j < d.cols; ++j)
                if (d.a[t][j] != 0) {
                    col_op(j, t, rounded_quotient(d.a[t][j], d.a[t][t]));
                    if (d.a[t][j] != 0) dirty = true;
                }
            if (dirty) continue;

            // pivot must divide the rest of the submatrix
            bool fixed = false;
            for (int i = t + 1; i < d.rows && !fixed; ++i)
                for (int j = t + 1; j < d.cols && !fixed; ++j)
                    if (d.a[i][j] % d.a[t][t] != 0) {
                        row_op(t, i, Int(-1));  // pull the offending row in
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (t == tmax) break;
    }

    for (int i = 0; i < tmax; ++i)
        if (d.a[i][i] != 0) res.invariant_factors.push_back(d.a[i][i]);
    res.rank = static_cast<int>(res.invariant_factors.size());

    if (std::max(m.rows, m.cols) <= kVerifyThreshold) {
        if (!(u.mul(m).mul(v) == d))
            throw std::logic_error("smith_normal_form: transform re-multiplication failed");
        res.verified = true;
    }
    return res;
}

// ---- simplicial homology -----------------------------------------------------

HomologyResult simplicial_homology(const std::vector<std::vector<int>>& maximal_faces) {
    std::vector<std::set<std::vector<int>>> faces;  // by dimension
    for (const auto& f : maximal_faces) {
        std::vector<int> s = f;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty()) continue;
        const int dim = static_cast<int>(s.size()) - 1;
        if (dim >= static_cast<int>(faces.size())) faces.resize(dim + 1);
        // downward closure over vertex subsets
        const int nsub = 1 << s.size();
        for (int m = 1; m < nsub; ++m) {
            std::vector<int> sub;
            for (std::size_t i = 0; i < s.size(); ++i)
                if ((m >> i) & 1) sub.push_back(s[i]);
            faces[sub.size() - 1].insert(sub);
        }
    }

    HomologyResult out;
    if (faces.empty()) return out;
    const int top = static_cast<int>(faces.size()) - 1;

    std::vector<std::vector<std::vector<int>>> basis(top + 1);
    std::vector<std::map<std::vector<int>, int>> index(top + 1);
    for (int k = 0; k <= top; ++k) {
        basis[k].assign(faces[k].begin(), faces[k].end());
        for (int i = 0; i < static_cast<int>(basis[k].size()); ++i) index[k][basis[k][i]] = i;
    }

    // boundaries[k]: C_k -> C_{k-1}; the augmentation to the empty face sits
    // at k = 0, which makes everything reduced
    std::vector<IntMatrix> bd(top + 1);
    bd[0] = IntMatrix::zero(1, static_cast<int>(basis[0].size()));
    for (int j = 0; j < bd[0].cols; ++j) bd[0].a[0][j] = 1;
    for (int k = 1; k <= top; ++k) {
        bd[k] = IntMatrix::zero(static_cast<int>(basis[k - 1].size()),
                                static_cast<int>(basis[k].size()));
        for (int j = 0; j < static_cast<int>(basis[k].size()); ++j) {
            const auto& f = basis[k][j];
            for (std::size_t drop = 0; drop < f.size(); ++drop) {
                std::vector<int> sub;
                for (std::size_t i = 0; i < f.size(); ++i)
                    if (i != drop) sub.push_back(f[i]);
                bd[k].a[index[k - 1][sub]][j] += (drop % 2 == 0) ? 1 : -1;
            }
        }
    }

    std::vector<SmithResult> snf(top + 2);
    for (int k = 0; k <= top; ++k) snf[k] = smith_normal_form(bd[k]);

    long euler = 0;
    for (int k = 0; k <= top; ++k)
        euler += (k % 2 == 0 ? 1 : -1) * static_cast<long>(basis[k].size());
    out.euler_characteristic = euler;

    for (int k = 0; k <= top; ++k) {
        HomologyGroup g;
        g.degree = k;
        const int rank_in = snf[k].rank;
        const int rank_out = (k + 1 <= top) ? snf[k + 1].rank : 0;
        g.betti = static_cast<long>(basis[k].size()) - rank_in - rank_out;
        if (k + 1 <= top)
            for (const Int& f : snf[k + 1].invariant_factors)
                if (f > 1) g.torsion.push_back(f);
        out.groups.push_back(std::move(g));
    }
    return out;
}

// ---- chain complexes ----------------------------------------------------------

void ChainComplex::verify_dsquared() const {
    for (std::size_t k = 2; k < boundaries.size(); ++k)
        if (!boundaries[k - 1].mul(boundaries[k]).is_zero())
            throw std::logic_error("boundary does not square to zero in degree " +
                                   std::to_string(k));
}

HomologyResult rational_homology(const ChainComplex& c) {
    const int top = c.top_degree();
    HomologyResult out;
    if (top < 0) return out;

    std::vector<int> ranks(top + 2, 0);
    for (int k = 1; k <= top; ++k) ranks[k] = smith_normal_form(c.boundaries[k]).rank;

    long euler = 0, betti_sum = 0;
    for (int k = 0; k <= top; ++k) {
        HomologyGroup g;
        g.degree = k;
        g.betti = static_cast<long>(c.dims[k]) - ranks[k] - ranks[k + 1];
        euler += (k % 2 == 0 ? 1 : -1) * static_cast<long>(c.dims[k]);
        betti_sum += (k % 2 == 0 ? 1 : -1) * g.betti;
        out.groups.push_back(std::move(g));
    }
    out.euler_characteristic = euler;
    if (euler != betti_sum)
        throw std::logic_error("Euler characteristic disagrees with the Betti sum");
    return out;
}

ChainComplex quotient_chain_complex(int n, int jobs) {
    ClassFilter f;
    f.core = true;
    f.complete = false;
    auto classes = enumerate_classes(n, f, jobs);

    int max_edges = 0;
    for (const auto& c : classes) max_edges = std::max(max_edges, c.edge_count);
    const int top = max_edges - 1;

    // basis per degree: classes with no orientation-reversing symmetry
    std::vector<std::vector<const SystemClass*>> basis(top + 1);
    std::vector<std::map<std::string, int>> index(top + 1);
    for (const auto& c : classes) {
        if (has_odd_edge_automorphism(c.representative.graph, &c.representative.genus)) continue;
        const int k = c.edge_count - 1;
        index[k][c.code] = static_cast<int>(basis[k].size());
        basis[k].push_back(&c);
    }

    ChainComplex cc;
    cc.dims.resize(top + 1);
    cc.labels.resize(top + 1);
    cc.boundaries.resize(top + 1);
    for (int k = 0; k <= top; ++k) {
        cc.dims[k] = static_cast<int>(basis[k].size());
        for (const auto* c : basis[k]) cc.labels[k].push_back(c->code);
    }

    cc.boundaries[0] = IntMatrix::zero(0, cc.dims[0]);
    for (int k = 1; k <= top; ++k) {
        IntMatrix m = IntMatrix::zero(cc.dims[k - 1], cc.dims[k]);
        for (int col = 0; col < cc.dims[k]; ++col) {
            const DecoratedGraph& rep = basis[k][col]->representative;  // canonical edge order
            for (int i = 0; i <= k; ++i) {
                EdgeSet keep = rep.graph.all_edges();
                keep.erase(i);
                DecoratedGraph face = subsystem_class(rep, keep);
                CanonicalForm cf = canonical_form(face.graph, &face.genus);
                auto it = index[k - 1].find(cf.code);
                if (it == index[k - 1].end()) continue;  // face class has an odd symmetry
                int sign = ((i % 2 == 0) ? 1 : -1) * permutation_sign(cf.edge_map);
                m.a[it->second][col] += sign;
            }
        }
        cc.boundaries[k] = std::move(m);
    }

    cc.verify_dsquared();
    return cc;
}

}  // namespace jewelkit
