#ifndef SIMHOL_TEST_ORACLES_HPP
#define SIMHOL_TEST_ORACLES_HPP

// Independent brute-force solvers used as oracles. These deliberately avoid
// the library's parameterizations: curvature maps are expanded over an
// explicit value basis and the Bianchi system is solved directly.

#include "simhol/liealg.hpp"

namespace simhol::testing {

inline MatQ eta_minkowski(unsigned n) {
    // basis (p, e_1..e_n, q): eta(p,q)=1, eta(e_i,e_i)=1
    MatQ eta(n + 2, n + 2);
    eta.at(0, n + 1) = eta.at(n + 1, 0) = Rational(1);
    for (unsigned i = 1; i <= n; ++i) eta.at(i, i) = Rational(1);
    return eta;
}

/// dim { R : Lambda^2 W -> span(values) with first Bianchi }, solved by
/// direct elimination over one coefficient per (pair, basis element).
inline unsigned brute_force_curvature_dim(unsigned W, const std::vector<MatQ>& values) {
    unsigned k = static_cast<unsigned>(values.size());
    if (k == 0 || W < 2) return 0;
    unsigned npairs = W * (W - 1) / 2;
    auto pidx = [&](unsigned a, unsigned b) { return a * W - a * (a + 1) / 2 + (b - a - 1); };
    unsigned unknowns = npairs * k;
    std::vector<VecQ> rows;
    for (unsigned a = 0; a < W; ++a)
        for (unsigned b = a + 1; b < W; ++b)
            for (unsigned c = b + 1; c < W; ++c)
                for (unsigned l = 0; l < W; ++l) {
                    VecQ row(unknowns, Rational(0));
                    bool nz = false;
                    for (unsigned t = 0; t < k; ++t) {
                        const MatQ& V = values[t];
                        if (sgn(V.at(l, c)) != 0) { row[pidx(a, b) * k + t] += V.at(l, c); nz = true; }
                        if (sgn(V.at(l, a)) != 0) { row[pidx(b, c) * k + t] += V.at(l, a); nz = true; }
                        if (sgn(V.at(l, b)) != 0) { row[pidx(a, c) * k + t] -= V.at(l, b); nz = true; }
                    }
                    if (nz) rows.push_back(std::move(row));
                }
    if (rows.empty()) return unknowns;
    MatQ sys(static_cast<unsigned>(rows.size()), unknowns);
    for (unsigned i = 0; i < rows.size(); ++i)
        for (unsigned j = 0; j < unknowns; ++j) sys.at(i, j) = rows[i][j];
    return unknowns - rank(sys);
}

/// Value basis of g^{1,h} = (R + h) |x R^n as matrices on R^{1,n+1}.
inline std::vector<MatQ> g1h_matrix_basis(const Subalgebra& h) {
    unsigned n = h.n;
    std::vector<MatQ> out;
    out.push_back(SimElement{Rational(1), SkewMatrix(n, n), VecQ(n, Rational(0))}.matrix());
    for (const auto& B : h.basis)
        out.push_back(SimElement{Rational(0), B, VecQ(n, Rational(0))}.matrix());
    for (unsigned i = 0; i < n; ++i) {
        VecQ x(n, Rational(0));
        x[i] = Rational(1);
        out.push_back(SimElement{Rational(0), SkewMatrix(n, n), x}.matrix());
    }
    return out;
}

/// dim of algebraic curvature tensors on R^n: components R_{ijkl} with the
/// pair symmetries and first Bianchi, enumerated directly.
inline unsigned algebraic_curvature_dim(unsigned n) {
    if (n < 2) return 0;
    unsigned npairs = n * (n - 1) / 2;
    auto pidx = [&](unsigned a, unsigned b) { return a * n - a * (a + 1) / 2 + (b - a - 1); };
    // unknowns: symmetric matrix over pairs -> p <= q slots
    std::vector<std::pair<unsigned, unsigned>> slots;
    for (unsigned p = 0; p < npairs; ++p)
        for (unsigned q = p; q < npairs; ++q) slots.emplace_back(p, q);
    auto slot_of = [&](unsigned p, unsigned q) {
        if (p > q) std::swap(p, q);
        return p * npairs - p * (p + 1) / 2 + q;
    };
    // R_{ijkl} with i<j, k<l identified with slot (pidx(ij), pidx(kl))
    auto comp = [&](unsigned i, unsigned j, unsigned k, unsigned l, Rational sign,
                    VecQ& row) {
        if (i == j || k == l) return;
        if (i > j) { std::swap(i, j); sign = -sign; }
        if (k > l) { std::swap(k, l); sign = -sign; }
        row[slot_of(pidx(i, j), pidx(k, l))] += sign;
    };
    std::vector<VecQ> rows;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            for (unsigned k = j + 1; k < n; ++k)
                for (unsigned l = k + 1; l < n; ++l) {
                    VecQ row(slots.size(), Rational(0));
                    comp(i, j, k, l, Rational(1), row);
                    comp(i, k, l, j, Rational(1), row);
                    comp(i, l, j, k, Rational(1), row);
                    bool nz = false;
                    for (const auto& x : row)
                        if (sgn(x) != 0) nz = true;
                    if (nz) rows.push_back(std::move(row));
                }
    if (rows.empty()) return static_cast<unsigned>(slots.size());
    MatQ sys(static_cast<unsigned>(rows.size()), static_cast<unsigned>(slots.size()));
    for (unsigned r = 0; r < rows.size(); ++r)
        for (unsigned c = 0; c < slots.size(); ++c) sys.at(r, c) = rows[r][c];
    return static_cast<unsigned>(slots.size()) - rank(sys);
}

}  // namespace simhol::testing

#endif
