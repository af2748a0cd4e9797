#ifndef SIMHOL_CURVSPACE_HPP
#define SIMHOL_CURVSPACE_HPP

#include "simhol/liealg.hpp"

namespace simhol {

// Element of P(h): a linear map R^n -> h subject to the cyclic identity;
// images[i] = P(e_{i+1}), component P^k_{ji} = images[i](k,j).
struct WeakCurvature {
    unsigned n = 0;
    std::vector<SkewMatrix> images;

    const Rational& comp(unsigned k, unsigned j, unsigned i) const {
        return images[i].at(k, j);
    }

    bool cyclic_identity_holds() const {
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                for (unsigned k = 0; k < n; ++k) {
                    Rational s = comp(k, j, i) + comp(i, k, j) + comp(j, i, k);
                    if (sgn(s) != 0) return false;
                }
        return true;
    }

    VecQ flat() const {
        VecQ v;
        for (const auto& m : images) {
            VecQ c = skew_coords(m);
            v.insert(v.end(), c.begin(), c.end());
        }
        return v;
    }
};

/// Ric~(P) = sum_i P(e_i) e_i.
inline VecQ ricci_tilde(const WeakCurvature& p) {
    VecQ r(p.n, Rational(0));
    for (unsigned i = 0; i < p.n; ++i)
        for (unsigned k = 0; k < p.n; ++k) r[k] += p.images[i].at(k, i);
    return r;
}

/// <P,Q> = sum_i tr(P(e_i)^T Q(e_i)); the fixed h-invariant inner product.
inline Rational weak_inner(const WeakCurvature& p, const WeakCurvature& q) {
    Rational s(0);
    for (unsigned i = 0; i < p.n; ++i)
        for (unsigned a = 0; a < p.n; ++a)
            for (unsigned b = 0; b < p.n; ++b) s += p.images[i].at(a, b) * q.images[i].at(a, b);
    return s;
}

// Element of R(h): h-valued 2-form with the first Bianchi identity;
// values over pairs (i<j) in lex order.
struct CurvatureH {
    unsigned n = 0;
    std::vector<SkewMatrix> values;

    const SkewMatrix& value(unsigned i, unsigned j) const { return values[pair_index(i, j, n)]; }

    // R(e_i, e_j) with either index order; zero when i == j
    SkewMatrix value_signed(unsigned i, unsigned j) const {
        if (i == j) return SkewMatrix(n, n);
        if (i < j) return value(i, j);
        SkewMatrix m = value(j, i);
        for (auto& x : m.data) x = -x;
        return m;
    }

    bool bianchi_holds() const {
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i + 1; j < n; ++j)
                for (unsigned k = j + 1; k < n; ++k)
                    for (unsigned l = 0; l < n; ++l) {
                        Rational s = value(i, j).at(l, k) + value(j, k).at(l, i) - value(i, k).at(l, j);
                        if (sgn(s) != 0) return false;
                    }
        return true;
    }

    bool pair_symmetry_holds() const {
        // eta(R(u,v)z,w) = eta(R(z,w)u,v) with eta = delta
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i + 1; j < n; ++j)
                for (unsigned k = 0; k < n; ++k)
                    for (unsigned l = k + 1; l < n; ++l)
                        if (value(i, j).at(l, k) != value(k, l).at(j, i)) return false;
        return true;
    }

    VecQ flat() const {
        VecQ v;
        for (const auto& m : values) {
            VecQ c = skew_coords(m);
            v.insert(v.end(), c.begin(), c.end());
        }
        return v;
    }
};

/// Ric(u,v) = tr(z -> R(u,z)v), symmetric.
inline MatQ ricci_of_R0(const CurvatureH& r) {
    unsigned n = r.n;
    MatQ ric(n, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            for (unsigned k = 0; k < n; ++k) {
                if (k == i) continue;
                SkewMatrix m = r.value_signed(i, k);
                ric.at(i, j) += m.at(k, j);
            }
    return ric;
}

inline Rational scalar_of_R0(const CurvatureH& r) {
    MatQ ric = ricci_of_R0(r);
    Rational s(0);
    for (unsigned i = 0; i < r.n; ++i) s += ric.at(i, i);
    return s;
}

/// Natural tensorial action of A in so(n) on R(h).
inline CurvatureH h_action_on_R(const SkewMatrix& A, const CurvatureH& r) {
    unsigned n = r.n;
    CurvatureH out{n, std::vector<SkewMatrix>(n * (n - 1) / 2, SkewMatrix(n, n))};
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
            SkewMatrix v = bracket(A, r.value(i, j));
            // - R(Ae_i, e_j) - R(e_i, Ae_j)
            for (unsigned l = 0; l < n; ++l) {
                if (sgn(A.at(l, i)) != 0) {
                    SkewMatrix t = r.value_signed(l, j);
                    for (unsigned a = 0; a < n; ++a)
                        for (unsigned b = 0; b < n; ++b) v.at(a, b) -= A.at(l, i) * t.at(a, b);
                }
                if (sgn(A.at(l, j)) != 0) {
                    SkewMatrix t = r.value_signed(i, l);
                    for (unsigned a = 0; a < n; ++a)
                        for (unsigned b = 0; b < n; ++b) v.at(a, b) -= A.at(l, j) * t.at(a, b);
                }
            }
            out.values[pair_index(i, j, n)] = std::move(v);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Exact solves for P(h) and R(h)

/// Basis of P(h): nullspace of the cyclic identity over maps with values in h.
inline std::vector<WeakCurvature> solve_P(const Subalgebra& h) {
    unsigned n = h.n, d = h.dim();
    if (d == 0) return {};
    unsigned unknowns = n * d;  // P(e_i) = sum_t c[i][t] B_t
    std::vector<VecQ> rows;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
            for (unsigned k = j + 1; k < n; ++k) {
                VecQ row(unknowns, Rational(0));
                bool nz = false;
                for (unsigned t = 0; t < d; ++t) {
                    const SkewMatrix& B = h.basis[t];
                    // P^k_{ji} + P^i_{kj} + P^j_{ik}
                    if (sgn(B.at(k, j)) != 0) { row[i * d + t] += B.at(k, j); nz = true; }
                    if (sgn(B.at(i, k)) != 0) { row[j * d + t] += B.at(i, k); nz = true; }
                    if (sgn(B.at(j, i)) != 0) { row[k * d + t] += B.at(j, i); nz = true; }
                }
                if (nz) rows.push_back(std::move(row));
            }
    std::vector<VecQ> coords;
    if (rows.empty()) {
        for (unsigned u = 0; u < unknowns; ++u) {
            VecQ v(unknowns, Rational(0));
            v[u] = Rational(1);
            coords.push_back(std::move(v));
        }
    } else {
        coords = nullspace_q(builtin_detail::stack_rows(rows, unknowns));
    }
    std::vector<WeakCurvature> basis;
    for (const auto& c : coords) {
        WeakCurvature p{n, std::vector<SkewMatrix>(n, SkewMatrix(n, n))};
        for (unsigned i = 0; i < n; ++i)
            for (unsigned t = 0; t < d; ++t) {
                if (sgn(c[i * d + t]) == 0) continue;
                for (unsigned a = 0; a < n; ++a)
                    for (unsigned b = 0; b < n; ++b)
                        p.images[i].at(a, b) += c[i * d + t] * h.basis[t].at(a, b);
            }
        basis.push_back(std::move(p));
    }
    return basis;
}

/// Basis of R(h): nullspace of first Bianchi over h-valued 2-forms.
inline std::vector<CurvatureH> solve_R(const Subalgebra& h) {
    unsigned n = h.n, d = h.dim();
    unsigned npairs = n * (n - 1) / 2;
    if (d == 0 || n < 2) return {};
    unsigned unknowns = npairs * d;
    std::vector<VecQ> rows;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
            for (unsigned k = j + 1; k < n; ++k)
                for (unsigned l = 0; l < n; ++l) {
                    VecQ row(unknowns, Rational(0));
                    bool nz = false;
                    for (unsigned t = 0; t < d; ++t) {
                        const SkewMatrix& B = h.basis[t];
                        // R(ij) e_k + R(jk) e_i - R(ik) e_j, component l
                        if (sgn(B.at(l, k)) != 0) { row[pair_index(i, j, n) * d + t] += B.at(l, k); nz = true; }
                        if (sgn(B.at(l, i)) != 0) { row[pair_index(j, k, n) * d + t] += B.at(l, i); nz = true; }
                        if (sgn(B.at(l, j)) != 0) { row[pair_index(i, k, n) * d + t] -= B.at(l, j); nz = true; }
                    }
                    if (nz) rows.push_back(std::move(row));
                }
    std::vector<VecQ> coords;
    if (rows.empty()) {
        for (unsigned u = 0; u < unknowns; ++u) {
            VecQ v(unknowns, Rational(0));
            v[u] = Rational(1);
            coords.push_back(std::move(v));
        }
    } else {
        coords = nullspace_q(builtin_detail::stack_rows(rows, unknowns));
    }
    std::vector<CurvatureH> basis;
    for (const auto& c : coords) {
        CurvatureH r{n, std::vector<SkewMatrix>(npairs, SkewMatrix(n, n))};
        for (unsigned p = 0; p < npairs; ++p)
            for (unsigned t = 0; t < d; ++t) {
                if (sgn(c[p * d + t]) == 0) continue;
                for (unsigned a = 0; a < n; ++a)
                    for (unsigned b = 0; b < n; ++b)
                        r.values[p].at(a, b) += c[p * d + t] * h.basis[t].at(a, b);
            }
        basis.push_back(std::move(r));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Splittings

struct PSplit {
    std::vector<WeakCurvature> p0;  // kernel of Ric~
    std::vector<WeakCurvature> p1;  // orthogonal complement
};

inline WeakCurvature weak_combine(const std::vector<WeakCurvature>& basis, const VecQ& coeff) {
    unsigned n = basis.empty() ? 0 : basis[0].n;
    WeakCurvature out{n, std::vector<SkewMatrix>(n, SkewMatrix(n, n))};
    for (unsigned s = 0; s < basis.size(); ++s) {
        if (sgn(coeff[s]) == 0) continue;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned a = 0; a < n; ++a)
                for (unsigned b = 0; b < n; ++b)
                    out.images[i].at(a, b) += coeff[s] * basis[s].images[i].at(a, b);
    }
    return out;
}

inline PSplit split_P(const Subalgebra& h) {
    std::vector<WeakCurvature> basis = solve_P(h);
    unsigned N = static_cast<unsigned>(basis.size());
    PSplit out;
    if (N == 0) return out;
    unsigned n = h.n;
    MatQ ric(n, N);
    for (unsigned s = 0; s < N; ++s) {
        VecQ r = ricci_tilde(basis[s]);
        for (unsigned i = 0; i < n; ++i) ric.at(i, s) = r[i];
    }
    std::vector<VecQ> ker = nullspace_q(ric);
    for (const auto& c : ker) out.p0.push_back(weak_combine(basis, c));
    // P1: orthogonal complement of P0 under the fixed inner product
    if (out.p0.empty()) {
        out.p1 = basis;
        return out;
    }
    MatQ gram(N, N);
    for (unsigned s = 0; s < N; ++s)
        for (unsigned t = 0; t < N; ++t) gram.at(s, t) = weak_inner(basis[s], basis[t]);
    MatQ cond(static_cast<unsigned>(ker.size()), N);
    for (unsigned r = 0; r < ker.size(); ++r)
        for (unsigned t = 0; t < N; ++t) {
            Rational s(0);
            for (unsigned u = 0; u < N; ++u) s += ker[r][u] * gram.at(u, t);
            cond.at(r, t) = s;
        }
    for (const auto& c : nullspace_q(cond)) out.p1.push_back(weak_combine(basis, c));
    if (out.p0.size() + out.p1.size() != N)
        throw std::runtime_error("split_P: splitting dimensions do not add up");
    return out;
}

struct RSplit {
    std::vector<CurvatureH> r0;      // Ricci-flat part
    std::vector<CurvatureH> r1;      // annihilated by the h-action
    std::vector<CurvatureH> rprime;  // complement
};

inline CurvatureH curv_combine(const std::vector<CurvatureH>& basis, const VecQ& coeff) {
    unsigned n = basis.empty() ? 0 : basis[0].n;
    unsigned npairs = n * (n - 1) / 2;
    CurvatureH out{n, std::vector<SkewMatrix>(npairs, SkewMatrix(n, n))};
    for (unsigned s = 0; s < basis.size(); ++s) {
        if (sgn(coeff[s]) == 0) continue;
        for (unsigned p = 0; p < npairs; ++p)
            for (unsigned a = 0; a < n; ++a)
                for (unsigned b = 0; b < n; ++b)
                    out.values[p].at(a, b) += coeff[s] * basis[s].values[p].at(a, b);
    }
    return out;
}

inline Rational curv_inner(const CurvatureH& r, const CurvatureH& s) {
    Rational acc(0);
    for (unsigned p = 0; p < r.values.size(); ++p)
        for (unsigned a = 0; a < r.n; ++a)
            for (unsigned b = 0; b < r.n; ++b) acc += r.values[p].at(a, b) * s.values[p].at(a, b);
    return acc;
}

/// The decomposition R(h) = R0 + R1 + R'; expects h irreducible on its block.
inline RSplit split_R(const Subalgebra& h) {
    std::vector<CurvatureH> basis = solve_R(h);
    RSplit out;
    unsigned N = static_cast<unsigned>(basis.size());
    if (N == 0) return out;
    unsigned n = h.n;
    // R0: kernel of the Ricci map
    MatQ ric(n * n, N);
    for (unsigned s = 0; s < N; ++s) {
        MatQ r = ricci_of_R0(basis[s]);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) ric.at(i * n + j, s) = r.at(i, j);
    }
    std::vector<VecQ> ker0 = nullspace_q(ric);
    for (const auto& c : ker0) out.r0.push_back(curv_combine(basis, c));
    // R1: common kernel of the h-action
    unsigned flat_dim = (n * (n - 1) / 2) * (n * (n - 1) / 2);
    std::vector<VecQ> rows;
    for (const auto& A : h.basis) {
        std::vector<VecQ> acted;
        for (unsigned s = 0; s < N; ++s) acted.push_back(h_action_on_R(A, basis[s]).flat());
        for (unsigned r = 0; r < flat_dim; ++r) {
            VecQ row(N, Rational(0));
            bool nz = false;
            for (unsigned s = 0; s < N; ++s)
                if (sgn(acted[s][r]) != 0) {
                    row[s] = acted[s][r];
                    nz = true;
                }
            if (nz) rows.push_back(std::move(row));
        }
    }
    std::vector<VecQ> ker1 =
        rows.empty() ? std::vector<VecQ>{} : nullspace_q(builtin_detail::stack_rows(rows, N));
    if (rows.empty())
        for (unsigned s = 0; s < N; ++s) {
            VecQ v(N, Rational(0));
            v[s] = Rational(1);
            ker1.push_back(std::move(v));
        }
    for (const auto& c : ker1) out.r1.push_back(curv_combine(basis, c));
    if (out.r1.size() > 1)
        throw std::runtime_error("split_R: R1 has dimension > 1; is h irreducible on its block?");
    // R0 and R1 intersect trivially
    {
        SpanBuilder span(static_cast<unsigned>(basis[0].flat().size()));
        for (const auto& r : out.r0) span.add(r.flat());
        unsigned d0 = span.dim();
        for (const auto& r : out.r1)
            if (!span.add(r.flat()))
                throw std::runtime_error("split_R: R0 and R1 intersect nontrivially");
        if (span.dim() != d0 + out.r1.size())
            throw std::runtime_error("split_R: R0 and R1 intersect nontrivially");
    }
    // R': orthogonal complement of R0 + R1 under the trace inner product
    MatQ gram(N, N);
    for (unsigned s = 0; s < N; ++s)
        for (unsigned t = 0; t < N; ++t) gram.at(s, t) = curv_inner(basis[s], basis[t]);
    std::vector<VecQ> span_coords = ker0;
    span_coords.insert(span_coords.end(), ker1.begin(), ker1.end());
    if (span_coords.size() < N) {
        MatQ cond(static_cast<unsigned>(span_coords.size()), N);
        for (unsigned r = 0; r < span_coords.size(); ++r)
            for (unsigned t = 0; t < N; ++t) {
                Rational s(0);
                for (unsigned u = 0; u < N; ++u) s += span_coords[r][u] * gram.at(u, t);
                cond.at(r, t) = s;
            }
        for (const auto& c : nullspace_q(cond)) out.rprime.push_back(curv_combine(basis, c));
    }
    if (out.r0.size() + out.r1.size() + out.rprime.size() != N)
        throw std::runtime_error("split_R: splitting dimensions do not add up");
    for (const auto& r : out.rprime) {
        if (sgn(scalar_of_R0(r)) != 0)
            throw std::runtime_error("split_R: R' element with nonzero scalar curvature");
        MatQ ricm = ricci_of_R0(r);
        bool nonzero = false;
        for (const auto& x : ricm.data)
            if (sgn(x) != 0) nonzero = true;
        if (!nonzero) throw std::runtime_error("split_R: R' element with zero Ricci tensor");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Berger tests

/// h is Berger when span{R(u,v) : R in R(h)} = h. The trivial algebra is
/// Berger by the span convention span{} = {0}.
inline bool is_berger(const Subalgebra& h) {
    if (h.dim() == 0) return true;
    std::vector<CurvatureH> basis = solve_R(h);
    SpanBuilder images(h.n * (h.n - 1) / 2);
    for (const auto& r : basis)
        for (const auto& v : r.values) images.add(skew_coords(v));
    if (images.dim() != h.dim()) return false;
    SpanBuilder hs = h.span();
    for (const auto& row : images.basis())
        if (!hs.contains(row)) return false;
    return true;
}

inline bool is_symmetric_berger(const Subalgebra& h) {
    if (h.dim() == 0) return false;
    if (!is_berger(h)) return false;
    RSplit s = split_R(h);
    return s.r0.empty() && s.rprime.empty() && !s.r1.empty();
}

// ---------------------------------------------------------------------------
// Curvature tensors of g^{1,h} (Theorem-level parameterization)

// Full curvature map on R^{1,n+1} in the basis (p, e_1..e_n, q); values over
// pairs (a<b) of basis indices 0..n+1.
struct CurvFull {
    unsigned n = 0;
    std::vector<MatQ> values;

    const MatQ& value(unsigned a, unsigned b) const { return values[pair_index(a, b, n + 2)]; }

    bool bianchi_holds() const {
        unsigned N = n + 2;
        for (unsigned a = 0; a < N; ++a)
            for (unsigned b = a + 1; b < N; ++b)
                for (unsigned c = b + 1; c < N; ++c)
                    for (unsigned l = 0; l < N; ++l) {
                        Rational s = value(a, b).at(l, c) + value(b, c).at(l, a) - value(a, c).at(l, b);
                        if (sgn(s) != 0) return false;
                    }
        return true;
    }
};

/// Ric(u,v) = tr(z -> R(u,z)v) from the assembled full curvature.
inline MatQ ricci_full_contraction(const CurvFull& r) {
    unsigned N = r.n + 2;
    MatQ ric(N, N);
    for (unsigned a = 0; a < N; ++a)
        for (unsigned b = 0; b < N; ++b)
            for (unsigned c = 0; c < N; ++c) {
                if (c == a) continue;
                if (a < c)
                    ric.at(a, b) += r.value(a, c).at(c, b);
                else
                    ric.at(a, b) -= r.value(c, a).at(c, b);
            }
    return ric;
}

// An element of R(g^{1,h}) via Theorem-level data: lambda, v, T (symmetric),
// P in P(h), R0 in R(h).
struct CurvatureG1 {
    Rational lambda;
    VecQ v;
    MatQ T;
    WeakCurvature P;
    CurvatureH R0;

    unsigned n() const { return P.n; }
};

/// Realizes the four defining formulas; the result satisfies first Bianchi.
inline CurvFull assemble_g1(const CurvatureG1& c) {
    unsigned n = c.n();
    if (c.T.rows != n || c.T.cols != n) throw std::invalid_argument("assemble_g1: T size");
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (c.T.at(i, j) != c.T.at(j, i))
                throw std::invalid_argument("assemble_g1: T must be symmetric");
    if (!c.P.cyclic_identity_holds())
        throw std::invalid_argument("assemble_g1: P violates the cyclic identity");
    if (!c.R0.bianchi_holds()) throw std::invalid_argument("assemble_g1: R0 violates Bianchi");
    unsigned N = n + 2;
    CurvFull out{n, std::vector<MatQ>(N * (N - 1) / 2, MatQ(N, N))};
    auto put = [&](unsigned a, unsigned b, const SimElement& e) {
        out.values[pair_index(a, b, N)] = e.matrix();
    };
    // R(p,q) = (lambda, 0, v)
    put(0, N - 1, SimElement{c.lambda, SkewMatrix(n, n), c.v});
    // R(e_i, e_j) = (0, R0(e_i,e_j), P(e_j)e_i - P(e_i)e_j)
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
            VecQ X(n, Rational(0));
            for (unsigned k = 0; k < n; ++k)
                X[k] = c.P.images[j].at(k, i) - c.P.images[i].at(k, j);
            put(1 + i, 1 + j, SimElement{Rational(0), c.R0.value(i, j), X});
        }
    // R(e_i, q) = (eta(v, e_i), P(e_i), T e_i); R(p, e_i) = 0 already
    for (unsigned i = 0; i < n; ++i) {
        VecQ Ti(n, Rational(0));
        for (unsigned k = 0; k < n; ++k) Ti[k] = c.T.at(k, i);
        put(1 + i, N - 1, SimElement{c.v[i], c.P.images[i], Ti});
    }
    return out;
}

struct RicciG1 {
    Rational pq;
    MatQ xy;
    VecQ xq;
    Rational qq;
};

/// Ricci of an element of R(g^{1,h}); verified against the exact trace
/// contraction of the assembled curvature.
inline RicciG1 ricci_of_g1(const CurvatureG1& c) {
    unsigned n = c.n();
    RicciG1 out;
    out.pq = -c.lambda;
    out.xy = ricci_of_R0(c.R0);
    VecQ rt = ricci_tilde(c.P);
    out.xq.resize(n);
    for (unsigned i = 0; i < n; ++i) out.xq[i] = rt[i] - c.v[i];
    out.qq = Rational(0);
    for (unsigned i = 0; i < n; ++i) out.qq += c.T.at(i, i);
    // cross-check against the contraction of the assembled tensor
    MatQ full = ricci_full_contraction(assemble_g1(c));
    bool ok = full.at(0, n + 1) == out.pq && full.at(n + 1, n + 1) == out.qq &&
              sgn(full.at(0, 0)) == 0;
    for (unsigned i = 0; i < n && ok; ++i) {
        ok = full.at(1 + i, n + 1) == out.xq[i] && sgn(full.at(0, 1 + i)) == 0;
        for (unsigned j = 0; j < n && ok; ++j) ok = full.at(1 + i, 1 + j) == out.xy.at(i, j);
    }
    if (!ok) throw std::runtime_error("ricci_of_g1: formula disagrees with trace contraction");
    return out;
}

/// Ricci operator on R^{1,n+1} in the basis (p, e, q).
inline MatQ ricci_operator_g1(const CurvatureG1& c) {
    unsigned n = c.n();
    MatQ op(n + 2, n + 2);
    RicciG1 ric = ricci_of_g1(c);
    // Ric(p) = -lambda p
    op.at(0, 0) = -c.lambda;
    // Ric(x) = eta(x, Ric~(P)-v) p + Ric(R0)(x)
    for (unsigned i = 0; i < n; ++i) {
        op.at(0, 1 + i) = ric.xq[i];
        for (unsigned k = 0; k < n; ++k) op.at(1 + k, 1 + i) = ric.xy.at(k, i);
    }
    // Ric(q) = (tr T) p + Ric~(P) - v - lambda q
    op.at(0, n + 1) = ric.qq;
    for (unsigned k = 0; k < n; ++k) op.at(1 + k, n + 1) = ric.xq[k];
    op.at(n + 1, n + 1) = -c.lambda;
    return op;
}

/// Whether the element satisfies the extra linear constraints of the type.
inline bool constrain_type(const CurvatureG1& c, const HolonomyDescriptor& d) {
    unsigned n = c.n();
    auto v_zero = [&]() {
        for (const auto& x : c.v)
            if (sgn(x) != 0) return false;
        return true;
    };
    // values must land in h in every type
    std::vector<std::optional<VecQ>> pcoords(n);
    for (unsigned i = 0; i < n; ++i) {
        pcoords[i] = d.h.coords_of(c.P.images[i]);
        if (!pcoords[i]) return false;
    }
    for (const auto& val : c.R0.values)
        if (!d.h.coords_of(val)) return false;
    switch (d.type) {
        case 1:
            return true;
        case 2:
            return sgn(c.lambda) == 0 && v_zero();
        case 3: {
            if (sgn(c.lambda) != 0) return false;
            // eta(x, v) = phi(P(x)) on basis vectors
            for (unsigned i = 0; i < n; ++i) {
                Rational rhs(0);
                for (unsigned t = 0; t < d.h.dim(); ++t) rhs += d.phi[t] * (*pcoords[i])[t];
                if (c.v[i] != rhs) return false;
            }
            // R0 valued in ker phi
            for (const auto& val : c.R0.values) {
                auto rc = d.h.coords_of(val);
                Rational s(0);
                for (unsigned t = 0; t < d.h.dim(); ++t) s += d.phi[t] * (*rc)[t];
                if (sgn(s) != 0) return false;
            }
            return true;
        }
        case 4: {
            if (sgn(c.lambda) != 0 || !v_zero()) return false;
            // pr_{R^{n-m}} T = psi P
            for (unsigned i = 0; i < n; ++i)
                for (unsigned r = 0; r < n - d.m; ++r) {
                    Rational rhs(0);
                    for (unsigned t = 0; t < d.h.dim(); ++t) rhs += d.psi.at(r, t) * (*pcoords[i])[t];
                    if (c.T.at(d.m + r, i) != rhs) return false;
                }
            // R0 valued in ker psi
            for (const auto& val : c.R0.values) {
                auto rc = d.h.coords_of(val);
                for (unsigned r = 0; r < d.psi.rows; ++r) {
                    Rational s(0);
                    for (unsigned t = 0; t < d.h.dim(); ++t) s += d.psi.at(r, t) * (*rc)[t];
                    if (sgn(s) != 0) return false;
                }
            }
            return true;
        }
        default:
            throw std::invalid_argument("constrain_type: bad descriptor type");
    }
}

}  // namespace simhol

#endif
