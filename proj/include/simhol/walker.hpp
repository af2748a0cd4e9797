#ifndef SIMHOL_WALKER_HPP
#define SIMHOL_WALKER_HPP

#include <cstdio>

#include "simhol/liealg.hpp"

namespace simhol {

enum class WalkerFamily { flat, diag, general };

inline std::string family_name(WalkerFamily f) {
    switch (f) {
        case WalkerFamily::flat: return "flat";
        case WalkerFamily::diag: return "diag";
        case WalkerFamily::general: return "general";
    }
    return "?";
}

// Lorentzian metric in Walker coordinates x0..x^{n+1}:
//   g = 2 dx0 dx^{n+1} + h_ij dx^i dx^j + 2 u^i dx^i dx^{n+1} + f (dx^{n+1})^2
// with the parallel isotropic line spanned by d_0.
//   flat:    h = delta, u and f free
//   diag:    h = h(x^1..x^n), u = 0
//   general: h = h(x^1..x^{n+1}), u and f free
struct WalkerMetric {
    unsigned n = 0;
    WalkerFamily family = WalkerFamily::flat;
    Mat<RatFunc> h;          // n x n, symmetric
    std::vector<Poly> u;     // n entries in x^1..x^{n+1}
    Poly f;                  // in x^0..x^{n+1}

    unsigned nvars() const { return n + 2; }

    static WalkerMetric make_flat(unsigned n, std::vector<Poly> u, Poly f) {
        WalkerMetric g;
        g.n = n;
        g.family = WalkerFamily::flat;
        g.h = Mat<RatFunc>(n, n, RatFunc(n + 2));
        for (unsigned i = 0; i < n; ++i) g.h.at(i, i) = RatFunc::constant(n + 2, 1);
        g.u = std::move(u);
        g.f = std::move(f);
        g.validate();
        return g;
    }

    static WalkerMetric make_diag(unsigned n, Mat<RatFunc> h, Poly f) {
        WalkerMetric g;
        g.n = n;
        g.family = WalkerFamily::diag;
        g.h = std::move(h);
        g.u.assign(n, Poly(n + 2));
        g.f = std::move(f);
        g.validate();
        return g;
    }

    Mat<RatFunc> metric() const {
        unsigned N = n + 2;
        Mat<RatFunc> g(N, N, RatFunc(N));
        g.at(0, N - 1) = g.at(N - 1, 0) = RatFunc::constant(N, 1);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) g.at(1 + i, 1 + j) = h.at(i, j);
        for (unsigned i = 0; i < n; ++i) g.at(1 + i, N - 1) = g.at(N - 1, 1 + i) = RatFunc(u[i]);
        g.at(N - 1, N - 1) = RatFunc(f);
        return g;
    }

    bool h_is_flat() const {
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                const RatFunc& e = h.at(i, j);
                if (i == j) {
                    if (!(e.den().is_one() && e.num().is_constant() && e.num().constant_term() == 1))
                        return false;
                } else if (!e.is_zero()) {
                    return false;
                }
            }
        return true;
    }

    void validate() const {
        unsigned N = n + 2;
        if (h.rows != n || h.cols != n) throw std::invalid_argument("walker: h size mismatch");
        if (u.size() != n) throw std::invalid_argument("walker: u size mismatch");
        if (f.nvars() != N) throw std::invalid_argument("walker: f nvars mismatch");
        for (unsigned i = 0; i < n; ++i) {
            if (u[i].nvars() != N) throw std::invalid_argument("walker: u nvars mismatch");
            if (u[i].degree_in(0) > 0) throw std::invalid_argument("walker: u may not depend on x0");
        }
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                const RatFunc& e = h.at(i, j);
                if (e.nvars() != N) throw std::invalid_argument("walker: h nvars mismatch");
                if (!(e == h.at(j, i))) throw std::invalid_argument("walker: h not symmetric");
                if (e.num().degree_in(0) > 0 || e.den().degree_in(0) > 0)
                    throw std::invalid_argument("walker: h may not depend on x0");
                if (family != WalkerFamily::general &&
                    (e.num().degree_in(N - 1) > 0 || e.den().degree_in(N - 1) > 0))
                    throw std::invalid_argument("walker: h may not depend on x^{n+1} in this family");
            }
        if (family == WalkerFamily::flat && !h_is_flat())
            throw std::invalid_argument("walker: flat family requires h = delta");
        if (family == WalkerFamily::diag)
            for (const auto& ui : u)
                if (!ui.is_zero()) throw std::invalid_argument("walker: diag family requires u = 0");
        // h positive definite at the default sample point (exact LDL pivots)
        std::vector<Rational> pt(N, Rational(0));
        MatQ hv(n, n);
        try {
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = 0; j < n; ++j) hv.at(i, j) = h.at(i, j).eval(pt);
        } catch (const EvalError&) {
            return;  // pole at origin; definiteness is checked where frames are built
        }
        MatQ m = hv;
        for (unsigned k = 0; k < n; ++k) {
            if (sgn(m.at(k, k)) <= 0)
                throw std::invalid_argument("walker: h not positive definite at the origin");
            for (unsigned i = k + 1; i < n; ++i) {
                Rational f_ = m.at(i, k) / m.at(k, k);
                for (unsigned j = k; j < n; ++j) m.at(i, j) -= f_ * m.at(k, j);
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Inverse metric

/// Exact inverse; block closed form on top of the exact h-block inverse.
inline Mat<RatFunc> inverse_metric(const WalkerMetric& g) {
    unsigned n = g.n, N = n + 2;
    RatFunc zero(N), one = RatFunc::constant(N, 1);
    Mat<RatFunc> hinv(n, n, zero);
    if (g.h_is_flat()) {
        for (unsigned i = 0; i < n; ++i) hinv.at(i, i) = one;
    } else {
        bool diagonal = true;
        for (unsigned i = 0; i < n && diagonal; ++i)
            for (unsigned j = 0; j < n && diagonal; ++j)
                if (i != j && !g.h.at(i, j).is_zero()) diagonal = false;
        if (diagonal) {
            for (unsigned i = 0; i < n; ++i) {
                if (g.h.at(i, i).is_zero()) throw std::domain_error("inverse_metric: singular h");
                hinv.at(i, i) = one / g.h.at(i, i);
            }
        } else {
            hinv = inverse(g.h, one, zero);
        }
        for (auto& e : hinv.data) e.reduce();
    }
    Mat<RatFunc> inv(N, N, zero);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) inv.at(1 + i, 1 + j) = hinv.at(i, j);
    // p-e entries: -(h^{-1} u)_i ; p-p entry: u.h^{-1}u - f ; p-q entry: 1
    RatFunc upp(N);
    for (unsigned i = 0; i < n; ++i) {
        RatFunc s(N);
        for (unsigned j = 0; j < n; ++j)
            if (!g.u[j].is_zero() && !hinv.at(i, j).is_zero()) s += hinv.at(i, j) * RatFunc(g.u[j]);
        if (!s.is_zero()) {
            inv.at(0, 1 + i) = inv.at(1 + i, 0) = zero - s;
            upp += s * RatFunc(g.u[i]);
        }
    }
    inv.at(0, 0) = upp - RatFunc(g.f);
    inv.at(0, N - 1) = inv.at(N - 1, 0) = one;
    return inv;
}

// ---------------------------------------------------------------------------
// Christoffel symbols, Riemann and Ricci tensors

inline unsigned sym_index(unsigned b, unsigned c, unsigned N) {
    if (b > c) std::swap(b, c);
    return b * N - b * (b - 1) / 2 + (c - b);
}

struct Christoffels {
    unsigned N = 0;                        // = n + 2
    std::vector<std::vector<RatFunc>> g;   // g[a][sym_index(b,c)]

    const RatFunc& at(unsigned a, unsigned b, unsigned c) const {
        return g[a][sym_index(b, c, N)];
    }
};

inline Christoffels christoffel(const WalkerMetric& w) {
    unsigned N = w.nvars();
    Mat<RatFunc> g = w.metric();
    Mat<RatFunc> ginv = inverse_metric(w);
    // partial derivatives of the metric, computed once
    std::vector<Mat<RatFunc>> dg(N, Mat<RatFunc>(N, N, RatFunc(N)));
    for (unsigned e = 0; e < N; ++e)
        for (unsigned a = 0; a < N; ++a)
            for (unsigned b = a; b < N; ++b) {
                if (g.at(a, b).is_zero()) continue;
                RatFunc d = g.at(a, b).derivative(e);
                dg[e].at(a, b) = d;
                dg[e].at(b, a) = d;
            }
    Christoffels ch;
    ch.N = N;
    ch.g.assign(N, std::vector<RatFunc>(N * (N + 1) / 2, RatFunc(N)));
    Rational half = rat(1, 2);
    for (unsigned b = 0; b < N; ++b)
        for (unsigned c = b; c < N; ++c) {
            // lowered symbol [d, bc] = (d_b g_dc + d_c g_db - d_d g_bc) / 2
            std::vector<RatFunc> lowered(N, RatFunc(N));
            bool any = false;
            for (unsigned d = 0; d < N; ++d) {
                RatFunc s = dg[b].at(d, c) + dg[c].at(d, b) - dg[d].at(b, c);
                if (!s.is_zero()) {
                    lowered[d] = half * s;
                    any = true;
                }
            }
            if (!any) continue;
            for (unsigned a = 0; a < N; ++a) {
                RatFunc acc(N);
                for (unsigned d = 0; d < N; ++d)
                    if (!ginv.at(a, d).is_zero() && !lowered[d].is_zero())
                        acc += ginv.at(a, d) * lowered[d];
                if (!acc.is_zero()) {
                    acc.reduce();
                    ch.g[a][sym_index(b, c, N)] = std::move(acc);
                }
            }
        }
    return ch;
}

struct RiemannTensor {
    unsigned N = 0;
    // values[a][b][pair_index(c,d,N)] = R^a_{bcd}, c < d
    std::vector<std::vector<std::vector<RatFunc>>> values;

    const RatFunc& at(unsigned a, unsigned b, unsigned c, unsigned d) const {
        return values[a][b][pair_index(c, d, N)];
    }
};

inline RiemannTensor riemann(const WalkerMetric& w, const Christoffels& ch) {
    unsigned N = w.nvars();
    RiemannTensor r;
    r.N = N;
    r.values.assign(N, std::vector<std::vector<RatFunc>>(
                           N, std::vector<RatFunc>(N * (N - 1) / 2, RatFunc(N))));
    for (unsigned a = 0; a < N; ++a)
        for (unsigned b = 0; b < N; ++b)
            for (unsigned c = 0; c < N; ++c)
                for (unsigned d = c + 1; d < N; ++d) {
                    RatFunc acc = ch.at(a, d, b).derivative(c) - ch.at(a, c, b).derivative(d);
                    for (unsigned e = 0; e < N; ++e) {
                        if (!ch.at(a, c, e).is_zero() && !ch.at(e, d, b).is_zero())
                            acc += ch.at(a, c, e) * ch.at(e, d, b);
                        if (!ch.at(a, d, e).is_zero() && !ch.at(e, c, b).is_zero())
                            acc -= ch.at(a, d, e) * ch.at(e, c, b);
                    }
                    if (!acc.is_zero()) {
                        acc.reduce();
                        r.values[a][b][pair_index(c, d, N)] = std::move(acc);
                    }
                }
    return r;
}

inline RiemannTensor riemann(const WalkerMetric& w) { return riemann(w, christoffel(w)); }

// Symmetric matrix of Ricci components over the coordinate frame.
using RicciField = Mat<RatFunc>;

inline RicciField ricci_from_christoffel(const WalkerMetric& w, const Christoffels& ch) {
    unsigned N = w.nvars();
    // contracted symbol C_b = Gamma^a_{ab}
    std::vector<RatFunc> contracted(N, RatFunc(N));
    for (unsigned b = 0; b < N; ++b)
        for (unsigned a = 0; a < N; ++a) contracted[b] += ch.at(a, a, b);
    RicciField ric(N, N, RatFunc(N));
    for (unsigned b = 0; b < N; ++b)
        for (unsigned d = b; d < N; ++d) {
            RatFunc acc(N);
            for (unsigned a = 0; a < N; ++a) acc += ch.at(a, d, b).derivative(a);
            acc -= contracted[b].derivative(d);
            for (unsigned e = 0; e < N; ++e)
                if (!contracted[e].is_zero() && !ch.at(e, d, b).is_zero())
                    acc += contracted[e] * ch.at(e, d, b);
            for (unsigned a = 0; a < N; ++a)
                for (unsigned e = 0; e < N; ++e)
                    if (!ch.at(a, d, e).is_zero() && !ch.at(e, a, b).is_zero())
                        acc -= ch.at(a, d, e) * ch.at(e, a, b);
            acc.reduce();
            ric.at(b, d) = acc;
            ric.at(d, b) = ric.at(b, d);
        }
    return ric;
}

/// Ricci tensor through the general Christoffel -> contraction pipeline.
inline RicciField ricci(const WalkerMetric& w) { return ricci_from_christoffel(w, christoffel(w)); }

// ---------------------------------------------------------------------------
// Closed-form Ricci components for the two special families

namespace walker_detail {

// Christoffel symbols of the n-dimensional Riemannian block h(x^1..x^n[, x^{n+1}])
// in the ambient variable numbering.
struct HBlock {
    unsigned n = 0, N = 0;
    Mat<RatFunc> hinv;
    std::vector<std::vector<RatFunc>> gamma;  // gamma[k][sym_index(i,j,n)]

    const RatFunc& at(unsigned k, unsigned i, unsigned j) const {
        return gamma[k][sym_index(i, j, n)];
    }
};

inline HBlock h_block(const WalkerMetric& w) {
    unsigned n = w.n, N = w.nvars();
    HBlock hb;
    hb.n = n;
    hb.N = N;
    RatFunc zero(N), one = RatFunc::constant(N, 1);
    bool diagonal = true;
    for (unsigned i = 0; i < n && diagonal; ++i)
        for (unsigned j = 0; j < n && diagonal; ++j)
            if (i != j && !w.h.at(i, j).is_zero()) diagonal = false;
    if (diagonal) {
        hb.hinv = Mat<RatFunc>(n, n, zero);
        for (unsigned i = 0; i < n; ++i) hb.hinv.at(i, i) = one / w.h.at(i, i);
    } else {
        hb.hinv = inverse(w.h, one, zero);
        for (auto& e : hb.hinv.data) e.reduce();
    }
    hb.gamma.assign(n, std::vector<RatFunc>(n * (n + 1) / 2, zero));
    Rational half = rat(1, 2);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i; j < n; ++j) {
            std::vector<RatFunc> lowered(n, zero);
            for (unsigned d = 0; d < n; ++d) {
                RatFunc s = w.h.at(d, j).derivative(1 + i) + w.h.at(d, i).derivative(1 + j) -
                            w.h.at(i, j).derivative(1 + d);
                if (!s.is_zero()) lowered[d] = half * s;
            }
            for (unsigned k = 0; k < n; ++k) {
                RatFunc acc(N);
                for (unsigned d = 0; d < n; ++d)
                    if (!hb.hinv.at(k, d).is_zero() && !lowered[d].is_zero())
                        acc += hb.hinv.at(k, d) * lowered[d];
                if (!acc.is_zero()) {
                    acc.reduce();
                    hb.gamma[k][sym_index(i, j, n)] = std::move(acc);
                }
            }
        }
    return hb;
}

/// Ricci tensor of the Riemannian block h itself (n x n).
inline Mat<RatFunc> ricci_h_block(const WalkerMetric& w, const HBlock& hb) {
    unsigned n = w.n, N = w.nvars();
    std::vector<RatFunc> contracted(n, RatFunc(N));
    for (unsigned b = 0; b < n; ++b)
        for (unsigned a = 0; a < n; ++a) contracted[b] += hb.at(a, a, b);
    Mat<RatFunc> ric(n, n, RatFunc(N));
    for (unsigned b = 0; b < n; ++b)
        for (unsigned d = b; d < n; ++d) {
            RatFunc acc(N);
            for (unsigned a = 0; a < n; ++a) acc += hb.at(a, d, b).derivative(1 + a);
            acc -= contracted[b].derivative(1 + d);
            for (unsigned e = 0; e < n; ++e)
                if (!contracted[e].is_zero() && !hb.at(e, d, b).is_zero())
                    acc += contracted[e] * hb.at(e, d, b);
            for (unsigned a = 0; a < n; ++a)
                for (unsigned e = 0; e < n; ++e)
                    if (!hb.at(a, d, e).is_zero() && !hb.at(e, a, b).is_zero())
                        acc -= hb.at(a, d, e) * hb.at(e, a, b);
            acc.reduce();
            ric.at(b, d) = acc;
            ric.at(d, b) = ric.at(b, d);
        }
    return ric;
}

/// Laplace-Beltrami operator of h applied to f.
inline RatFunc laplace_beltrami(const WalkerMetric& w, const HBlock& hb, const Poly& f) {
    unsigned n = w.n, N = w.nvars();
    RatFunc acc(N);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            if (hb.hinv.at(i, j).is_zero()) continue;
            RatFunc inner(f.derivative(1 + i).derivative(1 + j));
            for (unsigned k = 0; k < n; ++k)
                if (!hb.at(k, i, j).is_zero())
                    inner -= hb.at(k, i, j) * RatFunc(f.derivative(1 + k));
            acc += hb.hinv.at(i, j) * inner;
        }
    acc.reduce();
    return acc;
}

}  // namespace walker_detail

/// The four displayed Ricci components of the h-diagonal family.
inline RicciField ricci_formulas_diag(const WalkerMetric& w) {
    if (w.family != WalkerFamily::diag)
        throw std::invalid_argument("ricci_formulas_diag: wrong family");
    unsigned n = w.n, N = w.nvars();
    RicciField ric(N, N, RatFunc(N));
    walker_detail::HBlock hb = walker_detail::h_block(w);
    Rational half = rat(1, 2);
    Poly d00f = w.f.derivative(0).derivative(0);
    ric.at(0, N - 1) = ric.at(N - 1, 0) = RatFunc(half * d00f);
    Mat<RatFunc> rich = walker_detail::ricci_h_block(w, hb);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) ric.at(1 + i, 1 + j) = rich.at(i, j);
    for (unsigned i = 0; i < n; ++i) {
        RatFunc v(half * w.f.derivative(0).derivative(1 + i));
        ric.at(1 + i, N - 1) = v;
        ric.at(N - 1, 1 + i) = v;
    }
    RatFunc last = half * (RatFunc(w.f * d00f) - walker_detail::laplace_beltrami(w, hb, w.f));
    last.reduce();
    ric.at(N - 1, N - 1) = last;
    return ric;
}

/// The displayed Ricci components of the flat-h family (all polynomial).
inline RicciField ricci_formulas_flat(const WalkerMetric& w) {
    if (w.family != WalkerFamily::flat)
        throw std::invalid_argument("ricci_formulas_flat: wrong family");
    unsigned n = w.n, N = w.nvars();
    RicciField ric(N, N, RatFunc(N));
    Rational half = rat(1, 2);
    Poly d00f = w.f.derivative(0).derivative(0);
    ric.at(0, N - 1) = ric.at(N - 1, 0) = RatFunc(half * d00f);
    for (unsigned i = 0; i < n; ++i) {
        Poly s = w.f.derivative(0).derivative(1 + i);
        for (unsigned j = 0; j < n; ++j)
            s -= (w.u[i].derivative(1 + j) - w.u[j].derivative(1 + i)).derivative(1 + j);
        RatFunc v(half * s);
        ric.at(1 + i, N - 1) = v;
        ric.at(N - 1, 1 + i) = v;
    }
    Poly usq(N);
    for (unsigned i = 0; i < n; ++i) usq += w.u[i] * w.u[i];
    Poly big = (w.f - usq) * d00f;
    for (unsigned i = 0; i < n; ++i) big -= w.f.derivative(1 + i).derivative(1 + i);
    for (unsigned i = 0; i < n; ++i)
        big += Rational(2) * w.u[i].derivative(1 + i).derivative(N - 1);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            Poly curl = w.u[i].derivative(1 + j) - w.u[j].derivative(1 + i);
            big += curl * curl;
        }
    Poly divu(N);
    for (unsigned i = 0; i < n; ++i) divu += w.u[i].derivative(1 + i);
    big += w.f.derivative(0) * divu;
    for (unsigned i = 0; i < n; ++i)
        big += Rational(2) * w.u[i] * w.f.derivative(0).derivative(1 + i);
    ric.at(N - 1, N - 1) = RatFunc(half * big);
    return ric;
}

// ---------------------------------------------------------------------------
// Geometric predicates

/// First coordinate pair where Ric - lambda g fails to vanish, if any.
inline std::optional<std::pair<unsigned, unsigned>> einstein_defect(const WalkerMetric& w,
                                                                    const Rational& lambda) {
    RicciField ric = ricci(w);
    Mat<RatFunc> g = w.metric();
    unsigned N = w.nvars();
    for (unsigned a = 0; a < N; ++a)
        for (unsigned b = a; b < N; ++b) {
            RatFunc d = ric.at(a, b) - lambda * g.at(a, b);
            if (!d.is_zero()) return std::make_pair(a, b);
        }
    return std::nullopt;
}

inline bool is_einstein(const WalkerMetric& w, const Rational& lambda) {
    return !einstein_defect(w, lambda).has_value();
}

inline bool is_vacuum(const WalkerMetric& w) { return is_einstein(w, Rational(0)); }

/// Image of the Ricci operator is isotropic: Ric_ac g^{cd} Ric_db = 0.
inline bool is_totally_ricci_isotropic(const WalkerMetric& w) {
    RicciField ric = ricci(w);
    Mat<RatFunc> ginv = inverse_metric(w);
    unsigned N = w.nvars();
    for (unsigned a = 0; a < N; ++a)
        for (unsigned b = a; b < N; ++b) {
            RatFunc acc(N);
            for (unsigned c = 0; c < N; ++c)
                for (unsigned d = 0; d < N; ++d)
                    if (!ric.at(a, c).is_zero() && !ginv.at(c, d).is_zero() &&
                        !ric.at(d, b).is_zero())
                        acc += ric.at(a, c) * ginv.at(c, d) * ric.at(d, b);
            if (!acc.is_zero()) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Exact null frames

// Exact eta-orthonormal frame (p, e_1..e_n, q) at a rational point, p = d_0.
struct NullFrame {
    std::vector<Rational> point;
    MatQ vectors;  // columns: p, e_1..e_n, q in coordinate components
};

inline MatQ metric_at(const WalkerMetric& w, const std::vector<Rational>& point) {
    unsigned N = w.nvars();
    Mat<RatFunc> g = w.metric();
    MatQ G(N, N);
    for (unsigned a = 0; a < N; ++a)
        for (unsigned b = 0; b < N; ++b) G.at(a, b) = g.at(a, b).eval(point);
    return G;
}

/// Exact Gram-Schmidt adapted to span{d_0} inside its orthogonal complement.
/// Throws EvalError on a pole and domain_error when no exact orthonormal
/// frame exists at this point (an LDL pivot is not a rational square).
inline NullFrame null_frame(const WalkerMetric& w, const std::vector<Rational>& point) {
    unsigned n = w.n, N = w.nvars();
    MatQ G = metric_at(w, point);
    // h block LDL
    MatQ hv(n, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) hv.at(i, j) = G.at(1 + i, 1 + j);
    std::vector<VecQ> evecs;  // components over d_1..d_n
    MatQ m = hv;
    std::vector<VecQ> w_basis;  // raw orthogonal vectors
    for (unsigned k = 0; k < n; ++k) {
        // w_k = d_k - sum_{j<k} (eta(d_k, w_j) / eta(w_j, w_j)) w_j
        VecQ v(n, Rational(0));
        v[k] = Rational(1);
        for (unsigned j = 0; j < static_cast<unsigned>(w_basis.size()); ++j) {
            Rational num(0), den(0);
            for (unsigned a = 0; a < n; ++a)
                for (unsigned b = 0; b < n; ++b) {
                    num += (a == k ? Rational(1) : Rational(0)) * hv.at(a, b) * w_basis[j][b];
                    den += w_basis[j][a] * hv.at(a, b) * w_basis[j][b];
                }
            if (sgn(den) == 0) throw std::domain_error("null_frame: degenerate h block");
            Rational c = num / den;
            for (unsigned a = 0; a < n; ++a) v[a] -= c * w_basis[j][a];
        }
        w_basis.push_back(v);
        Rational norm(0);
        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = 0; b < n; ++b) norm += v[a] * hv.at(a, b) * v[b];
        if (sgn(norm) <= 0) throw std::domain_error("null_frame: h not positive definite here");
        auto s = rational_sqrt(norm);
        if (!s)
            throw std::domain_error(
                "null_frame: no exact orthonormal frame at this point (norm not a rational "
                "square); pick another point");
        VecQ e(v);
        for (auto& x : e) x /= *s;
        evecs.push_back(std::move(e));
    }
    MatQ F(N, N);
    // p = d_0
    F.at(0, 0) = Rational(1);
    for (unsigned k = 0; k < n; ++k)
        for (unsigned a = 0; a < n; ++a) F.at(1 + a, 1 + k) = evecs[k][a];
    // q~ = d_{n+1} - sum eta(d_{n+1}, e_k) e_k, then q = q~ - (eta(q~,q~)/2) p
    VecQ q(N, Rational(0));
    q[N - 1] = Rational(1);
    for (unsigned k = 0; k < n; ++k) {
        Rational c(0);
        for (unsigned a = 0; a < n; ++a) c += G.at(N - 1, 1 + a) * evecs[k][a];
        for (unsigned a = 0; a < n; ++a) q[1 + a] -= c * evecs[k][a];
    }
    Rational qq(0);
    for (unsigned a = 0; a < N; ++a)
        for (unsigned b = 0; b < N; ++b) qq += q[a] * G.at(a, b) * q[b];
    q[0] -= qq / Rational(2);
    for (unsigned a = 0; a < N; ++a) F.at(a, N - 1) = q[a];
    NullFrame frame{point, F};
    // exact invariants
    MatQ eta = F.transpose() * G * F;
    MatQ expect(N, N);
    expect.at(0, N - 1) = expect.at(N - 1, 0) = Rational(1);
    for (unsigned i = 1; i <= n; ++i) expect.at(i, i) = Rational(1);
    if (!(eta == expect)) throw std::runtime_error("null_frame: orthonormality check failed");
    return frame;
}

// ---------------------------------------------------------------------------
// Walker metric file format (walkerv1)

inline void write_walker(std::ostream& out, const WalkerMetric& w) {
    out << "walkerv1\n";
    out << "n = " << w.n << "\n";
    out << "family = " << family_name(w.family) << "\n";
    if (w.h_is_flat()) {
        out << "h = flat\n";
    } else {
        for (unsigned i = 0; i < w.n; ++i)
            for (unsigned j = i; j < w.n; ++j)
                if (!w.h.at(i, j).is_zero())
                    out << "h[" << (i + 1) << "][" << (j + 1) << "] = " << w.h.at(i, j).str()
                        << "\n";
    }
    for (unsigned i = 0; i < w.n; ++i)
        if (!w.u[i].is_zero()) out << "u[" << (i + 1) << "] = " << w.u[i].str() << "\n";
    if (!w.f.is_zero()) out << "f = " << w.f.str() << "\n";
}

inline WalkerMetric read_walker(std::istream& in) {
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        lines.push_back(line.substr(a, b - a + 1));
    }
    if (lines.empty() || lines[0] != "walkerv1")
        throw std::invalid_argument("walker file: missing walkerv1 header");
    WalkerMetric w;
    bool h_flat = false, n_seen = false, family_seen = false;
    std::vector<std::tuple<unsigned, unsigned, std::string>> h_entries;
    std::vector<std::pair<unsigned, std::string>> u_entries;
    std::string f_text;
    for (size_t idx = 1; idx < lines.size(); ++idx) {
        const std::string& s = lines[idx];
        size_t eq = s.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("walker file: bad line '" + s + "'");
        std::string key = s.substr(0, eq);
        std::string val = s.substr(eq + 1);
        auto trim = [](std::string t) {
            size_t a = t.find_first_not_of(" \t");
            size_t b = t.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
        };
        key = trim(key);
        val = trim(val);
        if (key == "n") {
            w.n = static_cast<unsigned>(std::stoul(val));
            n_seen = true;
        } else if (key == "family") {
            if (val == "flat") w.family = WalkerFamily::flat;
            else if (val == "diag") w.family = WalkerFamily::diag;
            else if (val == "general") w.family = WalkerFamily::general;
            else throw std::invalid_argument("walker file: unknown family '" + val + "'");
            family_seen = true;
        } else if (key == "h") {
            if (val != "flat") throw std::invalid_argument("walker file: h = flat expected");
            h_flat = true;
        } else if (key.rfind("h[", 0) == 0) {
            unsigned i = 0, j = 0;
            if (std::sscanf(key.c_str(), "h[%u][%u]", &i, &j) != 2 || i == 0 || j == 0)
                throw std::invalid_argument("walker file: bad h index in '" + key + "'");
            h_entries.emplace_back(i - 1, j - 1, val);
        } else if (key.rfind("u[", 0) == 0) {
            unsigned i = 0;
            if (std::sscanf(key.c_str(), "u[%u]", &i) != 1 || i == 0)
                throw std::invalid_argument("walker file: bad u index in '" + key + "'");
            u_entries.emplace_back(i - 1, val);
        } else if (key == "f") {
            f_text = val;
        } else {
            throw std::invalid_argument("walker file: unknown key '" + key + "'");
        }
    }
    if (!n_seen || !family_seen)
        throw std::invalid_argument("walker file: n and family are required");
    unsigned N = w.n + 2;
    w.h = Mat<RatFunc>(w.n, w.n, RatFunc(N));
    if (h_flat || (w.family == WalkerFamily::flat && h_entries.empty())) {
        for (unsigned i = 0; i < w.n; ++i) w.h.at(i, i) = RatFunc::constant(N, 1);
    } else {
        for (const auto& [i, j, text] : h_entries) {
            if (i >= w.n || j >= w.n)
                throw std::invalid_argument("walker file: h index out of range");
            RatFunc v = parse_ratfunc(text, N);
            if (!w.h.at(i, j).is_zero() && !(w.h.at(i, j) == v))
                throw std::invalid_argument("walker file: conflicting h entries");
            w.h.at(i, j) = v;
            w.h.at(j, i) = v;
        }
    }
    w.u.assign(w.n, Poly(N));
    for (const auto& [i, text] : u_entries) {
        if (i >= w.n) throw std::invalid_argument("walker file: u index out of range");
        w.u[i] = parse_poly(text, N);
    }
    w.f = f_text.empty() ? Poly(N) : parse_poly(f_text, N);
    w.validate();
    return w;
}

}  // namespace simhol

#endif
