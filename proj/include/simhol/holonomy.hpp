#ifndef SIMHOL_HOLONOMY_HPP
#define SIMHOL_HOLONOMY_HPP

#include "simhol/curvspace.hpp"
#include "simhol/walker.hpp"

namespace simhol {

/// Endomorphism of R^{1,n+1} from bivector coordinates (inverse of
/// endo_to_bivector).
inline MatQ bivector_to_endo(unsigned n, const VecQ& flat) {
    unsigned N = n + 2;
    MatQ M(N, N);
    unsigned k = 0;
    const Rational& pq = flat[k++];
    M.at(0, 0) = -pq;
    M.at(N - 1, N - 1) = pq;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
            const Rational& c = flat[k++];
            M.at(1 + j, 1 + i) += c;
            M.at(1 + i, 1 + j) -= c;
        }
    for (unsigned i = 0; i < n; ++i) {
        const Rational& c = flat[k++];  // p ^ e_i
        M.at(0, 1 + i) -= c;
        M.at(1 + i, N - 1) += c;
    }
    for (unsigned i = 0; i < n; ++i) {
        const Rational& c = flat[k++];  // q ^ e_i
        M.at(1 + i, 0) += c;
        M.at(N - 1, 1 + i) -= c;
    }
    return M;
}

// Accumulated span of curvature operators in null-frame bivector coordinates.
struct HolonomySpan {
    unsigned n = 0;
    std::vector<VecQ> basis;  // bivector coordinate vectors (pq, ee, pe, qe)

    unsigned dim() const { return static_cast<unsigned>(basis.size()); }

    bool sim_adapted() const {
        unsigned off = 1 + n * (n - 1) / 2 + n;
        for (const auto& v : basis)
            for (unsigned i = 0; i < n; ++i)
                if (sgn(v[off + i]) != 0) return false;
        return true;
    }

    std::vector<SimElement> sim_elements() const {
        if (!sim_adapted()) throw std::runtime_error("holonomy span is not inside sim(n)");
        std::vector<SimElement> out;
        unsigned npairs = n * (n - 1) / 2;
        for (const auto& v : basis) {
            SimElement e;
            e.a = -v[0];
            e.A = skew_from_coords(n, VecQ(v.begin() + 1, v.begin() + 1 + npairs));
            e.X.resize(n);
            for (unsigned i = 0; i < n; ++i) e.X[i] = -v[1 + npairs + i];
            out.push_back(std::move(e));
        }
        return out;
    }

    bool bracket_closed() const {
        SpanBuilder s(1 + n * (n - 1) / 2 + 2 * n);
        for (const auto& v : basis) s.add(v);
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = i + 1; j < basis.size(); ++j) {
                MatQ br = bracket(bivector_to_endo(n, basis[i]), bivector_to_endo(n, basis[j]));
                if (!s.contains(endo_to_bivector(br).flat())) return false;
            }
        return true;
    }

    bool contains(const VecQ& bivector_flat) const {
        SpanBuilder s(1 + n * (n - 1) / 2 + 2 * n);
        for (const auto& v : basis) s.add(v);
        return s.contains(bivector_flat);
    }
};

/// Deterministic sample points: the origin, (0,1,0,..,0,1), (0,1,2,..,n,1).
inline std::vector<std::vector<Rational>> default_sample_points(unsigned n) {
    unsigned N = n + 2;
    std::vector<std::vector<Rational>> pts;
    pts.emplace_back(N, Rational(0));
    std::vector<Rational> p2(N, Rational(0));
    p2[1] = Rational(1);
    p2[N - 1] = Rational(1);
    pts.push_back(std::move(p2));
    std::vector<Rational> p3(N, Rational(0));
    for (unsigned i = 1; i <= n; ++i) p3[i] = Rational(static_cast<long>(i));
    p3[N - 1] = Rational(1);
    pts.push_back(std::move(p3));
    return pts;
}

namespace holonomy_detail {

// Dense value tables of Gamma, R and their derivatives at one point.
struct PointTables {
    unsigned N = 0;
    std::vector<Rational> gamma;        // [a][b][c] full symmetric
    std::vector<Rational> dgamma;       // [e][a][b][c]
    std::vector<Rational> rv;           // [a][b][c][d] full antisymmetric in (c,d)
    std::vector<Rational> drv;          // [e][a][b][c][d]

    Rational& G(unsigned a, unsigned b, unsigned c) { return gamma[(a * N + b) * N + c]; }
    const Rational& G(unsigned a, unsigned b, unsigned c) const {
        return gamma[(a * N + b) * N + c];
    }
    Rational& dG(unsigned e, unsigned a, unsigned b, unsigned c) {
        return dgamma[((e * N + a) * N + b) * N + c];
    }
    const Rational& dG(unsigned e, unsigned a, unsigned b, unsigned c) const {
        return dgamma[((e * N + a) * N + b) * N + c];
    }
    Rational& R(unsigned a, unsigned b, unsigned c, unsigned d) {
        return rv[((a * N + b) * N + c) * N + d];
    }
    const Rational& R(unsigned a, unsigned b, unsigned c, unsigned d) const {
        return rv[((a * N + b) * N + c) * N + d];
    }
    Rational& dR(unsigned e, unsigned a, unsigned b, unsigned c, unsigned d) {
        return drv[(((e * N + a) * N + b) * N + c) * N + d];
    }
    const Rational& dR(unsigned e, unsigned a, unsigned b, unsigned c, unsigned d) const {
        return drv[(((e * N + a) * N + b) * N + c) * N + d];
    }
};

// contract(A, B; f)^a_{bcd} = A^a_{fg} B^g_{bcd} - A^g_{fb} B^a_{gcd}
//                           - A^g_{fc} B^a_{bgd} - A^g_{fd} B^a_{bcg}
// where A is a Gamma-like table slice and B an R-like table.
inline void add_gamma_action(unsigned N, const PointTables& t, bool use_dgamma, unsigned e_slot,
                             unsigned f, const std::vector<Rational>& B,
                             std::vector<Rational>& out) {
    auto bval = [&](unsigned a, unsigned b, unsigned c, unsigned d) -> const Rational& {
        return B[((a * N + b) * N + c) * N + d];
    };
    auto gam = [&](unsigned x, unsigned y, unsigned z) -> const Rational& {
        return use_dgamma ? t.dG(e_slot, x, y, z) : t.G(x, y, z);
    };
    for (unsigned a = 0; a < N; ++a)
        for (unsigned b = 0; b < N; ++b)
            for (unsigned c = 0; c < N; ++c)
                for (unsigned d = c + 1; d < N; ++d) {
                    Rational acc(0);
                    for (unsigned g = 0; g < N; ++g) {
                        if (sgn(gam(a, f, g)) != 0 && sgn(bval(g, b, c, d)) != 0)
                            acc += gam(a, f, g) * bval(g, b, c, d);
                        if (sgn(gam(g, f, b)) != 0 && sgn(bval(a, g, c, d)) != 0)
                            acc -= gam(g, f, b) * bval(a, g, c, d);
                        if (sgn(gam(g, f, c)) != 0 && sgn(bval(a, b, g, d)) != 0)
                            acc -= gam(g, f, c) * bval(a, b, g, d);
                        if (sgn(gam(g, f, d)) != 0 && sgn(bval(a, b, c, g)) != 0)
                            acc -= gam(g, f, d) * bval(a, b, c, g);
                    }
                    if (sgn(acc) != 0) {
                        out[((a * N + b) * N + c) * N + d] += acc;
                        out[((a * N + b) * N + d) * N + c] -= acc;
                    }
                }
}

}  // namespace holonomy_detail

/// Span of R, (nabla R), (nabla^2 R) values at the sample points, expressed
/// in each point's exact null frame; a certified lower bound for the
/// holonomy algebra. Throws EvalError if a point sits on a pole.
inline HolonomySpan infinitesimal_holonomy(const WalkerMetric& w,
                                           const std::vector<std::vector<Rational>>& points,
                                           unsigned order = 2) {
    if (order > 2) throw std::invalid_argument("infinitesimal_holonomy: order must be 0..2");
    unsigned n = w.n, N = w.nvars();
    Christoffels ch = christoffel(w);
    RiemannTensor rm = riemann(w, ch);
    HolonomySpan span;
    span.n = n;
    SpanBuilder acc(1 + n * (n - 1) / 2 + 2 * n);
    for (const auto& pt : points) {
        NullFrame frame = null_frame(w, pt);
        MatQ F = frame.vectors;
        MatQ Finv = inverse_q(F);
        holonomy_detail::PointTables t;
        t.N = N;
        t.gamma.assign(N * N * N, Rational(0));
        t.rv.assign(N * N * N * N, Rational(0));
        if (order >= 1) t.drv.assign(N * N * N * N * N, Rational(0));
        if (order >= 2) t.dgamma.assign(N * N * N * N, Rational(0));
        for (unsigned a = 0; a < N; ++a)
            for (unsigned b = 0; b < N; ++b)
                for (unsigned c = b; c < N; ++c) {
                    const RatFunc& g = ch.at(a, b, c);
                    if (g.is_zero()) continue;
                    Rational v = g.eval(pt);
                    t.G(a, b, c) = v;
                    t.G(a, c, b) = v;
                    if (order >= 2)
                        for (unsigned e = 0; e < N; ++e) {
                            Rational dv = g.derivative(e).eval(pt);
                            t.dG(e, a, b, c) = dv;
                            t.dG(e, a, c, b) = dv;
                        }
                }
        // R values and derivative values
        for (unsigned a = 0; a < N; ++a)
            for (unsigned b = 0; b < N; ++b)
                for (unsigned c = 0; c < N; ++c)
                    for (unsigned d = c + 1; d < N; ++d) {
                        const RatFunc& comp = rm.at(a, b, c, d);
                        if (comp.is_zero()) continue;
                        Rational v = comp.eval(pt);
                        t.R(a, b, c, d) = v;
                        t.R(a, b, d, c) = -v;
                        if (order >= 1)
                            for (unsigned e = 0; e < N; ++e) {
                                Rational dv = comp.derivative(e).eval(pt);
                                t.dR(e, a, b, c, d) = dv;
                                t.dR(e, a, b, d, c) = -dv;
                            }
                    }
        auto add_operator = [&](const std::vector<Rational>& table, unsigned c, unsigned d) {
            MatQ M(N, N);
            bool nz = false;
            for (unsigned a = 0; a < N; ++a)
                for (unsigned b = 0; b < N; ++b) {
                    M.at(a, b) = table[((a * N + b) * N + c) * N + d];
                    if (sgn(M.at(a, b)) != 0) nz = true;
                }
            if (!nz) return;
            MatQ framed = Finv * M * F;
            acc.add(endo_to_bivector(framed).flat());
        };
        // order 0
        for (unsigned c = 0; c < N; ++c)
            for (unsigned d = c + 1; d < N; ++d) add_operator(t.rv, c, d);
        if (order == 0) continue;
        // order 1: S[f] = (nabla_f R) values
        std::vector<std::vector<Rational>> S(N);
        for (unsigned f = 0; f < N; ++f) {
            std::vector<Rational> slab(N * N * N * N, Rational(0));
            for (unsigned a = 0; a < N; ++a)
                for (unsigned b = 0; b < N; ++b)
                    for (unsigned c = 0; c < N; ++c)
                        for (unsigned d = c + 1; d < N; ++d) {
                            Rational v = t.dR(f, a, b, c, d);
                            slab[((a * N + b) * N + c) * N + d] = v;
                            slab[((a * N + b) * N + d) * N + c] = -v;
                        }
            holonomy_detail::add_gamma_action(N, t, false, 0, f, t.rv, slab);
            for (unsigned c = 0; c < N; ++c)
                for (unsigned d = c + 1; d < N; ++d) add_operator(slab, c, d);
            S[f] = std::move(slab);
        }
        if (order == 1) continue;
        // order 2: (nabla^2 R)(e, f)
        for (unsigned e = 0; e < N; ++e) {
            // dRe_values: second derivative tables d_e d_f R and d_e R slices
            std::vector<Rational> dRe(N * N * N * N, Rational(0));
            for (unsigned a = 0; a < N; ++a)
                for (unsigned b = 0; b < N; ++b)
                    for (unsigned c = 0; c < N; ++c)
                        for (unsigned d = c + 1; d < N; ++d) {
                            Rational v = t.dR(e, a, b, c, d);
                            dRe[((a * N + b) * N + c) * N + d] = v;
                            dRe[((a * N + b) * N + d) * N + c] = -v;
                        }
            for (unsigned f = 0; f < N; ++f) {
                std::vector<Rational> slab(N * N * N * N, Rational(0));
                // d_e(S_f) = d_e d_f R + (d_e Gamma) . R + Gamma . (d_e R)
                for (unsigned a = 0; a < N; ++a)
                    for (unsigned b = 0; b < N; ++b)
                        for (unsigned c = 0; c < N; ++c)
                            for (unsigned d = c + 1; d < N; ++d) {
                                const RatFunc& comp = rm.at(a, b, c, d);
                                if (comp.is_zero()) continue;
                                Rational v = comp.derivative(f).derivative(e).eval(pt);
                                if (sgn(v) != 0) {
                                    slab[((a * N + b) * N + c) * N + d] += v;
                                    slab[((a * N + b) * N + d) * N + c] -= v;
                                }
                            }
                holonomy_detail::add_gamma_action(N, t, true, e, f, t.rv, slab);
                holonomy_detail::add_gamma_action(N, t, false, 0, f, dRe, slab);
                // - Gamma^g_{ef} S[g]  and Gamma-corrections on the four slots of S[f]
                for (unsigned g = 0; g < N; ++g) {
                    const Rational& c_ef = t.G(g, e, f);
                    if (sgn(c_ef) != 0)
                        for (size_t idx = 0; idx < slab.size(); ++idx)
                            if (sgn(S[g][idx]) != 0) slab[idx] -= c_ef * S[g][idx];
                }
                holonomy_detail::add_gamma_action(N, t, false, 0, e, S[f], slab);
                for (unsigned c = 0; c < N; ++c)
                    for (unsigned d = c + 1; d < N; ++d) add_operator(slab, c, d);
            }
        }
    }
    span.basis = acc.basis();
    return span;
}

inline HolonomySpan infinitesimal_holonomy(const WalkerMetric& w, unsigned order = 2) {
    return infinitesimal_holonomy(w, default_sample_points(w.n), order);
}

// ---------------------------------------------------------------------------
// Classification of the holonomy span into the four Walker types

struct WalkerClassification {
    int type = 0;
    Subalgebra orthogonal_part;
    Decomposition decomposition;
    unsigned translations_dim = 0;
    VecQ phi;     // type 3: functional on the orthogonal part basis
    unsigned m = 0;  // type 4

    HolonomyDescriptor descriptor() const {
        HolonomyDescriptor d;
        d.type = type;
        d.h = orthogonal_part;
        d.phi = phi;
        d.m = m;
        return d;
    }
};

/// Projects the span onto (a, A, X) components and decides the type.
inline WalkerClassification classify_walker_type(const HolonomySpan& span) {
    if (!span.sim_adapted())
        throw std::runtime_error(
            "classify: span not contained in sim(n) (not a Walker-adapted frame)");
    unsigned n = span.n;
    unsigned npairs = n * (n - 1) / 2;
    WalkerClassification out;
    std::vector<SimElement> elems = span.sim_elements();
    // translations: elements with a = 0, A = 0
    {
        MatQ proj(1 + npairs, static_cast<unsigned>(elems.size()));
        for (unsigned s = 0; s < elems.size(); ++s) {
            proj.at(0, s) = elems[s].a;
            VecQ a = skew_coords(elems[s].A);
            for (unsigned r = 0; r < npairs; ++r) proj.at(1 + r, s) = a[r];
        }
        SpanBuilder tspan(n);
        for (const auto& combo : nullspace_q(proj)) {
            VecQ x(n, Rational(0));
            for (unsigned s = 0; s < elems.size(); ++s)
                for (unsigned i = 0; i < n; ++i) x[i] += combo[s] * elems[s].X[i];
            tspan.add(x);
        }
        out.translations_dim = tspan.dim();
    }
    // orthogonal part: span of A-projections
    {
        SpanBuilder aspan(npairs);
        std::vector<SkewMatrix> basis;
        for (const auto& e : elems)
            if (aspan.add(skew_coords(e.A))) basis.push_back(e.A);
        out.orthogonal_part = Subalgebra{n, std::move(basis)};
    }
    // is the a-part free of the A-part?
    bool a_nonzero = false;
    for (const auto& e : elems)
        if (sgn(e.a) != 0) a_nonzero = true;
    bool a_free = false;
    if (a_nonzero) {
        SpanBuilder aA(1 + npairs);
        for (const auto& e : elems) {
            VecQ v;
            v.push_back(e.a);
            VecQ a = skew_coords(e.A);
            v.insert(v.end(), a.begin(), a.end());
            aA.add(v);
        }
        VecQ unit(1 + npairs, Rational(0));
        unit[0] = Rational(1);
        a_free = aA.contains(unit);
    }
    if (a_free) {
        out.type = 1;
    } else if (a_nonzero) {
        out.type = 3;
        // phi(A_t): the a-value of any span element with A-projection A_t
        MatQ sys(npairs, out.orthogonal_part.dim());
        for (unsigned tcol = 0; tcol < out.orthogonal_part.dim(); ++tcol) {
            VecQ a = skew_coords(out.orthogonal_part.basis[tcol]);
            for (unsigned r = 0; r < npairs; ++r) sys.at(r, tcol) = a[r];
        }
        out.phi.assign(out.orthogonal_part.dim(), Rational(0));
        for (unsigned tcol = 0; tcol < out.orthogonal_part.dim(); ++tcol) {
            // find a span combo whose A equals basis[tcol]
            MatQ m2(npairs, static_cast<unsigned>(elems.size()));
            for (unsigned s = 0; s < elems.size(); ++s) {
                VecQ a = skew_coords(elems[s].A);
                for (unsigned r = 0; r < npairs; ++r) m2.at(r, s) = a[r];
            }
            VecQ rhs = skew_coords(out.orthogonal_part.basis[tcol]);
            auto combo = solve_q(m2, rhs);
            if (!combo) throw std::runtime_error("classify: inconsistent A-projection");
            Rational a_val(0);
            for (unsigned s = 0; s < elems.size(); ++s) a_val += (*combo)[s] * elems[s].a;
            out.phi[tcol] = a_val;
        }
    } else if (out.translations_dim == n) {
        out.type = 2;
    } else {
        out.type = 4;
        out.m = out.translations_dim;
    }
    out.decomposition = decompose(out.orthogonal_part);
    return out;
}

/// Expected bivector span of a type-1 or type-2 holonomy algebra with
/// orthogonal part h, for certificate checks.
inline std::vector<VecQ> expected_span_vectors(const Subalgebra& h, int type) {
    unsigned n = h.n;
    std::vector<VecQ> out;
    if (type == 1) {
        SimElement e{Rational(1), SkewMatrix(n, n), VecQ(n, Rational(0))};
        out.push_back(sim_to_bivector(e).flat());
    }
    for (const auto& B : h.basis)
        out.push_back(sim_to_bivector(SimElement{Rational(0), B, VecQ(n, Rational(0))}).flat());
    for (unsigned i = 0; i < n; ++i) {
        VecQ x(n, Rational(0));
        x[i] = Rational(1);
        out.push_back(sim_to_bivector(SimElement{Rational(0), SkewMatrix(n, n), x}).flat());
    }
    return out;
}

/// span == (R +) h |x R^n as subspaces of so(1, n+1).
inline bool span_matches(const HolonomySpan& span, const Subalgebra& h, int type) {
    std::vector<VecQ> expect = expected_span_vectors(h, type);
    if (span.dim() != expect.size()) return false;
    for (const auto& v : expect)
        if (!span.contains(v)) return false;
    return true;
}

}  // namespace simhol

#endif
