#ifndef SIMHOL_LIEALG_HPP
#define SIMHOL_LIEALG_HPP

#include <array>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "simhol/matrix.hpp"

namespace simhol {

// Skew-symmetric rational matrix; elements of so(n).
using SkewMatrix = MatQ;

inline bool is_skew(const MatQ& m) {
    if (m.rows != m.cols) return false;
    for (unsigned i = 0; i < m.rows; ++i)
        for (unsigned j = 0; j <= i; ++j)
            if (m.at(i, j) != -m.at(j, i)) return false;
    return true;
}

inline SkewMatrix bracket(const SkewMatrix& a, const SkewMatrix& b) {
    if (a.rows != b.rows) throw std::invalid_argument("bracket: dimension mismatch");
    return a * b - b * a;
}

// Coordinates of M in the bivector basis {e_i ^ e_j : i < j} of so(n),
// where (e_i ^ e_j) e_i = e_j, i.e. the matrix E_ji - E_ij.
inline VecQ skew_coords(const SkewMatrix& m) {
    unsigned n = m.rows;
    VecQ v;
    v.reserve(n * (n - 1) / 2);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) v.push_back(m.at(j, i));
    return v;
}

inline SkewMatrix skew_from_coords(unsigned n, const VecQ& v) {
    SkewMatrix m(n, n);
    unsigned k = 0;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
            m.at(j, i) = v[k];
            m.at(i, j) = -v[k];
            ++k;
        }
    return m;
}

inline SkewMatrix wedge(unsigned n, unsigned i, unsigned j) {
    SkewMatrix m(n, n);
    m.at(j, i) = Rational(1);
    m.at(i, j) = Rational(-1);
    return m;
}

// A subalgebra of so(n) given by a linearly independent basis of skew
// matrices, closed under the bracket.
struct Subalgebra {
    unsigned n = 0;
    std::vector<SkewMatrix> basis;

    unsigned dim() const { return static_cast<unsigned>(basis.size()); }

    SpanBuilder span() const {
        SpanBuilder s(n * (n - 1) / 2);
        for (const auto& b : basis) s.add(skew_coords(b));
        return s;
    }

    /// Coordinates of m in this basis, or nullopt if m is outside the span.
    std::optional<VecQ> coords_of(const SkewMatrix& m) const {
        MatQ a(n * (n - 1) / 2, dim());
        for (unsigned t = 0; t < dim(); ++t) {
            VecQ col = skew_coords(basis[t]);
            for (unsigned r = 0; r < a.rows; ++r) a.at(r, t) = col[r];
        }
        VecQ rhs = skew_coords(m);
        auto x = solve_q(a, rhs);
        if (!x) return std::nullopt;
        // solve() leaves free variables at 0; verify exactly
        SkewMatrix rec(n, n);
        for (unsigned t = 0; t < dim(); ++t)
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = 0; j < n; ++j) rec.at(i, j) += (*x)[t] * basis[t].at(i, j);
        if (!(rec == m)) return std::nullopt;
        return x;
    }

    void validate() const {
        for (const auto& b : basis) {
            if (b.rows != n || b.cols != n) throw std::invalid_argument("subalgebra: size mismatch");
            if (!is_skew(b)) throw std::invalid_argument("subalgebra: basis element not skew");
        }
        SpanBuilder s(n * (n - 1) / 2);
        for (const auto& b : basis)
            if (!s.add(skew_coords(b)))
                throw std::invalid_argument("subalgebra: basis not linearly independent");
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = i + 1; j < basis.size(); ++j)
                if (!s.contains(skew_coords(bracket(basis[i], basis[j]))))
                    throw std::invalid_argument("subalgebra: not closed under bracket");
    }
};

/// Smallest bracket-closed span containing the given matrices.
inline Subalgebra generated_lie_algebra(unsigned n, const std::vector<SkewMatrix>& gens) {
    SpanBuilder s(n * (n - 1) / 2);
    std::vector<SkewMatrix> basis;
    auto push = [&](const SkewMatrix& m) {
        if (s.add(skew_coords(m))) basis.push_back(m);
    };
    for (const auto& g : gens) push(g);
    size_t frontier = 0;
    while (frontier < basis.size()) {
        size_t end = basis.size();
        for (size_t i = frontier; i < end; ++i)
            for (size_t j = 0; j < end; ++j) push(bracket(basis[i], basis[j]));
        frontier = end;
    }
    return Subalgebra{n, std::move(basis)};
}

/// Derived subalgebra h' = [h, h].
inline Subalgebra derived_algebra(const Subalgebra& h) {
    std::vector<SkewMatrix> brackets;
    for (size_t i = 0; i < h.basis.size(); ++i)
        for (size_t j = i + 1; j < h.basis.size(); ++j)
            brackets.push_back(bracket(h.basis[i], h.basis[j]));
    return generated_lie_algebra(h.n, brackets);
}

/// Center z(h): elements of h commuting with all of h.
inline std::vector<VecQ> center_coords(const Subalgebra& h) {
    unsigned d = h.dim();
    if (d == 0) return {};
    unsigned n = h.n;
    MatQ sys(d * n * n, d);
    for (unsigned t = 0; t < d; ++t)
        for (unsigned u = 0; u < d; ++u) {
            MatQ c = bracket(h.basis[u], h.basis[t]);
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = 0; j < n; ++j) sys.at(t * n * n + i * n + j, u) = c.at(i, j);
        }
    return nullspace_q(sys);
}

// ---------------------------------------------------------------------------
// Builtin algebras

namespace builtin_detail {

inline std::vector<SkewMatrix> so_basis(unsigned n) {
    std::vector<SkewMatrix> b;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) b.push_back(wedge(n, i, j));
    return b;
}

// nullspace of linear conditions on so(n) coordinates -> basis matrices
inline std::vector<SkewMatrix> solve_in_so(unsigned n, const MatQ& conditions) {
    std::vector<SkewMatrix> out;
    for (const auto& v : nullspace_q(conditions)) out.push_back(skew_from_coords(n, v));
    return out;
}

// conditions for commuting with J, as rows over so(n) coordinates
inline void append_commutant_rows(std::vector<VecQ>& rows, unsigned n, const MatQ& J) {
    auto so = so_basis(n);
    unsigned dim_so = static_cast<unsigned>(so.size());
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            VecQ row(dim_so, Rational(0));
            bool nonzero = false;
            for (unsigned t = 0; t < dim_so; ++t) {
                MatQ c = so[t] * J - J * so[t];
                if (sgn(c.at(i, j)) != 0) {
                    row[t] = c.at(i, j);
                    nonzero = true;
                }
            }
            if (nonzero) rows.push_back(std::move(row));
        }
}

inline MatQ complex_structure(unsigned m) {
    MatQ j(2 * m, 2 * m);
    for (unsigned k = 0; k < m; ++k) {
        j.at(m + k, k) = Rational(1);
        j.at(k, m + k) = Rational(-1);
    }
    return j;
}

// left multiplication by i and j on H^m, coordinates grouped (a, b, c, d)
inline std::pair<MatQ, MatQ> quaternion_structures(unsigned m) {
    unsigned n = 4 * m;
    MatQ j1(n, n), j2(n, n);
    for (unsigned k = 0; k < m; ++k) {
        j1.at(m + k, k) = Rational(1);
        j1.at(k, m + k) = Rational(-1);
        j1.at(3 * m + k, 2 * m + k) = Rational(1);
        j1.at(2 * m + k, 3 * m + k) = Rational(-1);
        j2.at(2 * m + k, k) = Rational(1);
        j2.at(k, 2 * m + k) = Rational(-1);
        j2.at(m + k, 3 * m + k) = Rational(1);
        j2.at(3 * m + k, m + k) = Rational(-1);
    }
    return {j1, j2};
}

inline MatQ stack_rows(const std::vector<VecQ>& rows, unsigned cols) {
    MatQ m(static_cast<unsigned>(rows.size()), cols);
    for (unsigned i = 0; i < rows.size(); ++i)
        for (unsigned j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

// Antisymmetric k-form on R^n as a map from sorted index tuples.
struct AltForm {
    unsigned n, k;
    std::map<std::vector<unsigned>, Rational> vals;

    void set(std::vector<unsigned> idx, const Rational& c) { vals[std::move(idx)] = c; }

    Rational operator()(std::vector<unsigned> idx) const {
        int sign = 1;
        for (size_t i = 0; i + 1 < idx.size(); ++i)
            for (size_t j = 0; j + 1 < idx.size() - i; ++j)
                if (idx[j] > idx[j + 1]) {
                    std::swap(idx[j], idx[j + 1]);
                    sign = -sign;
                }
        for (size_t i = 0; i + 1 < idx.size(); ++i)
            if (idx[i] == idx[i + 1]) return Rational(0);
        auto it = vals.find(idx);
        if (it == vals.end()) return Rational(0);
        return sign < 0 ? Rational(-it->second) : it->second;
    }
};

// The fixed associative 3-form e123+e145+e167+e246-e257-e347-e356
// (indices 1-based as usually written; stored 0-based).
inline AltForm g2_three_form() {
    AltForm phi{7, 3, {}};
    auto add = [&](unsigned a, unsigned b, unsigned c, long s) {
        phi.set({a - 1, b - 1, c - 1}, Rational(s));
    };
    add(1, 2, 3, 1);
    add(1, 4, 5, 1);
    add(1, 6, 7, 1);
    add(2, 4, 6, 1);
    add(2, 5, 7, -1);
    add(3, 4, 7, -1);
    add(3, 5, 6, -1);
    return phi;
}

// Hodge dual of a 3-form on R^7 (Euclidean, standard orientation).
inline AltForm hodge7(const AltForm& phi) {
    AltForm star{7, 4, {}};
    for (const auto& [idx, c] : phi.vals) {
        std::vector<unsigned> comp;
        for (unsigned i = 0; i < 7; ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) comp.push_back(i);
        // sign of the permutation (idx, comp) relative to (0..6)
        std::vector<unsigned> perm = idx;
        perm.insert(perm.end(), comp.begin(), comp.end());
        int sign = 1;
        for (size_t i = 0; i < perm.size(); ++i)
            for (size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) sign = -sign;
        star.set(comp, sign < 0 ? Rational(-c) : c);
    }
    return star;
}

// Cayley 4-form on R^8 induced by the fixed 3-form: e8 ^ phi + *phi
// with e8 the last coordinate.
inline AltForm cayley_four_form() {
    AltForm phi = g2_three_form();
    AltForm star = hodge7(phi);
    AltForm cayley{8, 4, {}};
    for (const auto& [idx, c] : phi.vals) {
        std::vector<unsigned> q = idx;  // e8 moved to the back: e_i^e_j^e_k^e_8
        q.push_back(7);
        cayley.set(q, c);
    }
    for (const auto& [idx, c] : star.vals) cayley.set(idx, c);
    return cayley;
}

// Annihilator of a k-form inside so(n): A with sum_slots omega(..,Ae,..) = 0.
inline std::vector<SkewMatrix> form_annihilator(unsigned n, const AltForm& omega) {
    auto so = so_basis(n);
    unsigned dim_so = static_cast<unsigned>(so.size());
    std::vector<VecQ> rows;
    std::vector<unsigned> idx(omega.k);
    // iterate over sorted index tuples
    std::function<void(unsigned, unsigned)> rec = [&](unsigned slot, unsigned from) {
        if (slot == omega.k) {
            VecQ row(dim_so, Rational(0));
            bool nonzero = false;
            for (unsigned t = 0; t < dim_so; ++t) {
                Rational acc(0);
                for (unsigned s = 0; s < omega.k; ++s) {
                    // omega(idx with slot s replaced by image index l), A column idx[s]
                    for (unsigned l = 0; l < n; ++l) {
                        const Rational& a = so[t].at(l, idx[s]);
                        if (sgn(a) == 0) continue;
                        std::vector<unsigned> jdx(idx.begin(), idx.end());
                        jdx[s] = l;
                        Rational w = omega(jdx);
                        if (sgn(w) != 0) acc += a * w;
                    }
                }
                if (sgn(acc) != 0) {
                    row[t] = acc;
                    nonzero = true;
                }
            }
            if (nonzero) rows.push_back(std::move(row));
            return;
        }
        for (unsigned i = from; i < n; ++i) {
            idx[slot] = i;
            rec(slot + 1, i + 1);
        }
    };
    rec(0, 0);
    if (rows.empty()) return so;
    return solve_in_so(n, stack_rows(rows, dim_so));
}

// Irreducible rho(so(3)) in so(5): the harmonic-quadratics representation
// expressed in an exact rational orthonormal frame, scaled to integers.
inline std::vector<SkewMatrix> so3irr5_basis() {
    static const std::array<std::array<long, 25>, 3> raw = {{
        {0, 0, -5, 4, 3, 0, 0, -5, -3, 4, 5, 5, 0, 3, -4, -4, 3, -3, 0, 0, -3, -4, 4, 0, 0},
        {0, 0, 5, -3, 4, 0, 0, -5, -4, -3, -5, 5, 0, -4, -3, 3, 4, 4, 0, 0, -4, 3, 3, 0, 0},
        {0, 0, 0, -1, -7, 0, 0, 0, -7, 1, 0, 0, 0, 0, 0, 1, 7, 0, 0, 5, 7, -1, 0, -5, 0},
    }};
    std::vector<SkewMatrix> b;
    for (const auto& flat : raw) {
        SkewMatrix m(5, 5);
        for (unsigned i = 0; i < 5; ++i)
            for (unsigned j = 0; j < 5; ++j) m.at(i, j) = Rational(flat[i * 5 + j]);
        b.push_back(std::move(m));
    }
    return b;
}

}  // namespace builtin_detail

inline Subalgebra builtin_so(unsigned n) { return {n, builtin_detail::so_basis(n)}; }

inline Subalgebra builtin_trivial(unsigned n) { return {n, {}}; }

inline Subalgebra builtin_u(unsigned m) {
    unsigned n = 2 * m;
    std::vector<VecQ> rows;
    builtin_detail::append_commutant_rows(rows, n, builtin_detail::complex_structure(m));
    return {n, builtin_detail::solve_in_so(
                   n, builtin_detail::stack_rows(rows, n * (n - 1) / 2))};
}

inline Subalgebra builtin_su(unsigned m) {
    unsigned n = 2 * m;
    auto so = builtin_detail::so_basis(n);
    std::vector<VecQ> rows;
    builtin_detail::append_commutant_rows(rows, n, builtin_detail::complex_structure(m));
    // complex trace: tr_C(A) = i * sum_k A[m+k][k]
    VecQ tr(so.size(), Rational(0));
    for (unsigned t = 0; t < so.size(); ++t) {
        Rational s(0);
        for (unsigned k = 0; k < m; ++k) s += so[t].at(m + k, k);
        tr[t] = s;
    }
    rows.push_back(std::move(tr));
    return {n, builtin_detail::solve_in_so(
                   n, builtin_detail::stack_rows(rows, n * (n - 1) / 2))};
}

inline Subalgebra builtin_sp(unsigned m) {
    unsigned n = 4 * m;
    auto [j1, j2] = builtin_detail::quaternion_structures(m);
    std::vector<VecQ> rows;
    builtin_detail::append_commutant_rows(rows, n, j1);
    builtin_detail::append_commutant_rows(rows, n, j2);
    return {n, builtin_detail::solve_in_so(
                   n, builtin_detail::stack_rows(rows, n * (n - 1) / 2))};
}

inline Subalgebra builtin_spsp1(unsigned m) {
    Subalgebra sp = builtin_sp(m);
    auto [j1, j2] = builtin_detail::quaternion_structures(m);
    sp.basis.push_back(j1);
    sp.basis.push_back(j2);
    sp.basis.push_back(j1 * j2);
    return sp;
}

inline Subalgebra builtin_g2() {
    return {7, builtin_detail::form_annihilator(7, builtin_detail::g2_three_form())};
}

inline Subalgebra builtin_spin7() {
    return {8, builtin_detail::form_annihilator(8, builtin_detail::cayley_four_form())};
}

inline Subalgebra builtin_so3irr5() { return {5, builtin_detail::so3irr5_basis()}; }

/// Builtin catalog: so:n, u:m, su:m, sp:m, spsp1:m, g2, spin7, so3irr5, trivial:n.
inline Subalgebra builtin(const std::string& name) {
    auto parse_sized = [&](const std::string& prefix) -> std::optional<unsigned> {
        if (name.rfind(prefix + ":", 0) != 0) return std::nullopt;
        std::string rest = name.substr(prefix.size() + 1);
        if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("builtin: bad size in '" + name + "'");
        return static_cast<unsigned>(std::stoul(rest));
    };
    if (auto n = parse_sized("so")) {
        if (*n < 2) throw std::invalid_argument("builtin: so:n needs n >= 2");
        return builtin_so(*n);
    }
    if (auto m = parse_sized("u")) {
        if (*m < 1) throw std::invalid_argument("builtin: u:m needs m >= 1");
        return builtin_u(*m);
    }
    if (auto m = parse_sized("su")) {
        if (*m < 2) throw std::invalid_argument("builtin: su:m needs m >= 2");
        return builtin_su(*m);
    }
    if (auto m = parse_sized("sp")) {
        if (*m < 1) throw std::invalid_argument("builtin: sp:m needs m >= 1");
        return builtin_sp(*m);
    }
    if (auto m = parse_sized("spsp1")) {
        if (*m < 1) throw std::invalid_argument("builtin: spsp1:m needs m >= 1");
        return builtin_spsp1(*m);
    }
    if (auto n = parse_sized("trivial")) return builtin_trivial(*n);
    if (name == "g2") return builtin_g2();
    if (name == "spin7") return builtin_spin7();
    if (name == "so3irr5") return builtin_so3irr5();
    throw std::invalid_argument("builtin: unknown algebra '" + name + "'");
}

// ---------------------------------------------------------------------------
// Decomposition into ideals acting on orthogonal blocks

struct Decomposition {
    std::vector<unsigned> block_sizes;   // n_1 .. n_s
    unsigned trailing = 0;               // n_{s+1}, annihilated block
    std::vector<unsigned> perm;          // perm[new] = old coordinate index
    std::vector<Subalgebra> ideals;      // ideal per block, in block-local coordinates
};

namespace decomp_detail {

// dimension of {M = M^T : MB = BM for all B}, restricted to coords in S
inline unsigned symmetric_commutant_dim(const std::vector<SkewMatrix>& basis,
                                        const std::vector<unsigned>& S) {
    unsigned k = static_cast<unsigned>(S.size());
    unsigned unknowns = k * (k + 1) / 2;
    std::vector<std::pair<unsigned, unsigned>> slots;
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = i; j < k; ++j) slots.emplace_back(i, j);
    std::vector<VecQ> rows;
    for (const auto& B : basis) {
        // restrict B to S
        MatQ b(k, k);
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < k; ++j) b.at(i, j) = B.at(S[i], S[j]);
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < k; ++j) {
                VecQ row(unknowns, Rational(0));
                bool nz = false;
                for (unsigned t = 0; t < unknowns; ++t) {
                    auto [p, q] = slots[t];
                    // (MB - BM)[i][j] coefficient of m_pq (with m symmetric)
                    Rational c(0);
                    if (i == p) c += b.at(q, j);
                    if (i == q && p != q) c += b.at(p, j);
                    if (j == q) c -= b.at(i, p);
                    if (j == p && p != q) c -= b.at(i, q);
                    if (sgn(c) != 0) {
                        row[t] = c;
                        nz = true;
                    }
                }
                if (nz) rows.push_back(std::move(row));
            }
    }
    if (rows.empty()) return unknowns;
    MatQ sys = builtin_detail::stack_rows(rows, unknowns);
    return unknowns - rank(sys);
}

}  // namespace decomp_detail

/// Splits h into ideals acting irreducibly on orthogonal coordinate blocks,
/// with the annihilated coordinates gathered in a trailing block. Inputs whose
/// invariant subspaces are not coordinate-spanned are rejected.
inline Decomposition decompose(const Subalgebra& h) {
    unsigned n = h.n;
    // coordinates annihilated by every basis element
    std::vector<bool> touched(n, false);
    for (const auto& b : h.basis)
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                if (sgn(b.at(i, j)) != 0) touched[i] = touched[j] = true;
    // the common kernel must be exactly the span of untouched coordinates
    unsigned untouched = 0;
    for (unsigned i = 0; i < n; ++i)
        if (!touched[i]) ++untouched;
    if (!h.basis.empty()) {
        MatQ stacked(static_cast<unsigned>(h.basis.size()) * n, n);
        for (unsigned t = 0; t < h.basis.size(); ++t)
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = 0; j < n; ++j) stacked.at(t * n + i, j) = h.basis[t].at(i, j);
        unsigned kernel_dim = n - rank(stacked);
        if (kernel_dim != untouched)
            throw std::runtime_error(
                "decompose: annihilated subspace is not spanned by coordinates; "
                "decomposition is not realizable by a coordinate permutation");
    }
    // support graph components among touched coordinates
    std::vector<unsigned> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    std::function<unsigned(unsigned)> find = [&](unsigned x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& b : h.basis)
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i + 1; j < n; ++j)
                if (sgn(b.at(i, j)) != 0) parent[find(i)] = find(j);
    std::map<unsigned, std::vector<unsigned>> comps;
    for (unsigned i = 0; i < n; ++i)
        if (touched[i]) comps[find(i)].push_back(i);

    Decomposition d;
    for (auto& [root, coords] : comps) {
        std::sort(coords.begin(), coords.end());
        // certified irreducibility: only scalars commute symmetrically
        if (decomp_detail::symmetric_commutant_dim(h.basis, coords) != 1)
            throw std::runtime_error(
                "decompose: a support block is reducible over the rationals; "
                "its invariant subspaces are not coordinate-spanned");
        unsigned k = static_cast<unsigned>(coords.size());
        // ideal: restrictions of basis elements to this block
        SpanBuilder bspan(k * (k - 1) / 2);
        std::vector<SkewMatrix> ideal_basis;
        for (const auto& B : h.basis) {
            MatQ r(k, k);
            bool nz = false;
            for (unsigned i = 0; i < k; ++i)
                for (unsigned j = 0; j < k; ++j) {
                    r.at(i, j) = B.at(coords[i], coords[j]);
                    if (sgn(r.at(i, j)) != 0) nz = true;
                }
            if (nz && bspan.add(skew_coords(r))) ideal_basis.push_back(std::move(r));
        }
        d.block_sizes.push_back(k);
        d.ideals.push_back(Subalgebra{k, std::move(ideal_basis)});
        d.perm.insert(d.perm.end(), coords.begin(), coords.end());
    }
    for (unsigned i = 0; i < n; ++i)
        if (!touched[i]) {
            d.perm.push_back(i);
            ++d.trailing;
        }
    unsigned total = 0;
    for (unsigned i = 0; i < d.ideals.size(); ++i) total += d.ideals[i].dim();
    if (total != h.dim())
        throw std::runtime_error(
            "decompose: algebra is not the direct sum of its block restrictions "
            "(ideals overlap across blocks)");
    return d;
}

/// Block-diagonal embedding; trailing coordinates are annihilated.
inline Subalgebra direct_sum(const std::vector<Subalgebra>& parts, unsigned trailing = 0) {
    unsigned n = trailing;
    for (const auto& p : parts) n += p.n;
    std::vector<SkewMatrix> basis;
    unsigned offset = 0;
    for (const auto& p : parts) {
        for (const auto& b : p.basis) {
            SkewMatrix m(n, n);
            for (unsigned i = 0; i < p.n; ++i)
                for (unsigned j = 0; j < p.n; ++j) m.at(offset + i, offset + j) = b.at(i, j);
            basis.push_back(std::move(m));
        }
        offset += p.n;
    }
    return {n, std::move(basis)};
}

// ---------------------------------------------------------------------------
// sim(n) elements and bivector coordinates on R^{1,n+1}

// Triple (a, A, X): the matrix of sim(n) preserving the isotropic line R p,
// identified with the bivector -a p^q + A - p^X.
struct SimElement {
    Rational a;
    SkewMatrix A;
    VecQ X;

    unsigned n() const { return A.rows; }

    MatQ matrix() const {
        unsigned m = n();
        MatQ M(m + 2, m + 2);
        M.at(0, 0) = a;
        M.at(m + 1, m + 1) = -a;
        for (unsigned i = 0; i < m; ++i) {
            M.at(0, 1 + i) = X[i];
            M.at(1 + i, m + 1) = -X[i];
            for (unsigned j = 0; j < m; ++j) M.at(1 + i, 1 + j) = A.at(i, j);
        }
        return M;
    }
};

// Coordinates of so(1,n+1) in the bivector basis, ordered
// (p^q ; e_i^e_j, i<j ; p^e_i ; q^e_i).
struct BivectorCoords {
    Rational pq;
    VecQ ee;  // over pairs i<j
    VecQ pe;
    VecQ qe;

    unsigned n() const { return static_cast<unsigned>(pe.size()); }

    VecQ flat() const {
        VecQ v;
        v.push_back(pq);
        v.insert(v.end(), ee.begin(), ee.end());
        v.insert(v.end(), pe.begin(), pe.end());
        v.insert(v.end(), qe.begin(), qe.end());
        return v;
    }
};

/// The bivector of a sim(n) element: -a p^q + A - p^X (q^e part always 0).
inline BivectorCoords sim_to_bivector(const SimElement& e) {
    BivectorCoords b;
    unsigned n = e.n();
    b.pq = -e.a;
    b.ee = skew_coords(e.A);
    b.pe.resize(n);
    for (unsigned i = 0; i < n; ++i) b.pe[i] = -e.X[i];
    b.qe.assign(n, Rational(0));
    return b;
}

/// Bivector coordinates of an eta-skew endomorphism M of R^{1,n+1} given in
/// the null basis (p, e_1..e_n, q). Exact inverse of the identification used
/// by sim_to_bivector.
inline BivectorCoords endo_to_bivector(const MatQ& M) {
    unsigned n = M.rows - 2;
    BivectorCoords b;
    b.pq = -M.at(0, 0);
    MatQ A(n, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) A.at(i, j) = M.at(1 + i, 1 + j);
    b.ee = skew_coords(A);
    b.pe.resize(n);
    b.qe.resize(n);
    for (unsigned i = 0; i < n; ++i) {
        b.pe[i] = -M.at(0, 1 + i);
        b.qe[i] = M.at(1 + i, 0);
    }
    return b;
}

// ---------------------------------------------------------------------------
// Holonomy descriptors (the four weakly-irreducible families)

struct HolonomyDescriptor {
    int type = 0;            // 1..4
    Subalgebra h;            // orthogonal part
    VecQ phi;                // type 3: functional on h (coords over h basis)
    unsigned m = 0;          // type 4: dimension of the translation part
    MatQ psi;                // type 4: (n-m) x dim h

    void validate() const {
        if (type < 1 || type > 4) throw std::invalid_argument("descriptor: bad type");
        if (type == 3) {
            bool nonzero = false;
            for (const auto& c : phi)
                if (sgn(c) != 0) nonzero = true;
            if (!nonzero) throw std::invalid_argument("descriptor: type 3 needs phi != 0");
            Subalgebra der = derived_algebra(h);
            for (const auto& b : der.basis) {
                auto c = h.coords_of(b);
                Rational v(0);
                for (unsigned t = 0; t < h.dim(); ++t) v += phi[t] * (*c)[t];
                if (sgn(v) != 0)
                    throw std::invalid_argument("descriptor: phi must vanish on [h,h]");
            }
        }
        if (type == 4) {
            if (m == 0 || m >= h.n) throw std::invalid_argument("descriptor: need 0 < m < n");
            if (rank(psi) != psi.rows)
                throw std::invalid_argument("descriptor: psi must be surjective");
            Subalgebra der = derived_algebra(h);
            for (const auto& b : der.basis) {
                auto c = h.coords_of(b);
                for (unsigned r = 0; r < psi.rows; ++r) {
                    Rational v(0);
                    for (unsigned t = 0; t < h.dim(); ++t) v += psi.at(r, t) * (*c)[t];
                    if (sgn(v) != 0)
                        throw std::invalid_argument("descriptor: psi must vanish on [h,h]");
                }
            }
            if (center_coords(h).size() < psi.rows)
                throw std::invalid_argument("descriptor: dim z(h) < n - m");
        }
    }
};

// ---------------------------------------------------------------------------
// Subalgebra file format (soalgv1)

inline void write_soalg(std::ostream& out, const Subalgebra& h) {
    out << "soalgv1\n";
    out << "n = " << h.n << "\n";
    out << "basis = " << h.dim() << "\n";
    for (unsigned t = 0; t < h.dim(); ++t) {
        out << "M[" << t << "] = [";
        for (unsigned i = 0; i < h.n; ++i) {
            out << (i ? "," : "") << "[";
            for (unsigned j = 0; j < h.n; ++j)
                out << (j ? "," : "") << rat_str(h.basis[t].at(i, j));
            out << "]";
        }
        out << "]\n";
    }
}

inline Subalgebra read_soalg(std::istream& in) {
    std::string line;
    auto next_line = [&]() -> std::string {
        while (std::getline(in, line)) {
            size_t a = line.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            size_t b = line.find_last_not_of(" \t\r");
            return line.substr(a, b - a + 1);
        }
        throw std::invalid_argument("soalg: unexpected end of file");
    };
    if (next_line() != "soalgv1") throw std::invalid_argument("soalg: missing soalgv1 header");
    auto key_value = [](const std::string& s, const std::string& key) -> std::string {
        size_t eq = s.find('=');
        size_t key_end = s.find_first_of(" [=");
        if (eq == std::string::npos || s.substr(0, key_end) != key)
            throw std::invalid_argument("soalg: expected '" + key + " = ...', got '" + s + "'");
        return s.substr(eq + 1);
    };
    unsigned n = static_cast<unsigned>(std::stoul(key_value(next_line(), "n")));
    unsigned k = static_cast<unsigned>(std::stoul(key_value(next_line(), "basis")));
    Subalgebra h{n, {}};
    for (unsigned t = 0; t < k; ++t) {
        std::string body = key_value(next_line(), "M");
        MatQ m(n, n);
        unsigned i = 0, j = 0;
        std::string cur;
        for (char c : body) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            if (c == '[') continue;
            if (c == ',' || c == ']') {
                if (!cur.empty()) {
                    if (i >= n || j >= n) throw std::invalid_argument("soalg: too many entries");
                    m.at(i, j) = parse_rational(cur);
                    cur.clear();
                    if (++j == n) {
                        j = 0;
                        ++i;
                    }
                }
                continue;
            }
            cur += c;
        }
        if (i != n) throw std::invalid_argument("soalg: wrong entry count in matrix " + std::to_string(t));
        h.basis.push_back(std::move(m));
    }
    h.validate();
    return h;
}

inline Subalgebra load_algebra(const std::string& source) {
    if (source.rfind("builtin:", 0) == 0) return builtin(source.substr(8));
    std::string path = source.rfind("file:", 0) == 0 ? source.substr(5) : source;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open algebra file '" + path + "'");
    return read_soalg(in);
}

}  // namespace simhol

#endif
