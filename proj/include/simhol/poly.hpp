#ifndef SIMHOL_POLY_HPP
#define SIMHOL_POLY_HPP

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "simhol/rational.hpp"

namespace simhol {

// Exponent tuple; length equals the owning polynomial's nvars.
using Mono = std::vector<unsigned>;

inline unsigned mono_degree(const Mono& m) {
    unsigned d = 0;
    for (unsigned e : m) d += e;
    return d;
}

// Graded lexicographic order with x0 < x1 < ... ; used for canonical
// printing and as the term-map order. Semantics never depend on it.
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const {
        unsigned da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

// Sparse multivariate polynomial over the rationals in variables
// x0..x{nvars-1}. Invariant: no stored coefficient is zero; all stored
// exponent tuples have exactly nvars entries.
class Poly {
  public:
    using TermMap = std::map<Mono, Rational, GrlexLess>;

    Poly() : nvars_(0) {}
    explicit Poly(unsigned nvars) : nvars_(nvars) {}

    static Poly constant(unsigned nvars, const Rational& c) {
        Poly p(nvars);
        if (!simhol::is_zero(c)) p.terms_.emplace(Mono(nvars, 0), c);
        return p;
    }
    static Poly variable(unsigned nvars, unsigned i, unsigned exp = 1) {
        if (i >= nvars) throw std::out_of_range("poly: variable index out of range");
        Poly p(nvars);
        if (exp == 0) return constant(nvars, 1);
        Mono m(nvars, 0);
        m[i] = exp;
        p.terms_.emplace(std::move(m), Rational(1));
        return p;
    }

    unsigned nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
    }
    Rational constant_term() const {
        auto it = terms_.find(Mono(nvars_, 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }
    bool is_one() const { return is_constant() && constant_term() == 1; }

    unsigned total_degree() const {
        return terms_.empty() ? 0 : mono_degree(terms_.rbegin()->first);
    }
    unsigned degree_in(unsigned i) const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
        return d;
    }
    template <class Set>
    unsigned degree_in_set(const Set& vars) const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) {
            unsigned s = 0;
            for (unsigned v : vars) s += m[v];
            d = std::max(d, s);
        }
        return d;
    }

    void add_term(const Mono& m, const Rational& c) {
        if (m.size() != nvars_) throw std::invalid_argument("poly: exponent tuple length mismatch");
        if (simhol::is_zero(c)) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (simhol::is_zero(it->second)) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    Poly operator-() const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_same(b);
        Poly r(a.nvars_);
        Mono m(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                for (unsigned i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly& operator*=(const Rational& c) {
        if (simhol::is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    friend Poly operator*(Poly p, const Rational& c) { return p *= c; }
    friend Poly operator*(const Rational& c, Poly p) { return p *= c; }

    Poly pow(unsigned k) const {
        Poly r = constant(nvars_, 1);
        for (unsigned i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Exact partial derivative with respect to x_i.
    Poly derivative(unsigned i) const {
        if (i >= nvars_) throw std::out_of_range("poly: derivative index out of range");
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[i] == 0) continue;
            Mono d = m;
            d[i] -= 1;
            r.add_term(d, c * Rational(static_cast<long>(m[i])));
        }
        return r;
    }

    /// Flat Laplacian sum_{i in vars} d^2/dx_i^2.
    template <class Set>
    Poly laplacian(const Set& vars) const {
        Poly r(nvars_);
        for (unsigned v : vars) r += derivative(v).derivative(v);
        return r;
    }

    Rational eval(const std::vector<Rational>& point) const {
        if (point.size() != nvars_) throw std::invalid_argument("poly: point length mismatch");
        Rational acc(0);
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (unsigned i = 0; i < nvars_; ++i)
                for (unsigned e = 0; e < m[i]; ++e) t *= point[i];
            acc += t;
        }
        return acc;
    }

    /// The part of the polynomial whose x_v-exponent equals k, with that
    /// exponent removed.
    Poly coeff_of(unsigned v, unsigned k) const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_)
            if (m[v] == k) {
                Mono d = m;
                d[v] = 0;
                r.add_term(d, c);
            }
        return r;
    }

    /// gcd of numerators over lcm of denominators; 0 for the zero polynomial.
    Rational content() const {
        if (terms_.empty()) return Rational(0);
        mpz_class g(0), l(1);
        for (const auto& [m, c] : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        }
        return rat(g, l);
    }

    const Mono& leading_monomial() const {
        if (terms_.empty()) throw std::domain_error("poly: zero polynomial has no leading term");
        return terms_.rbegin()->first;
    }
    const Rational& leading_coeff() const {
        if (terms_.empty()) throw std::domain_error("poly: zero polynomial has no leading term");
        return terms_.rbegin()->second;
    }

    /// Divides out content and the sign of the leading coefficient, giving
    /// coprime integer coefficients with positive lead. Zero stays zero.
    Poly primitive_part() const {
        if (terms_.empty()) return *this;
        Rational c = content();
        if (sgn(leading_coeff()) < 0) c = -c;
        Poly r(nvars_);
        for (const auto& [m, v] : terms_) r.terms_.emplace(m, v / c);
        return r;
    }

    std::string str() const;

    void check_same(const Poly& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("poly: nvars mismatch");
    }

  private:
    unsigned nvars_;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Printing, grammar:  poly := [sign] term { ("+"|"-") term }
//                     term := coef { "*" factor } | factor { "*" factor }
//                     factor := "x" INDEX [ "^" EXP ] ; coef := INT ["/" POSINT]

inline std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (first) {
            if (sgn(a) < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (sgn(a) < 0 ? " - " : " + ");
            if (sgn(a) < 0) a = -a;
        }
        first = false;
        bool has_vars = mono_degree(m) > 0;
        bool coef_one = (a == 1);
        if (!coef_one || !has_vars) out << rat_str(a);
        bool star = !coef_one || !has_vars ? has_vars : false;
        bool printed_factor = false;
        for (unsigned i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (star || printed_factor) out << "*";
            star = false;
            out << "x" << i;
            if (m[i] > 1) out << "^" << m[i];
            printed_factor = true;
        }
    }
    return out.str();
}

// Cursor-based parser so the rational-function reader can detect where a
// numerator ends (at a '/' that does not continue an INT/POSINT coefficient).
struct PolyLexer {
    const std::string& s;
    size_t pos = 0;
    explicit PolyLexer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool peek_digit_after(char c) {
        // true if the next chars are c then (ws*) digit
        size_t save = pos;
        skip_ws();
        if (pos >= s.size() || s[pos] != c) {
            pos = save;
            return false;
        }
        size_t q = pos + 1;
        while (q < s.size() && std::isspace(static_cast<unsigned char>(s[q]))) ++q;
        bool ok = q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]));
        pos = save;
        return ok;
    }
    mpz_class integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw std::invalid_argument("poly: expected integer at '" + s.substr(start, 8) + "'");
        return mpz_class(s.substr(start, pos - start));
    }
};

inline Poly parse_poly_at(PolyLexer& lex, unsigned nvars) {
    Poly result(nvars);
    bool expect_term = true;
    int sign = 1;
    if (lex.accept('-'))
        sign = -1;
    else
        lex.accept('+');
    while (true) {
        if (!expect_term) {
            if (lex.accept('+'))
                sign = 1;
            else if (lex.accept('-'))
                sign = -1;
            else
                break;
        }
        expect_term = false;
        // one term
        Rational coef(1);
        bool saw_coef = false;
        Mono mono(nvars, 0);
        bool saw_factor = false;
        char c = lex.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num = lex.integer();
            mpz_class den(1);
            if (lex.peek_digit_after('/')) {
                lex.accept('/');
                den = lex.integer();
                if (den == 0) throw std::invalid_argument("poly: zero coefficient denominator");
            }
            coef = rat(num, den);
            saw_coef = true;
        }
        while (true) {
            if (saw_coef || saw_factor) {
                if (!lex.accept('*')) break;
            }
            if (lex.peek() != 'x') {
                if (saw_coef || saw_factor)
                    throw std::invalid_argument("poly: expected factor after '*'");
                break;
            }
            lex.accept('x');
            mpz_class idx = lex.integer();
            if (idx < 0 || idx >= nvars)
                throw std::invalid_argument("poly: variable index x" + idx.get_str() +
                                            " out of range for nvars=" + std::to_string(nvars));
            unsigned exp = 1;
            if (lex.accept('^')) {
                mpz_class e = lex.integer();
                if (!e.fits_uint_p()) throw std::invalid_argument("poly: exponent too large");
                exp = e.get_ui();
            }
            mono[idx.get_ui()] += exp;
            saw_factor = true;
        }
        if (!saw_coef && !saw_factor)
            throw std::invalid_argument("poly: expected term near position " + std::to_string(lex.pos));
        result.add_term(mono, sign < 0 ? Rational(-coef) : coef);
    }
    return result;
}

inline Poly parse_poly(const std::string& text, unsigned nvars) {
    PolyLexer lex(text);
    Poly p = parse_poly_at(lex, nvars);
    if (!lex.eof())
        throw std::invalid_argument("poly: trailing input '" + text.substr(lex.pos) + "'");
    return p;
}

// ---------------------------------------------------------------------------
// Exact division and multivariate gcd (primitive PRS).

/// Quotient when `b` divides `a` exactly, std::nullopt otherwise.
inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    a.check_same(b);
    if (b.is_zero()) throw std::domain_error("poly: division by zero polynomial");
    Poly rem = a, quot(a.nvars());
    const Mono& lb = b.leading_monomial();
    const Rational& cb = b.leading_coeff();
    while (!rem.is_zero()) {
        const Mono& lr = rem.leading_monomial();
        Mono q(a.nvars());
        for (unsigned i = 0; i < a.nvars(); ++i) {
            if (lr[i] < lb[i]) return std::nullopt;
            q[i] = lr[i] - lb[i];
        }
        Poly qt(a.nvars());
        qt.add_term(q, rem.leading_coeff() / cb);
        quot += qt;
        rem -= qt * b;
        if (!rem.is_zero() && !GrlexLess()(rem.leading_monomial(), lr) && rem.leading_monomial() == lr)
            return std::nullopt;  // no progress: not divisible
    }
    return quot;
}

namespace detail {

inline int top_variable(const Poly& p) {
    int v = -1;
    for (const auto& [m, c] : p.terms())
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) v = std::max<int>(v, static_cast<int>(i));
    return v;
}

// view as univariate in variable v with Poly coefficients
inline std::map<unsigned, Poly> univar(const Poly& p, unsigned v) {
    std::map<unsigned, Poly> out;
    for (const auto& [m, c] : p.terms()) {
        Mono d = m;
        unsigned k = d[v];
        d[v] = 0;
        auto [it, fresh] = out.emplace(k, Poly(p.nvars()));
        it->second.add_term(d, c);
    }
    return out;
}

inline Poly from_univar(const std::map<unsigned, Poly>& u, unsigned v, unsigned nvars) {
    Poly r(nvars);
    Poly xv = Poly::variable(nvars, v);
    for (const auto& [k, coeff] : u) r += coeff * xv.pow(k);
    return r;
}

}  // namespace detail

Poly poly_gcd(const Poly& a, const Poly& b);

namespace detail {

// content of p seen as univariate in v: gcd of its Poly coefficients
inline Poly univar_content(const Poly& p, unsigned v) {
    auto u = univar(p, v);
    Poly g(p.nvars());
    for (const auto& [k, coeff] : u) g = poly_gcd(g, coeff);
    return g;
}

// pseudo-remainder of A by B in variable v (both nonzero, deg_v A >= deg_v B)
inline Poly pseudo_rem(const Poly& A, const Poly& B, unsigned v) {
    auto ub = univar(B, v);
    unsigned db = ub.rbegin()->first;
    const Poly& lb = ub.rbegin()->second;
    Poly R = A;
    Poly xv = Poly::variable(A.nvars(), v);
    while (!R.is_zero()) {
        auto ur = univar(R, v);
        unsigned dr = ur.rbegin()->first;
        if (dr < db) break;
        const Poly lr = ur.rbegin()->second;
        R = R * lb - lr * xv.pow(dr - db) * B;
    }
    return R;
}

}  // namespace detail

/// gcd up to units, returned primitive with positive leading coefficient.
inline Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    int va = detail::top_variable(a), vb = detail::top_variable(b);
    if (va < 0 && vb < 0) return Poly::constant(a.nvars(), 1);
    if (va < 0 || vb < 0) return Poly::constant(a.nvars(), 1);
    unsigned v = static_cast<unsigned>(std::max(va, vb));
    Poly ca = detail::univar_content(a, v), cb = detail::univar_content(b, v);
    Poly gc = poly_gcd(ca, cb);
    Poly A = *divide_exact(a, ca), B = *divide_exact(b, cb);
    if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
    while (true) {
        Poly R = detail::pseudo_rem(A, B, v);
        if (R.is_zero()) break;
        if (R.degree_in(v) == 0) return gc.primitive_part().is_zero() ? Poly::constant(a.nvars(), 1) : gc;
        A = B;
        Poly rc = detail::univar_content(R, v);
        B = *divide_exact(R, rc);
    }
    Poly prim = *divide_exact(B, detail::univar_content(B, v));
    return (gc * prim).primitive_part();
}

}  // namespace simhol

#endif
