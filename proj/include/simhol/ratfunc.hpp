#ifndef SIMHOL_RATFUNC_HPP
#define SIMHOL_RATFUNC_HPP

#include "simhol/poly.hpp"

namespace simhol {

/// Thrown when evaluation hits a pole; callers retry with another point.
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quotient of polynomials. Canonical form keeps the denominator with
// coprime integer coefficients and positive leading coefficient; full gcd
// reduction is applied on demand (reduce()) and in the few operations where
// denominators are known to pick up common factors. Equality is semantic.
class RatFunc {
  public:
    RatFunc() = default;
    RatFunc(const Poly& numerator, const Poly& denominator) : num_(numerator), den_(denominator) {
        canonicalize();
    }
    RatFunc(const Poly& p) : num_(p), den_(Poly::constant(p.nvars(), 1)) {}
    explicit RatFunc(unsigned nvars)
        : num_(Poly(nvars)), den_(Poly::constant(nvars, 1)) {}

    static RatFunc constant(unsigned nvars, const Rational& c) {
        return RatFunc(Poly::constant(nvars, c));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    unsigned nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        if (a.den_.is_constant() || b.den_.is_constant())
            return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
        Poly g = poly_gcd(a.den_, b.den_);
        if (g.is_constant())
            return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
        Poly db = *divide_exact(b.den_, g);
        Poly da = *divide_exact(a.den_, g);
        RatFunc r(a.num_ * db + b.num_ * da, a.den_ * db);
        r.reduce();
        return r;
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        // cross-reduction keeps products of reduced inputs reduced
        Poly na = a.num_, db = b.den_, nb = b.num_, da = a.den_;
        if (!db.is_constant() && !na.is_zero()) {
            Poly g = poly_gcd(na, db);
            if (!g.is_constant()) {
                na = *divide_exact(na, g);
                db = *divide_exact(db, g);
            }
        }
        if (!da.is_constant() && !nb.is_zero()) {
            Poly g = poly_gcd(nb, da);
            if (!g.is_constant()) {
                nb = *divide_exact(nb, g);
                da = *divide_exact(da, g);
            }
        }
        return RatFunc(na * nb, da * db);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.num_.is_zero()) throw std::domain_error("ratfunc: division by zero");
        return a * RatFunc(b.den_, b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    friend RatFunc operator*(const RatFunc& a, const Rational& c) {
        RatFunc r = a;
        r.num_ *= c;
        return r;
    }
    friend RatFunc operator*(const Rational& c, const RatFunc& a) { return a * c; }

    /// Semantic equality: a.num * b.den == b.num * a.den.
    bool operator==(const RatFunc& o) const { return (num_ * o.den_) == (o.num_ * den_); }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    /// Full gcd reduction.
    void reduce() {
        if (num_.is_zero()) {
            den_ = Poly::constant(num_.nvars(), 1);
            return;
        }
        if (den_.is_one()) return;
        Poly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *divide_exact(num_, g);
            den_ = *divide_exact(den_, g);
        }
        canonicalize();
    }
    RatFunc reduced() const {
        RatFunc r = *this;
        r.reduce();
        return r;
    }

    RatFunc derivative(unsigned i) const {
        RatFunc r(num_.derivative(i) * den_ - num_ * den_.derivative(i), den_ * den_);
        r.reduce();
        return r;
    }

    Rational eval(const std::vector<Rational>& point) const {
        Rational d = den_.eval(point);
        if (simhol::is_zero(d)) throw EvalError("ratfunc: denominator vanishes at sample point");
        return num_.eval(point) / d;
    }

    std::string str() const {
        if (den_.is_one()) return num_.str();
        return num_.str() + " / " + den_.str();
    }

  private:
    void canonicalize() {
        if (den_.is_zero()) throw std::domain_error("ratfunc: zero denominator");
        num_.check_same(den_);
        if (num_.is_zero()) {
            den_ = Poly::constant(num_.nvars(), 1);
            return;
        }
        Rational c = den_.content();
        if (sgn(den_.leading_coeff()) < 0) c = -c;
        Rational inv = Rational(1) / c;
        num_ *= inv;
        den_ *= inv;
    }

    Poly num_, den_;
};

/// Parses `poly` or `poly / poly`; the denominator extends to the end of the text.
inline RatFunc parse_ratfunc(const std::string& text, unsigned nvars) {
    PolyLexer lex(text);
    Poly num = parse_poly_at(lex, nvars);
    if (lex.eof()) return RatFunc(num);
    if (!lex.accept('/'))
        throw std::invalid_argument("ratfunc: trailing input '" + text.substr(lex.pos) + "'");
    Poly den = parse_poly_at(lex, nvars);
    if (!lex.eof())
        throw std::invalid_argument("ratfunc: trailing input '" + text.substr(lex.pos) + "'");
    return RatFunc(num, den);
}

}  // namespace simhol

#endif
