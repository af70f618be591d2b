#ifndef CMC1_RATIONAL_FUNCTION_HPP
#define CMC1_RATIONAL_FUNCTION_HPP

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "poly.hpp"

namespace cmc1 {

/// A point of the Riemann sphere.
class SpherePoint {
public:
    SpherePoint() : v_(ExactScalar(0)) {}
    SpherePoint(const ExactScalar& z) : v_(z) {}  // NOLINT(google-explicit-constructor)
    SpherePoint(long z) : v_(ExactScalar(z)) {}   // NOLINT(google-explicit-constructor)
    SpherePoint(int z) : v_(ExactScalar(z)) {}    // NOLINT(google-explicit-constructor)
    static SpherePoint infinity() {
        SpherePoint p;
        p.v_.reset();
        return p;
    }
    bool is_infinity() const { return !v_.has_value(); }
    const ExactScalar& value() const {
        if (!v_) throw std::domain_error("SpherePoint: infinity has no finite coordinate");
        return *v_;
    }
    std::string str() const { return v_ ? v_->str() : "inf"; }
    static SpherePoint parse(const std::string& s) {
        if (s == "inf" || s == "infinity" || s == "oo") return infinity();
        return {ExactScalar::parse(s)};
    }
    friend bool operator==(const SpherePoint& a, const SpherePoint& b) { return a.v_ == b.v_; }
    friend bool operator!=(const SpherePoint& a, const SpherePoint& b) { return !(a == b); }

private:
    std::optional<ExactScalar> v_;
};

/// Truncated Laurent expansion: sum_{k} coeffs[k] t^{min_order+k} + O(t^{truncation_order}).
template <class K>
struct LaurentSeries {
    SpherePoint base;
    int min_order = 0;
    std::vector<K> coeffs;

    int truncation_order() const { return min_order + static_cast<int>(coeffs.size()); }
    bool known(int order) const { return order < truncation_order(); }
    /// Coefficient of t^order.
    K at(int order) const {
        if (order < min_order) return K();
        if (order >= truncation_order())
            throw std::out_of_range("Laurent coefficient beyond truncation order");
        return coeffs[order - min_order];
    }
};

/// Power series quotient n/d at 0, first `count` terms; d(0) must be invertible.
template <class K>
std::vector<K> series_divide(const std::vector<K>& n, const std::vector<K>& d, int count) {
    if (d.empty() || is_zero(d[0])) throw std::domain_error("series division by a series vanishing at 0");
    K inv = K(1) / d[0];
    std::vector<K> s(count);
    for (int j = 0; j < count; ++j) {
        K acc = j < static_cast<int>(n.size()) ? n[j] : K();
        for (int k = 1; k <= j && k < static_cast<int>(d.size()); ++k) acc -= d[k] * s[j - k];
        s[j] = acc * inv;
    }
    return s;
}

/// num/den over ExactScalar, reduced, monic denominator.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(1) {}
    RationalFunction(const ExactScalar& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(long c) : RationalFunction(ExactScalar(c)) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(int c) : RationalFunction(ExactScalar(c)) {}   // NOLINT(google-explicit-constructor)
    RationalFunction(const QPoly& p) : num_(p), den_(1) {}         // NOLINT(google-explicit-constructor)
    RationalFunction(const QPoly& n, const QPoly& d) : num_(n), den_(d) { reduce(); }

    static RationalFunction z() { return {QPoly::x()}; }

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() <= 0; }
    int degree() const { return std::max(num_.degree(), den_.degree()); }

    ExactScalar operator()(const ExactScalar& z) const {
        ExactScalar d = den_(z);
        if (d.is_zero()) throw std::domain_error("rational function evaluated at a pole");
        return num_(z) / d;
    }
    std::complex<double> eval(std::complex<double> z) const {
        return horner(num_, z) / horner(den_, z);
    }

    RationalFunction operator-() const { return {-num_, den_}; }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return a + (-b);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("division by the zero function");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    RationalFunction pow(int n) const {
        if (n < 0) return RationalFunction(1) / pow(-n);
        return {num_.pow(n), den_.pow(n)};
    }

    RationalFunction derivative() const {
        return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
    }

    /// f(h) for a rational h.
    RationalFunction compose(const RationalFunction& h) const {
        int n = degree();
        // f(h) = sum a_k h^k / sum b_k h^k; multiply through by hd^n
        auto hom = [&](const QPoly& p) {
            QPoly acc;
            for (int k = 0; k <= p.degree(); ++k)
                acc += p.coeff(k) * h.num_.pow(k) * h.den_.pow(n - k);
            return acc;
        };
        return {hom(num_), hom(den_)};
    }

    std::string str() const {
        if (den_.degree() == 0) return num_.str();
        return "[" + num_.str() + "] / [" + den_.str() + "]";
    }

private:
    QPoly num_, den_;

    template <class P>
    static std::complex<double> horner(const P& p, std::complex<double> z) {
        std::complex<double> acc = 0;
        const auto& c = p.coeffs();
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + it->to_complex();
        return acc;
    }

    void reduce() {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = QPoly(1);
            return;
        }
        QPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        ExactScalar l = den_.leading();
        if (l != ExactScalar(1)) {
            ExactScalar inv = l.inverse();
            num_ *= inv;
            den_ *= inv;
        }
    }
};

/// Local chart data: f pulled back to the coordinate t centered at p, as a
/// density of the given weight (f dz^weight).
inline RationalFunction pullback(const RationalFunction& f, const SpherePoint& p, int weight = 0) {
    if (!p.is_infinity()) {
        const ExactScalar& a = p.value();
        return {f.num().shift(a), f.den().shift(a)};
    }
    // z = 1/t, dz = -dt/t^2
    int n = f.degree();
    QPoly num = f.num().reversed(n), den = f.den().reversed(n);
    RationalFunction g(num, den);
    if (weight != 0) {
        ExactScalar s = weight % 2 == 0 ? ExactScalar(1) : ExactScalar(-1);
        g = g * RationalFunction(QPoly(s)) * RationalFunction(QPoly::x()).pow(-2 * weight);
    }
    return g;
}

/// Order of the density at t = 0 of a chart pullback.
inline int order_at_zero(const RationalFunction& f) {
    if (f.is_zero()) throw std::domain_error("zero function has no order");
    return f.num().valuation() - f.den().valuation();
}

inline int order_at(const RationalFunction& f, const SpherePoint& p) {
    if (f.is_zero()) throw std::domain_error("zero function has no order");
    return order_at_zero(pullback(f, p, 0));
}

inline int differential_order_at(const RationalFunction& q, int weight, const SpherePoint& p) {
    if (weight != 1 && weight != 2) throw std::domain_error("weight must be 1 or 2");
    if (q.is_zero()) throw std::domain_error("zero density has no order");
    return order_at_zero(pullback(q, p, weight));
}

/// Laurent series at t = 0 of a rational function of t.
inline LaurentSeries<ExactScalar> laurent_at_zero(const RationalFunction& f, int n_terms,
                                                  const SpherePoint& base = SpherePoint(0)) {
    if (f.is_zero()) throw std::domain_error("laurent expansion of the zero function");
    if (n_terms < 1) throw std::domain_error("n_terms must be positive");
    int a = f.num().valuation(), b = f.den().valuation();
    LaurentSeries<ExactScalar> s;
    s.base = base;
    s.min_order = a - b;
    s.coeffs = series_divide(f.num().shift_down(a).coeffs(), f.den().shift_down(b).coeffs(), n_terms);
    return s;
}

/// Laurent expansion in the chart at p (t = z - p, or t = 1/z at infinity); weight 0.
inline LaurentSeries<ExactScalar> laurent_at(const RationalFunction& f, const SpherePoint& p, int n_terms) {
    return laurent_at_zero(pullback(f, p, 0), n_terms, p);
}

/// Density of S(g) = (g''/g')' - (g''/g')^2 / 2.
inline RationalFunction schwarzian(const RationalFunction& g) {
    if (g.is_constant()) throw std::domain_error("schwarzian of a constant");
    RationalFunction g1 = g.derivative();
    RationalFunction h = g1.derivative() / g1;
    return h.derivative() - h * h * RationalFunction(ExactScalar::rational(1, 2));
}

using Mat2 = std::array<std::array<ExactScalar, 2>, 2>;

inline Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

/// a * g = (a11 g + a12)/(a21 g + a22), det a = 1.
inline RationalFunction mobius(const Mat2& a, const RationalFunction& g) {
    if (a[0][0] * a[1][1] - a[0][1] * a[1][0] != ExactScalar(1))
        throw std::domain_error("mobius matrix must have determinant 1");
    QPoly n = a[0][0] * g.num() + a[0][1] * g.den();
    QPoly d = a[1][0] * g.num() + a[1][1] * g.den();
    return {n, d};
}

/// Residue of the 1-form f dz at p.
inline ExactScalar residue_at(const RationalFunction& f, const SpherePoint& p) {
    if (f.is_zero()) return ExactScalar(0);
    RationalFunction h = pullback(f, p, 1);
    int ord = order_at_zero(h);
    if (ord >= 0) return ExactScalar(0);
    return laurent_at_zero(h, -ord).at(-1);
}

/// One divisor entry: a point, or an unsplit monic factor whose roots all carry `order`.
struct DivisorEntry {
    SpherePoint point;
    std::optional<QPoly> factor;
    int order = 0;
    int weight() const { return factor ? factor->degree() : 1; }
};

/// Zeros (positive) and poles (negative) including infinity.
inline std::vector<DivisorEntry> divisor(const RationalFunction& f, bool allow_new_surd = false) {
    if (f.is_zero()) throw std::domain_error("divisor of the zero function");
    std::vector<DivisorEntry> out;
    auto add = [&](const QPoly& p, int sign) {
        RootSplit rs = split_roots(p, allow_new_surd);
        for (auto& [r, m] : rs.roots) out.push_back({SpherePoint(r), std::nullopt, sign * m});
        for (auto& [g, m] : rs.unsplit) out.push_back({SpherePoint::infinity(), g, sign * m});
    };
    add(f.num(), 1);
    add(f.den(), -1);
    int inf = f.den().degree() - f.num().degree();
    if (inf != 0) out.push_back({SpherePoint::infinity(), std::nullopt, inf});
    return out;
}

/// Local multiplicity of G at p minus one.
inline int branch_order(const RationalFunction& G, const SpherePoint& p) {
    if (G.is_constant()) throw std::domain_error("branch order of a constant map");
    RationalFunction h = pullback(G, p, 0);
    int ord = order_at_zero(h);
    if (ord < 0) return -ord - 1;
    ExactScalar c0 = ord == 0 ? laurent_at_zero(h, 1).at(0) : ExactScalar(0);
    return order_at_zero(h - RationalFunction(c0)) - 1;
}

/// Antiderivative of a rational function with zero residue at every finite pole.
/// Returns nullopt when some residue is nonzero or a pole is not in the scalar domain.
inline std::optional<RationalFunction> integrate_residue_free(const RationalFunction& f) {
    auto [q, r] = divmod(f.num(), f.den());
    // polynomial part
    std::vector<ExactScalar> ic(q.degree() + 2);
    for (int k = 0; k <= q.degree(); ++k) ic[k + 1] = q.coeff(k) / ExactScalar(static_cast<long>(k + 1));
    RationalFunction F(QPoly(std::move(ic)));
    if (r.is_zero()) return F;
    RootSplit rs = split_roots(f.den());
    if (!rs.unsplit.empty()) return std::nullopt;
    for (auto& [a, m] : rs.roots) {
        RationalFunction h = pullback(f, SpherePoint(a), 0);
        int ord = order_at_zero(h);
        if (ord >= 0) continue;
        auto s = laurent_at_zero(h, -ord);
        if (!s.at(-1).is_zero()) return std::nullopt;
        // principal part sum_{k>=2} c_{-k} (z-a)^{-k} integrates to -c_{-k}/(k-1) (z-a)^{1-k}
        RationalFunction lin(QPoly::linear(a));
        for (int k = 2; k <= -ord; ++k) {
            ExactScalar c = s.at(-k);
            if (c.is_zero()) continue;
            F = F + RationalFunction(-c / ExactScalar(static_cast<long>(k - 1))) * lin.pow(1 - k);
        }
    }
    return F;
}

}  // namespace cmc1

#endif
