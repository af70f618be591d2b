#ifndef CMC1_POLY_HPP
#define CMC1_POLY_HPP

#include <algorithm>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "param.hpp"

namespace cmc1 {

/// Dense univariate polynomial, ascending coefficients.
template <class K>
class Poly {
public:
    Poly() = default;
    Poly(const K& c) {  // NOLINT(google-explicit-constructor)
        if (!cmc1::is_zero(c)) c_.push_back(c);
    }
    Poly(long c) : Poly(K(c)) {}  // NOLINT(google-explicit-constructor)
    Poly(int c) : Poly(K(c)) {}   // NOLINT(google-explicit-constructor)
    explicit Poly(std::vector<K> c) : c_(std::move(c)) { trim(); }
    Poly(std::initializer_list<K> c) : c_(c) { trim(); }

    static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }
    /// x - a
    static Poly linear(const K& a) { return Poly(std::vector<K>{-a, K(1)}); }
    static Poly monomial(const K& c, int k) {
        std::vector<K> v(k + 1);
        v[k] = c;
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    K coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : K(); }
    K leading() const { return c_.empty() ? K() : c_.back(); }
    const std::vector<K>& coeffs() const { return c_; }

    template <class T>
    T eval(const T& z) const {
        T acc = T(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + T(*it);
        return acc;
    }
    K operator()(const K& z) const { return eval<K>(z); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) { return *this += -o; }
    Poly& operator*=(const Poly& o) {
        if (is_zero() || o.is_zero()) {
            c_.clear();
            return *this;
        }
        std::vector<K> r(c_.size() + o.c_.size() - 1);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (cmc1::is_zero(c_[i])) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        }
        c_ = std::move(r);
        trim();
        return *this;
    }
    Poly& operator*=(const K& s) {
        for (auto& a : c_) a *= s;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    friend Poly operator*(Poly a, const K& s) { return a *= s; }
    friend Poly operator*(const K& s, Poly a) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(int n) const {
        Poly r(K(1)), b = *this;
        while (n > 0) {
            if (n & 1) r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<K> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * K(static_cast<long>(k));
        return Poly(std::move(d));
    }

    /// p(a + t) as a polynomial in t.
    Poly shift(const K& a) const {
        Poly r;
        Poly lin(std::vector<K>{a, K(1)});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + Poly(*it);
        return r;
    }

    /// t^n p(1/t); n must be >= degree.
    Poly reversed(int n) const {
        std::vector<K> r(n + 1);
        for (int k = 0; k <= degree(); ++k) r[n - k] = c_[k];
        return Poly(std::move(r));
    }

    /// Composition p(q).
    Poly compose(const Poly& q) const {
        Poly r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + Poly(*it);
        return r;
    }

    /// Lowest index with nonzero coefficient (order of vanishing at 0).
    int valuation() const {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!cmc1::is_zero(c_[k])) return static_cast<int>(k);
        return -1;
    }
    /// Divide by t^k (the caller guarantees exactness).
    Poly shift_down(int k) const {
        if (k <= 0) return *this;
        return Poly(std::vector<K>(c_.begin() + std::min<std::size_t>(k, c_.size()), c_.end()));
    }

    /// Euclidean division; the leading coefficient of b must be invertible in K.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        K inv = K(1) / b.leading();
        std::vector<K> r = a.c_;
        int db = b.degree();
        if (a.degree() < db) return {Poly(), a};
        std::vector<K> q(a.degree() - db + 1);
        for (int k = a.degree(); k >= db; --k) {
            K f = r[k] * inv;
            q[k - db] = f;
            if (cmc1::is_zero(f)) continue;
            for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
        }
        r.resize(db);
        return {Poly(std::move(q)), Poly(std::move(r))};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
    bool divides(const Poly& a) const { return divmod(a, *this).second.is_zero(); }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * (K(1) / leading());
    }

    std::string str(const std::string& var = "z") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (cmc1::is_zero(c_[k])) continue;
            std::string part = "(" + to_string(c_[k]) + ")";
            if (k == 1) part += "*" + var;
            if (k > 1) part += "*" + var + "^" + std::to_string(k);
            out += (out.empty() ? "" : " + ") + part;
        }
        return out;
    }

private:
    std::vector<K> c_;
    void trim() {
        while (!c_.empty() && cmc1::is_zero(c_.back())) c_.pop_back();
    }
};

using QPoly = Poly<ExactScalar>;
using ThetaPoly = Poly<ParamScalar>;

inline QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = (a % b).monic();
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Yun's algorithm: p = c * prod f_i^i with f_i monic squarefree and pairwise coprime.
inline std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p) {
    std::vector<std::pair<QPoly, int>> out;
    if (p.degree() < 1) return out;
    QPoly a = p.monic();
    QPoly b = a.derivative();
    QPoly c = gcd(a, b);
    QPoly w = a / c;
    QPoly y = b / c;
    QPoly z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        QPoly g = gcd(w, z);
        if (g.degree() > 0) out.emplace_back(g, i);
        w = w / g;
        y = z / g;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

inline QPoly squarefree_part(const QPoly& p) {
    QPoly r(1);
    for (auto& [f, m] : squarefree_decomposition(p)) r *= f;
    return r;
}

namespace detail {

/// Positive divisors of |n|, by trial division. Empty if |n| is too large to factor naively.
inline std::vector<Integer> divisors(Integer n, const Integer& limit = Integer("1000000000000")) {
    if (n < 0) n = -n;
    std::vector<Integer> small, large;
    if (n == 0 || n > limit) return {};
    for (Integer d = 1; d * d <= n; ++d) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0) {
            small.push_back(d);
            Integer e = n / d;
            if (e != d) large.push_back(e);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline bool all_rational(const QPoly& p) {
    for (auto& c : p.coeffs())
        if (!c.is_rational()) return false;
    return true;
}

}  // namespace detail

/// Roots split off a polynomial, plus factors that could not be split in the scalar domain.
struct RootSplit {
    std::vector<std::pair<ExactScalar, int>> roots;  // root, multiplicity
    std::vector<std::pair<QPoly, int>> unsplit;      // monic factor, multiplicity
};

/// Rational roots of a squarefree polynomial with rational coefficients.
inline std::vector<ExactScalar> rational_roots(const QPoly& f) {
    std::vector<ExactScalar> out;
    if (f.degree() < 1 || !detail::all_rational(f)) return out;
    Integer l = 1;
    for (auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re_rat().get_den_mpz_t());
    std::vector<Integer> ic;
    for (auto& c : f.coeffs()) ic.push_back(Rational(c.re_rat() * l).get_num());
    int v = f.valuation();
    if (v > 0) out.emplace_back(0);
    Integer a0 = ic[v], an = ic.back();
    auto ps = detail::divisors(a0);
    auto qs = detail::divisors(an);
    for (auto& p : ps)
        for (auto& q : qs)
            for (int s : {1, -1}) {
                Rational r(p * s, q);
                r.canonicalize();
                ExactScalar x(r);
                if (std::find(out.begin(), out.end(), x) != out.end()) continue;
                if (f(x).is_zero()) out.push_back(x);
            }
    return out;
}

/// Split p into linear factors where the roots lie in the scalar domain
/// (rational roots, then quadratics via exact square roots). A surd not already
/// present in the coefficients is adjoined only when allow_new_surd is set.
inline RootSplit split_roots(const QPoly& p, bool allow_new_surd = false) {
    long field = 0;
    for (auto& c : p.coeffs())
        if (c.discriminant() != 0) field = c.discriminant();
    RootSplit out;
    for (auto& [f0, mult] : squarefree_decomposition(p)) {
        QPoly f = f0;
        for (auto& r : rational_roots(f)) {
            out.roots.emplace_back(r, mult);
            f = f / QPoly::linear(r);
        }
        if (f.degree() == 1) {
            out.roots.emplace_back(-f.coeff(0) / f.coeff(1), mult);
        } else if (f.degree() == 2) {
            ExactScalar a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
            ExactScalar disc = b * b - ExactScalar(4) * a * c;
            std::optional<ExactScalar> s;
            try {
                s = disc.sqrt();
            } catch (const SurdMismatch&) {
                s.reset();
            }
            if (s && s->discriminant() != 0 && s->discriminant() != field && !allow_new_surd) s.reset();
            if (s) {
                try {
                    ExactScalar r1 = (-b + *s) / (ExactScalar(2) * a);
                    ExactScalar r2 = (-b - *s) / (ExactScalar(2) * a);
                    out.roots.emplace_back(r1, mult);
                    out.roots.emplace_back(r2, mult);
                } catch (const SurdMismatch&) {
                    out.unsplit.emplace_back(f.monic(), mult);
                }
            } else {
                out.unsplit.emplace_back(f.monic(), mult);
            }
        } else if (f.degree() > 2) {
            out.unsplit.emplace_back(f.monic(), mult);
        }
    }
    return out;
}

/// Numeric complex coefficients.
inline std::vector<std::complex<double>> to_complex(const QPoly& p) {
    std::vector<std::complex<double>> v;
    for (auto& c : p.coeffs()) v.push_back(c.to_complex());
    return v;
}

/// Substitute theta = t0 into every coefficient.
inline QPoly substitute(const ThetaPoly& p, const ExactScalar& t0) {
    std::vector<ExactScalar> v;
    for (auto& c : p.coeffs()) v.push_back(c.eval(t0));
    return QPoly(std::move(v));
}

inline ThetaPoly lift(const QPoly& p) {
    std::vector<ParamScalar> v;
    for (auto& c : p.coeffs()) v.emplace_back(c);
    return ThetaPoly(std::move(v));
}

/// Convert a theta-polynomial to a QPoly in the variable theta.
inline QPoly as_poly(const ParamScalar& x) { return QPoly(x.coeffs()); }

}  // namespace cmc1

#endif
