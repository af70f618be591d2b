#ifndef CMC1_SCALAR_HPP
#define CMC1_SCALAR_HPP

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace cmc1 {

using Rational = mpq_class;
using Integer = mpz_class;

/// Two different surds met in one expression.
struct SurdMismatch : std::domain_error {
    using std::domain_error::domain_error;
};

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Rational make_rational(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline std::string rational_str(const Rational& r) { return r.get_str(); }

inline double rational_to_double(const Rational& r) { return r.get_d(); }

inline bool perfect_square(const Integer& n, Integer& root) {
    if (n < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return true;
}

/// Square root of a non-negative rational, if rational.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    Integer a, b;
    if (!perfect_square(r.get_num(), a) || !perfect_square(r.get_den(), b)) return std::nullopt;
    Rational out(a, b);
    out.canonicalize();
    return out;
}

/// n = f^2 * s with s square-free (s carries the sign). Trial division.
inline std::pair<Integer, Integer> squarefree_split(Integer n) {
    Integer f = 1, s = 1;
    if (n < 0) {
        s = -1;
        n = -n;
    }
    if (n == 0) return {0, 0};
    for (Integer p = 2; p * p <= n; ++p) {
        int e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) != 0) {
            n /= p;
            ++e;
        }
        for (int k = 0; k < e / 2; ++k) f *= p;
        if (e % 2 == 1) s *= p;
    }
    s *= n;
    return {f, s};
}

}  // namespace detail

/// (ra + rb*sqrt(d)) + i*(ia + ib*sqrt(d)), d square-free > 1 or 0 when absent.
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(long v) : ra_(v) {}                 // NOLINT(google-explicit-constructor)
    ExactScalar(int v) : ra_(v) {}                  // NOLINT(google-explicit-constructor)
    ExactScalar(const Rational& v) : ra_(v) {}      // NOLINT(google-explicit-constructor)
    ExactScalar(Rational re, Rational im) : ra_(std::move(re)), ia_(std::move(im)) {}
    ExactScalar(Rational ra, Rational rb, Rational ia, Rational ib, long d)
        : ra_(std::move(ra)), rb_(std::move(rb)), ia_(std::move(ia)), ib_(std::move(ib)), d_(d) {
        if (d_ != 0 && (d_ < 2 || !squarefree(d_)))
            throw std::domain_error("surd discriminant must be a square-free integer > 1");
        normalize();
    }

    static ExactScalar rational(long n, long d = 1) { return {detail::make_rational(n, d)}; }
    static ExactScalar imag_unit() { return {Rational(0), Rational(1)}; }
    /// c * sqrt(d); d is reduced to its square-free part.
    static ExactScalar surd(const Rational& c, long d) {
        if (d <= 0) throw std::domain_error("surd(): d must be positive");
        auto [f, s] = detail::squarefree_split(Integer(d));
        Rational cf = c * Rational(f);
        if (s == 1) return {cf};
        return {Rational(0), cf, Rational(0), Rational(0), s.get_si()};
    }

    const Rational& re_rat() const { return ra_; }
    const Rational& re_surd() const { return rb_; }
    const Rational& im_rat() const { return ia_; }
    const Rational& im_surd() const { return ib_; }
    long discriminant() const { return d_; }

    bool is_zero() const { return ra_ == 0 && rb_ == 0 && ia_ == 0 && ib_ == 0; }
    bool is_real() const { return ia_ == 0 && ib_ == 0; }
    bool is_rational() const { return is_real() && rb_ == 0; }
    bool is_integer() const { return is_rational() && ra_.get_den() == 1; }

    ExactScalar real_part() const { return {ra_, rb_, 0, 0, d_}; }
    ExactScalar imag_part() const { return {ia_, ib_, 0, 0, d_}; }
    ExactScalar conj() const { return {ra_, rb_, -ia_, -ib_, d_}; }

    /// Sign of a real element, decided exactly.
    int sign() const {
        if (!is_real()) throw std::domain_error("sign() of a non-real scalar");
        return real_sign(ra_, rb_, d_);
    }

    std::complex<double> to_complex() const {
        double s = d_ == 0 ? 0.0 : std::sqrt(static_cast<double>(d_));
        return {ra_.get_d() + rb_.get_d() * s, ia_.get_d() + ib_.get_d() * s};
    }

    ExactScalar operator-() const { return {-ra_, -rb_, -ia_, -ib_, d_}; }

    ExactScalar& operator+=(const ExactScalar& o) {
        d_ = join(d_, o.d_);
        ra_ += o.ra_;
        rb_ += o.rb_;
        ia_ += o.ia_;
        ib_ += o.ib_;
        normalize();
        return *this;
    }
    ExactScalar& operator-=(const ExactScalar& o) { return *this += -o; }
    ExactScalar& operator*=(const ExactScalar& o) {
        long d = join(d_, o.d_);
        // real parts u = ra + rb s, v = ia + ib s
        auto mul = [d](const Rational& a, const Rational& b, const Rational& x, const Rational& y) {
            return std::pair<Rational, Rational>{a * x + b * y * d, a * y + b * x};
        };
        auto ux = mul(ra_, rb_, o.ra_, o.rb_);
        auto vy = mul(ia_, ib_, o.ia_, o.ib_);
        auto uy = mul(ra_, rb_, o.ia_, o.ib_);
        auto vx = mul(ia_, ib_, o.ra_, o.rb_);
        ra_ = ux.first - vy.first;
        rb_ = ux.second - vy.second;
        ia_ = uy.first + vx.first;
        ib_ = uy.second + vx.second;
        d_ = d;
        normalize();
        return *this;
    }
    ExactScalar& operator/=(const ExactScalar& o) { return *this *= o.inverse(); }

    ExactScalar inverse() const {
        if (is_zero()) throw std::domain_error("division by zero scalar");
        // 1/(u+iv) = (u-iv)/(u^2+v^2); n = u^2+v^2 = na + nb s; 1/n = (na - nb s)/(na^2 - d nb^2)
        ExactScalar n = real_part() * real_part() + imag_part() * imag_part();
        Rational den = n.ra_ * n.ra_ - n.rb_ * n.rb_ * n.d_;
        ExactScalar ninv{n.ra_ / den, -n.rb_ / den, 0, 0, n.d_};
        return conj() * ninv;
    }

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return a.ra_ == b.ra_ && a.rb_ == b.rb_ && a.ia_ == b.ia_ && a.ib_ == b.ib_ &&
               (a.d_ == b.d_ || (a.rb_ == 0 && a.ib_ == 0));
    }
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

    ExactScalar pow(int n) const {
        if (n < 0) return inverse().pow(-n);
        ExactScalar r(1), b = *this;
        while (n > 0) {
            if (n & 1) r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    }

    /// Exact square root within the current field, or adjoining a new surd when
    /// the input carries none. Returns the root with non-negative real part.
    std::optional<ExactScalar> sqrt() const {
        if (is_zero()) return ExactScalar(0);
        if (is_real()) {
            if (sign() > 0) return real_sqrt(*this);
            auto r = real_sqrt(-*this);
            if (!r) return std::nullopt;
            return *r * imag_unit();
        }
        // (u+iv)^2 = A + iB with u^2 = (A + |x|)/2
        ExactScalar A = real_part(), B = imag_part();
        auto mod = real_sqrt(A * A + B * B);
        if (!mod) return std::nullopt;
        auto u = real_sqrt((A + *mod) * rational(1, 2));
        if (!u || u->is_zero()) return std::nullopt;
        ExactScalar v = B / (*u * ExactScalar(2));
        ExactScalar root = *u + v * imag_unit();
        if (root * root != *this) return std::nullopt;
        return root;
    }

    std::string str() const {
        std::string out;
        auto term = [&out](const Rational& c, const std::string& tail) {
            if (c == 0) return;
            std::string body = detail::rational_str(abs(c));
            std::string sign = c < 0 ? "-" : (out.empty() ? "" : "+");
            if (!tail.empty() && c == 1) body.clear();
            else if (!tail.empty() && c == -1) body.clear();
            out += sign + body;
            if (!tail.empty()) out += (body.empty() ? "" : "*") + tail;
        };
        std::string s = "sqrt(" + std::to_string(d_) + ")";
        term(ra_, "");
        term(rb_, s);
        term(ia_, "i");
        term(ib_, s + "*i");
        return out.empty() ? "0" : out;
    }

    /// Parses sums of terms  [±][rational][*]sqrt(d)[*]i  e.g. "1/2+1/2*sqrt(5)-3i".
    static ExactScalar parse(const std::string& text) {
        std::string t;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) t += c;
        if (t.empty()) throw ParseError("empty scalar");
        ExactScalar acc;
        std::size_t i = 0;
        while (i < t.size()) {
            int sgn = 1;
            if (t[i] == '+' || t[i] == '-') {
                sgn = t[i] == '-' ? -1 : 1;
                ++i;
            } else if (i != 0) {
                throw ParseError("bad scalar: " + text);
            }
            Rational coef(1);
            bool have_num = false;
            std::size_t j = i;
            while (j < t.size() && (std::isdigit(static_cast<unsigned char>(t[j])) || t[j] == '/')) ++j;
            if (j > i) {
                try {
                    coef = Rational(t.substr(i, j - i));
                } catch (const std::exception&) {
                    throw ParseError("bad rational in: " + text);
                }
                if (coef.get_den() == 0) throw ParseError("zero denominator in: " + text);
                coef.canonicalize();
                have_num = true;
                i = j;
            }
            ExactScalar term(coef * sgn);
            bool have_factor = false;
            while (i < t.size() && t[i] != '+' && t[i] != '-') {
                if (t[i] == '*') {
                    ++i;
                    continue;
                }
                if (t.compare(i, 5, "sqrt(") == 0) {
                    std::size_t close = t.find(')', i);
                    if (close == std::string::npos) throw ParseError("unclosed sqrt in: " + text);
                    long d = std::stol(t.substr(i + 5, close - i - 5));
                    term *= surd(Rational(1), d);
                    i = close + 1;
                    have_factor = true;
                } else if (t[i] == 'i') {
                    term *= imag_unit();
                    ++i;
                    have_factor = true;
                } else {
                    throw ParseError("unexpected character in scalar: " + text);
                }
            }
            if (!have_num && !have_factor) throw ParseError("empty term in: " + text);
            acc += term;
        }
        return acc;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.str(); }

private:
    Rational ra_, rb_, ia_, ib_;
    long d_ = 0;

    static bool squarefree(long d) {
        for (long p = 2; p * p <= d; ++p)
            if (d % (p * p) == 0) return false;
        return true;
    }

    static long join(long a, long b) {
        if (a == 0) return b;
        if (b == 0 || a == b) return a;
        throw SurdMismatch("expression mixes sqrt(" + std::to_string(a) + ") and sqrt(" +
                           std::to_string(b) + ")");
    }

    void normalize() {
        if (rb_ == 0 && ib_ == 0) d_ = 0;
    }

    static int real_sign(const Rational& a, const Rational& b, long d) {
        int sa = sgn(a), sb = sgn(b);
        if (sb == 0 || d == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        Rational a2 = a * a, b2 = b * b * d;
        return a2 > b2 ? sa : sb;
    }

    /// sqrt of a non-negative real element of Q(sqrt d).
    static std::optional<ExactScalar> real_sqrt(const ExactScalar& x) {
        if (x.is_zero()) return ExactScalar(0);
        if (x.sign() < 0) return std::nullopt;
        if (x.rb_ == 0) {
            if (auto r = detail::rational_sqrt(x.ra_)) return ExactScalar(*r);
            // sqrt(n/m) = sqrt(n m)/m
            Integer nm = x.ra_.get_num() * x.ra_.get_den();
            auto [f, s] = detail::squarefree_split(nm);
            if (!s.fits_slong_p()) return std::nullopt;
            Rational c(f, x.ra_.get_den());
            c.canonicalize();
            return ExactScalar(Rational(0), c, Rational(0), Rational(0), s.get_si());
        }
        // (u + v s)^2 = a + b s : u^2 + d v^2 = a, 2uv = b
        const Rational& a = x.ra_;
        const Rational& b = x.rb_;
        auto n = detail::rational_sqrt(a * a - b * b * x.d_);
        if (!n) return std::nullopt;
        for (int sg : {1, -1}) {
            Rational u2 = (a + sg * *n) / 2;
            auto u = detail::rational_sqrt(u2);
            if (!u || *u == 0) continue;
            Rational v = b / (2 * *u);
            ExactScalar r(*u, v, 0, 0, x.d_);
            if (r.sign() < 0) r = -r;
            if (r * r == x) return r;
        }
        return std::nullopt;
    }
};

}  // namespace cmc1

#endif
