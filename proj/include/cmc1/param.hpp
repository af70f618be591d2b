#ifndef CMC1_PARAM_HPP
#define CMC1_PARAM_HPP

#include <string>
#include <vector>

#include "scalar.hpp"

namespace cmc1 {

/// Polynomial in the formal parameter theta with ExactScalar coefficients.
/// Division is only defined by nonzero theta-constants.
class ParamScalar {
public:
    ParamScalar() = default;
    ParamScalar(long v) : ParamScalar(ExactScalar(v)) {}  // NOLINT(google-explicit-constructor)
    ParamScalar(int v) : ParamScalar(ExactScalar(v)) {}   // NOLINT(google-explicit-constructor)
    ParamScalar(const ExactScalar& c) {                   // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) c_.push_back(c);
    }
    explicit ParamScalar(std::vector<ExactScalar> coeffs) : c_(std::move(coeffs)) { trim(); }

    static ParamScalar theta() { return ParamScalar(std::vector<ExactScalar>{0, 1}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    ExactScalar coeff(int k) const {
        return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : ExactScalar();
    }
    ExactScalar leading() const { return c_.empty() ? ExactScalar() : c_.back(); }
    ExactScalar constant() const {
        if (!is_constant()) throw std::domain_error("ParamScalar depends on theta");
        return coeff(0);
    }
    const std::vector<ExactScalar>& coeffs() const { return c_; }

    ExactScalar eval(const ExactScalar& theta) const {
        ExactScalar acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * theta + *it;
        return acc;
    }

    ParamScalar operator-() const {
        ParamScalar r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    ParamScalar& operator+=(const ParamScalar& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    ParamScalar& operator-=(const ParamScalar& o) { return *this += -o; }
    ParamScalar& operator*=(const ParamScalar& o) {
        if (is_zero() || o.is_zero()) {
            c_.clear();
            return *this;
        }
        std::vector<ExactScalar> r(c_.size() + o.c_.size() - 1);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        c_ = std::move(r);
        trim();
        return *this;
    }
    ParamScalar& operator/=(const ParamScalar& o) {
        if (o.is_zero()) throw std::domain_error("division by zero ParamScalar");
        if (!o.is_constant()) throw std::domain_error("division by a theta-dependent quantity");
        ExactScalar inv = o.c_[0].inverse();
        for (auto& x : c_) x *= inv;
        return *this;
    }
    ParamScalar inverse() const { return ParamScalar(1) /= *this; }

    friend ParamScalar operator+(ParamScalar a, const ParamScalar& b) { return a += b; }
    friend ParamScalar operator-(ParamScalar a, const ParamScalar& b) { return a -= b; }
    friend ParamScalar operator*(ParamScalar a, const ParamScalar& b) { return a *= b; }
    friend ParamScalar operator/(ParamScalar a, const ParamScalar& b) { return a /= b; }
    friend bool operator==(const ParamScalar& a, const ParamScalar& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ParamScalar& a, const ParamScalar& b) { return !(a == b); }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k].is_zero()) continue;
            std::string part = "(" + c_[k].str() + ")";
            if (k == 1) part += "*theta";
            if (k > 1) part += "*theta^" + std::to_string(k);
            out += (out.empty() ? "" : "+") + part;
        }
        return out;
    }

private:
    std::vector<ExactScalar> c_;
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

inline bool is_zero(const ExactScalar& x) { return x.is_zero(); }
inline bool is_zero(const ParamScalar& x) { return x.is_zero(); }
inline std::string to_string(const ExactScalar& x) { return x.str(); }
inline std::string to_string(const ParamScalar& x) { return x.str(); }

}  // namespace cmc1

#endif
