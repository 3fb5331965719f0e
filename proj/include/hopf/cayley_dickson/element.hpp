#pragma once

#include "hopf/cayley_dickson/table.hpp"
#include "hopf/polykernel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace hopf {

template <class S>
inline constexpr bool is_polynomial_v = std::is_same_v<S, Polynomial>;

template <class S>
concept Scalar = std::is_same_v<S, Rational> || std::is_same_v<S, double> || std::is_same_v<S, Polynomial>;

/// Element of a Cayley-Dickson algebra with coefficients in S.
template <Scalar S>
class Element {
public:
    Element() = default;
    explicit Element(AlgebraDim d) : dim_(d), c_(static_cast<std::size_t>(dim_value(d)), S(0)) {}
    Element(AlgebraDim d, std::vector<S> coeffs) : dim_(d), c_(std::move(coeffs)) {
        if (static_cast<int>(c_.size()) != dim_value(d))
            throw std::invalid_argument("Element: coefficient count does not match dimension");
        if constexpr (std::is_same_v<S, double>) {
            for (double v : c_)
                if (!std::isfinite(v)) throw std::invalid_argument("Element: non-finite coefficient");
        }
    }

    static Element zero(AlgebraDim d) { return Element(d); }
    static Element one(AlgebraDim d) { return basis(d, 0); }
    static Element basis(AlgebraDim d, int i) {
        Element e(d);
        e.c_.at(static_cast<std::size_t>(i)) = S(1);
        return e;
    }
    static Element real(AlgebraDim d, const S& r) {
        Element e(d);
        e.c_[0] = r;
        return e;
    }

    [[nodiscard]] AlgebraDim dim() const { return dim_; }
    [[nodiscard]] int size() const { return static_cast<int>(c_.size()); }
    [[nodiscard]] const S& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    S& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] const std::vector<S>& coeffs() const { return c_; }

    [[nodiscard]] Element conj() const {
        Element r = *this;
        for (std::size_t i = 1; i < r.c_.size(); ++i) r.c_[i] = -r.c_[i];
        return r;
    }
    [[nodiscard]] S re() const { return c_[0]; }

    [[nodiscard]] S norm_sq() const { return inner(*this, *this); }

    Element operator-() const {
        Element r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend Element operator+(const Element& a, const Element& b) {
        check_same(a, b);
        Element r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend Element operator-(const Element& a, const Element& b) {
        check_same(a, b);
        Element r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    Element& operator+=(const Element& o) { return *this = *this + o; }
    Element& operator-=(const Element& o) { return *this = *this - o; }

    /// Scalar multiple s * a.
    friend Element operator*(const S& s, const Element& a) {
        Element r = a;
        for (auto& v : r.c_) v = s * v;
        return r;
    }

    friend Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

    friend bool operator==(const Element& a, const Element& b) { return a.dim_ == b.dim_ && a.c_ == b.c_; }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    [[nodiscard]] bool is_zero() const {
        for (const auto& v : c_) {
            if constexpr (is_polynomial_v<S>) {
                if (!v.is_zero()) return false;
            } else {
                if (v != S(0)) return false;
            }
        }
        return true;
    }

    [[nodiscard]] std::string str() const {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ", ";
            if constexpr (is_polynomial_v<S>) {
                os << c_[i].str();
            } else {
                os << c_[i];
            }
        }
        os << ")";
        return os.str();
    }

    static void check_same(const Element& a, const Element& b) {
        if (a.dim_ != b.dim_) throw std::invalid_argument("Element: dimension mismatch");
    }

private:
    AlgebraDim dim_ = AlgebraDim::O;
    std::vector<S> c_;
};

/// Product defined by the multiplication table of the element's dimension.
template <Scalar S>
Element<S> multiply(const Element<S>& a, const Element<S>& b) {
    Element<S>::check_same(a, b);
    const auto& groups = table(a.dim()).by_output();
    Element<S> r(a.dim());
    if constexpr (is_polynomial_v<S>) {
        RingPtr ctx;
        for (int i = 0; i < a.size() && !ctx; ++i) ctx = a[i].context() ? a[i].context() : b[i].context();
        for (std::size_t k = 0; k < groups.size(); ++k) {
            PolyAccumulator acc(ctx);
            for (const auto& p : groups[k]) acc.add_product(a[p.i], b[p.j], Rational(p.sign));
            r[static_cast<int>(k)] = acc.take();
        }
    } else {
        for (std::size_t k = 0; k < groups.size(); ++k) {
            S sum(0);
            for (const auto& p : groups[k]) {
                if (p.sign > 0) {
                    sum += a[p.i] * b[p.j];
                } else {
                    sum -= a[p.i] * b[p.j];
                }
            }
            r[static_cast<int>(k)] = sum;
        }
    }
    return r;
}

/// Euclidean inner product of coefficient vectors.
template <Scalar S>
S inner(const Element<S>& a, const Element<S>& b) {
    Element<S>::check_same(a, b);
    if constexpr (is_polynomial_v<S>) {
        PolyAccumulator acc;
        for (int i = 0; i < a.size(); ++i) acc.add_product(a[i], b[i]);
        return acc.take();
    } else {
        S sum(0);
        for (int i = 0; i < a.size(); ++i) sum += a[i] * b[i];
        return sum;
    }
}

template <Scalar S>
Element<S> conj(const Element<S>& a) {
    return a.conj();
}

template <Scalar S>
S norm_sq(const Element<S>& a) {
    return a.norm_sq();
}

/// [a, b, c] = a (b c) - (a b) c.
template <Scalar S>
Element<S> associator(const Element<S>& a, const Element<S>& b, const Element<S>& c) {
    return a * (b * c) - (a * b) * c;
}

/// a^{-1} = conj(a) / |a|^2. Not available for polynomial coefficients.
template <Scalar S>
    requires(!is_polynomial_v<S>)
Element<S> inverse(const Element<S>& a) {
    S n = a.norm_sq();
    if (n == S(0)) throw std::domain_error("inverse: zero element");
    Element<S> r = a.conj();
    for (int i = 0; i < r.size(); ++i) r[i] = r[i] / n;
    return r;
}

inline double norm(const Element<double>& a) { return std::sqrt(a.norm_sq()); }

/// Largest absolute coefficient.
inline double max_abs(const Element<double>& a) {
    double m = 0.0;
    for (double v : a.coeffs()) m = std::max(m, std::abs(v));
    return m;
}

/// Element whose coefficients are fresh indeterminates of ctx.
inline Element<Polynomial> symbolic(AlgebraDim d, const RingPtr& ctx, const std::string& tag) {
    Element<Polynomial> e(d);
    for (int i = 0; i < dim_value(d); ++i) e[i] = var(ctx, section_var(tag, i));
    return e;
}
inline Element<Polynomial> symbolic_x(AlgebraDim d, const RingPtr& ctx) {
    Element<Polynomial> e(d);
    for (int i = 0; i < dim_value(d); ++i) e[i] = var(ctx, base_x(i));
    return e;
}
inline Element<Polynomial> symbolic_y(AlgebraDim d, const RingPtr& ctx) {
    Element<Polynomial> e(d);
    for (int i = 0; i < dim_value(d); ++i) e[i] = var(ctx, base_y(i));
    return e;
}

/// Number of nonzero terms over all coefficients.
inline std::size_t residual_terms(const Element<Polynomial>& e) {
    std::size_t n = 0;
    for (const auto& c : e.coeffs()) n += c.size();
    return n;
}

template <class From, class To>
Element<To> convert(const Element<From>& e) {
    std::vector<To> out;
    out.reserve(e.coeffs().size());
    for (const auto& v : e.coeffs()) {
        if constexpr (std::is_same_v<From, Rational> && std::is_same_v<To, double>) {
            out.push_back(v.to_double());
        } else if constexpr (std::is_same_v<From, Rational> && std::is_same_v<To, Polynomial>) {
            out.emplace_back(v);
        } else {
            out.push_back(static_cast<To>(v));
        }
    }
    return Element<To>(e.dim(), std::move(out));
}

}  // namespace hopf
