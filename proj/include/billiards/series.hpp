#pragma once

// Truncated bivariate power-series (jet) arithmetic.
//
// Series2<T> models an element of T[[s,u]] / (s,u)^(D+1): coefficients c[j][k]
// for monomials s^j u^k with j+k <= D.  All ring operations are closed at
// order D; products of higher total degree are discarded.  Values are
// immutable in spirit: every operation returns a fresh series.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "billiards/errors.hpp"

namespace billiards {

namespace detail {
template <typename T>
struct is_complex : std::false_type {};
template <typename U>
struct is_complex<std::complex<U>> : std::true_type {};

template <typename T>
inline double abs_value(const T& x) {
    if constexpr (is_complex<T>::value)
        return std::abs(x);
    else
        return std::fabs(static_cast<double>(x));
}
}  // namespace detail

inline constexpr int kMaxJetDegree = 7;

template <typename T>
class Series2 {
public:
    explicit Series2(int degree = 5) : deg_(degree), c_(size_for(degree), T{}) {
        if (degree < 1 || degree > kMaxJetDegree)
            throw InvalidParameterError("jet truncation degree must be in [1, 7]");
    }

    static Series2 constant(T value, int degree) {
        Series2 r(degree);
        r.at(0, 0) = value;
        return r;
    }
    /// The generator s (first variable).
    static Series2 var_s(int degree) {
        Series2 r(degree);
        r.at(1, 0) = T(1);
        return r;
    }
    /// The generator u (second variable).
    static Series2 var_u(int degree) {
        Series2 r(degree);
        r.at(0, 1) = T(1);
        return r;
    }

    int degree() const { return deg_; }

    T& at(int j, int k) { return c_[index(j, k)]; }
    const T& at(int j, int k) const { return c_[index(j, k)]; }

    /// Coefficient access that returns zero outside the stored triangle.
    T coeff(int j, int k) const {
        if (j < 0 || k < 0 || j + k > deg_) return T{};
        return c_[index(j, k)];
    }

    Series2 operator+(const Series2& o) const {
        check_same(o);
        Series2 r(*this);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
        return r;
    }
    Series2 operator-(const Series2& o) const {
        check_same(o);
        Series2 r(*this);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
        return r;
    }
    Series2 operator-() const {
        Series2 r(*this);
        for (auto& v : r.c_) v = -v;
        return r;
    }
    Series2 operator*(const T& a) const {
        Series2 r(*this);
        for (auto& v : r.c_) v *= a;
        return r;
    }
    friend Series2 operator*(const T& a, const Series2& x) { return x * a; }

    Series2 operator*(const Series2& o) const {
        check_same(o);
        Series2 r(deg_);
        for (int j1 = 0; j1 <= deg_; ++j1)
            for (int k1 = 0; j1 + k1 <= deg_; ++k1) {
                const T a = c_[index(j1, k1)];
                if (a == T{}) continue;
                const int rem = deg_ - j1 - k1;
                for (int j2 = 0; j2 <= rem; ++j2)
                    for (int k2 = 0; j2 + k2 <= rem - 0 && j2 + k2 + j1 + k1 <= deg_; ++k2)
                        r.c_[index(j1 + j2, k1 + k2)] += a * o.c_[index(j2, k2)];
            }
        return r;
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    Series2 reciprocal() const {
        const T c0 = coeff(0, 0);
        if (detail::abs_value(c0) == 0.0)
            throw SeriesError("reciprocal of a series with zero constant term");
        Series2 y = constant(T(1) / c0, deg_);
        const Series2 two = constant(T(2), deg_);
        for (int it = 0; it < newton_steps(); ++it) y = y * (two - (*this) * y);
        return y;
    }

    /// Square root with positive (real-part) constant term.
    Series2 sqrt() const {
        const T c0 = coeff(0, 0);
        double mag;
        if constexpr (detail::is_complex<T>::value)
            mag = std::real(c0);
        else
            mag = static_cast<double>(c0);
        if (!(mag > 0.0))
            throw SeriesError("sqrt of a series with nonpositive constant term");
        // Division-free Newton for 1/sqrt, then multiply back.
        using std::sqrt;
        Series2 r = constant(T(1) / sqrt(c0), deg_);
        const Series2 three = constant(T(3), deg_);
        const T half = T(1) / T(2);
        for (int it = 0; it < newton_steps(); ++it) r = (r * (three - (*this) * r * r)) * half;
        return (*this) * r;
    }

    Series2 diff_s() const {
        Series2 r(deg_);
        for (int j = 1; j <= deg_; ++j)
            for (int k = 0; j + k <= deg_; ++k) r.at(j - 1, k) = T(static_cast<double>(j)) * coeff(j, k);
        return r;
    }
    Series2 diff_u() const {
        Series2 r(deg_);
        for (int j = 0; j <= deg_; ++j)
            for (int k = 1; j + k <= deg_; ++k) r.at(j, k - 1) = T(static_cast<double>(k)) * coeff(j, k);
        return r;
    }

    /// Substitute s -> alpha*s, u -> beta*u.
    Series2 scale_vars(T alpha, T beta) const {
        Series2 r(deg_);
        for (int j = 0; j <= deg_; ++j) {
            T aj = T(1);
            for (int q = 0; q < j; ++q) aj *= alpha;
            for (int k = 0; j + k <= deg_; ++k) {
                T bk = T(1);
                for (int q = 0; q < k; ++q) bk *= beta;
                r.at(j, k) = coeff(j, k) * aj * bk;
            }
        }
        return r;
    }

    /// Substitute the pair (f, g) for the generators (s, u).
    /// Exact in the truncated ring when f, g have zero constant term.
    template <typename S>
    Series2<S> compose2(const Series2<S>& f, const Series2<S>& g) const {
        f.require_degree(deg_);
        std::vector<Series2<S>> fp, gp;
        fp.reserve(deg_ + 1);
        gp.reserve(deg_ + 1);
        fp.push_back(Series2<S>::constant(S(1), deg_));
        gp.push_back(Series2<S>::constant(S(1), deg_));
        for (int i = 1; i <= deg_; ++i) {
            fp.push_back(fp.back() * f);
            gp.push_back(gp.back() * g);
        }
        Series2<S> r(deg_);
        for (int j = 0; j <= deg_; ++j)
            for (int k = 0; j + k <= deg_; ++k) {
                const T a = coeff(j, k);
                if (a == T{}) continue;
                r = r + fp[j] * gp[k] * S(a);
            }
        return r;
    }

    /// Numeric evaluation at a point.
    T evaluate(T s, T u) const {
        T r{};
        for (int j = deg_; j >= 0; --j) {
            T row{};
            for (int k = deg_ - j; k >= 0; --k) row = row * u + coeff(j, k);
            r = r * s + row;
        }
        return r;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& v : c_) m = std::max(m, detail::abs_value(v));
        return m;
    }

    /// Largest |coefficient| among terms of total degree n.
    double max_abs_order(int n) const {
        double m = 0;
        for (int j = 0; j <= n && j <= deg_; ++j)
            if (n - j >= 0 && j + (n - j) <= deg_) m = std::max(m, detail::abs_value(coeff(j, n - j)));
        return m;
    }

    Series2 truncated(int new_degree) const {
        Series2 r(new_degree);
        for (int j = 0; j <= new_degree; ++j)
            for (int k = 0; j + k <= new_degree; ++k) r.at(j, k) = coeff(j, k);
        return r;
    }

    template <typename S>
    Series2<S> cast() const {
        Series2<S> r(deg_);
        for (int j = 0; j <= deg_; ++j)
            for (int k = 0; j + k <= deg_; ++k) r.at(j, k) = S(coeff(j, k));
        return r;
    }

    void require_degree(int d) const {
        if (deg_ != d) throw SeriesError("jet truncation orders do not match");
    }

private:
    static std::size_t size_for(int d) { return static_cast<std::size_t>((d + 1) * (d + 2) / 2); }
    std::size_t index(int j, int k) const {
        // row-major by j; row j starts at j*(D+1) - j(j-1)/2
        return static_cast<std::size_t>(j * (deg_ + 1) - j * (j - 1) / 2 + k);
    }
    void check_same(const Series2& o) const { o.require_degree(deg_); }
    int newton_steps() const {
        int n = 1, ord = 1;
        while (ord < deg_ + 1) {
            ord *= 2;
            ++n;
        }
        return n;
    }

    int deg_;
    std::vector<T> c_;
};

using Jet = Series2<double>;
using CJet = Series2<std::complex<double>>;

/// Solve G(w; s,u) = 0 for an unknown series w by Newton iteration in the
/// truncated ring.  The caller supplies G and its partial derivative in w,
/// plus a starting value whose constant term already solves the equation.
template <typename T>
Series2<T> solve_implicit(const std::function<Series2<T>(const Series2<T>&)>& G,
                          const std::function<Series2<T>(const Series2<T>&)>& dG_dw,
                          Series2<T> w0) {
    const int deg = w0.degree();
    Series2<T> w = std::move(w0);
    {
        const Series2<T> sens = dG_dw(w);
        if (detail::abs_value(sens.coeff(0, 0)) < 1e-14)
            throw ImplicitSingularityError("implicit solve has singular linear sensitivity");
    }
    int steps = 2;
    for (int ord = 1; ord < deg + 1; ord *= 2) ++steps;
    for (int it = 0; it < steps; ++it) {
        const Series2<T> g = G(w);
        const Series2<T> d = dG_dw(w);
        w = w - g * d.reciprocal();
    }
    return w;
}

/// A pair of series viewed as a planar map germ (s,u) -> (S(s,u), U(s,u)).
template <typename T>
struct Map2 {
    Series2<T> S, U;

    int degree() const { return S.degree(); }

    static Map2 identity(int degree) {
        return {Series2<T>::var_s(degree), Series2<T>::var_u(degree)};
    }

    /// Composition outer(inner): substitute inner's components into outer's.
    static Map2 apply(const Map2& outer, const Map2& inner) {
        return {outer.S.compose2(inner.S, inner.U), outer.U.compose2(inner.S, inner.U)};
    }

    /// Inverse of a map whose linear part is the identity (tangent to id).
    Map2 inverse_near_identity() const {
        const int d = degree();
        const Map2 id = identity(d);
        Map2 h{S - id.S, U - id.U};  // h = T - id, vanishing linear part
        Map2 g = id;
        for (int it = 0; it < d; ++it) {
            const Map2 hg = apply(h, g);
            g = Map2{id.S - hg.S, id.U - hg.U};
        }
        return g;
    }
};

using RMap2 = Map2<double>;

}  // namespace billiards
