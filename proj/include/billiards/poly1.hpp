#pragma once

// Small dense univariate polynomials over double, used for boundary profiles
// and their derived series (derivative, arclength integrand, ...).

#include <cmath>
#include <vector>

#include "billiards/series.hpp"

namespace billiards {

class Poly1 {
public:
    Poly1() = default;
    explicit Poly1(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

    static Poly1 zero() { return Poly1{}; }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    double coeff(int i) const { return (i >= 0 && i < (int)c_.size()) ? c_[i] : 0.0; }
    const std::vector<double>& coeffs() const { return c_; }

    Poly1 operator+(const Poly1& o) const {
        std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return Poly1(std::move(r));
    }
    Poly1 operator*(double a) const {
        Poly1 r(*this);
        for (auto& v : r.c_) v *= a;
        return r;
    }
    Poly1 operator*(const Poly1& o) const {
        if (c_.empty() || o.c_.empty()) return {};
        std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return Poly1(std::move(r));
    }

    Poly1 derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<double> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<double>(i);
        return Poly1(std::move(r));
    }
    Poly1 antiderivative() const {
        std::vector<double> r(c_.size() + 1, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i + 1] = c_[i] / static_cast<double>(i + 1);
        return Poly1(std::move(r));
    }
    Poly1 truncated(int max_degree) const {
        std::vector<double> r(c_.begin(),
                              c_.begin() + std::min<std::size_t>(c_.size(), max_degree + 1));
        return Poly1(std::move(r));
    }

    double eval(double x) const {
        double r = 0;
        for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
        return r;
    }

    /// Horner evaluation with a jet argument (exact: the polynomial is finite).
    Jet eval(const Jet& x) const {
        Jet r(x.degree());
        for (int i = degree(); i >= 0; --i) r = r * x + Jet::constant(coeff(i), x.degree());
        return r;
    }

    /// Truncated series of sqrt(p) around x = 0; requires p(0) > 0.
    Poly1 sqrt_series(int max_degree) const {
        if (!(coeff(0) > 0.0)) throw SeriesError("sqrt_series needs positive constant term");
        std::vector<double> r(max_degree + 1, 0.0);
        r[0] = std::sqrt(coeff(0));
        // (sum r_i x^i)^2 = p, solved order by order.
        for (int n = 1; n <= max_degree; ++n) {
            double conv = 0;
            for (int i = 1; i < n; ++i) conv += r[i] * r[n - i];
            r[n] = (coeff(n) - conv) / (2 * r[0]);
        }
        return Poly1(std::move(r));
    }

private:
    std::vector<double> c_;
};

}  // namespace billiards
