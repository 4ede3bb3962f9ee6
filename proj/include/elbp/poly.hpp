#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "elbp/common.hpp"

namespace elbp {

// Dense univariate polynomial, coefficients in ascending degree.
template <class T>
struct Poly {
    std::vector<T> c;
    bool monic = false;

    Poly() : c{T(0)} {}
    explicit Poly(std::vector<T> coeffs, bool is_monic = false) : c(std::move(coeffs)), monic(is_monic) {
        if (c.empty()) c.push_back(T(0));
    }

    static Poly one() { return Poly(std::vector<T>{T(1)}, true); }
    static Poly monomial(int n, T a = T(1)) {
        std::vector<T> v(n + 1, T(0));
        v[n] = a;
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    const T& operator[](int k) const { return c[k]; }
    T coef(int k) const { return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : T(0); }

    T operator()(const T& z) const {
        T acc = c.back();
        for (int k = degree() - 1; k >= 0; --k) acc = acc * z + c[k];
        return acc;
    }

    template <class U>
    U eval(const U& z) const {
        U acc = U(c.back());
        for (int k = degree() - 1; k >= 0; --k) acc = acc * z + U(c[k]);
        return acc;
    }

    // z^n P(1/z) for n = degree().
    Poly reciprocal() const {
        std::vector<T> r(c.rbegin(), c.rend());
        return Poly(std::move(r));
    }

    Poly derivative(int order = 1) const {
        std::vector<T> d = c;
        for (int o = 0; o < order; ++o) {
            if (d.size() <= 1) return Poly();
            std::vector<T> nd(d.size() - 1);
            for (std::size_t k = 1; k < d.size(); ++k) nd[k - 1] = d[k] * T(static_cast<long>(k));
            d = std::move(nd);
        }
        return Poly(std::move(d));
    }

    // multiplication by z
    Poly shifted_up(int s = 1) const {
        std::vector<T> r(s, T(0));
        r.insert(r.end(), c.begin(), c.end());
        return Poly(std::move(r));
    }
};

template <class T>
Poly<T> operator+(const Poly<T>& a, const Poly<T>& b) {
    std::vector<T> r(std::max(a.c.size(), b.c.size()), T(0));
    for (std::size_t k = 0; k < a.c.size(); ++k) r[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) r[k] += b.c[k];
    return Poly<T>(std::move(r));
}

template <class T>
Poly<T> operator-(const Poly<T>& a, const Poly<T>& b) {
    std::vector<T> r(std::max(a.c.size(), b.c.size()), T(0));
    for (std::size_t k = 0; k < a.c.size(); ++k) r[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) r[k] -= b.c[k];
    return Poly<T>(std::move(r));
}

template <class T>
Poly<T> operator*(const Poly<T>& a, const Poly<T>& b) {
    std::vector<T> r(a.c.size() + b.c.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t k = 0; k < b.c.size(); ++k) r[i + k] += a.c[i] * b.c[k];
    return Poly<T>(std::move(r));
}

template <class T>
Poly<T> operator*(const T& s, const Poly<T>& a) {
    std::vector<T> r = a.c;
    for (auto& x : r) x *= s;
    return Poly<T>(std::move(r));
}

template <class T>
bool is_zero(const Poly<T>& p) {
    for (const auto& x : p.c)
        if (x != T(0)) return false;
    return true;
}

inline Poly<cplx> conj(const Poly<cplx>& p) {
    std::vector<cplx> r(p.c.size());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = std::conj(p.c[k]);
    return Poly<cplx>(std::move(r), p.monic);
}

inline double max_abs(const Poly<cplx>& p) {
    double m = 0;
    for (const auto& x : p.c) m = std::max(m, std::abs(x));
    return m;
}

// Coefficientwise distance relative to the larger coefficient modulus of the pair.
inline double rel_diff(const Poly<cplx>& a, const Poly<cplx>& b) {
    std::size_t n = std::max(a.c.size(), b.c.size());
    double scale = std::max(max_abs(a), max_abs(b));
    double m = 0;
    for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(a.coef(static_cast<int>(k)) - b.coef(static_cast<int>(k))));
    return scale > 0 ? m / scale : m;
}

}  // namespace elbp
