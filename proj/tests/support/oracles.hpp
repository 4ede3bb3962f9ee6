#pragma once

// Reference implementations used only by tests. None of them call into the library's
// theta series, sigma, closed forms or quadrature; they rebuild each quantity from a
// different formula so that agreement is evidence rather than tautology.

#include <Eigen/Dense>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

// Weierstrass product for log sigma over the box |m|, |n| <= R of the lattice 2m w1 + 2n w3.
// The summand is O(z^3/w^3), so the box sum converges absolutely; the tail is O(R^-2).
inline cplx log_sigma_box(double w1, double w3i, cplx z, int R) {
    cplx s = std::log(z);
    for (int m = -R; m <= R; ++m)
        for (int n = -R; n <= R; ++n) {
            if (m == 0 && n == 0) continue;
            cplx w(2.0 * m * w1, 2.0 * n * w3i);
            cplx u = z / w;
            s += std::log(1.0 - u) + u + 0.5 * u * u;
        }
    return s;
}

// The box truncation error is c2 R^-2 + c3 R^-3 + ...; two Richardson steps over R, 2R, 4R.
inline cplx sigma_product(double w1, double w3i, cplx z, int R = 32) {
    cplx a = std::exp(log_sigma_box(w1, w3i, z, R));
    cplx b = std::exp(log_sigma_box(w1, w3i, z, 2 * R));
    cplx c = std::exp(log_sigma_box(w1, w3i, z, 4 * R));
    cplx ab = (4.0 * b - a) / 3.0, bc = (4.0 * c - b) / 3.0;
    return (8.0 * bc - ab) / 7.0;
}

inline cplx zeta_box(double w1, double w3i, cplx z, int R) {
    cplx s = 1.0 / z;
    for (int m = -R; m <= R; ++m)
        for (int n = -R; n <= R; ++n) {
            if (m == 0 && n == 0) continue;
            cplx w(2.0 * m * w1, 2.0 * n * w3i);
            s += 1.0 / (z - w) + 1.0 / w + z / (w * w);
        }
    return s;
}

// eta1 = zeta(w1) from the lattice sum, Richardson on R^-2 then R^-3.
inline cplx eta1_lattice(double w1, double w3i, int R = 32) {
    cplx a = zeta_box(w1, w3i, w1, R), b = zeta_box(w1, w3i, w1, 2 * R), c = zeta_box(w1, w3i, w1, 4 * R);
    cplx ab = (4.0 * b - a) / 3.0, bc = (4.0 * c - b) / 3.0;
    return (8.0 * bc - ab) / 7.0;
}

// theta_1 by the plain 50-term sine series, with q^{(n+1/2)^2} folded into the exponent so
// that sin((2n+1)v) cannot overflow for large Im v.
inline cplx theta1_50(double q, cplx v) {
    const cplx I(0.0, 1.0);
    double lq = std::log(q);
    cplx s = 0.0;
    for (int n = 0; n < 50; ++n) {
        double e = (n + 0.5) * (n + 0.5) * lq;
        cplx x = (2.0 * n + 1.0) * v;
        cplx t = (std::exp(e + I * x) - std::exp(e - I * x)) / (2.0 * I);
        s += (n & 1) ? -t : t;
    }
    return 2.0 * s;
}

inline double theta1p0_50(double q) {
    double s = 0.0;
    for (int n = 0; n < 50; ++n) {
        double t = std::pow(q, (n + 0.5) * (n + 0.5)) * (2.0 * n + 1.0);
        s += (n & 1) ? -t : t;
    }
    return 2.0 * s;
}

inline double theta2_50(double q) {
    double s = 0.0;
    for (int n = 0; n < 50; ++n) s += std::pow(q, (n + 0.5) * (n + 0.5));
    return 2.0 * s;
}

inline double theta3_50(double q) {
    double s = 1.0;
    for (int n = 1; n < 50; ++n) s += 2.0 * std::pow(q, double(n) * n);
    return s;
}

// eta1 from the Eisenstein series: eta1 w1 = (pi^2/12)(1 - 24 sum_n n q^2n/(1 - q^2n)).
inline double eta1_eisenstein(double w1, double q) {
    double s = 0.0;
    for (int n = 1; n < 200; ++n) {
        double q2 = std::pow(q, 2.0 * n);
        if (q2 < 1e-300) break;
        s += n * q2 / (1.0 - q2);
    }
    return pi * pi / (12.0 * w1) * (1.0 - 24.0 * s);
}

// Lattice data rebuilt from scratch: eta1 from the Eisenstein series, theta from the 50-term series.
struct Lat {
    double w1 = 1.0, w3i = 1.0, q = 0.0;
    cplx eta1;
    double th1p = 0.0;
};

inline Lat make_lat(double w1, double w3i) {
    Lat L;
    L.w1 = w1;
    L.w3i = w3i;
    L.q = std::exp(-pi * w3i / w1);
    L.eta1 = eta1_eisenstein(w1, L.q);
    L.th1p = theta1p0_50(L.q);
    return L;
}

inline cplx sigma_theta(const Lat& L, cplx z) {
    return (2.0 * L.w1 / pi) * std::exp(L.eta1 * z * z / (2.0 * L.w1)) * theta1_50(L.q, pi * z / (2.0 * L.w1)) / L.th1p;
}

// sn, cn, dn with the argument scaled so that w1 maps to K; modulus from theta constants, K and the
// functions themselves from Boost (Landen/AGM).
struct Jac {
    double sn, cn, dn;
};

inline Jac jacobi(double w1, double w3i, double z) {
    double q = std::exp(-pi * w3i / w1);
    double t2 = theta2_50(q), t3 = theta3_50(q);
    double k = t2 * t2 / (t3 * t3);
    double K = boost::math::ellint_1(k);
    Jac r;
    r.sn = boost::math::jacobi_elliptic(k, z * K / w1, &r.cn, &r.dn);
    return r;
}

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& wt) {
    x.assign(n, 0.0);
    wt.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1.0);
        x[i] = t;
        wt[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

// Elliptic number [x] = sigma(w x)/sigma(w) on the oracle lattice.
inline cplx en(const Lat& L, double w, cplx x) { return sigma_theta(L, w * x) / sigma_theta(L, w); }

// Term s of the balanced/unbalanced 3E2 series, every factor recomputed from sigma.
inline cplx e32_term(const Lat& L, double w, const cplx a[3], const cplx b[2], int s) {
    cplx bal = 1.0 + b[0] + b[1] - a[0] - a[1] - a[2];
    cplx M = L.eta1 * w * w * bal / (2.0 * L.w1);
    cplx t = std::exp(M * double(s) * double(s - 1));
    for (int i = 0; i < s; ++i) {
        t *= en(L, w, a[0] + double(i)) * en(L, w, a[1] + double(i)) * en(L, w, a[2] + double(i));
        t /= en(L, w, 1.0 + double(i)) * en(L, w, b[0] + double(i)) * en(L, w, b[1] + double(i));
    }
    return t;
}

// Monic P_n from the terminating 3E2 representation, coefficients ascending.
inline std::vector<cplx> lbp_P(const Lat& L, cplx alpha, cplx beta, cplx gamma, double w, int n) {
    cplx ah = alpha / w, bh = beta / w;
    double N = n;
    cplx B = std::exp(gamma * w * N);
    for (int i = 0; i < n; ++i) B *= en(L, w, -ah + double(i)) / en(L, w, ah + 1.0 + double(i));
    B *= en(L, w, ah * N + bh + N) / en(L, w, ah * N + bh);
    cplx a[3] = {-N, ah + 1.0, -(ah + 1.0) * N - bh + 1.0};
    cplx b[2] = {ah + 1.0 - N, -(ah + 1.0) * N - bh};
    std::vector<cplx> c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = B * e32_term(L, w, a, b, k) * std::exp(-gamma * w * double(k));
    return c;
}

// c_n = e^{gamma(w n + alpha)} sigma(w n + alpha + beta)/(sigma(w n + alpha) sigma(beta))
inline cplx moment(const Lat& L, cplx alpha, cplx beta, cplx gamma, double w, int n) {
    cplx x = w * double(n) + alpha;
    return std::exp(gamma * x) * sigma_theta(L, x + beta) / (sigma_theta(L, x) * sigma_theta(L, beta));
}

// Fully pivoted LU determinant.
inline cplx det(const Eigen::MatrixXcd& a) { return a.rows() == 0 ? cplx(1.0) : a.fullPivLu().determinant(); }

inline Eigen::MatrixXcd toeplitz(const std::vector<cplx>& c, int offset, int n, int j) {
    Eigen::MatrixXcd t(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) t(i, k) = c[offset + j + k - i];
    return t;
}

// Trapezoid for the Fourier coefficient over the period T = 2 j w1 on the line Im z = y.
inline cplx fourier_trapezoid(const Lat& L, cplx alpha, cplx beta, cplx gamma, int j, int n, int panels, double y = 0.0) {
    double T = 2.0 * j * L.w1;
    cplx kappa = std::exp(gamma * alpha) / sigma_theta(L, beta);
    cplx s = 0.0;
    for (int i = 0; i < panels; ++i) {
        cplx z(T * i / panels, y);
        s += kappa * sigma_theta(L, z + alpha + beta) / sigma_theta(L, z + alpha) * std::exp(gamma * z) *
             std::exp(cplx(0.0, -2.0 * pi * n / T) * z);
    }
    return s / double(panels);
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
        cplx x = k < a.size() ? a[k] : 0.0, y = k < b.size() ? b[k] : 0.0;
        m = std::max(m, std::abs(x - y));
    }
    return m;
}

inline double max_abs(const std::vector<cplx>& a) {
    double m = 0.0;
    for (auto& x : a) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace oracle
