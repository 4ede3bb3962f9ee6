#include "elbp/lattice.hpp"

#include <cmath>

namespace elbp {

namespace {

constexpr int kMaxTerms = 200;
constexpr double kStopRatio = 1e-18;

// Sum of the q-series for theta_i. Terms are bounded by q^{e(n)} * exp(m(n)|Im v|),
// which is log-concave in n, so once past the peak the bound only shrinks.
cplx theta_series(double q, int i, cplx v) {
    const double lq = std::log(q);
    const double y = std::abs(v.imag());
    cplx sum = 0.0;
    double peak = 0.0;
    bool half = (i == 1 || i == 2);
    for (int n = half ? 0 : 1; n < kMaxTerms; ++n) {
        double e = half ? (n + 0.5) * (n + 0.5) : double(n) * n;
        double freq = half ? 2.0 * n + 1.0 : 2.0 * n;
        double bound = std::exp(e * lq + freq * y);
        // q^e * exp(+-i f v), kept in one exponent so large |Im v| cannot overflow early
        cplx ep = std::exp(e * lq + kI * freq * v);
        cplx em = std::exp(e * lq - kI * freq * v);
        double sgn = (n & 1) ? -1.0 : 1.0;
        cplx t;
        switch (i) {
            case 1: t = sgn * (ep - em) / (2.0 * kI); break;
            case 2: t = 0.5 * (ep + em); break;
            case 3: t = 0.5 * (ep + em); break;
            default: t = sgn * 0.5 * (ep + em); break;
        }
        sum += t;
        if (bound > peak) {
            peak = bound;
        } else if (bound < kStopRatio * peak) {
            break;
        }
    }
    if (half) return 2.0 * sum;
    return 1.0 + 2.0 * sum;
}

double theta1_derivative_sum(double q, int power) {
    // sum (-1)^n q^{(n+1/2)^2} (2n+1)^power
    double s = 0.0, peak = 0.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        double t = std::pow(q, (n + 0.5) * (n + 0.5)) * std::pow(2.0 * n + 1.0, power);
        s += (n & 1) ? -t : t;
        peak = std::max(peak, t);
        if (t < kStopRatio * peak && n > 2) break;
    }
    return s;
}

}  // namespace

Lattice make_lattice(double omega1, double omega3_imag) {
    if (!(omega1 > 0.0) || !(omega3_imag > 0.0))
        throw DomainError("make_lattice: half-periods must be positive");
    Lattice L;
    L.omega1 = omega1;
    L.omega3 = cplx(0.0, omega3_imag);
    L.nome_h = std::exp(-kPi * omega3_imag / omega1);
    if (L.nome_h >= 1.0 - 1e-12) throw ConditioningError("make_lattice: nome too close to 1");

    const double q = L.nome_h;
    double d1 = 2.0 * theta1_derivative_sum(q, 1);
    double d3 = -2.0 * theta1_derivative_sum(q, 3);
    L.theta1_prime0 = d1;
    L.eta1 = -kPi * kPi * d3 / (12.0 * omega1 * d1);
    L.eta3 = (L.eta1 * L.omega3 - kI * (kPi / 2.0)) / omega1;

    L.theta2_0 = theta_series(q, 2, 0.0).real();
    L.theta3_0 = theta_series(q, 3, 0.0).real();
    L.theta4_0 = theta_series(q, 4, 0.0).real();
    L.modulus_k = (L.theta2_0 * L.theta2_0) / (L.theta3_0 * L.theta3_0);
    L.modulus_kp = (L.theta4_0 * L.theta4_0) / (L.theta3_0 * L.theta3_0);
    return L;
}

cplx theta(const Lattice& lat, int i, cplx v) {
    if (i < 1 || i > 4) throw UsageError("theta: index must be 1..4");
    return theta_series(lat.nome_h, i, v);
}

cplx sigma(const Lattice& lat, cplx z) {
    const double w1 = lat.omega1;
    cplx v = kPi * z / (2.0 * w1);
    cplx ex = lat.eta1 * z * z / (2.0 * w1);
    if (std::abs(ex.real()) > 700.0 || std::abs(v.imag()) > 300.0)
        throw RangeError("sigma: argument too far from the origin");
    cplx r = (2.0 * w1 / kPi) * std::exp(ex) * theta_series(lat.nome_h, 1, v) / lat.theta1_prime0;
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) throw RangeError("sigma: overflow");
    return r;
}

cplx legendre_residual(const Lattice& lat) {
    return lat.eta1 * lat.omega3 - lat.eta3 * lat.omega1 - kI * (kPi / 2.0);
}

SnCnDn jacobi_sn_cn_dn(const Lattice& lat, cplx z) {
    cplx v = kPi * z / (2.0 * lat.omega1);
    const double q = lat.nome_h;
    cplx t1 = theta_series(q, 1, v);
    cplx t2 = theta_series(q, 2, v);
    cplx t3 = theta_series(q, 3, v);
    cplx t4 = theta_series(q, 4, v);
    double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1.0});
    if (std::abs(t4) < 1e-8 * scale) throw SingularityError("jacobi_sn_cn_dn: argument at a pole");
    SnCnDn r;
    r.sn = (lat.theta3_0 / lat.theta2_0) * t1 / t4;
    r.cn = (lat.theta4_0 / lat.theta2_0) * t2 / t4;
    r.dn = (lat.theta4_0 / lat.theta3_0) * t3 / t4;
    return r;
}

SnCnDn jacobi_sn_cn_dn(const Lattice& lat, double z) { return jacobi_sn_cn_dn(lat, cplx(z, 0.0)); }

double lattice_distance(const Lattice& lat, cplx z) {
    double p1 = 2.0 * lat.omega1, p3 = 2.0 * lat.omega3.imag();
    double m1 = std::round(z.real() / p1), m3 = std::round(z.imag() / p3);
    return std::abs(z - cplx(m1 * p1, m3 * p3));
}

double lattice_K(const Lattice& lat) { return 0.5 * kPi * lat.theta3_0 * lat.theta3_0; }

}  // namespace elbp
