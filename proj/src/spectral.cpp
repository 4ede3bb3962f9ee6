#include "elbp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace elbp {

namespace {

void require_periodic(const ModelParams& p, const char* who) {
    if (periodicity_residual(p) > 1e-10)
        throw UsageError(std::string(who) + ": periodicity condition j(omega1 gamma + eta1 beta) = i pi m violated");
}

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

cplx moment_kappa(const ModelParams& p) { return std::exp(p.gamma * p.alpha) / sigma(p.lat, p.beta); }

cplx fourier_R0(const ModelParams& p, cplx kappa) {
    const Lattice& L = p.lat;
    return kappa * sigma(L, p.beta) / (2.0 * L.omega1) * std::exp(p.alpha * p.beta * L.eta1 / L.omega1);
}

cplx fourier_A_closed(const ModelParams& p, int n, cplx kappa) {
    require_periodic(p, "fourier_A_closed");
    if (((n - p.m) % p.j + p.j) % p.j != 0) return 0.0;
    long k = floor_div(n - p.m, p.j);
    const Lattice& L = p.lat;
    double lh = std::log(L.nome_h);
    cplx E = std::exp(-kI * kPi * p.beta / L.omega1);
    cplx pre = 2.0 * kPi * kI * fourier_R0(p, kappa) * std::exp(-kI * kPi * p.alpha0 * double(k) / L.omega1);
    cplx val;
    if (k > 0) {
        // multiply through by h^{2k} so nothing overflows
        cplx den = std::exp(2.0 * double(k) * lh) - E;
        if (std::abs(den) < 1e-12 * std::max(1.0, std::abs(E)))
            throw SingularityError("fourier_A_closed: weight denominator vanishes (pole on the circle)", n);
        val = pre * std::exp((2.0 - 2.0 * p.nu) * double(k) * lh) / den;
    } else {
        cplx den = 1.0 - E * std::exp(-2.0 * double(k) * lh);
        if (std::abs(den) < 1e-12) throw SingularityError("fourier_A_closed: weight denominator vanishes", n);
        val = pre * std::exp(-2.0 * p.nu * double(k) * lh) / den;
    }
    return val;
}

cplx fourier_A_closed(const ModelParams& p, int n) { return fourier_A_closed(p, n, moment_kappa(p)); }

std::pair<double, double> pole_strip(const ModelParams& p) {
    double per = 2.0 * p.lat.omega3.imag();
    double y0 = std::fmod(-p.alpha.imag(), per);
    if (y0 < 0) y0 += per;
    return {per - y0, y0};
}

FourierQuad fourier_A_quadrature(const ModelParams& p, int n, int panels, double shift_im, cplx kappa) {
    if (panels < 1) throw DomainError("fourier_A_quadrature: panels must be positive");
    const Lattice& L = p.lat;
    double T = 2.0 * double(p.j) * L.omega1;
    FourierQuad out;
    double per = 2.0 * L.omega3.imag();
    double y0 = std::fmod(-p.alpha.imag() - shift_im, per);
    if (y0 < 0) y0 += per;
    out.pole_warning = std::min(y0, per - y0) < 1e-6;
    std::vector<cplx> terms(panels);
    for (int i = 0; i < panels; ++i) {
        cplx z(T * double(i) / double(panels), shift_im);
        cplx f = kappa * sigma(L, z + p.alpha + p.beta) / sigma(L, z + p.alpha) * std::exp(p.gamma * z);
        terms[i] = f * std::exp(-2.0 * kPi * kI * double(n) * z / T);
    }
    out.value = pairwise_sum(terms) / double(panels);
    return out;
}

FourierQuad fourier_A_quadrature(const ModelParams& p, int n, int panels, double shift_im) {
    return fourier_A_quadrature(p, n, panels, shift_im, moment_kappa(p));
}

FourierQuad fourier_A_quadrature_oracle(const ModelParams& p, int n, int panels) {
    auto [v1, v2] = pole_strip(p);
    double y = 0.0;
    if (n > p.m) y = -0.75 * v1;
    if (n < p.m) y = 0.75 * v2;
    return fourier_A_quadrature(p, n, panels, y);
}

std::vector<cplx> spectral_points(const ModelParams& p, int S) {
    std::vector<cplx> z;
    std::vector<std::pair<double, int>> args;
    for (int s = -S; s <= S; ++s) {
        double th = kPi * double(s) * p.w / (double(p.j) * p.lat.omega1);
        z.push_back(std::polar(1.0, th));
        double a = std::fmod(th, 2.0 * kPi);
        if (a < 0) a += 2.0 * kPi;
        args.push_back({a, s});
    }
    std::sort(args.begin(), args.end());
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i + 1].first - args[i].first < 1e-10)
            throw DomainError("spectral_points: z_" + std::to_string(args[i].second) + " and z_" +
                              std::to_string(args[i + 1].second) + " coincide (w commensurate with omega1)");
    if (args.size() > 1 && args.front().first + 2.0 * kPi - args.back().first < 1e-10)
        throw DomainError("spectral_points: wrap-around coincidence (w commensurate with omega1)");
    return z;
}

TruncationChoice choose_truncation(const ModelParams& p, double tol) {
    require_periodic(p, "choose_truncation");
    if (!(p.nu > 0.0 && p.nu < 1.0)) throw DomainError("choose_truncation: need 0 < nu < 1");
    TruncationChoice t;
    t.rho = std::pow(p.lat.nome_h, 2.0 * std::min(p.nu, 1.0 - p.nu));
    double C = 0.0;
    for (int k = -3; k <= 3; ++k)
        C = std::max(C, std::abs(fourier_A_closed(p, p.m + p.j * k)) * std::pow(t.rho, -std::abs(k)));
    int K = 0;
    auto bound = [&](int kk) { return 2.0 * C * std::pow(t.rho, kk + 1) / (1.0 - t.rho); };
    while (bound(K) >= tol && K < 4000) ++K;
    t.S = p.j * K + std::abs(p.m);
    t.tail_bound = bound(K);
    return t;
}

SpectralMeasure make_measure(const ModelParams& p, int S) {
    require_periodic(p, "make_measure");
    SpectralMeasure m;
    m.S = S;
    auto z = spectral_points(p, S);
    for (int s = -S; s <= S; ++s) {
        if (((s - p.m) % p.j + p.j) % p.j != 0) continue;
        m.s.push_back(s);
        m.points.push_back(z[s + S]);
        m.weights.push_back(fourier_A_closed(p, s));
    }
    if (p.nu > 0.0 && p.nu < 1.0) {
        double rho = std::pow(p.lat.nome_h, 2.0 * std::min(p.nu, 1.0 - p.nu));
        int K = (S - std::abs(p.m)) / p.j;
        double C = 0.0;
        for (int k = -3; k <= 3; ++k)
            C = std::max(C, std::abs(fourier_A_closed(p, p.m + p.j * k)) * std::pow(rho, -std::abs(k)));
        m.tail_bound = 2.0 * C * std::pow(rho, K + 1) / (1.0 - rho);
    }
    return m;
}

RescaledRadius rescaled_radius(const ModelParams& p, int j, int m) {
    if (j < 1) throw DomainError("rescaled_radius: j must be positive");
    if (std::gcd(j, std::abs(m)) != 1 && !(j == 1 && m == 0))
        throw DomainError("rescaled_radius: j and m must be coprime");
    RescaledRadius r;
    r.gamma_solved = periodic_gamma(p.lat, p.beta, j, m);
    r.chi = r.gamma_solved - p.gamma;
    r.q = std::exp(p.w * r.chi);
    r.r = 1.0 / std::abs(r.q);
    return r;
}

SpectralMeasure make_rescaled_measure(const ModelParams& p, int S) {
    RescaledRadius rr = rescaled_radius(p, p.j, p.m);
    ModelParams pp = with_gamma(p, rr.gamma_solved);
    SpectralMeasure m = make_measure(pp, S);
    cplx eps = std::exp(rr.chi * p.alpha);
    for (auto& a : m.weights) a /= eps;
    for (auto& z : m.points) z /= rr.q;
    m.tail_bound /= std::abs(eps);
    m.q = rr.q;
    m.circle_radius = rr.r;
    return m;
}

cplx reconstruct_moment(const SpectralMeasure& m, int n) {
    std::vector<cplx> t(m.weights.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = m.weights[i] * std::pow(m.points[i], n);
    return pairwise_sum(t);
}

BiorthResidual biorthogonality_residual(const SpectralMeasure& m, const Poly<cplx>& P, const Poly<cplx>& Q,
                                        cplx h_if_diagonal) {
    std::vector<cplx> t(m.weights.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = m.weights[i] * P(m.points[i]) * Q(1.0 / m.points[i]);
    BiorthResidual r;
    r.value = pairwise_sum(t) - h_if_diagonal;
    double l1p = 0, l1q = 0;
    double rad = m.circle_radius;
    for (int k = 0; k <= P.degree(); ++k) l1p += std::abs(P.c[k]) * std::pow(rad, k);
    for (int k = 0; k <= Q.degree(); ++k) l1q += std::abs(Q.c[k]) * std::pow(rad, -k);
    r.tail_bound = m.tail_bound * l1p * l1q;
    return r;
}

PositivityInfo positivity_classify(const ModelParams& p) {
    PositivityInfo info;
    if (periodicity_residual(p) > 1e-10) {
        info.reason = "gamma is not periodic for (j, m)";
        return info;
    }
    if (!(p.nu > 0.0 && p.nu < 1.0)) {
        info.reason = "nu outside (0, 1)";
        return info;
    }
    const Lattice& L = p.lat;
    double per = 2.0 * L.omega1;
    double tol = 1e-10 * per;
    bool alpha_ok = p.alpha0 < tol || per - p.alpha0 < tol;
    double jb = (p.beta.real() / L.omega1 - 1.0) / 2.0;
    bool beta_ok = std::abs(jb - std::round(jb)) < 1e-10;
    info.kappa1 = std::exp(kPi * p.beta.imag() / L.omega1);
    if (!alpha_ok) info.reason = "alpha0 is not a multiple of 2 omega1";
    else if (!beta_ok) info.reason = "Re(beta) is not an odd multiple of omega1";
    if (!alpha_ok || !beta_ok) return info;
    info.positive = true;
    info.J0 = std::lround(-p.alpha.real() / per);
    info.J1 = std::lround(jb);
    if ((2 * p.m) % p.j == 0) {
        bool sym = true;
        for (int k = 0; k <= 3; ++k) {
            int n = p.m + p.j * k;
            cplx a = fourier_A_closed(p, n), b = fourier_A_closed(p, -n);
            if (std::abs(a - b) > 1e-10 * std::max(std::abs(a), 1e-300)) sym = false;
        }
        info.symmetric = sym;
        if (sym) info.subcase = p.j == 1 ? "dn" : "cn";
    }
    return info;
}

std::vector<cplx> normalized_weights(const ModelParams& p, int kmax) {
    cplx a0 = fourier_A_closed(p, p.m);
    if (a0 == 0.0) throw DegenerateError("normalized_weights: A_m vanishes");
    std::vector<cplx> r;
    for (int k = -kmax; k <= kmax; ++k) r.push_back(fourier_A_closed(p, p.m + p.j * k) / a0);
    return r;
}

ModelParams dn_params(const Lattice& lat, double w) {
    return make_params(lat, -lat.omega3, cplx(lat.omega1, 0.0), -lat.eta1, w, 1, 0);
}

ModelParams cn_params(const Lattice& lat, double w) {
    return make_params(lat, -lat.omega3, lat.omega1 + lat.omega3, -lat.eta1 - lat.eta3, w, 2, 1);
}

cplx cndn_reflection(const Lattice& lat, double w, CnDnCase c, int n) {
    SnCnDn v = jacobi_sn_cn_dn(lat, w * double(n + 1));
    bool even = n % 2 == 0;
    if (c == CnDnCase::dn) return even ? v.dn : -v.cn;
    return even ? v.cn : -v.dn;
}

}  // namespace elbp
