#include "elbp/moments.hpp"

#include <cmath>
#include <limits>

namespace elbp {

ModelParams make_params(const Lattice& lat, cplx alpha, cplx beta, cplx gamma, double w, int j, int m) {
    if (w == 0.0) throw DomainError("make_params: w must be nonzero");
    if (j < 1) throw DomainError("make_params: j must be positive");
    for (int k = -64; k <= 64; ++k)
        if (std::abs(alpha - w * double(k)) < 1e-10)
            throw DegenerateError("make_params: alpha is an integer multiple of w", k);
    ModelParams p;
    p.lat = lat;
    p.alpha = alpha;
    p.beta = beta;
    p.gamma = gamma;
    p.w = w;
    p.j = j;
    p.m = m;
    double period = 2.0 * lat.omega1;
    double a0 = std::fmod(-alpha.real(), period);
    if (a0 < 0) a0 += period;
    if (period - a0 < 1e-13 * period) a0 = 0.0;
    p.alpha0 = a0;
    p.nu = -alpha.imag() / (2.0 * lat.omega3.imag());
    return p;
}

cplx periodic_gamma(const Lattice& lat, cplx beta, int j, int m) {
    return (kI * kPi * double(m) / double(j) - lat.eta1 * beta) / lat.omega1;
}

double periodicity_residual(const ModelParams& p) {
    return std::abs(double(p.j) * (p.lat.omega1 * p.gamma + p.lat.eta1 * p.beta) - kI * kPi * double(p.m));
}

ModelParams reflect(const ModelParams& p) {
    return make_params(p.lat, -p.alpha, -p.beta, -p.gamma, p.w, p.j, p.m);
}

ModelParams with_alpha(const ModelParams& p, cplx alpha) {
    return make_params(p.lat, alpha, p.beta, p.gamma, p.w, p.j, p.m);
}

ModelParams with_beta(const ModelParams& p, cplx beta) {
    return make_params(p.lat, p.alpha, beta, p.gamma, p.w, p.j, p.m);
}

ModelParams with_gamma(const ModelParams& p, cplx gamma) {
    return make_params(p.lat, p.alpha, p.beta, gamma, p.w, p.j, p.m);
}

EllNumberCtx ctx_of(const ModelParams& p) { return EllNumberCtx{p.lat, p.w, sigma(p.lat, p.w)}; }

std::string origin_name(Origin o) {
    switch (o) {
        case Origin::elliptic: return "elliptic";
        case Origin::rational: return "rational";
        case Origin::spectral: return "spectral-reconstructed";
        default: return "user";
    }
}

cplx MomentSeq::operator[](int n) const {
    if (!has(n)) throw RangeError("moment c_" + std::to_string(n) + " not in table");
    return values[n - nmin];
}

MomentSeq make_moments(const std::function<cplx(int)>& f, int lo, int hi, Origin o) {
    MomentSeq ms;
    ms.nmin = lo;
    ms.origin = o;
    for (int n = lo; n <= hi; ++n) ms.values.push_back(f(n));
    return ms;
}

MomentSeq shifted(const MomentSeq& ms, int j) {
    MomentSeq r = ms;
    r.nmin = ms.nmin - j;
    return r;
}

MomentSeq reflected(const MomentSeq& ms) {
    MomentSeq r;
    r.origin = ms.origin;
    r.nmin = -ms.nmax();
    r.values.assign(ms.values.rbegin(), ms.values.rend());
    return r;
}

MomentSeq scaled_geometric(const MomentSeq& ms, cplx q) {
    MomentSeq r = ms;
    for (int n = ms.nmin; n <= ms.nmax(); ++n) r.values[n - ms.nmin] *= std::pow(q, n);
    return r;
}

cplx elliptic_moment(const ModelParams& p, int n) {
    const Lattice& L = p.lat;
    cplx den = sigma(L, p.w * double(n) + p.alpha);
    cplx sb = sigma(L, p.beta);
    if (lattice_distance(L, p.w * double(n) + p.alpha) < kLatticeTol)
        throw SingularityError("elliptic_moment: w n + alpha at a lattice point", n);
    if (lattice_distance(L, p.beta) < kLatticeTol) throw SingularityError("elliptic_moment: beta at a lattice point", n);
    cplx e = std::exp(p.gamma * p.w * double(n) + p.gamma * p.alpha);
    return e * sigma(L, p.w * double(n) + p.beta + p.alpha) / (den * sb);
}

MomentSeq elliptic_moments(const ModelParams& p, int N) {
    return make_moments([&](int n) { return elliptic_moment(p, n); }, -N, N, Origin::elliptic);
}

DetResult lu_det(const Eigen::MatrixXcd& a) {
    DetResult r;
    if (a.rows() == 0) {
        r.value = 1.0;
        return r;
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    r.value = lu.determinant();
    r.rcond = lu.rcond();
    r.reliable = std::numeric_limits<double>::epsilon() / std::max(r.rcond, 1e-300) < 1e-6;
    return r;
}

namespace {

Eigen::MatrixXcd toeplitz_matrix(const MomentSeq& ms, int n, int j) {
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) a(i, k) = ms[j + k - i];
    return a;
}

// Expand the bordered determinant with rows c_{j+k-i} (i < n) and last row z^k along the last row.
std::vector<cplx> bordered_coefficients(const MomentSeq& ms, int n, int j) {
    std::vector<cplx> out(n + 1);
    if (n == 0) {
        out[0] = 1.0;
        return out;
    }
    Eigen::MatrixXcd full(n, n + 1);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= n; ++k) full(i, k) = ms[j + k - i];
    for (int k = 0; k <= n; ++k) {
        Eigen::MatrixXcd minor(n, n);
        for (int col = 0, c = 0; col <= n; ++col) {
            if (col == k) continue;
            minor.col(c++) = full.col(col);
        }
        double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
        out[k] = sign * lu_det(minor).value;
    }
    return out;
}

// Largest entry modulus of the n x n Toeplitz block with entries c_{k-i}.
double entry_scale(const MomentSeq& ms, int n) {
    double s = 0.0;
    for (int i = 1 - n; i <= n - 1; ++i) s = std::max(s, std::abs(ms[i]));
    return std::max(s, 1e-300);
}

}  // namespace

DetResult toeplitz_delta_ex(const MomentSeq& ms, int n, int j) {
    if (n < 0) throw DomainError("toeplitz_delta: negative order");
    if (n == 0) return DetResult{1.0, 1.0, true};
    for (int i = j - n + 1; i <= j + n - 1; ++i)
        if (!ms.has(i)) throw RangeError("toeplitz_delta: moment c_" + std::to_string(i) + " missing");
    return lu_det(toeplitz_matrix(ms, n, j));
}

cplx toeplitz_delta(const MomentSeq& ms, int n, int j) { return toeplitz_delta_ex(ms, n, j).value; }

Eigen::MatrixXcd frobenius_matrix(const Lattice& lat, const std::vector<cplx>& u, const std::vector<cplx>& v, cplx beta,
                                  cplx gamma1, cplx gamma2, int n) {
    Eigen::MatrixXcd g(n, n);
    cplx sb = sigma(lat, beta);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            g(i, k) = sigma(lat, u[i] + v[k] + beta) * std::exp(gamma1 * u[i] + gamma2 * v[k]) /
                      (sigma(lat, u[i] + v[k]) * sb);
    return g;
}

cplx frobenius_H(const Lattice& lat, const std::vector<cplx>& u, const std::vector<cplx>& v, cplx beta, cplx gamma1,
                 cplx gamma2, int n) {
    if (static_cast<int>(u.size()) < n || static_cast<int>(v.size()) < n)
        throw DomainError("frobenius_H: need n entries in u and v");
    if (n == 0) return 1.0;
    cplx U = 0.0, V = 0.0;
    for (int i = 0; i < n; ++i) {
        U += u[i];
        V += v[i];
    }
    ScaledValue num, den;
    num.mul(sigma(lat, U + V + beta));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < i; ++k) {
            num.mul(sigma(lat, u[i] - u[k]));
            num.mul(sigma(lat, v[i] - v[k]));
        }
    den.mul(sigma(lat, beta));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            cplx s = sigma(lat, u[i] + v[k]);
            if (lattice_distance(lat, u[i] + v[k]) < kLatticeTol)
                throw DegenerateError("frobenius_H: u_" + std::to_string(i) + " + v_" + std::to_string(k) +
                                          " is a lattice point",
                                      i * n + k);
            den.mul(s);
        }
    num.div(den);
    return num.value() * std::exp(gamma1 * U + gamma2 * V);
}

Poly<cplx> det_poly_P(const MomentSeq& ms, int n) {
    if (n == 0) return Poly<cplx>::one();
    DetResult D = toeplitz_delta_ex(ms, n, 0);
    double scale = entry_scale(ms, n);
    if (std::abs(D.value) < 1e-12 * scale) throw DegenerateError("det_poly_P: Delta_n vanishes", n);
    auto c = bordered_coefficients(ms, n, 0);
    for (int k = 0; k < n; ++k) c[k] /= D.value;
    c[n] = 1.0;
    return Poly<cplx>(std::move(c), true);
}

Poly<cplx> det_poly_Q(const MomentSeq& ms, int n) { return det_poly_P(reflected(ms), n); }

Poly<cplx> sigma_poly(const MomentSeq& ms, int n, int j) { return Poly<cplx>(bordered_coefficients(ms, n, j)); }

cplx norm_h(const MomentSeq& ms, int n) {
    if (n == 0) return ms[0];
    cplx dn = toeplitz_delta(ms, n, 0);
    double scale = entry_scale(ms, n);
    if (std::abs(dn) < 1e-12 * scale) throw DegenerateError("norm_h: Delta_n vanishes", n);
    return toeplitz_delta(ms, n + 1, 0) / dn;
}

cplx h_closed(const ModelParams& p, int n) {
    EllNumberCtx ctx = ctx_of(p);
    const Lattice& L = p.lat;
    cplx ah = p.alpha / p.w;
    ScaledValue r;
    r.mul(std::exp(p.gamma * p.alpha) / sigma(L, p.alpha));
    r.mul(sigma(L, p.alpha * double(n + 1) + p.beta));
    r.div(sigma(L, p.alpha * double(n) + p.beta));
    ScaledValue f = ell_pochhammer_scaled(ctx, 1.0, n);
    r.mul(f);
    r.mul(f);
    r.div(ell_pochhammer_scaled(ctx, 1.0 - ah, n));
    r.div(ell_pochhammer_scaled(ctx, 1.0 + ah, n));
    return r.value();
}

}  // namespace elbp
