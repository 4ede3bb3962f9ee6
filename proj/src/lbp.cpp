#include "elbp/lbp.hpp"

#include <cmath>

namespace elbp {

namespace {

cplx en(const EllNumberCtx& ctx, cplx x) { return ell_number(ctx, x); }

// [x] vanishes exactly when w x is a lattice point
cplx guarded(const EllNumberCtx& ctx, cplx x, const char* what, int n) {
    if (lattice_distance(ctx.lat, ctx.w * x) < kLatticeTol) throw SingularityError(what, n);
    return ell_number(ctx, x);
}

}  // namespace

cplx closed_d(const ModelParams& p, int n) {
    EllNumberCtx c = ctx_of(p);
    cplx ah = p.alpha / p.w, bh = p.beta / p.w;
    double N = n;
    cplx d1 = guarded(c, ah + N + 1.0, "closed_d: [alpha+n+1] vanishes", n);
    cplx d2 = guarded(c, bh + (ah + 1.0) * N, "closed_d: [beta+(alpha+1)n] vanishes", n);
    cplx d3 = guarded(c, bh + ah * (N + 1.0), "closed_d: [beta+alpha(n+1)] vanishes", n);
    return std::exp(p.gamma * p.w) * en(c, ah - N) * en(c, bh + (ah + 1.0) * (N + 1.0)) * en(c, bh + ah * N) /
           (d1 * d2 * d3);
}

cplx closed_b(const ModelParams& p, int n) {
    if (n == 0) return 0.0;
    EllNumberCtx c = ctx_of(p);
    cplx ah = p.alpha / p.w, bh = p.beta / p.w;
    double N = n;
    cplx d1 = guarded(c, bh + (ah + 1.0) * N, "closed_b: [beta+(alpha+1)n] vanishes", n);
    cplx d2 = guarded(c, bh + ah * N, "closed_b: [beta+alpha n] vanishes", n);
    cplx d3 = guarded(c, ah + N, "closed_b: [alpha+n] vanishes", n);
    cplx d4 = guarded(c, ah + N + 1.0, "closed_b: [alpha+n+1] vanishes", n);
    cplx nn = en(c, N);
    return -std::exp(p.gamma * p.w) * nn * nn * en(c, bh + (ah + 1.0) * (N + 1.0)) * en(c, bh + ah * (N - 1.0)) /
           (d1 * d2 * d3 * d4);
}

RecurrenceCoeffs closed_coeffs(const ModelParams& p, int nmax) {
    RecurrenceCoeffs rc;
    for (int n = 0; n <= nmax; ++n) {
        rc.d.push_back(closed_d(p, n));
        rc.b.push_back(closed_b(p, n));
    }
    return rc;
}

RecurrenceCoeffs coeffs_from_moments(const MomentSeq& ms, int nmax) {
    RecurrenceCoeffs rc;
    std::vector<cplx> D(nmax + 2), T(nmax + 2);
    for (int n = 0; n <= nmax + 1; ++n) {
        D[n] = toeplitz_delta(ms, n, 0);
        T[n] = toeplitz_delta(ms, n, 1);
        if (n > 0 && (D[n] == 0.0 || T[n] == 0.0)) throw DegenerateError("coeffs_from_moments: singular Toeplitz", n);
    }
    for (int n = 0; n <= nmax; ++n) {
        rc.d.push_back(T[n + 1] * D[n] / (T[n] * D[n + 1]));
        rc.b.push_back(n == 0 ? cplx(0.0) : T[n + 1] * D[n - 1] / (T[n] * D[n]));
    }
    return rc;
}

std::vector<Poly<cplx>> recurrence_family(const RecurrenceCoeffs& rc, int nmax) {
    if (nmax > static_cast<int>(rc.d.size()))
        throw RangeError("recurrence_P: not enough recurrence coefficients");
    std::vector<Poly<cplx>> P;
    P.push_back(Poly<cplx>::one());
    if (nmax == 0) return P;
    P.push_back(Poly<cplx>(std::vector<cplx>{-rc.d[0], 1.0}, true));
    for (int n = 1; n < nmax; ++n) {
        // P_{n+1} = (z - d_n) P_n + z b_n P_{n-1}
        Poly<cplx> next = P[n].shifted_up() - rc.d[n] * P[n] + rc.b[n] * P[n - 1].shifted_up();
        next.c.resize(n + 2);
        next.c[n + 1] = 1.0;
        next.monic = true;
        P.push_back(next);
    }
    return P;
}

Poly<cplx> recurrence_P(const RecurrenceCoeffs& rc, int n) { return recurrence_family(rc, n)[n]; }

cplx closed_B(const ModelParams& p, int n) {
    if (n == 0) return 1.0;
    EllNumberCtx c = ctx_of(p);
    cplx ah = p.alpha / p.w, bh = p.beta / p.w;
    double N = n;
    ScaledValue r = ell_pochhammer_scaled(c, -ah, n);
    ScaledValue den = ell_pochhammer_scaled(c, ah + 1.0, n);
    for (int i = 0; i < n; ++i) guarded(c, ah + 1.0 + double(i), "closed_B: [alpha+1]_n vanishes", n);
    r.div(den);
    cplx last = guarded(c, ah * N + bh, "closed_B: [alpha n + beta] vanishes", n);
    r.mul(en(c, ah * N + bh + N) / last);
    r.mul(std::exp(p.gamma * p.w * N));
    return r.value();
}

Poly<cplx> closed_P_3E2(const ModelParams& p, int n) {
    if (n == 0) return Poly<cplx>::one();
    EllNumberCtx c = ctx_of(p);
    cplx ah = p.alpha / p.w, bh = p.beta / p.w;
    double N = n;
    E32Params e{{-N, ah + 1.0, -(ah + 1.0) * N - bh + 1.0}, {ah + 1.0 - N, -(ah + 1.0) * N - bh}};
    auto t = e3_2_terms(c, e, n);
    cplx B = closed_B(p, n);
    cplx zs = std::exp(-p.gamma * p.w);
    std::vector<cplx> coef(n + 1);
    cplx pw = 1.0;
    for (int k = 0; k <= n; ++k) {
        coef[k] = B * t[k] * pw;
        pw *= zs;
    }
    if (std::abs(coef[n] - 1.0) > 1e-6)
        throw DegenerateError("closed_P_3E2: leading coefficient is not 1 (ill-conditioned parameters)", n);
    return Poly<cplx>(std::move(coef), true);
}

Poly<cplx> closed_Q_3E2(const ModelParams& p, int n) { return closed_P_3E2(reflect(p), n); }

Poly<cplx> partner_Q(const std::vector<Poly<cplx>>& P, int n) {
    if (n + 1 >= static_cast<int>(P.size())) throw RangeError("partner_Q: needs P_{n+1}");
    const auto& a = P[n + 1];
    const auto& b = P[n];
    cplx p0 = a.c[0];
    double scale = std::max(max_abs(a), 1.0);
    if (std::abs(p0) < 1e-12 * scale) throw DegenerateError("partner_Q: P_{n+1}(0) vanishes", n);
    std::vector<cplx> q(n + 1);
    for (int i = 0; i <= n; ++i) {
        cplx x = a.coef(n - i);
        cplx y = (n - 1 - i >= 0) ? b.coef(n - 1 - i) : cplx(0.0);
        q[i] = (x - y) / p0;
    }
    q[n] = 1.0;
    return Poly<cplx>(std::move(q), true);
}

BaxterStep baxter_coeffs(const std::vector<Poly<cplx>>& P, const std::vector<Poly<cplx>>& Q, int n) {
    if (n + 1 >= static_cast<int>(P.size()) || n + 1 >= static_cast<int>(Q.size()))
        throw RangeError("baxter_coeffs: needs index n+1");
    BaxterStep s;
    s.e1 = -P[n + 1].c[0];
    s.e2 = -Q[n + 1].c[0];
    cplx prod = s.e1 * s.e2;
    if (std::abs(s.e1) < 1e-14) throw DegenerateError("baxter_coeffs: e1 vanishes", n);
    if (std::abs(s.e2) < 1e-14) throw DegenerateError("baxter_coeffs: e2 vanishes", n);
    if (std::abs(1.0 - prod) < 1e-14) throw DegenerateError("baxter_coeffs: 1 - e1 e2 vanishes", n);
    Poly<cplx> rp = P[n + 1] - (P[n].shifted_up() - s.e1 * Q[n].reciprocal());
    Poly<cplx> rq = Q[n + 1] - (Q[n].shifted_up() - s.e2 * P[n].reciprocal());
    s.residual_P = max_abs(rp) / std::max(1.0, max_abs(P[n + 1]));
    s.residual_Q = max_abs(rq) / std::max(1.0, max_abs(Q[n + 1]));
    return s;
}

double szego_residual(const std::vector<Poly<cplx>>& P, int n) {
    cplx a = -P[n + 1].c[0];
    Poly<cplx> r = P[n + 1] - (P[n].shifted_up() - a * conj(P[n]).reciprocal());
    return max_abs(r) / std::max(1.0, max_abs(P[n + 1]));
}

Poly<cplx> rescale_P(const Poly<cplx>& P, cplx q) {
    if (q == 0.0) throw DomainError("rescale: q must be nonzero");
    int n = P.degree();
    std::vector<cplx> r(n + 1);
    for (int k = 0; k <= n; ++k) r[k] = P.c[k] * std::pow(q, n - k);
    if (P.monic) r[n] = 1.0;
    return Poly<cplx>(std::move(r), P.monic);
}

Poly<cplx> rescale_Q(const Poly<cplx>& Q, cplx q) {
    if (q == 0.0) throw DomainError("rescale: q must be nonzero");
    int n = Q.degree();
    std::vector<cplx> r(n + 1);
    for (int k = 0; k <= n; ++k) r[k] = Q.c[k] * std::pow(q, k - n);
    if (Q.monic) r[n] = 1.0;
    return Poly<cplx>(std::move(r), Q.monic);
}

RecurrenceCoeffs rescale_coeffs(const RecurrenceCoeffs& rc, cplx q) {
    RecurrenceCoeffs r = rc;
    for (auto& x : r.d) x *= q;
    for (auto& x : r.b) x *= q;
    return r;
}

Poly<cplx> d_operator_apply(const std::function<cplx(int)>& mu, const Poly<cplx>& f) {
    int n = f.degree();
    if (n == 0) return Poly<cplx>();
    std::vector<cplx> r(n);
    for (int k = 1; k <= n; ++k) r[k - 1] = mu(k) * f.c[k];
    return Poly<cplx>(std::move(r));
}

Poly<cplx> d_operator_apply(const EllNumberCtx& ctx, cplx alpha, const Poly<cplx>& f) {
    return d_operator_apply([&](int k) { return mu_coeff(ctx, alpha, k); }, f);
}

}  // namespace elbp
