#include "elbp/series.hpp"

#include <cmath>
#include <string>

namespace elbp {

EllNumberCtx make_ctx(const Lattice& lat, double w, int bound) {
    if (w == 0.0 || !std::isfinite(w)) throw DomainError("make_ctx: step w must be nonzero");
    for (int n1 = 1; n1 <= bound; ++n1)
        for (int n2 = -bound; n2 <= bound; ++n2)
            if (std::abs(w * n1 - lat.omega1 * n2) < 1e-10)
                throw DomainError("make_ctx: w is commensurate with omega1 (w*" + std::to_string(n1) + " = omega1*" +
                                  std::to_string(n2) + ")");
    EllNumberCtx c{lat, w, sigma(lat, w)};
    return c;
}

void ScaledValue::mul(cplx x) {
    mant *= x;
    int e = 0;
    double a = std::abs(mant);
    if (a == 0.0) return;
    std::frexp(a, &e);
    mant = cplx(std::ldexp(mant.real(), -e), std::ldexp(mant.imag(), -e));
    exp2 += e;
}

void ScaledValue::div(cplx x) { mul(1.0 / x); }

void ScaledValue::mul(const ScaledValue& o) {
    mul(o.mant);
    exp2 += o.exp2;
}

void ScaledValue::div(const ScaledValue& o) {
    mul(1.0 / o.mant);
    exp2 -= o.exp2;
}

cplx ScaledValue::value() const {
    if (exp2 > 1020 || exp2 < -1070) {
        if (mant == 0.0 || exp2 < -1070) return 0.0;
        throw RangeError("scaled product overflows double range");
    }
    return cplx(std::ldexp(mant.real(), int(exp2)), std::ldexp(mant.imag(), int(exp2)));
}

cplx ell_number(const EllNumberCtx& ctx, cplx x) { return sigma(ctx.lat, ctx.w * x) / ctx.sigma_w; }

ScaledValue ell_pochhammer_scaled(const EllNumberCtx& ctx, cplx x, int k) {
    if (k < 0) throw DomainError("ell_pochhammer: negative length");
    ScaledValue p;
    for (int i = 0; i < k; ++i) p.mul(ell_number(ctx, x + double(i)));
    return p;
}

cplx ell_pochhammer(const EllNumberCtx& ctx, cplx x, int k) { return ell_pochhammer_scaled(ctx, x, k).value(); }

cplx ell_factorial(const EllNumberCtx& ctx, int n) { return ell_pochhammer(ctx, 1.0, n); }

cplx ell_binomial_general(const Lattice& lat, const std::vector<cplx>& v, int n, int k) {
    if (k < 0 || k > n || n >= static_cast<int>(v.size()))
        throw DomainError("ell_binomial_general: need 0 <= k <= n < len(v)");
    if (k == n) return 1.0;
    ScaledValue num, den;
    std::vector<cplx> facs;
    for (int i = 0; i < n; ++i) {
        cplx s = sigma(lat, v[n] - v[i]);
        facs.push_back(s);
        num.mul(s);
    }
    for (int i = 0; i < k; ++i) {
        cplx s = sigma(lat, v[k] - v[i]);
        facs.push_back(s);
        den.mul(s);
    }
    for (int i = k + 1; i <= n; ++i) {
        cplx s = sigma(lat, v[i] - v[k]);
        facs.push_back(s);
        den.mul(s);
    }
    double scale = 0.0;
    for (auto f : facs) scale = std::max(scale, std::abs(f));
    for (std::size_t i = 0; i < facs.size(); ++i)
        if (std::abs(facs[i]) < 1e-12 * scale)
            throw DegenerateError("ell_binomial_general: coincident nodes", static_cast<long>(i));
    num.div(den);
    return num.value();
}

cplx e3_2_M(const EllNumberCtx& ctx, const E32Params& p) {
    cplx bal = 1.0 + p.b[0] + p.b[1] - p.a[0] - p.a[1] - p.a[2];
    if (std::abs(bal) < 1e-10) return 0.0;
    return ctx.lat.eta1 / (2.0 * ctx.lat.omega1) * ctx.w * ctx.w * bal;
}

std::vector<cplx> e3_2_terms(const EllNumberCtx& ctx, const E32Params& p, int last) {
    cplx M = e3_2_M(ctx, p);
    std::vector<cplx> out;
    out.reserve(last + 1);
    ScaledValue t;
    out.push_back(1.0);
    for (int s = 0; s < last; ++s) {
        cplx d1 = ell_number(ctx, 1.0 + double(s));
        cplx d2 = ell_number(ctx, p.b[0] + double(s));
        cplx d3 = ell_number(ctx, p.b[1] + double(s));
        if (lattice_distance(ctx.lat, ctx.w * (p.b[0] + double(s))) < kLatticeTol ||
            lattice_distance(ctx.lat, ctx.w * (p.b[1] + double(s))) < kLatticeTol)
            throw DegenerateError("e3_2: vanishing denominator Pochhammer factor", s);
        t.mul(ell_number(ctx, p.a[0] + double(s)));
        t.mul(ell_number(ctx, p.a[1] + double(s)));
        t.mul(ell_number(ctx, p.a[2] + double(s)));
        t.div(d1);
        t.div(d2);
        t.div(d3);
        // e^{M s(s-1)} ratio from s to s+1 is e^{2 M s}
        if (M != 0.0) t.mul(std::exp(2.0 * M * double(s)));
        out.push_back(t.value());
    }
    return out;
}

cplx e3_2(const EllNumberCtx& ctx, const E32Params& p, cplx z, std::optional<int> terminate_n, std::optional<int> nmax) {
    int last;
    if (terminate_n) {
        if (*terminate_n < 0) throw UsageError("e3_2: terminating index must be nonnegative");
        last = *terminate_n;
        if (nmax) last = std::min(last, *nmax);
    } else if (nmax) {
        last = *nmax;
    } else {
        throw UsageError("e3_2: nonterminating series needs an explicit nmax");
    }
    if (last == 0 || z == 0.0) return 1.0;
    auto t = e3_2_terms(ctx, p, last);
    std::vector<cplx> terms(t.size());
    cplx zs = 1.0;
    for (std::size_t s = 0; s < t.size(); ++s) {
        terms[s] = t[s] * zs;
        zs *= z;
    }
    return pairwise_sum(terms);
}

cplx mu_coeff(const EllNumberCtx& ctx, cplx alpha, int n) {
    if (n == 0) return 0.0;
    cplx num = sigma(ctx.lat, ctx.w * double(n));
    cplx den = sigma(ctx.lat, ctx.w * double(n) + alpha);
    if (lattice_distance(ctx.lat, ctx.w * double(n) + alpha) < kLatticeTol)
        throw SingularityError("mu_coeff: w n + alpha is a lattice point", n);
    return num / den;
}

std::vector<cplx> mu_inverse_factorials(const std::function<cplx(int)>& mu, int S) {
    std::vector<cplx> r(S + 1);
    ScaledValue acc;
    r[0] = 1.0;
    for (int s = 1; s <= S; ++s) {
        cplx m = mu(s);
        if (m == 0.0) throw DegenerateError("mu_inverse_factorials: vanishing mu", s);
        acc.div(m);
        r[s] = acc.value();
    }
    return r;
}

std::vector<cplx> mu_exponential_coeffs(const EllNumberCtx& ctx, cplx alpha, int S) {
    if (S < 0) throw DomainError("mu_exponential: order must be nonnegative");
    // [alpha/w + 1]_s / [s]! equals 1/(mu_1...mu_s)
    cplx ah = alpha / ctx.w;
    std::vector<cplx> r(S + 1);
    ScaledValue acc;
    r[0] = 1.0;
    for (int s = 1; s <= S; ++s) {
        acc.mul(ell_number(ctx, ah + double(s)));
        acc.div(ell_number(ctx, double(s)));
        r[s] = acc.value();
    }
    return r;
}

MuExp mu_exponential(const std::vector<cplx>& inv_fact, cplx x) {
    std::vector<cplx> ev, od;
    cplx xs = 1.0;
    for (std::size_t s = 0; s < inv_fact.size(); ++s) {
        (s % 2 == 0 ? ev : od).push_back(inv_fact[s] * xs);
        xs *= x;
    }
    MuExp r;
    r.C = pairwise_sum(ev);
    r.S = pairwise_sum(od);
    r.E = r.C + r.S;
    return r;
}

MuExp mu_exponential(const EllNumberCtx& ctx, cplx alpha, cplx x, int S) {
    return mu_exponential(mu_exponential_coeffs(ctx, alpha, S), x);
}

GenFnCoeffs generating_fn_coeffs(const Lattice& lat, double w, CnDn family, int S) {
    if (S < 0) throw DomainError("generating_fn_coeffs: order must be nonnegative");
    cplx sn_w = jacobi_sn_cn_dn(lat, w).sn;
    auto mu = [&](int n) { return jacobi_sn_cn_dn(lat, w * n).sn / sn_w; };
    GenFnCoeffs g;
    g.inv_fact = mu_inverse_factorials(mu, S);
    // constant terms P_n(0) of the two families
    std::vector<cplx> bc(S + 1), bd(S + 1);
    for (int n = 0; n <= S; ++n) {
        auto j = jacobi_sn_cn_dn(lat, w * n);
        bool even = (n % 2 == 0);
        bc[n] = even ? j.dn : -j.cn;
        bd[n] = even ? j.cn : -j.dn;
    }
    std::vector<cplx> xi0(S + 1), xi1(S + 1);
    for (int n = 0; n <= S; ++n) {
        xi0[n] = bc[n] * g.inv_fact[n];
        xi1[n] = bd[n] * g.inv_fact[n];
    }
    if (family == CnDn::cn) {
        g.even_part = xi0;
        g.odd_part = xi1;
    } else {
        g.even_part = xi1;
        g.odd_part = xi0;
    }
    return g;
}

cplx assemble_generating_fn(const GenFnCoeffs& g, cplx z, cplx t, int S) {
    std::vector<cplx> terms;
    for (int n = 0; n <= S; ++n) {
        cplx tn = std::pow(t, n);
        for (int k = 0; k <= n; ++k) {
            const auto& part = (k % 2 == 0) ? g.even_part : g.odd_part;
            terms.push_back(part[n - k] * g.inv_fact[k] * tn * std::pow(z, k));
        }
    }
    return pairwise_sum(terms);
}

}  // namespace elbp
