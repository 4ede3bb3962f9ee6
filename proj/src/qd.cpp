#include "elbp/qd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace elbp {

QDTableau::QDTableau(int nmax_, int jlo_, int jhi_) : nmax(nmax_), jlo(jlo_), jhi(jhi_) {
    std::size_t sz = std::size_t(nmax + 1) * std::size_t(jhi - jlo + 1);
    d.assign(sz, 0.0);
    b.assign(sz, 0.0);
    valid_d.assign(sz, 0);
    valid_b.assign(sz, 0);
    cond.assign(sz, 0.0);
}

cplx QDTableau::D(int n, int j) const {
    if (!ok_d(n, j)) throw RangeError("QDTableau: d_" + std::to_string(n) + "^(" + std::to_string(j) + ") invalid");
    return d[idx(n, j)];
}

cplx QDTableau::B(int n, int j) const {
    if (!ok_b(n, j)) throw RangeError("QDTableau: b_" + std::to_string(n) + "^(" + std::to_string(j) + ") invalid");
    return b[idx(n, j)];
}

void QDTableau::set_d(int n, int j, cplx v) {
    d[idx(n, j)] = v;
    valid_d[idx(n, j)] = std::isfinite(v.real()) && std::isfinite(v.imag());
}

void QDTableau::set_b(int n, int j, cplx v) {
    b[idx(n, j)] = v;
    valid_b[idx(n, j)] = std::isfinite(v.real()) && std::isfinite(v.imag());
}

QDTableau qd_sweep_from_moments(const MomentSeq& ms, int nmax, int jlo, int jhi) {
    if (nmax < 0 || jhi < jlo) throw DomainError("qd_sweep: empty range");
    int lo = jlo - nmax, hi = jhi + nmax;
    if (!ms.has(lo) || !ms.has(hi + 1)) throw RangeError("qd_sweep: moments c_" + std::to_string(lo) + ".." +
                                                         std::to_string(hi + 1) + " required");
    QDTableau t(nmax, lo, hi);
    for (int j = lo; j <= hi; ++j) {
        t.set_b(0, j, 0.0);
        cplx cj = ms[j];
        if (std::abs(cj) < 1e-300) {
            t.degenerate.push_back({0, j});
            continue;
        }
        t.set_d(0, j, ms[j + 1] / cj);
    }
    for (int n = 1; n <= nmax; ++n) {
        // b_n^{(j)} = d_{n-1}^{(j)} - d_{n-1}^{(j+1)} + b_{n-1}^{(j+1)}
        for (int j = lo; j < hi; ++j) {
            if (!t.ok_d(n - 1, j) || !t.ok_d(n - 1, j + 1) || !t.ok_b(n - 1, j + 1)) continue;
            t.set_b(n, j, t.D(n - 1, j) - t.D(n - 1, j + 1) + t.B(n - 1, j + 1));
        }
        // d_n^{(j+1)} = b_n^{(j+1)} d_{n-1}^{(j)} / b_n^{(j)}
        for (int j = lo; j < hi; ++j) {
            if (!t.ok_b(n, j) || !t.ok_b(n, j + 1) || !t.ok_d(n - 1, j)) continue;
            cplx bj = t.B(n, j);
            double scale = std::max({std::abs(bj), std::abs(t.B(n, j + 1)), std::abs(t.D(n - 1, j))});
            if (std::abs(bj) <= 1e-12 * scale || bj == 0.0) {
                t.degenerate.push_back({n, j});
                continue;
            }
            t.set_d(n, j + 1, t.B(n, j + 1) * t.D(n - 1, j) / bj);
        }
    }
    return t;
}

QDTableau qd_closed(const ModelParams& p, int nmax, int jlo, int jhi) {
    QDTableau t(nmax, jlo, jhi);
    for (int j = jlo; j <= jhi; ++j) {
        ModelParams pj = with_alpha(p, p.alpha + p.w * double(j));
        for (int n = 0; n <= nmax; ++n) {
            try {
                t.set_d(n, j, closed_d(pj, n));
                t.set_b(n, j, closed_b(pj, n));
            } catch (const SingularityError&) {
                t.degenerate.push_back({n, j});
            }
        }
    }
    return t;
}

void qd_condition(const MomentSeq& ms, QDTableau& tab) {
    for (int n = 0; n <= tab.nmax; ++n)
        for (int j = tab.jlo; j <= tab.jhi; ++j) {
            double worst = 0.0;
            for (int s = 0; s <= 1; ++s) {
                try {
                    DetResult r = toeplitz_delta_ex(ms, n + 1, j + s);
                    worst = std::max(worst, 1.0 / std::max(r.rcond, 1e-300));
                } catch (const RangeError&) {
                    worst = std::numeric_limits<double>::infinity();
                }
            }
            tab.cond[tab.idx(n, j)] = worst;
        }
}

QDResidual verify_two_point_qd(const QDTableau& t, int n, int j) {
    QDResidual r;
    if (!t.ok_b(n, j) || !t.ok_b(n, j + 1) || !t.ok_d(n, j) || !t.ok_d(n, j + 1) || !t.ok_b(n + 1, j)) return r;
    cplx dm1 = 0.0;
    if (n > 0) {
        if (!t.ok_d(n - 1, j)) return r;
        dm1 = t.D(n - 1, j);
    }
    cplx bn = t.B(n, j), bt = t.B(n, j + 1), dn = t.D(n, j), dt = t.D(n, j + 1), bn1 = t.B(n + 1, j);
    double scale = std::max({std::abs(bn), std::abs(bt), std::abs(dn), std::abs(dt), std::abs(bn1), std::abs(dm1)});
    r.r1 = std::abs(bn * dt - dm1 * bt) / (scale * scale);
    r.r2 = std::abs((bt - dt) - (bn1 - dn)) / scale;
    r.valid = true;
    return r;
}

cplx qd_transform_d(cplx d_nm1, cplx d_n, cplx b_n, cplx b_np1) {
    cplx den = b_n - d_nm1;
    if (den == 0.0) throw DegenerateError("qd_transform_d: b_n = d_{n-1}");
    return d_nm1 * (b_np1 - d_n) / den;
}

cplx OrdinaryQD::E(int n, int j) const {
    if (!ok_e(n, j)) throw RangeError("OrdinaryQD: e_" + std::to_string(n) + "^(" + std::to_string(j) + ") invalid");
    return e[idx(n, j)];
}

cplx OrdinaryQD::F(int n, int j) const {
    if (!ok_f(n, j)) throw RangeError("OrdinaryQD: f_" + std::to_string(n) + "^(" + std::to_string(j) + ") invalid");
    return f[idx(n, j)];
}

OrdinaryQD to_ordinary_qd(const QDTableau& t) {
    OrdinaryQD q;
    q.nmax = t.nmax;
    q.jlo = t.jlo - t.nmax;
    q.jhi = t.jhi;
    std::size_t sz = std::size_t(q.nmax + 1) * std::size_t(q.jhi - q.jlo + 1);
    q.e.assign(sz, 0.0);
    q.f.assign(sz, 0.0);
    q.valid_e.assign(sz, 0);
    q.valid_f.assign(sz, 0);
    for (int n = 0; n <= q.nmax; ++n)
        for (int j = q.jlo; j <= q.jhi; ++j) {
            std::size_t k = q.idx(n, j);
            if (n >= 1 && t.ok_b(n, j + n - 1)) {
                q.f[k] = t.B(n, j + n - 1);
                q.valid_f[k] = 1;
            }
            if (t.ok_b(n, j + n) && t.ok_d(n, j + n)) {
                q.e[k] = t.B(n, j + n) - t.D(n, j + n);
                q.valid_e[k] = 1;
            }
        }
    return q;
}

QDResidual verify_rutishauser(const OrdinaryQD& q, int n, int j) {
    QDResidual r;
    if (n < 1) return r;
    if (!q.ok_e(n - 1, j + 1) || !q.ok_f(n, j + 1) || !q.ok_e(n, j) || !q.ok_f(n, j) || !q.ok_e(n, j + 1) ||
        !q.ok_f(n + 1, j))
        return r;
    cplx em = q.E(n - 1, j + 1), fp = q.F(n, j + 1), e0 = q.E(n, j), f0 = q.F(n, j), ep = q.E(n, j + 1),
         f1 = q.F(n + 1, j);
    double scale = std::max({std::abs(em), std::abs(fp), std::abs(e0), std::abs(f0), std::abs(ep), std::abs(f1)});
    r.r1 = std::abs(em * fp - e0 * f0) / (scale * scale);
    r.r2 = std::abs(ep + fp - e0 - f1) / scale;
    r.valid = true;
    return r;
}

namespace {

Eigen::MatrixXcd hankel_block(const MomentSeq& ms, int rows, int cols, int j) {
    Eigen::MatrixXcd a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) a(i, k) = ms[j + 1 + i + k];
    return a;
}

}  // namespace

DetResult hankel_H(const MomentSeq& ms, int n, int j) {
    if (n == 0) return DetResult{1.0, 1.0, true};
    if (!ms.has(j + 1) || !ms.has(j + 2 * n - 1)) throw RangeError("hankel_H: moments missing");
    return lu_det(hankel_block(ms, n, n, j));
}

Poly<cplx> hadamard_W_lbp(const MomentSeq& ms, int n, int j) { return det_poly_P(shifted(ms, j + n), n); }

Poly<cplx> hadamard_W_hankel(const MomentSeq& ms, int n, int j) {
    if (n == 0) return Poly<cplx>::one();
    if (!ms.has(j + 1) || !ms.has(j + 2 * n)) throw RangeError("hadamard_W_hankel: moments missing");
    DetResult H = hankel_H(ms, n, j);
    Eigen::MatrixXcd full = hankel_block(ms, n, n + 1, j);
    double scale = full.cwiseAbs().maxCoeff();
    if (std::abs(H.value) < 1e-12 * std::pow(scale, n)) throw DegenerateError("hadamard_W_hankel: H_n vanishes", n);
    std::vector<cplx> c(n + 1);
    for (int k = 0; k < n; ++k) {
        Eigen::MatrixXcd minor(n, n);
        for (int col = 0, m = 0; col <= n; ++col) {
            if (col == k) continue;
            minor.col(m++) = full.col(col);
        }
        double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
        c[k] = sign * lu_det(minor).value / H.value;
    }
    c[n] = 1.0;
    return Poly<cplx>(std::move(c), true);
}

Poly<cplx> hadamard_W_recurrence(const OrdinaryQD& q, int n, int j) {
    Poly<cplx> wm1, w = Poly<cplx>::one();
    for (int k = 0; k < n; ++k) {
        cplx g = -q.E(k, j) - q.F(k + 1, j);
        Poly<cplx> next = w.shifted_up() - g * w;
        if (k > 0) next = next - (q.E(k, j) * q.F(k, j)) * wm1;
        next.c.resize(k + 2);
        next.c[k + 1] = 1.0;
        next.monic = true;
        wm1 = w;
        w = next;
    }
    return w;
}

ShiftedFamily shifted_family(const ModelParams& p) {
    ShiftedFamily f;
    auto at = [p](int j) { return with_alpha(p, p.alpha + p.w * double(j)); };
    f.P = [at](int n, int j) { return closed_P_3E2(at(j), n); };
    f.d = [at](int n, int j) { return closed_d(at(j), n); };
    f.b = [at](int n, int j) { return closed_b(at(j), n); };
    return f;
}

ShiftedFamily shifted_family(const MomentSeq& ms) {
    ShiftedFamily f;
    f.P = [ms](int n, int j) { return det_poly_P(shifted(ms, j), n); };
    f.d = [ms](int n, int j) { return coeffs_from_moments(shifted(ms, j), n).d[n]; };
    f.b = [ms](int n, int j) { return coeffs_from_moments(shifted(ms, j), n).b[n]; };
    return f;
}

double CGResidual::max() const {
    return std::max({christoffel_P, geronimus_P, geronimus_W, christoffel_W});
}

CGResidual christoffel_geronimus_check(const ShiftedFamily& fam, int n, int j) {
    auto rel = [](const Poly<cplx>& r, const Poly<cplx>& a, const Poly<cplx>& b) {
        return max_abs(r) / std::max({max_abs(a), max_abs(b), 1e-300});
    };
    CGResidual r;
    auto W = [&](int m, int jj) { return fam.P(m, jj + m); };
    Poly<cplx> Pn = fam.P(n, j);
    Poly<cplx> Pn1 = n > 0 ? fam.P(n - 1, j) : Poly<cplx>();
    {
        Poly<cplx> lhs = fam.P(n, j + 1);
        Poly<cplx> rhs = Pn + fam.b(n, j) * Pn1;
        r.christoffel_P = rel(lhs - rhs, lhs, rhs);
    }
    {
        Poly<cplx> lhs = (fam.d(n, j) - fam.b(n, j)) * fam.P(n, j - 1);
        Poly<cplx> rhs = Pn.shifted_up() - fam.P(n + 1, j);
        r.geronimus_P = rel(lhs - rhs, lhs, rhs);
    }
    {
        cplx fn = fam.b(n, j + n - 1);
        Poly<cplx> lhs = W(n, j - 1);
        Poly<cplx> rhs = n > 0 ? W(n, j) - fn * W(n - 1, j) : W(n, j);
        r.geronimus_W = rel(lhs - rhs, lhs, rhs);
    }
    {
        cplx en = fam.b(n, j + 1 + n) - fam.d(n, j + 1 + n);
        Poly<cplx> lhs = W(n, j + 1).shifted_up();
        Poly<cplx> rhs = W(n + 1, j) - en * W(n, j);
        r.christoffel_W = rel(lhs - rhs, lhs, rhs);
    }
    return r;
}

cplx ExpFamily::moment(int n, double t) const {
    std::vector<cplx> terms;
    for (std::size_t i = 0; i < a.size(); ++i)
        terms.push_back(weight[i] * std::exp(a[i] * t) * std::pow(a[i], -sign * n));
    return pairwise_sum(terms);
}

MomentSeq ExpFamily::moments(double t, int N) const {
    return make_moments([&](int n) { return moment(n, t); }, -N, N, Origin::user);
}

ExpFamily default_exp_family(int sign) {
    ExpFamily f;
    f.a = {cplx(1.3, 0.2), cplx(-0.7, 0.9), cplx(0.5, -1.1), cplx(2.1, 0.4)};
    f.weight = {cplx(0.8, 0.1), cplx(0.6, -0.3), cplx(1.1, 0.2), cplx(0.4, 0.5)};
    f.sign = sign;
    return f;
}

FlowResidual rtc_flow_check(FlowKind kind, const ExpFamily& fam, double t, double dt, int n) {
    int M = static_cast<int>(fam.a.size());
    // b_{n+1} needs Delta_{n+2}, d_{n+1} needs Delta_{n+2}; both must be below the rank M.
    if (n + 2 > M) throw DegenerateError("rtc_flow_check: Toeplitz rank of the exponential family exceeded", n);
    int N = n + 4;
    auto coeffs = [&](double s) { return coeffs_from_moments(fam.moments(s, N), n + 1); };
    RecurrenceCoeffs c0 = coeffs(t), cp = coeffs(t + dt), cm = coeffs(t - dt);
    cplx ddot = (cp.d[n] - cm.d[n]) / (2.0 * dt);
    cplx bdot = (cp.b[n] - cm.b[n]) / (2.0 * dt);
    auto d = [&](int k) { return c0.d[k]; };
    auto b = [&](int k) { return k >= 0 ? c0.b[k] : cplx(0.0); };
    cplx rd, rb;
    if (kind == FlowKind::first) {
        // d_{-1} only appears multiplied by b_0 = 0
        rd = b(n + 1) / d(n + 1) - (n > 0 ? b(n) / d(n - 1) : cplx(0.0));
        rb = n > 0 ? b(n) * (1.0 / d(n) - 1.0 / d(n - 1)) : cplx(0.0);
    } else {
        rd = -d(n) * (b(n + 1) - b(n));
        rb = n > 0 ? -b(n) * (b(n + 1) - b(n - 1) + d(n - 1) - d(n)) : cplx(0.0);
    }
    FlowResidual r;
    // time is measured in units of 1/rate, rate = max |a_i|: the dt^2 error carries rate^3
    double rate = 0.0;
    for (const cplx& ai : fam.a) rate = std::max(rate, std::abs(ai));
    r.scale = std::max({std::abs(d(n)), std::abs(b(n + 1)), std::abs(rd), 1e-300}) * rate * rate * rate;
    r.res_d = std::abs(ddot - rd);
    r.res_b = std::abs(bdot - rb);
    r.b0 = std::max({std::abs(c0.b[0]), std::abs(cp.b[0]), std::abs(cm.b[0])});
    return r;
}

}  // namespace elbp
