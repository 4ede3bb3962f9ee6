#include "elbp/rational.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "elbp/lbp.hpp"

namespace elbp {

namespace {

bool vanishes(const cplx& x) { return std::abs(x) < 1e-12; }
bool vanishes(const Rational& x) { return x == 0; }

double magnitude(const cplx& x) { return std::abs(x); }
double magnitude(const Rational& x) { return std::abs(static_cast<double>(x)); }

template <class T>
T inv(const T& x, const char* what, int n) {
    if (vanishes(x)) throw DegenerateError(what, n);
    return T(1) / x;
}

template <class T>
Poly<T> force_monic(Poly<T> p, const char* what, int n) {
    T lead = p.c.back();
    if (magnitude(lead - T(1)) > 1e-8) throw DegenerateError(what, n);
    p.c.back() = T(1);
    p.monic = true;
    return p;
}

template <class F>
cplx gauss_composite(const F& f, double a, double b, int panels) {
    using G = boost::math::quadrature::gauss<double, 30>;
    const auto& x = G::abscissa();
    const auto& wt = G::weights();
    double h = (b - a) / panels;
    std::vector<cplx> parts(panels);
    for (int p = 0; p < panels; ++p) {
        double mid = a + (p + 0.5) * h, half = 0.5 * h;
        cplx s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0.0) {
                s += wt[i] * f(mid);
            } else {
                s += wt[i] * (f(mid - half * x[i]) + f(mid + half * x[i]));
            }
        }
        parts[p] = s * half;
    }
    return pairwise_sum(parts);
}

}  // namespace

void check_rat_alpha(const cplx& alpha) {
    for (int k = -64; k <= 64; ++k)
        if (std::abs(alpha - double(k)) <= 1e-8) throw DomainError("rational: alpha too close to an integer");
}

void check_rat_alpha(const Rational& alpha) {
    if (denominator(alpha) == 1) throw DomainError("rational: alpha is an integer");
}

template <class T>
T rat_moment(const RatParams<T>& rp, int n) {
    T den = T(n) + rp.alpha;
    if (vanishes(den)) throw SingularityError("rat_moment: n + alpha = 0", n);
    if (rp.beta_inf) return T(1) / den;
    if (vanishes(rp.beta)) throw SingularityError("rat_moment: beta = 0", n);
    return (T(n) + rp.beta + rp.alpha) / (rp.beta * den);
}

MomentSeq rat_moments(const RatParams<cplx>& rp, int N) {
    return make_moments([&](int n) { return rat_moment(rp, n); }, -N, N, Origin::rational);
}

template <class T>
T pochhammer(const T& a, int k) {
    T r(1);
    for (int i = 0; i < k; ++i) r *= a + T(i);
    return r;
}

template <class T>
Poly<T> hyp3f2_terminating(int n, const T& a2, const T& a3, const T& b1, const T& b2) {
    std::vector<T> c(n + 1);
    T term(1);
    c[0] = term;
    for (int k = 0; k < n; ++k) {
        T den = (b1 + T(k)) * (b2 + T(k)) * T(k + 1);
        term = term * (T(k - n) * (a2 + T(k)) * (a3 + T(k))) * inv(den, "3F2: vanishing lower Pochhammer", k);
        c[k + 1] = term;
    }
    return Poly<T>(std::move(c));
}

template <class T>
T rat_B(const T& alpha, const T& beta, int n) {
    T num = pochhammer(T(-alpha), n) * (alpha * T(n) + beta + T(n));
    T den = pochhammer(T(alpha + T(1)), n) * (alpha * T(n) + beta);
    return num * inv(den, "rat_B: vanishing normalization", n);
}

template <class T>
Poly<T> rat_P(const T& alpha, const T& beta, int n) {
    if (n == 0) return Poly<T>::one();
    T a1 = alpha + T(1);
    Poly<T> F = hyp3f2_terminating(n, a1, T(-a1 * T(n) - beta + T(1)), T(a1 - T(n)), T(-a1 * T(n) - beta));
    return force_monic(rat_B(alpha, beta, n) * F, "rat_P: leading coefficient is not 1", n);
}

template <class T>
Poly<T> rat_Q(const T& alpha, const T& beta, int n) {
    return rat_P(T(-alpha), T(-beta), n);
}

template <class T>
T rat_closed_d(const T& alpha, const T& beta, int n) {
    T a1 = alpha + T(1);
    T num = (alpha - T(n)) * (beta + a1 * T(n + 1)) * (beta + alpha * T(n));
    T den = (a1 + T(n)) * (beta + a1 * T(n)) * (beta + alpha * T(n + 1));
    return num * inv(den, "rat_closed_d: vanishing denominator", n);
}

template <class T>
T rat_closed_b(const T& alpha, const T& beta, int n) {
    if (n == 0) return T(0);
    T a1 = alpha + T(1);
    T num = T(-n * n) * (beta + a1 * T(n + 1)) * (beta + alpha * T(n - 1));
    T den = (beta + a1 * T(n)) * (beta + alpha * T(n)) * (alpha + T(n + 1)) * (alpha + T(n));
    return num * inv(den, "rat_closed_b: vanishing denominator", n);
}

template <class T>
Poly<T> hr_P(const T& alpha, int n) {
    if (n == 0) return Poly<T>::one();
    T a1 = alpha + T(1);
    std::vector<T> c(n + 1);
    T term = pochhammer(T(-alpha), n) * inv(pochhammer(a1, n), "hr_P: vanishing normalization", n);
    c[0] = term;
    for (int k = 0; k < n; ++k) {
        T den = (a1 - T(n) + T(k)) * T(k + 1);
        term = term * (T(k - n) * (a1 + T(k))) * inv(den, "hr_P: vanishing lower Pochhammer", k);
        c[k + 1] = term;
    }
    return force_monic(Poly<T>(std::move(c)), "hr_P: leading coefficient is not 1", n);
}

template <class T>
T hr_d(const T& alpha, int n) {
    return (alpha - T(n)) * inv(T(alpha + T(n + 1)), "hr_d: vanishing denominator", n);
}

template <class T>
T hr_b(const T& alpha, int n) {
    if (n == 0) return T(0);
    return T(-n * n) * inv(T((alpha + T(n)) * (alpha + T(n + 1))), "hr_b: vanishing denominator", n);
}

template <class T>
Poly<T> krall_W(const RatParams<T>& rp, int n) {
    if (n == 0) return Poly<T>::one();
    T a = rp.alpha + T(rp.j);
    T top = a + T(n + 1);  // alpha + n + j + 1
    if (rp.beta_inf) {
        // 2F1(-n, alpha+n+j+1; alpha+j+1; z)
        std::vector<T> c(n + 1);
        T term = pochhammer(T(-a - T(n)), n) * inv(pochhammer(top, n), "krall_W: vanishing normalization", n);
        c[0] = term;
        for (int k = 0; k < n; ++k) {
            T den = (a + T(1) + T(k)) * T(k + 1);
            term = term * (T(k - n) * (top + T(k))) * inv(den, "krall_W: vanishing lower Pochhammer", k);
            c[k + 1] = term;
        }
        return force_monic(Poly<T>(std::move(c)), "krall_W: leading coefficient is not 1", n);
    }
    const T& beta = rp.beta;
    T B = pochhammer(T(-a - T(n)), n) * (top * T(n) + beta) *
          inv(T(pochhammer(top, n) * ((a + T(n)) * T(n) + beta)), "krall_W: vanishing normalization", n);
    Poly<T> F = hyp3f2_terminating(n, top, T(T(1) - beta - T(n) * top), T(a + T(1)), T(-beta - T(n) * top));
    return force_monic(B * F, "krall_W: leading coefficient is not 1", n);
}

template <class T>
Poly<T> krall_W_from_P(const RatParams<T>& rp, int n) {
    T a = rp.alpha + T(rp.j + n);
    return rp.beta_inf ? hr_P(a, n) : rat_P(a, rp.beta, n);
}

template <class T>
T krall_tau(const RatParams<T>& rp, int n) {
    T r = inv(T(T(n) + rp.alpha + T(rp.j + 1)), "krall_tau: pole", n);
    if (!rp.beta_inf) r += inv(rp.beta, "krall_tau: beta = 0", n);
    return r;
}

template <class T>
KrallCoeffs<T> krall_coeffs(const T& a, const T& beta) {
    KrallCoeffs<T> k;
    k.kj_xi1 = T(-2) * (a + T(4));
    k.kj_xi0 = T(2) * (a + T(2));
    k.kj_eta1 = -(a + T(2)) * (a + T(7)) - T(2) * beta;
    k.kj_eta0 = (a + T(1)) * (a + T(2));
    k.kj_zeta1 = T(2) * (a + T(2)) * (a + beta + T(1));
    k.kj_zeta0 = T(-2) * (a + T(1)) * (a + beta + T(2));
    return k;
}

template <class T>
T krall_lambda_expanded(int n, const T& a, const T& beta) {
    KrallCoeffs<T> k = krall_coeffs(a, beta);
    T N(n);
    return N * (N - T(1)) * (N - T(2)) * (N - T(3)) - k.kj_xi1 * N * (N - T(1)) * (N - T(2)) -
           k.kj_eta1 * N * (N - T(1)) + k.kj_zeta1 * N;
}

template <class T>
T krall_lambda_factored(int n, const T& a, const T& beta) {
    T N(n);
    return N * (N + a + T(1)) * ((N + T(1)) * (N + a) + T(2) * beta);
}

template <class T>
T krall_lambda_printed(int n, const T& a, const T& beta) {
    T N(n);
    return N * (N + a + T(1)) * (N * N + N * (a + T(1)) + T(2) * beta);
}

template <class T>
int DiffOp<T>::order() const {
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
        if (!is_zero(p[k])) return k;
    return -1;
}

template <class T>
Poly<T> DiffOp<T>::apply(const Poly<T>& f) const {
    Poly<T> r;
    for (std::size_t k = 0; k < p.size(); ++k) r = r + p[k] * f.derivative(static_cast<int>(k));
    return r;
}

template <class T>
DiffOp<T> operator+(const DiffOp<T>& a, const DiffOp<T>& b) {
    DiffOp<T> r;
    r.p.resize(std::max(a.p.size(), b.p.size()));
    for (std::size_t k = 0; k < a.p.size(); ++k) r.p[k] = r.p[k] + a.p[k];
    for (std::size_t k = 0; k < b.p.size(); ++k) r.p[k] = r.p[k] + b.p[k];
    return r;
}

template <class T>
DiffOp<T> operator-(const DiffOp<T>& a, const DiffOp<T>& b) {
    return a + T(-1) * b;
}

template <class T>
DiffOp<T> operator*(const T& s, const DiffOp<T>& a) {
    DiffOp<T> r = a;
    for (auto& q : r.p) q = s * q;
    return r;
}

template <class T>
DiffOp<T> krall_operator(const T& a, const T& beta, const T& shift) {
    KrallCoeffs<T> k = krall_coeffs(a, beta);
    Poly<T> x({T(0), T(1)});
    Poly<T> omx({T(1), T(-1)});
    DiffOp<T> L;
    L.p.resize(5);
    L.p[0] = Poly<T>({T(-shift)});
    L.p[1] = Poly<T>({k.kj_zeta0, k.kj_zeta1});
    L.p[2] = omx * Poly<T>({k.kj_eta0, k.kj_eta1});
    L.p[3] = x * omx * Poly<T>({k.kj_xi0, k.kj_xi1});
    L.p[4] = x * omx * x * omx;
    return L;
}

template <class T>
Poly<T> krall_ode_residual(const RatParams<T>& rp, int n) {
    if (rp.beta_inf) throw UsageError("krall_ode_residual: finite beta required");
    T a = rp.alpha + T(rp.j);
    Poly<T> W = krall_W(rp, n);
    return krall_operator(a, rp.beta, krall_lambda_factored(n, a, rp.beta)).apply(W);
}

namespace {

template <class T>
DiffOp<T> shifted_operator(const T& alpha, const T& beta, int j, int n) {
    T a = alpha + T(j) - T(n);
    return krall_operator(a, beta, krall_lambda_expanded(n, a, beta));
}

}  // namespace

template <class T>
Pencil<T> make_pencil(const T& alpha, const T& beta, int j) {
    DiffOp<T> O0 = shifted_operator(alpha, beta, j, 0);
    DiffOp<T> O1 = shifted_operator(alpha, beta, j, 1);
    DiffOp<T> O2 = shifted_operator(alpha, beta, j, 2);
    Pencil<T> pc;
    pc.L0 = O0;
    pc.L2 = T(1) / T(2) * (O2 - T(2) * O1 + O0);
    pc.L1 = O1 - O0 - pc.L2;
    return pc;
}

template <class T>
DiffOp<T> pencil_at(const Pencil<T>& pc, int n) {
    return T(n * n) * pc.L2 + T(n) * pc.L1 + pc.L0;
}

template <class T>
T pencil_identity_defect(const Pencil<T>& pc, const T& alpha, const T& beta, int j, int n) {
    DiffOp<T> diff = pencil_at(pc, n) - shifted_operator(alpha, beta, j, n);
    T worst(0);
    for (const auto& q : diff.p)
        for (const auto& c : q.c)
            if (magnitude(c) > magnitude(worst)) worst = c;
    return worst;
}

template <class T>
Poly<T> pencil_residual(const RatParams<T>& rp, int n) {
    if (rp.beta_inf) throw UsageError("pencil_residual: finite beta required");
    Pencil<T> pc = make_pencil(rp.alpha, rp.beta, rp.j);
    return pencil_at(pc, n).apply(rat_P(T(rp.alpha + T(rp.j)), rp.beta, n));
}

template <class T>
Poly<T> gevp_residual(const RatParams<T>& rp, int n) {
    T a = rp.alpha + T(rp.j);
    Poly<T> P = hr_P(a, n);
    DiffOp<T> A, B;
    A.p = {Poly<T>(), Poly<T>({T(a + T(1)), T(-(a + T(2)))}), Poly<T>({T(0), T(1), T(-1)})};
    B.p = {Poly<T>({T(-(a + T(1)))}), Poly<T>({T(1), T(-1)})};
    return A.apply(P) - T(n) * B.apply(P);
}

double residual_norm(const Poly<cplx>& r) { return max_abs(r); }

double residual_norm(const Poly<Rational>& r) {
    double m = 0;
    for (const auto& c : r.c) m = std::max(m, magnitude(c));
    return m;
}

ImaginaryCase imaginary_case(double s1, double s2, int n) {
    if (n < 1) throw DomainError("imaginary_case: n >= 1 required");
    ImaginaryCase r;
    r.s1 = s1;
    r.s2 = s2;
    r.n = n;
    r.positive = s1 * s2 > 0;
    r.classification = r.positive ? "positive" : "not positive";
    cplx alpha(0, s1), beta(0, s2);
    r.a_nm1 = -rat_B(alpha, beta, n);
    r.modulus2 = std::norm(r.a_nm1);
    double eta = n / s1, xi = n / (n * s1 + s2);
    r.closed_modulus2 = (1 + xi * xi) / (1 + eta * eta);
    return r;
}

double imaginary_density(double s1, double s2, double theta) {
    return s2 / (1 - std::exp(-2 * kPi * s1)) * std::exp(-s1 * theta);
}

cplx imaginary_orthogonality_residual(double s1, double s2, int n, int m, int panels) {
    cplx alpha(0, s1), beta(0, s2);
    Poly<cplx> Pn = rat_P(alpha, beta, n), Pm = rat_P(alpha, beta, m);
    auto f = [&](double th) {
        cplx z = std::exp(kI * th);
        return Pn(z) * std::conj(Pm(z)) * imaginary_density(s1, s2, th);
    };
    cplx s = gauss_composite(f, 0.0, 2 * kPi, panels) + Pn(cplx(1)) * std::conj(Pm(cplx(1)));
    if (n == m) {
        MomentSeq ms = make_moments([&](int k) { return (double(k) + alpha + beta) / (double(k) + alpha); }, -n - 1,
                                    n + 1, Origin::rational);
        s -= norm_h(ms, n);
    }
    return s;
}

cplx hr_contour_residual(const RatParams<cplx>& rp, int n, int m, int panels) {
    check_rat_alpha(rp.alpha);
    Poly<cplx> P, Q;
    if (rp.beta_inf) {
        P = hr_P(rp.alpha, n);
        Q = hr_P(cplx(-rp.alpha), m);
    } else {
        P = rat_P(rp.alpha, rp.beta, n);
        Q = rat_Q(rp.alpha, rp.beta, m);
    }
    cplx norm = 1.0 / (std::exp(2 * kPi * kI * rp.alpha) - 1.0);
    auto f = [&](double th) {
        cplx z = std::exp(kI * th);
        // z^{alpha-1} dz = i e^{i alpha theta} dtheta on the cut circle
        return P(z) * Q(1.0 / z) * kI * std::exp(kI * rp.alpha * th) * norm;
    };
    cplx s = gauss_composite(f, 0.0, 2 * kPi, panels);
    if (!rp.beta_inf) s += P(cplx(1)) * Q(cplx(1)) / rp.beta;
    if (n == m) s -= norm_h(rat_moments(rp, n + 1), n);
    return s;
}

cplx krall_orthogonality(const RatParams<cplx>& rp, int n, int m, int panels) {
    Poly<cplx> Wn = krall_W(rp, n), Wm = krall_W(rp, m);
    cplx a = rp.alpha + double(rp.j);
    if (a.real() <= -1) throw DomainError("krall_orthogonality: Re(alpha + j) > -1 required");
    auto f = [&](double u) {
        if (u == 0.0) return cplx(0);
        cplx x(u * u);
        return 2.0 * std::pow(cplx(u), 2.0 * a + 1.0) * Wn(x) * Wm(x);
    };
    cplx s = gauss_composite(f, 0.0, 1.0, panels);
    if (!rp.beta_inf) s += Wn(cplx(1)) * Wm(cplx(1)) / rp.beta;
    return s;
}

ModelParams limit_params(double Lambda, cplx alpha, cplx beta) {
    return make_params(make_lattice(Lambda, Lambda), alpha, beta, cplx(0), 1.0);
}

double LimitErrors::max() const { return std::max({moment, d, b, P}); }

LimitErrors limit_errors(double Lambda, cplx alpha, cplx beta, int nmax) {
    ModelParams p = limit_params(Lambda, alpha, beta);
    RatParams<cplx> rp{alpha, beta, false, 0};
    LimitErrors e;
    e.Lambda = Lambda;
    for (int n = -nmax; n <= nmax; ++n) {
        cplx r = rat_moment(rp, n);
        e.moment = std::max(e.moment, std::abs(elliptic_moment(p, n) - r) / std::abs(r));
    }
    for (int n = 0; n <= nmax; ++n) {
        cplx d = rat_closed_d(alpha, beta, n);
        e.d = std::max(e.d, std::abs(closed_d(p, n) - d) / std::abs(d));
        if (n > 0) {
            cplx b = rat_closed_b(alpha, beta, n);
            e.b = std::max(e.b, std::abs(closed_b(p, n) - b) / std::abs(b));
        }
        e.P = std::max(e.P, rel_diff(closed_P_3E2(p, n), rat_P(alpha, beta, n)));
    }
    return e;
}

#define ELBP_RATIONAL_INSTANTIATE(T)                                                            \
    template struct DiffOp<T>;                                                                  \
    template T rat_moment(const RatParams<T>&, int);                                            \
    template T pochhammer(const T&, int);                                                       \
    template Poly<T> hyp3f2_terminating(int, const T&, const T&, const T&, const T&);           \
    template T rat_B(const T&, const T&, int);                                                  \
    template Poly<T> rat_P(const T&, const T&, int);                                            \
    template Poly<T> rat_Q(const T&, const T&, int);                                            \
    template T rat_closed_d(const T&, const T&, int);                                           \
    template T rat_closed_b(const T&, const T&, int);                                           \
    template Poly<T> hr_P(const T&, int);                                                       \
    template T hr_d(const T&, int);                                                             \
    template T hr_b(const T&, int);                                                             \
    template Poly<T> krall_W(const RatParams<T>&, int);                                         \
    template Poly<T> krall_W_from_P(const RatParams<T>&, int);                                  \
    template T krall_tau(const RatParams<T>&, int);                                             \
    template KrallCoeffs<T> krall_coeffs(const T&, const T&);                                   \
    template T krall_lambda_expanded(int, const T&, const T&);                                  \
    template T krall_lambda_factored(int, const T&, const T&);                                  \
    template T krall_lambda_printed(int, const T&, const T&);                                   \
    template DiffOp<T> operator+(const DiffOp<T>&, const DiffOp<T>&);                           \
    template DiffOp<T> operator-(const DiffOp<T>&, const DiffOp<T>&);                           \
    template DiffOp<T> operator*(const T&, const DiffOp<T>&);                                   \
    template DiffOp<T> krall_operator(const T&, const T&, const T&);                            \
    template Poly<T> krall_ode_residual(const RatParams<T>&, int);                              \
    template Pencil<T> make_pencil(const T&, const T&, int);                                    \
    template DiffOp<T> pencil_at(const Pencil<T>&, int);                                        \
    template T pencil_identity_defect(const Pencil<T>&, const T&, const T&, int, int);          \
    template Poly<T> pencil_residual(const RatParams<T>&, int);                                 \
    template Poly<T> gevp_residual(const RatParams<T>&, int);

ELBP_RATIONAL_INSTANTIATE(cplx)
ELBP_RATIONAL_INSTANTIATE(Rational)

}  // namespace elbp
