#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "elbp/moments.hpp"
#include "elbp/poly.hpp"

namespace elbp {

using Rational = boost::multiprecision::cpp_rational;

// Rational degeneration parameters. beta_inf selects the limit beta -> infinity.
template <class T>
struct RatParams {
    T alpha;
    T beta;
    bool beta_inf = false;
    int j = 0;
};

// |alpha - k| > 1e-8 for integer |k| <= 64; throws DomainError.
void check_rat_alpha(const cplx& alpha);
void check_rat_alpha(const Rational& alpha);

template <class T>
T rat_moment(const RatParams<T>& rp, int n);
MomentSeq rat_moments(const RatParams<cplx>& rp, int N);

// Pochhammer (a)_k
template <class T>
T pochhammer(const T& a, int k);

// Terminating 3F2 with a1 = -n, coefficient list of degree n.
template <class T>
Poly<T> hyp3f2_terminating(int n, const T& a2, const T& a3, const T& b1, const T& b2);

template <class T>
T rat_B(const T& alpha, const T& beta, int n);
template <class T>
Poly<T> rat_P(const T& alpha, const T& beta, int n);
// Partner family: rat_P with (alpha, beta) -> (-alpha, -beta).
template <class T>
Poly<T> rat_Q(const T& alpha, const T& beta, int n);
template <class T>
T rat_closed_d(const T& alpha, const T& beta, int n);
template <class T>
T rat_closed_b(const T& alpha, const T& beta, int n);

template <class T>
Poly<T> hr_P(const T& alpha, int n);
template <class T>
T hr_d(const T& alpha, int n);
template <class T>
T hr_b(const T& alpha, int n);

// W_n^{(j)} from its own 3F2 form; beta_inf gives the Jacobi-type 2F1 polynomial.
template <class T>
Poly<T> krall_W(const RatParams<T>& rp, int n);
// Same polynomial as P_n^{(j+n)}, i.e. rat_P with alpha -> alpha + j + n.
template <class T>
Poly<T> krall_W_from_P(const RatParams<T>& rp, int n);
// tau_n^{(j)} = beta^{-1} + 1/(n + alpha + j + 1)
template <class T>
T krall_tau(const RatParams<T>& rp, int n);

template <class T>
struct KrallCoeffs {
    T kj_xi1, kj_xi0, kj_eta1, kj_eta0, kj_zeta1, kj_zeta0;
};

// a = alpha + j
template <class T>
KrallCoeffs<T> krall_coeffs(const T& a, const T& beta);

// n(n-1)(n-2)(n-3) - xi1 n(n-1)(n-2) - eta1 n(n-1) + zeta1 n
template <class T>
T krall_lambda_expanded(int n, const T& a, const T& beta);
// n(n+a+1)((n+1)(n+a) + 2 beta)
template <class T>
T krall_lambda_factored(int n, const T& a, const T& beta);
// n(n+a+1)(n^2 + n(a+1) + 2 beta), the misprinted factorization; kept as a negative control.
template <class T>
T krall_lambda_printed(int n, const T& a, const T& beta);

// sum_k p[k](x) d^k/dx^k
template <class T>
struct DiffOp {
    std::vector<Poly<T>> p;

    int order() const;
    Poly<T> apply(const Poly<T>& f) const;
};

template <class T>
DiffOp<T> operator+(const DiffOp<T>& a, const DiffOp<T>& b);
template <class T>
DiffOp<T> operator-(const DiffOp<T>& a, const DiffOp<T>& b);
template <class T>
DiffOp<T> operator*(const T& s, const DiffOp<T>& a);

// Fourth-order operator with a = alpha + j; with shift s the zeroth-order term -s is added.
template <class T>
DiffOp<T> krall_operator(const T& a, const T& beta, const T& shift = T(0));

// L W_n^{(j)} - lambda_n W_n^{(j)}
template <class T>
Poly<T> krall_ode_residual(const RatParams<T>& rp, int n);

// L(a = A0 - n) - lambda_n(a = A0 - n) collected as n^2 L2 + n L1 + L0, A0 = alpha + j.
template <class T>
struct Pencil {
    DiffOp<T> L0, L1, L2;
};

template <class T>
Pencil<T> make_pencil(const T& alpha, const T& beta, int j);
template <class T>
DiffOp<T> pencil_at(const Pencil<T>& pc, int n);
// Largest coefficient of (n^2 L2 + n L1 + L0) - (L(A0-n) - lambda_n); zero means exact agreement.
template <class T>
T pencil_identity_defect(const Pencil<T>& pc, const T& alpha, const T& beta, int j, int n);
// (n^2 L2 + n L1 + L0) P_n^{(j)}
template <class T>
Poly<T> pencil_residual(const RatParams<T>& rp, int n);

// A P_n^{(j)} - n B P_n^{(j)} for beta = infinity.
template <class T>
Poly<T> gevp_residual(const RatParams<T>& rp, int n);

// Largest coefficient modulus of a residual polynomial.
double residual_norm(const Poly<cplx>& r);
double residual_norm(const Poly<Rational>& r);

struct ImaginaryCase {
    double s1 = 0.0, s2 = 0.0;
    int n = 0;
    cplx a_nm1;             // -B_n
    double modulus2 = 0.0;  // |a_{n-1}|^2
    double closed_modulus2 = 0.0;  // (1 + xi_n^2)/(1 + eta_n^2)
    bool positive = false;  // s1 s2 > 0
    std::string classification;
};

ImaginaryCase imaginary_case(double s1, double s2, int n);

// Continuous part of rho(theta).
double imaginary_density(double s1, double s2, double theta);

// int_0^{2 pi} P_n conj(P_m) rho dtheta + P_n(1) conj(P_m(1)) - h_n delta_nm, composite Gauss-Legendre.
cplx imaginary_orthogonality_residual(double s1, double s2, int n, int m, int panels);

// Contour integral of P_n(z) Q_m(1/z) z^{alpha-1}/(e^{2 pi i alpha}-1) over the cut unit circle,
// plus beta^{-1} P_n(1) Q_m(1) for finite beta, minus h_n delta_nm.
cplx hr_contour_residual(const RatParams<cplx>& rp, int n, int m, int panels);

// int_0^1 x^{alpha+j} W_n W_m dx + beta^{-1} W_n(1) W_m(1) with x = u^2 and composite Gauss-Legendre.
cplx krall_orthogonality(const RatParams<cplx>& rp, int n, int m, int panels);

// Elliptic model with omega1 = Lambda, omega3 = i Lambda, w = 1, gamma = 0.
ModelParams limit_params(double Lambda, cplx alpha, cplx beta);

struct LimitErrors {
    double Lambda = 0.0;
    double moment = 0.0;
    double d = 0.0;
    double b = 0.0;
    double P = 0.0;
    double max() const;
};

LimitErrors limit_errors(double Lambda, cplx alpha, cplx beta, int nmax);

}  // namespace elbp
