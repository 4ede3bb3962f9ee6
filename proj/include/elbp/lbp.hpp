#pragma once

#include <functional>
#include <vector>

#include "elbp/moments.hpp"

namespace elbp {

// d_n for n >= 0; b_n for n >= 0 with b_0 = 0.
struct RecurrenceCoeffs {
    std::vector<cplx> d;
    std::vector<cplx> b;
};

cplx closed_d(const ModelParams& p, int n);
cplx closed_b(const ModelParams& p, int n);
RecurrenceCoeffs closed_coeffs(const ModelParams& p, int nmax);

// d_n = T_{n+1} Delta_n / (T_n Delta_{n+1}), b_n = T_{n+1} Delta_{n-1} / (T_n Delta_n), T_n = Delta_n^{(1)}.
RecurrenceCoeffs coeffs_from_moments(const MomentSeq& ms, int nmax);

Poly<cplx> recurrence_P(const RecurrenceCoeffs& rc, int n);
std::vector<Poly<cplx>> recurrence_family(const RecurrenceCoeffs& rc, int nmax);

// Normalization B_n = P_n(0) of the closed form.
cplx closed_B(const ModelParams& p, int n);
Poly<cplx> closed_P_3E2(const ModelParams& p, int n);
// Partner polynomial from the closed form with (alpha, beta, gamma) reflected.
Poly<cplx> closed_Q_3E2(const ModelParams& p, int n);

// Q_n from P_n and P_{n+1}: (z^n P_{n+1}(1/z) - z^{n-1} P_n(1/z)) / P_{n+1}(0).
Poly<cplx> partner_Q(const std::vector<Poly<cplx>>& P, int n);

struct BaxterStep {
    cplx e1, e2;
    double residual_P = 0.0;  // P_{n+1} - (z P_n - e1 Q_n^*)
    double residual_Q = 0.0;  // Q_{n+1} - (z Q_n - e2 P_n^*)
};

BaxterStep baxter_coeffs(const std::vector<Poly<cplx>>& P, const std::vector<Poly<cplx>>& Q, int n);

// Szego step residual: P_{n+1} - (z P_n - a_n z^n conj(P_n)(1/z)) with a_n = -P_{n+1}(0).
double szego_residual(const std::vector<Poly<cplx>>& P, int n);

Poly<cplx> rescale_P(const Poly<cplx>& P, cplx q);  // q^n P(z/q)
Poly<cplx> rescale_Q(const Poly<cplx>& Q, cplx q);  // q^{-n} Q(qz)
RecurrenceCoeffs rescale_coeffs(const RecurrenceCoeffs& rc, cplx q);

// D z^n = mu_n z^{n-1}
Poly<cplx> d_operator_apply(const std::function<cplx(int)>& mu, const Poly<cplx>& f);
Poly<cplx> d_operator_apply(const EllNumberCtx& ctx, cplx alpha, const Poly<cplx>& f);

}  // namespace elbp
