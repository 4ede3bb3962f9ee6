#pragma once

#include <string>
#include <vector>

#include "elbp/lbp.hpp"

namespace elbp {

// e^{gamma alpha}/sigma(beta): the constant making f(wn) equal the moment c_n.
cplx moment_kappa(const ModelParams& p);

// R_0 = kappa sigma(beta)/(2 omega1) exp(alpha beta eta1/omega1)
cplx fourier_R0(const ModelParams& p, cplx kappa);

// Closed form of the Fourier coefficient A_n of
// f(z) = kappa sigma(z+alpha+beta)/sigma(z+alpha) e^{gamma z} with period T = 2 j omega1.
cplx fourier_A_closed(const ModelParams& p, int n, cplx kappa);
cplx fourier_A_closed(const ModelParams& p, int n);

struct FourierQuad {
    cplx value;
    bool pole_warning = false;  // a pole of f lies within 1e-6 of the contour
};

// Trapezoid rule over one period on the line Im z = shift_im.
FourierQuad fourier_A_quadrature(const ModelParams& p, int n, int panels, double shift_im = 0.0);
FourierQuad fourier_A_quadrature(const ModelParams& p, int n, int panels, double shift_im, cplx kappa);

// Oracle used against the closed form: coefficients with n > m (n < m) are integrated on the line
// 3/4 of the way towards the lower (upper) pole row, where the target term is not swamped by roundoff.
FourierQuad fourier_A_quadrature_oracle(const ModelParams& p, int n, int panels);

// Distances (v1, v2) from the real axis to the nearest poles of f below and above.
std::pair<double, double> pole_strip(const ModelParams& p);

// z_s = exp(i pi s w/(j omega1)), |s| <= S
std::vector<cplx> spectral_points(const ModelParams& p, int S);

struct TruncationChoice {
    int S = 0;
    double rho = 0.0;         // decay of |A_{m+jk}| per unit k
    double tail_bound = 0.0;  // bound on the omitted weight mass
};

TruncationChoice choose_truncation(const ModelParams& p, double tol);

struct SpectralMeasure {
    std::vector<int> s;        // carried indices, s = m mod j
    std::vector<cplx> points;  // z_s, divided by q on a non-unit circle
    std::vector<cplx> weights;
    double circle_radius = 1.0;
    cplx q{1.0, 0.0};
    int S = 0;
    double tail_bound = 0.0;
};

// Requires the periodicity condition; throws UsageError otherwise.
SpectralMeasure make_measure(const ModelParams& p, int S);

struct RescaledRadius {
    cplx chi;    // omega1 (gamma + chi) + eta1 beta = i pi m/j
    cplx q;      // e^{w chi}
    double r;    // 1/|q|
    cplx gamma_solved;
};

RescaledRadius rescaled_radius(const ModelParams& p, int j, int m);

// Measure for a non-periodic gamma: weights of the periodic gamma + chi divided by e^{chi alpha},
// points z_s/q, so that sum A_s (z_s/q)^n = c_n.
SpectralMeasure make_rescaled_measure(const ModelParams& p, int S);

cplx reconstruct_moment(const SpectralMeasure& m, int n);

struct BiorthResidual {
    cplx value;        // sum minus h_n delta_nm
    double tail_bound = 0.0;
};

// sum_s A_s P(x_s) Q(1/x_s) - h delta, x_s the measure points.
BiorthResidual biorthogonality_residual(const SpectralMeasure& m, const Poly<cplx>& P, const Poly<cplx>& Q,
                                        cplx h_if_diagonal);

struct PositivityInfo {
    bool positive = false;
    long J0 = 0, J1 = 0;
    double kappa1 = 0.0;
    bool symmetric = false;   // A_{-n} = A_n
    std::string subcase;      // "dn", "cn" or ""
    std::string reason;
};

PositivityInfo positivity_classify(const ModelParams& p);

// Weights divided by the k = 0 weight A_m.
std::vector<cplx> normalized_weights(const ModelParams& p, int kmax);

enum class CnDnCase { cn, dn };

ModelParams dn_params(const Lattice& lat, double w);
ModelParams cn_params(const Lattice& lat, double w);

// dn case: a_n = dn(w(n+1)) for even n, -cn(w(n+1)) for odd n; cn case swaps cn and dn.
cplx cndn_reflection(const Lattice& lat, double w, CnDnCase c, int n);

}  // namespace elbp
