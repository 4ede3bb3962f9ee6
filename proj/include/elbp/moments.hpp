#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "elbp/poly.hpp"
#include "elbp/series.hpp"

namespace elbp {

struct ModelParams {
    Lattice lat;
    cplx alpha, beta, gamma;
    double w = 0.0;
    // alpha = -alpha0 - 2 nu omega3, alpha0 reduced into [0, 2 omega1)
    double alpha0 = 0.0;
    double nu = 0.0;
    int j = 1;
    int m = 0;
};

ModelParams make_params(const Lattice& lat, cplx alpha, cplx beta, cplx gamma, double w, int j = 1, int m = 0);

// gamma making f(z) periodic with period 2 j omega1: j(omega1 gamma + eta1 beta) = i pi m.
cplx periodic_gamma(const Lattice& lat, cplx beta, int j, int m);
// |j(omega1 gamma + eta1 beta) - i pi m|
double periodicity_residual(const ModelParams& p);

ModelParams reflect(const ModelParams& p);
ModelParams with_alpha(const ModelParams& p, cplx alpha);
ModelParams with_beta(const ModelParams& p, cplx beta);
ModelParams with_gamma(const ModelParams& p, cplx gamma);
EllNumberCtx ctx_of(const ModelParams& p);

enum class Origin { elliptic, rational, spectral, user };
std::string origin_name(Origin o);

// Two-sided moment table c_n for n in [nmin, nmin + size).
struct MomentSeq {
    int nmin = 0;
    std::vector<cplx> values;
    Origin origin = Origin::user;

    int nmax() const { return nmin + static_cast<int>(values.size()) - 1; }
    bool has(int n) const { return n >= nmin && n <= nmax(); }
    cplx operator[](int n) const;
};

MomentSeq make_moments(const std::function<cplx(int)>& f, int lo, int hi, Origin o);
MomentSeq shifted(const MomentSeq& ms, int j);   // c_{n+j}
MomentSeq reflected(const MomentSeq& ms);        // c_{-n}
MomentSeq scaled_geometric(const MomentSeq& ms, cplx q);  // q^n c_n

cplx elliptic_moment(const ModelParams& p, int n);
MomentSeq elliptic_moments(const ModelParams& p, int N);

struct DetResult {
    cplx value;
    double rcond = 1.0;
    bool reliable = true;  // eps / rcond below 1e-6
};

DetResult lu_det(const Eigen::MatrixXcd& a);

DetResult toeplitz_delta_ex(const MomentSeq& ms, int n, int j = 0);
cplx toeplitz_delta(const MomentSeq& ms, int n, int j = 0);

Eigen::MatrixXcd frobenius_matrix(const Lattice& lat, const std::vector<cplx>& u, const std::vector<cplx>& v, cplx beta,
                                  cplx gamma1, cplx gamma2, int n);
cplx frobenius_H(const Lattice& lat, const std::vector<cplx>& u, const std::vector<cplx>& v, cplx beta, cplx gamma1,
                 cplx gamma2, int n);

// Bordered determinant with rows c_{k-i} (i < n) and last row z^k, divided by Delta_n.
Poly<cplx> det_poly_P(const MomentSeq& ms, int n);
Poly<cplx> det_poly_Q(const MomentSeq& ms, int n);
// Same bordered determinant for shifted moments, not normalized.
Poly<cplx> sigma_poly(const MomentSeq& ms, int n, int j);

cplx norm_h(const MomentSeq& ms, int n);
// Closed product form of h_n for elliptic moments.
cplx h_closed(const ModelParams& p, int n);

}  // namespace elbp
