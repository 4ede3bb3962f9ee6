#pragma once

#include "elbp/common.hpp"

namespace elbp {

// Rectangular period lattice spanned by 2*omega1 (real) and 2*omega3 (positive imaginary).
struct Lattice {
    double omega1 = 1.0;
    cplx omega3{0.0, 1.0};
    cplx eta1;
    cplx eta3;
    double nome_h = 0.0;

    // theta constants at the lattice nome
    double theta1_prime0 = 0.0;
    double theta2_0 = 0.0;
    double theta3_0 = 0.0;
    double theta4_0 = 0.0;
    double modulus_k = 0.0;
    double modulus_kp = 0.0;
};

Lattice make_lattice(double omega1, double omega3_imag);

// theta_i(v) with nome q = lat.nome_h; i in 1..4.
cplx theta(const Lattice& lat, int i, cplx v);
inline cplx theta1(const Lattice& lat, cplx v) { return theta(lat, 1, v); }

cplx sigma(const Lattice& lat, cplx z);

// Distance from z to the nearest point 2m omega1 + 2m' omega3 (the zeros of sigma).
double lattice_distance(const Lattice& lat, cplx z);
inline constexpr double kLatticeTol = 1e-10;

// eta1*omega3 - eta3*omega1 - i*pi/2
cplx legendre_residual(const Lattice& lat);

struct SnCnDn {
    cplx sn, cn, dn;
};

// Jacobi functions of the lattice modulus; the argument is measured so that omega1 maps to K.
SnCnDn jacobi_sn_cn_dn(const Lattice& lat, double z);
SnCnDn jacobi_sn_cn_dn(const Lattice& lat, cplx z);

// Complete integral K of the lattice modulus.
double lattice_K(const Lattice& lat);

}  // namespace elbp
