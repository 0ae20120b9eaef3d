#pragma once

// Reference values computed independently of the library's discretization.

namespace verification {

/// (-Delta)^s exp(-|x|^2) at radius r in R^N (N = 1, 2), from the Fourier side:
/// N = 1: pi^-1/2 int_0^inf k^(2s) e^(-k^2/4) cos(k r) dk
/// N = 2: 1/2 int_0^inf k^(2s+1) e^(-k^2/4) J_0(k r) dk
double fractional_laplacian_gaussian(int N, double s, double r);

/// 1 / int_R (1 - cos y) |y|^(-1-2s) dy by adaptive quadrature.
double calibrated_constant_1d(double s);

/// int_{R^N} dx / (1 + |x|^q), closed form.
double weight_integral(int N, double q);

/// Same by quadrature on the radial variable.
double weight_integral_quadrature(int N, double q);

/// Solution of (-Delta)^s u = 1 in B_1, u = 0 outside: kappa (1 - |x|^2)_+^s.
double getoor_profile(int N, double s, double r);
double getoor_constant(int N, double s);

}  // namespace verification
