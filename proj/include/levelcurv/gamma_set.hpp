#pragma once

#include <array>

#include "levelcurv/spectrum.hpp"

namespace levelcurv {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Symmetric matrix of pair product averages, rows/cols (f, fxx, fyy).
struct PairMomentMatrix {
    Mat3 m;
};

PairMomentMatrix pair_moment_matrix(const SpectralMoments& moments);

/// Inverse pair-moment matrix and the scalars derived from it. The scalars
/// a, b, c parametrize the curvature distributions:
///   a = (1/2) Gamma_zz / Gamma_00          [length^2]
///   b = (Gamma_xxxx - Gamma_xxyy)/Gamma_00 [length^4], equals 15/(2 k4bar)
///   c = (Gamma_xxxx + Gamma_xxyy)/Gamma_00 [length^4]
struct GammaSet {
    double gamma00;    // 1/<f^2>
    double gammazz;    // 1/<fz^2>
    double gammaxyxy;  // 1/<fxy^2>
    Mat3 gamma3;       // inverse of the pair moment matrix
    Mat2 gamma_prime;  // lower-right 2x2 block of gamma3
    double gamma0xx;   // (f, fxx) entry of gamma3
    double a, b, c;
    SpectralMoments moments;
};

/// Builds the full set by direct 3x3 inversion and cross-checks the closed
/// forms Gamma_zz = 3/(<f^2> k2bar),
/// Gamma_xxxx = (15/4)(9-5rho)/((6-5rho) k4bar <f^2>),
/// Gamma_xxyy = (15/4)(-3+5rho)/((6-5rho) k4bar <f^2>).
/// Throws std::runtime_error naming the failing leading minor when the
/// pair-moment matrix is numerically singular.
GammaSet gamma_set(const SpectralMoments& moments);

/// |Gxxxx - Gxxyy - Gxyxy/2| / (Gxyxy/2); exact zero in reals.
double identity13_residual(const GammaSet& gs);

/// (f, fxx) entry of the inverse pair-moment matrix.
double gamma_0xx(const SpectralMoments& moments);

}  // namespace levelcurv
