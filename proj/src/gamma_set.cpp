#include "levelcurv/gamma_set.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace levelcurv {

namespace {

double det2(double a, double b, double c, double d)
{
    return a * d - b * c;
}

}  // namespace

PairMomentMatrix pair_moment_matrix(const SpectralMoments& mo)
{
    const auto p = pair_derivative_moments(mo);
    PairMomentMatrix pm;
    pm.m = {{{p.f2, p.ffxx, p.ffxx}, {p.ffxx, p.fxx2, p.fxxfyy}, {p.ffxx, p.fxxfyy, p.fxx2}}};
    return pm;
}

GammaSet gamma_set(const SpectralMoments& mo)
{
    const auto M = pair_moment_matrix(mo).m;

    // leading principal minors; the matrix is positive definite for every
    // valid spectrum (it only degenerates at rho = 6/5, beyond rho <= 1)
    const double minor1 = M[0][0];
    const double minor2 = det2(M[0][0], M[0][1], M[1][0], M[1][1]);
    const double det = M[0][0] * det2(M[1][1], M[1][2], M[2][1], M[2][2]) -
                       M[0][1] * det2(M[1][0], M[1][2], M[2][0], M[2][2]) +
                       M[0][2] * det2(M[1][0], M[1][1], M[2][0], M[2][1]);
    const double scale = std::fabs(M[0][0] * M[1][1] * M[2][2]);
    const double tiny = 1e-14 * scale;
    if(!(minor1 > tiny) || !(minor2 > tiny * 1e-0) || !(std::fabs(det) > tiny)) {
        std::string which = !(minor1 > tiny) ? "1 (<f^2>)"
                            : !(minor2 > tiny) ? "2 (f, fxx block)"
                                               : "3 (full determinant)";
        throw std::runtime_error("gamma: pair-moment matrix not invertible, leading minor " +
                                 which + " vanishes (degenerate spectrum)");
    }

    // adjugate / det
    Mat3 inv;
    inv[0][0] = det2(M[1][1], M[1][2], M[2][1], M[2][2]) / det;
    inv[0][1] = -det2(M[0][1], M[0][2], M[2][1], M[2][2]) / det;
    inv[0][2] = det2(M[0][1], M[0][2], M[1][1], M[1][2]) / det;
    inv[1][0] = inv[0][1];
    inv[1][1] = det2(M[0][0], M[0][2], M[2][0], M[2][2]) / det;
    inv[1][2] = -det2(M[0][0], M[0][1], M[2][0], M[2][1]) / det;
    inv[2][0] = inv[0][2];
    inv[2][1] = inv[1][2];
    inv[2][2] = det2(M[0][0], M[0][1], M[1][0], M[1][1]) / det;

    GammaSet gs;
    gs.moments = mo;
    gs.gamma00 = 1.0 / mo.field_variance;
    gs.gammazz = 3.0 / (mo.field_variance * mo.k2bar);
    gs.gammaxyxy = 15.0 / (mo.field_variance * mo.k4bar);
    gs.gamma3 = inv;
    gs.gamma_prime = {{{inv[1][1], inv[1][2]}, {inv[2][1], inv[2][2]}}};
    gs.gamma0xx = inv[0][1];
    gs.a = 0.5 * gs.gammazz / gs.gamma00;
    gs.b = (inv[1][1] - inv[1][2]) / gs.gamma00;
    gs.c = (inv[1][1] + inv[1][2]) / gs.gamma00;

    // cross-check the closed forms; disagreement means a broken build, not
    // bad input, hence logic_error
    const double rho = mo.rho;
    const double f2k4 = mo.field_variance * mo.k4bar;
    const double xxxx_closed = 15.0 / 4.0 * (9.0 - 5.0 * rho) / ((6.0 - 5.0 * rho) * f2k4);
    const double xxyy_closed = 15.0 / 4.0 * (-3.0 + 5.0 * rho) / ((6.0 - 5.0 * rho) * f2k4);
    if(std::fabs(inv[1][1] - xxxx_closed) > 1e-8 * std::fabs(xxxx_closed) ||
       std::fabs(inv[1][2] - xxyy_closed) > 1e-8 * std::fabs(xxxx_closed))
        throw std::logic_error("gamma: matrix inverse disagrees with closed forms");
    if(!(gs.a > 0) || !(gs.b > 0) || !(gs.c > 0))
        throw std::logic_error("gamma: derived constants a, b, c must be positive");

    return gs;
}

double identity13_residual(const GammaSet& gs)
{
    const double half_xyxy = 0.5 * gs.gammaxyxy;
    const double diff = gs.gamma_prime[0][0] - gs.gamma_prime[0][1];
    return std::fabs(diff - half_xyxy) / half_xyxy;
}

double gamma_0xx(const SpectralMoments& moments)
{
    return gamma_set(moments).gamma0xx;
}

}  // namespace levelcurv
