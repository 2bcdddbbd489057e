#pragma once

#include <complex>

#include "levelcurv/nodal_pdf.hpp"

namespace levelcurv {

struct LevelQuadratureOptions {
    double rel_tol = 1e-8;      // in (0, 1e-2]
    int max_subdivisions = 6000;  // >= 64
    double tan_scale = 0;       // gamma = scale*tan(theta); 0 picks Gxxxx+Gxxyy
};

/// Integrand of the one-dimensional contour integral for P_F(K), evaluated
/// on the real gamma axis:
///   [1/(Gzz/2 - i g K)^3] [1/(Gd - i g)] [1/sqrt(Gs + i g)]
///     * exp((F G0xx)^2 [1/(Gs + i g) - 1/Gs])
/// with Gd = Gxxxx - Gxxyy, Gs = Gxxxx + Gxxyy and the principal square
/// root. Re(Gs + i g) = Gs > 0 on the whole path, so the branch is
/// continuous and the exponential factor has modulus <= 1.
std::complex<double> integrand_level(double gamma, double K, double F, const GammaSet& gs);

/// Level-surface density evaluator. The multiplicative constant in front of
/// the integral is fixed once by matching the F=0 integral to the nodal
/// closed form at a single K, then holds for all (K, F); construction
/// asserts that it agrees with a^2 b sqrt(c)/pi * Gamma00^{7/2} to 1e-6.
class LevelPdf {
public:
    explicit LevelPdf(const GammaSet& gs, const LevelQuadratureOptions& opts = {});

    /// density at curvature K on the level surface f = F
    double operator()(double K, double F) const;

    double calibration_constant() const { return calibration_; }
    const GammaSet& gammas() const { return gs_; }

    /// int K P_F(K) dK by adaptive quadrature with fitted |K|^-3 tails
    double mean_numeric(double F) const;
    /// int P_F(K) dK the same way (should be 1)
    double normalization_numeric(double F) const;

private:
    GammaSet gs_;
    LevelQuadratureOptions opts_;
    double calibration_;

    double integral(double K, double F, double rel_tol) const;
};

double pdf_level(double K, double F, const GammaSet& gs, const SpectralMoments& moments,
                 const LevelQuadratureOptions& opts = {});

/// Long-known level-surface average curvature, (1/6) k2bar (F^2/<f^2> - 1).
double mean_level(double F, const SpectralMoments& moments);

/// Tabulates P_F on the same graded-grid scheme as the nodal tabulation,
/// with tail coefficients fitted at the grid ends.
CurvatureDistribution tabulate_level(const LevelPdf& pdf, double F,
                                     const TabulateOptions& opts = {});

}  // namespace levelcurv
