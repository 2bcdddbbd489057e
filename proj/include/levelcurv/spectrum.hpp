#pragma once

#include <string>
#include <vector>

namespace levelcurv {

enum class SpectrumKind { monochromatic, shells, ball, tabulated };

/// Isotropic radial power spectrum. The "radial measure" is power per
/// radial shell: for the solid ball that means density proportional to
/// k^2 dk, and a tabulated spectrum supplies that density directly.
struct SpectrumModel {
    SpectrumKind kind = SpectrumKind::monochromatic;
    std::vector<double> k;  // shell wavenumbers or table abscissae
    std::vector<double> w;  // shell weights or tabulated radial density
    double kmax = 1.0;      // ball radius
    double field_variance = 1.0;

    static SpectrumModel monochromatic_shell(double k0, double field_variance = 1.0);
    static SpectrumModel shell_mixture(std::vector<double> wavenumbers,
                                       std::vector<double> weights,
                                       double field_variance = 1.0);
    static SpectrumModel solid_ball(double kmax, double field_variance = 1.0);
    static SpectrumModel tabulated(std::vector<double> wavenumbers,
                                   std::vector<double> density,
                                   double field_variance = 1.0);

    /// throws std::invalid_argument on violated invariants
    void validate() const;

    /// largest wavenumber carrying power (sets the root-march step)
    double max_wavenumber() const;

    /// short human-readable tag for metadata headers
    std::string describe() const;
};

/// Radial-measure averages of k^2 and k^4 plus rho = (k2bar)^2 / k4bar.
struct SpectralMoments {
    double field_variance = 1.0;
    double k2bar = 1.0;
    double k4bar = 1.0;
    double rho = 1.0;

    static SpectralMoments from_bars(double k2bar, double k4bar, double field_variance = 1.0);
};

SpectralMoments moments(const SpectrumModel& spectrum);

/// Pair products of derivatives at a point, from isotropy:
///   <fx^2> = <f^2> k2bar/3 = -<f fxx>,
///   <fxx^2> = <f^2> k4bar/5,  <fxx fyy> = <fxy^2> = <f^2> k4bar/15.
struct PairDerivativeMoments {
    double f2;
    double fx2;
    double fxx2;
    double fxxfyy;  // equals fxy2
    double ffxx;
};

PairDerivativeMoments pair_derivative_moments(const SpectralMoments& m);

/// Inverse CDF of the radial measure; u in [0,1). Used by wave synthesis.
double radial_quantile(const SpectrumModel& spectrum, double u);

/// Parse "mono:<k0>", "ball:<kmax>", "shells:<k1:w1,k2:w2,...>" or read a
/// key=value spectrum file.
SpectrumModel parse_spectrum(const std::string& preset_or_path);

void write_spectrum_file(const SpectrumModel& spectrum, const std::string& path);

}  // namespace levelcurv
