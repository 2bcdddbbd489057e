#include "levelcurv/level_pdf.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "levelcurv/quadrature.hpp"
#include "table_builder.hpp"

namespace levelcurv {

std::complex<double> integrand_level(double gamma, double K, double F, const GammaSet& gs)
{
    const double half_gzz = 0.5 * gs.gammazz;
    const double gd = gs.gamma_prime[0][0] - gs.gamma_prime[0][1];
    const double gsum = gs.gamma_prime[0][0] + gs.gamma_prime[0][1];
    assert(gsum > 0 && "branch precondition: Re(Gs + i gamma) > 0 on the path");

    const std::complex<double> i_g(0.0, gamma);
    const std::complex<double> pole3 = half_gzz - i_g * K;
    const std::complex<double> z = gsum + i_g;
    const double fg = F * gs.gamma0xx;
    const std::complex<double> expo = fg * fg * (1.0 / z - 1.0 / gsum);
    return std::exp(expo) / (pole3 * pole3 * pole3 * (gd - i_g) * std::sqrt(z));
}

LevelPdf::LevelPdf(const GammaSet& gs, const LevelQuadratureOptions& opts)
    : gs_(gs), opts_(opts)
{
    if(!(opts_.rel_tol > 0) || opts_.rel_tol > 1e-2)
        throw std::invalid_argument("level_pdf: rel_tol must lie in (0, 1e-2]");
    if(opts_.max_subdivisions < 64)
        throw std::invalid_argument("level_pdf: need max_subdivisions >= 64");
    if(opts_.tan_scale <= 0)
        opts_.tan_scale = gs.gamma_prime[0][0] + gs.gamma_prime[0][1];

    // one-point calibration at F = 0 against the closed form, on the smooth
    // negative side
    const NodalPdf nodal(gs_);
    const double k_cal = -nodal.singular_point();
    const double raw = integral(k_cal, 0.0, 1e-12);
    if(!(raw > 0))
        throw std::runtime_error("level_pdf: calibration integral failed");
    calibration_ = nodal(k_cal) / raw;

    const double expected = gs_.a * gs_.a * gs_.b * std::sqrt(gs_.c) / 3.14159265358979323846 *
                            std::pow(gs_.gamma00, 3.5);
    if(std::fabs(calibration_ / expected - 1.0) > 1e-6)
        throw std::logic_error("level_pdf: calibration constant deviates from a^2 b sqrt(c)/pi");
}

double LevelPdf::integral(double K, double F, double rel_tol) const
{
    // conjugate symmetry: the full-line integral is 2 Re int_0^inf
    auto re_part = [this, K, F](double g) { return integrand_level(g, K, F, gs_).real(); };
    auto res = integrate_half_line(re_part, opts_.tan_scale, rel_tol, 0.0,
                                   opts_.max_subdivisions);
    if(!res.converged) {
        // densities decay three orders below the peak scale; accept absolute
        // convergence there before declaring failure
        const double peak_scale = std::fabs(calibration_) > 0 ? 1.0 / std::fabs(calibration_) : 1.0;
        if(res.error_estimate > 1e-10 * peak_scale)
            throw std::runtime_error("level_pdf: quadrature did not converge (error estimate " +
                                     std::to_string(res.error_estimate) + ")");
    }
    return 2.0 * res.value;
}

double LevelPdf::operator()(double K, double F) const
{
    return calibration_ * integral(K, F, opts_.rel_tol);
}

double LevelPdf::mean_numeric(double F) const
{
    const NodalPdf nodal(gs_);
    const double k0 = nodal.singular_point();
    const double lambda = 250.0 * k0;
    auto f = [this, F](double K) { return K * (*this)(K, F); };
    double s = 0;
    const double edges[] = {-lambda, -64.0 * k0, -8.0 * k0, 0.0, 8.0 * k0, 64.0 * k0, lambda};
    for(int i = 0; i + 1 < 7; i++)
        s += integrate_adaptive(f, edges[i], edges[i + 1], 3e-7, 1e-9, 4000).value;
    // fitted |K|^-3 tails: int_{L}^{inf} K * C/K^3 dK = C/L
    const double c_left = (*this)(-lambda, F) * lambda * lambda * lambda;
    const double c_right = (*this)(lambda, F) * lambda * lambda * lambda;
    s += -c_left / lambda + c_right / lambda;
    return s;
}

double LevelPdf::normalization_numeric(double F) const
{
    const NodalPdf nodal(gs_);
    const double k0 = nodal.singular_point();
    const double lambda = 250.0 * k0;
    auto f = [this, F](double K) { return (*this)(K, F); };
    double s = 0;
    const double edges[] = {-lambda, -64.0 * k0, -8.0 * k0, 0.0, 8.0 * k0, 64.0 * k0, lambda};
    for(int i = 0; i + 1 < 7; i++)
        s += integrate_adaptive(f, edges[i], edges[i + 1], 3e-7, 1e-9, 4000).value;
    const double c_left = (*this)(-lambda, F) * lambda * lambda * lambda;
    const double c_right = (*this)(lambda, F) * lambda * lambda * lambda;
    s += (c_left + c_right) / (2.0 * lambda * lambda);
    return s;
}

double pdf_level(double K, double F, const GammaSet& gs, const SpectralMoments& moments,
                 const LevelQuadratureOptions& opts)
{
    (void)moments;  // the GammaSet already carries them; kept for call-site clarity
    return LevelPdf(gs, opts)(K, F);
}

double mean_level(double F, const SpectralMoments& moments)
{
    return moments.k2bar / 6.0 * (F * F / moments.field_variance - 1.0);
}

CurvatureDistribution tabulate_level(const LevelPdf& pdf, double F, const TabulateOptions& opts)
{
    const GammaSet& gs = pdf.gammas();
    const NodalPdf nodal(gs);
    const double k0 = nodal.singular_point();

    double k_lo = opts.k_lo, k_hi = opts.k_hi;
    const bool auto_range = !(k_lo < k_hi);
    if(!auto_range && !(k_lo < 0.0 && 0.0 < k_hi))
        throw std::invalid_argument("tabulate_level: need k_lo < 0 < k_hi");
    if(auto_range) {
        // fit the tail coefficients at a probe radius, then apply the same
        // range rules as the nodal tabulation
        const double probe = 40.0 * k0;
        const double cl = std::max((pdf)(-probe, F) * probe * probe * probe, 1e-300);
        const double cr = std::max((pdf)(probe, F) * probe * probe * probe, 1e-300);
        const double tol = std::max(opts.trap_tol, 1e-7);
        k_lo = -std::max({std::sqrt(cl / 2e-4), std::sqrt(6.0 * cl * k0 / tol), 8.0 * k0});
        k_hi = std::max({std::sqrt(cr / 2e-4), std::sqrt(6.0 * cr * k0 / tol), 8.0 * k0});
    }

    auto built = detail::build_density_table([&pdf, F](double K) { return pdf(K, F); }, k_lo,
                                             k_hi, std::max(opts.n_points, 2001), k0,
                                             opts.trap_tol, opts.max_points, opts.exec);

    CurvatureDistribution dist;
    dist.k_grid = std::move(built.k);
    dist.density = std::move(built.f);
    dist.grid_error_estimate = built.error_estimate;
    dist.level_f = F;
    dist.rho = gs.moments.rho;
    dist.k2bar = gs.moments.k2bar;
    dist.k4bar = gs.moments.k4bar;
    dist.field_variance = gs.moments.field_variance;
    dist.source = "quadrature";
    const double lo = dist.k_grid.front(), hi = dist.k_grid.back();
    dist.tail_coeff_left = dist.density.front() * std::fabs(lo * lo * lo);
    dist.tail_coeff_right = dist.density.back() * hi * hi * hi;
    return dist;
}

}  // namespace levelcurv
