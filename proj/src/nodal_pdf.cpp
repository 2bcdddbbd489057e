#include "levelcurv/nodal_pdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "levelcurv/quadrature.hpp"
#include "table_builder.hpp"

namespace levelcurv {

namespace {

// generalized binomial coefficient C(alpha, n)
double binom_gen(double alpha, int n)
{
    double r = 1.0;
    for(int i = 0; i < n; i++)
        r *= (alpha - i) / (i + 1);
    return r;
}

}  // namespace

NodalPdf::NodalPdf(const GammaSet& gs)
    : a_(gs.a), b_(gs.b), c_(gs.c)
{
    k0_ = a_ / b_;
    pref_ = a_ * a_ * b_ * std::sqrt(c_);
    sqrtbc_ = std::sqrt(b_ + c_);
    n0_ = -15.0 * a_ * a_;
    n1_ = 10.0 * a_ * (b_ - 2.0 * c_);
    n2_ = -3.0 * b_ * b_ + 4.0 * b_ * c_ - 8.0 * c_ * c_;

    // Taylor coefficients about k0 of
    //   G(K) = sqrt(b+c) * sqrt(K) * N(K) + 8 (a + cK)^{5/2};
    // G has a triple zero at k0 (the cancellation of Eq-18's two terms), so
    // g_[0..2] vanish up to roundoff and are dropped.
    const double N0 = n0_ + n1_ * k0_ + n2_ * k0_ * k0_;
    const double N1 = n1_ + 2.0 * n2_ * k0_;
    const double s0 = a_ + c_ * k0_;
    std::array<double, 16> sq{}, pw{};
    for(int n = 0; n < 16; n++) {
        sq[n] = binom_gen(0.5, n) * std::pow(k0_, 0.5 - n);
        pw[n] = binom_gen(2.5, n) * std::pow(s0, 2.5 - n) * std::pow(c_, n);
    }
    for(int n = 0; n < 16; n++) {
        double prod = N0 * sq[n];
        if(n >= 1)
            prod += N1 * sq[n - 1];
        if(n >= 2)
            prod += n2_ * sq[n - 2];
        g_[n] = sqrtbc_ * prod + 8.0 * pw[n];
    }
    g_[0] = g_[1] = g_[2] = 0.0;

    cleft_ = 2.0 * a_ * a_ * std::sqrt(c_) / (b_ * b_ * sqrtbc_);
    cright_ = a_ * a_ * (3.0 * b_ * b_ - 4.0 * b_ * c_ + 8.0 * c_ * c_) / (4.0 * b_ * b_ * c_ * c_) -
              cleft_;
}

double NodalPdf::right_branch_direct(double K) const
{
    const double N = n0_ + K * (n1_ + K * n2_);
    const double am = a_ - b_ * K;
    const double ap = a_ + c_ * K;
    return pref_ * (std::sqrt(K) * N / (4.0 * am * am * am * std::pow(ap, 2.5)) +
                    2.0 / (am * am * am * sqrtbc_));
}

double NodalPdf::right_branch_series(double K) const
{
    const double u = K - k0_;
    double s = 0.0;
    for(int n = 15; n >= 3; n--)
        s = s * u + g_[n];
    const double ap = a_ + c_ * K;
    return -pref_ * s / (4.0 * b_ * b_ * b_ * std::pow(ap, 2.5) * sqrtbc_);
}

double NodalPdf::operator()(double K) const
{
    if(K <= 0.0) {
        if(K < -1e60 * k0_)
            return cleft_ / (-K * K * K);  // avoids cubing overflow
        const double am = a_ - b_ * K;
        return 2.0 * pref_ / (am * am * am * sqrtbc_);
    }
    if(K > 1e60 * k0_)
        return cright_ / (K * K * K);
    if(std::fabs(a_ - b_ * K) < 1e-3 * a_)
        return right_branch_series(K);
    return right_branch_direct(K);
}

double NodalPdf::cdf_left(double K) const
{
    const double am = a_ - b_ * K;
    return a_ * a_ * std::sqrt(c_) / (am * am * sqrtbc_);
}

double pdf_nodal(double K, const GammaSet& gs)
{
    return NodalPdf(gs)(K);
}

double mean_nodal(const SpectralMoments& moments)
{
    return -moments.k2bar / 6.0;
}

// ---------------------------------------------------------------------------
// tabulation

double CurvatureDistribution::normalization() const
{
    double s = 0;
    for(std::size_t i = 0; i + 1 < k_grid.size(); i++)
        s += 0.5 * (k_grid[i + 1] - k_grid[i]) * (density[i] + density[i + 1]);
    const double lo = -k_grid.front(), hi = k_grid.back();
    s += tail_coeff_left / (2.0 * lo * lo);
    s += tail_coeff_right / (2.0 * hi * hi);
    return s;
}

double CurvatureDistribution::mean() const
{
    double s = 0;
    for(std::size_t i = 0; i + 1 < k_grid.size(); i++)
        s += 0.5 * (k_grid[i + 1] - k_grid[i]) *
             (k_grid[i] * density[i] + k_grid[i + 1] * density[i + 1]);
    s -= tail_coeff_left / (-k_grid.front());
    s += tail_coeff_right / k_grid.back();
    return s;
}

double CurvatureDistribution::interpolate(double K) const
{
    if(K < k_grid.front())
        return tail_coeff_left / std::fabs(K * K * K);
    if(K > k_grid.back())
        return tail_coeff_right / (K * K * K);
    auto it = std::upper_bound(k_grid.begin(), k_grid.end(), K);
    std::size_t i = it == k_grid.begin() ? 0 : static_cast<std::size_t>(it - k_grid.begin()) - 1;
    i = std::min(i, k_grid.size() - 2);
    const double t = (K - k_grid[i]) / (k_grid[i + 1] - k_grid[i]);
    return density[i] + t * (density[i + 1] - density[i]);
}

double CurvatureDistribution::bin_mass(double lo, double hi) const
{
    if(!(hi > lo))
        return 0.0;
    // refined trapezoid of the interpolated table; include grid points that
    // fall inside the bin so the table's own resolution is never lost
    const int base = 24;
    std::vector<double> xs;
    xs.reserve(base + 8);
    for(int i = 0; i <= base; i++)
        xs.push_back(lo + (hi - lo) * i / base);
    auto first = std::upper_bound(k_grid.begin(), k_grid.end(), lo);
    auto last = std::lower_bound(k_grid.begin(), k_grid.end(), hi);
    xs.insert(xs.end(), first, last);
    std::sort(xs.begin(), xs.end());
    double s = 0;
    for(std::size_t i = 0; i + 1 < xs.size(); i++)
        s += 0.5 * (xs[i + 1] - xs[i]) * (interpolate(xs[i]) + interpolate(xs[i + 1]));
    return s;
}

CurvatureDistribution tabulate(const GammaSet& gs, const TabulateOptions& opts)
{
    const NodalPdf pdf(gs);
    const double k0 = pdf.singular_point();

    double k_lo = opts.k_lo, k_hi = opts.k_hi;
    const bool auto_range = !(k_lo < k_hi);
    if(!auto_range && !(k_lo < 0.0 && 0.0 < k_hi))
        throw std::invalid_argument("tabulate: need k_lo < 0 < k_hi");
    if(opts.n_points < 2)
        throw std::invalid_argument("tabulate: need n_points >= 2");
    if(auto_range) {
        // three rules per side: omitted mass < 1e-4 before correction, the
        // leading |K|^-3 correction itself accurate to < trap_tol, and the
        // same for the K-weighted (mean) tail
        const double cl = pdf.tail_coeff_left(), cr = std::max(pdf.tail_coeff_right(), 1e-300);
        const double tol = opts.trap_tol;
        const double mass_l = std::sqrt(cl / 2e-4);
        const double mass_r = std::sqrt(cr / 2e-4);
        const double acc_l = std::cbrt(3.0 * cl * k0 / tol);
        const double acc_r = std::cbrt(3.0 * cr * k0 / tol) + 4.0 * k0;
        const double mean_l = std::sqrt(6.0 * cl * k0 / tol);
        const double mean_r = std::sqrt(6.0 * cr * k0 / tol);
        k_lo = -std::max({mass_l, acc_l, mean_l, 8.0 * k0});
        k_hi = std::max({mass_r, acc_r, mean_r, 8.0 * k0});
    }

    auto built = detail::build_density_table([&pdf](double K) { return pdf(K); }, k_lo, k_hi,
                                             std::max(opts.n_points, 2001), k0, opts.trap_tol,
                                             opts.max_points, opts.exec);

    CurvatureDistribution dist;
    dist.k_grid = std::move(built.k);
    dist.density = std::move(built.f);
    dist.grid_error_estimate = built.error_estimate;
    dist.level_f = 0;
    dist.rho = gs.moments.rho;
    dist.k2bar = gs.moments.k2bar;
    dist.k4bar = gs.moments.k4bar;
    dist.field_variance = gs.moments.field_variance;
    dist.source = "closed-form";
    dist.tail_coeff_left = pdf.tail_coeff_left();
    dist.tail_coeff_right = pdf.tail_coeff_right();
    return dist;
}

SecondMomentResult truncated_second_moment(const GammaSet& gs, double lambda)
{
    if(!(lambda > 0))
        throw std::invalid_argument("truncated_second_moment: lambda must be > 0");
    const NodalPdf pdf(gs);
    const double a = pdf.a(), b = pdf.b(), c = pdf.c(), k0 = pdf.singular_point();

    // left side in closed form: kappa * 1/b^3 * [ -a^2/(2v^2) + 2a/v + ln v ]
    // between v = a and v = a + b*Lambda  (v = a - bK)
    auto left_part = [&](double L) {
        const double kappa = 2.0 * a * a * b * std::sqrt(c) / std::sqrt(b + c);
        auto anti = [&](double v) { return -a * a / (2.0 * v * v) + 2.0 * a / v + std::log(v); };
        return kappa / (b * b * b) * (anti(a + b * L) - anti(a));
    };
    auto right_part = [&](double L) {
        auto f = [&pdf](double K) { return K * K * pdf(K); };
        double s = 0;
        double edges[] = {0.0,  0.25 * k0, k0 * (1.0 - 1.1e-3), k0 * (1.0 + 1.1e-3),
                          4.0 * k0, 64.0 * k0, L};
        for(int i = 0; i + 1 < 7; i++) {
            const double lo = std::min(edges[i], L), hi = std::min(edges[i + 1], L);
            if(hi <= lo)
                continue;
            s += integrate_adaptive(f, lo, hi, 1e-10, 1e-14, 3000).value;
        }
        return s;
    };

    SecondMomentResult r;
    r.value = left_part(lambda) + right_part(lambda);
    const double m10 = left_part(10.0 * lambda) + right_part(10.0 * lambda);
    r.log_slope = (m10 - r.value) / std::log(10.0);
    r.tail_coefficient = pdf.tail_coeff_left() + pdf.tail_coeff_right();
    return r;
}

}  // namespace levelcurv
