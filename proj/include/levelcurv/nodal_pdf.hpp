#pragma once

#include <array>
#include <string>
#include <vector>

#include "levelcurv/exec.hpp"
#include "levelcurv/gamma_set.hpp"

namespace levelcurv {

/// Tabulated curvature density P(K) or P_F(K) with its provenance.
/// The grid is graded so that the trapezoid rule over it, plus the analytic
/// |K|^-3 corrections beyond the ends, integrates to 1 within ~1e-6.
struct CurvatureDistribution {
    double level_f = 0;
    std::vector<double> k_grid;
    std::vector<double> density;

    double rho = 0, k2bar = 0, k4bar = 0, field_variance = 0;
    std::string source;  // closed-form | quadrature | oracle | field-mc
    double tail_coeff_left = 0;   // P(K) ~ tail_coeff_left * |K|^-3, K -> -inf
    double tail_coeff_right = 0;  // P(K) ~ tail_coeff_right * K^-3, K -> +inf
    double grid_error_estimate = 0;

    /// trapezoid over the grid + analytic |K|^-3 tails
    double normalization() const;
    double mean() const;
    /// linear interpolation inside the grid, tail law outside
    double interpolate(double K) const;
    /// probability mass of [lo, hi] by refined-trapezoid over the table
    double bin_mass(double lo, double hi) const;
};

/// Closed-form density of Gaussian curvature on the nodal surface.
/// For K <= 0:  P = 2 a^2 b sqrt(c) / ((a - bK)^3 sqrt(b+c)).
/// For K > 0 the two terms of the closed form share a removable singularity
/// at K = a/b; within |a - bK| < 1e-3 a the evaluator switches to the series
/// of the combined numerator about a/b, elsewhere it sums the terms directly.
class NodalPdf {
public:
    explicit NodalPdf(const GammaSet& gs);

    double operator()(double K) const;

    /// exact closed-form mass of (-inf, K] for K <= 0
    double cdf_left(double K) const;

    double tail_coeff_left() const { return cleft_; }
    double tail_coeff_right() const { return cright_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    /// location of the removable singularity, a/b
    double singular_point() const { return k0_; }

    /// direct two-term evaluation, valid for K > 0 away from a/b (used by
    /// the stable-path agreement tests)
    double right_branch_direct(double K) const;
    /// series evaluation of the combined form, valid near a/b
    double right_branch_series(double K) const;

private:
    double a_, b_, c_, k0_;
    double pref_;     // a^2 b sqrt(c)
    double sqrtbc_;   // sqrt(b + c)
    double n0_, n1_, n2_;
    std::array<double, 16> g_;  // Taylor coefficients of the combined numerator
    double cleft_, cright_;
};

double pdf_nodal(double K, const GammaSet& gs);

/// Long-known average Gaussian curvature of the nodal surface, -k2bar/6.
double mean_nodal(const SpectralMoments& moments);

struct TabulateOptions {
    double k_lo = 0;       // 0,0 means choose the range automatically
    double k_hi = 0;
    int n_points = 2001;   // base resolution; refinement may add points
    double trap_tol = 2.5e-7;
    int max_points = 400000;
    Exec exec = Exec::parallel;
};

CurvatureDistribution tabulate(const GammaSet& gs, const TabulateOptions& opts = {});

struct SecondMomentResult {
    double value;             // int_{-L}^{L} K^2 P(K) dK
    double log_slope;         // (M2(10L) - M2(L)) / ln 10
    double tail_coefficient;  // analytic limit of the slope
};

SecondMomentResult truncated_second_moment(const GammaSet& gs, double lambda);

}  // namespace levelcurv
