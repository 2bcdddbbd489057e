#pragma once

#include <functional>
#include <vector>

#include "levelcurv/exec.hpp"

namespace levelcurv::detail {

struct TableBuildResult {
    std::vector<double> k;
    std::vector<double> f;
    double error_estimate = 0;
};

/// Graded density table over [k_lo, k_hi] (k_lo < 0 < k_hi): geometric
/// tails, uniform core left of 0, quadratic spacing right of 0 against the
/// sqrt(K) cusp, then worst-cell bisection until the (1+|K|)-weighted
/// trapezoid error estimate drops below trap_tol. cusp_scale sets the core
/// half-width (the nodal a/b).
TableBuildResult build_density_table(const std::function<double(double)>& f,
                                     double k_lo, double k_hi, int n_base,
                                     double cusp_scale, double trap_tol, int max_points,
                                     Exec exec);

}  // namespace levelcurv::detail
