#pragma once

#include <functional>

namespace levelcurv {

struct QuadratureResult {
    double value = 0;
    double error_estimate = 0;
    int panels = 0;
    bool converged = false;
};

/// Globally adaptive Gauss-Kronrod 7/15 rule on [lo, hi]. The worst panel
/// (largest error estimate) is bisected until the summed estimate meets
/// max(abs_tol, rel_tol*|value|) or the panel budget runs out. Integrable
/// endpoint singularities are handled by the graded subdivision this
/// produces; panels below relative machine width stop splitting.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    double rel_tol = 1e-10, double abs_tol = 0.0,
                                    int max_panels = 2000);

/// Integral over [0, inf) via x = scale*tan(theta), theta in [0, pi/2).
QuadratureResult integrate_half_line(const std::function<double(double)>& f,
                                     double scale,
                                     double rel_tol = 1e-10, double abs_tol = 0.0,
                                     int max_panels = 2000);

}  // namespace levelcurv
