#include "levelcurv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace levelcurv {

namespace {

// 15-point Kronrod abscissae/weights and the embedded 7-point Gauss weights
// (positive half; node 0 listed last).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double lo, hi;
    double value;
    double error;
    bool operator<(const Panel& o) const
    {
        if(error != o.error)
            return error < o.error;
        return lo < o.lo;  // deterministic tie-break
    }
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi)
{
    const double h = 0.5 * (hi - lo);
    const double mid = 0.5 * (lo + hi);

    const double fc = f(mid);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;
    double resabs = kWgk[7] * std::fabs(fc);

    double fv1[7], fv2[7];
    for(int j = 0; j < 7; j++) {
        const double dx = h * kXgk[j];
        fv1[j] = f(mid - dx);
        fv2[j] = f(mid + dx);
        result_kronrod += kWgk[j] * (fv1[j] + fv2[j]);
        resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
        if(j % 2 == 1)
            result_gauss += kWg[j / 2] * (fv1[j] + fv2[j]);
    }

    const double mean = 0.5 * result_kronrod;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for(int j = 0; j < 7; j++)
        resasc += kWgk[j] * (std::fabs(fv1[j] - mean) + std::fabs(fv2[j] - mean));

    result_gauss *= h;
    result_kronrod *= h;
    resabs *= std::fabs(h);
    resasc *= std::fabs(h);

    double err = std::fabs(result_kronrod - result_gauss);
    if(resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if(resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(err, eps50 * resabs);

    return Panel{lo, hi, result_kronrod, err};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    double rel_tol, double abs_tol, int max_panels)
{
    QuadratureResult out;
    if(lo == hi) {
        out.converged = true;
        return out;
    }

    std::priority_queue<Panel> heap;
    heap.push(gk15(f, lo, hi));
    double total_value = heap.top().value;
    double total_error = heap.top().error;
    int panels = 1;

    const double min_width = 4.0 * std::numeric_limits<double>::epsilon();
    while(panels < max_panels) {
        const double tol = std::max(abs_tol, rel_tol * std::fabs(total_value));
        if(total_error <= tol)
            break;
        Panel worst = heap.top();
        // refuse to split panels at machine resolution; keep their estimate
        if(std::fabs(worst.hi - worst.lo) <=
           min_width * (std::fabs(worst.lo) + std::fabs(worst.hi) + 1.0))
            break;
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        Panel a = gk15(f, worst.lo, mid);
        Panel b = gk15(f, mid, worst.hi);
        total_value += a.value + b.value - worst.value;
        total_error += a.error + b.error - worst.error;
        heap.push(a);
        heap.push(b);
        panels++;
    }

    out.value = total_value;
    out.error_estimate = total_error;
    out.panels = panels;
    out.converged = total_error <= std::max(abs_tol, rel_tol * std::fabs(total_value));
    return out;
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f,
                                     double scale,
                                     double rel_tol, double abs_tol, int max_panels)
{
    const double half_pi = 1.57079632679489661923132169163975;
    auto mapped = [&f, scale](double theta) {
        const double c = std::cos(theta);
        const double x = scale * std::tan(theta);
        return f(x) * scale / (c * c);
    };
    return integrate_adaptive(mapped, 0.0, half_pi, rel_tol, abs_tol, max_panels);
}

}  // namespace levelcurv
