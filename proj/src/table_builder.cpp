#include "table_builder.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace levelcurv::detail {

namespace {

struct Cell {
    double lo, hi;
    double f_lo, f_hi, f_mid;
    double err;
    bool operator<(const Cell& o) const
    {
        if(err != o.err)
            return err < o.err;
        return lo < o.lo;
    }
};

// |trapezoid - Simpson| weighted by (1 + |K|) so refinement serves the
// normalization and the mean integrals at once
double cell_error(const Cell& cl)
{
    const double h = cl.hi - cl.lo;
    const double trap = 0.5 * h * (cl.f_lo + cl.f_hi);
    const double simp = h / 6.0 * (cl.f_lo + 4.0 * cl.f_mid + cl.f_hi);
    const double w = 1.0 + std::max(std::fabs(cl.lo), std::fabs(cl.hi));
    return std::fabs(trap - simp) * w;
}

}  // namespace

TableBuildResult build_density_table(const std::function<double(double)>& f,
                                     double k_lo, double k_hi, int n_base,
                                     double cusp_scale, double trap_tol, int max_points,
                                     Exec exec)
{
    const double k0 = cusp_scale;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n_base) + 64);
    const double core_l = std::max(-4.0 * k0, k_lo), core_r = std::min(4.0 * k0, k_hi);
    const int n_tail_l = n_base / 5, n_core_l = 2 * n_base / 5;
    const int n_cusp = 2 * n_base / 5, n_tail_r = n_base / 5;
    if(k_lo < core_l * (1.0 + 1e-12)) {
        const double rl = std::pow(k_lo / core_l, 1.0 / n_tail_l);
        for(int i = 0; i < n_tail_l; i++)
            grid.push_back(k_lo / std::pow(rl, i));
    }
    for(int i = 0; i <= n_core_l; i++)
        grid.push_back(core_l + (0.0 - core_l) * i / n_core_l);
    const double tmax = std::sqrt(core_r);
    for(int i = 1; i <= n_cusp; i++) {
        const double t = tmax * i / n_cusp;
        grid.push_back(t * t);
    }
    if(k_hi > core_r * (1.0 + 1e-12)) {
        const double rr = std::pow(k_hi / core_r, 1.0 / n_tail_r);
        for(int i = 1; i <= n_tail_r; i++)
            grid.push_back(core_r * std::pow(rr, i));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // bulk evaluation of template nodes and midpoints: the data-parallel part
    const std::size_t n_nodes = grid.size();
    std::vector<double> vals(2 * n_nodes - 1);
    const auto n_eval = static_cast<long>(vals.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) if(exec == Exec::parallel)
#endif
    for(long i = 0; i < n_eval; i++) {
        const auto u = static_cast<std::size_t>(i);
        const double x = (u % 2 == 0) ? grid[u / 2] : 0.5 * (grid[u / 2] + grid[u / 2 + 1]);
        vals[u] = f(x);
    }

    std::priority_queue<Cell> heap;
    double total_err = 0;
    for(std::size_t i = 0; i + 1 < n_nodes; i++) {
        Cell cl{grid[i], grid[i + 1], vals[2 * i], vals[2 * i + 2], vals[2 * i + 1], 0};
        cl.err = cell_error(cl);
        total_err += cl.err;
        heap.push(cl);
    }

    std::size_t points = n_nodes;
    const auto max_pts = static_cast<std::size_t>(max_points);
    while(total_err > trap_tol && points < max_pts) {
        Cell worst = heap.top();
        heap.pop();
        total_err -= worst.err;
        const double mid = 0.5 * (worst.lo + worst.hi);
        Cell left{worst.lo, mid, worst.f_lo, worst.f_mid, f(0.5 * (worst.lo + mid)), 0};
        Cell right{mid, worst.hi, worst.f_mid, worst.f_hi, f(0.5 * (mid + worst.hi)), 0};
        left.err = cell_error(left);
        right.err = cell_error(right);
        total_err += left.err + right.err;
        heap.push(left);
        heap.push(right);
        points++;
    }

    std::vector<Cell> cells;
    cells.reserve(points);
    while(!heap.empty()) {
        cells.push_back(heap.top());
        heap.pop();
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) { return x.lo < y.lo; });

    TableBuildResult out;
    out.k.reserve(points + 1);
    out.f.reserve(points + 1);
    for(const Cell& cl : cells) {
        out.k.push_back(cl.lo);
        out.f.push_back(cl.f_lo);
    }
    out.k.push_back(cells.back().hi);
    out.f.push_back(cells.back().f_hi);
    out.error_estimate = total_err;
    return out;
}

}  // namespace levelcurv::detail
