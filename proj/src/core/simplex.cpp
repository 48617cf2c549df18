/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"

namespace xfl {

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& fn,
                          std::span<const double> x0, std::span<const double> step,
                          const SimplexOptions& opt) {
    const std::size_t dim = x0.size();
    if (dim == 0)
        throw Error(errc::invalid_argument, "nelder_mead needs at least one variable");
    if (step.size() != dim)
        throw Error(errc::invalid_argument, "step size count must match variable count");

    constexpr double alpha = 1.0; // reflection
    constexpr double gamma = 2.0; // expansion
    constexpr double rho = 0.5;   // contraction
    constexpr double sigma = 0.5; // shrink

    std::vector<std::vector<double>> verts(dim + 1, std::vector<double>(x0.begin(), x0.end()));
    for (std::size_t i = 0; i < dim; ++i)
        verts[i + 1][i] += (step[i] != 0.0 ? step[i] : 1e-8);

    std::vector<double> fv(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i)
        fv[i] = fn(verts[i]);

    SimplexResult res;
    std::vector<std::size_t> order(dim + 1);

    auto sort_order = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    };

    std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);
    int iter = 0;
    for (; iter < opt.max_iter; ++iter) {
        sort_order();
        const std::size_t best = order[0];
        const std::size_t worst = order[dim];
        res.best_trace.push_back(fv[best]);

        // convergence on value spread and vertex spread
        const double fspread = std::abs(fv[worst] - fv[best]);
        const double fscale = std::max(1.0, std::abs(fv[best]));
        double xspread = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double s = std::abs(verts[worst][i] - verts[best][i]);
            const double sc = std::max(1.0, std::abs(verts[best][i]));
            xspread = std::max(xspread, s / sc);
        }
        if (fspread <= opt.f_tol * fscale && xspread <= opt.x_tol)
            break;

        for (std::size_t i = 0; i < dim; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k <= dim; ++k)
                if (k != worst)
                    s += verts[k][i];
            centroid[i] = s / static_cast<double>(dim);
        }

        for (std::size_t i = 0; i < dim; ++i)
            xr[i] = centroid[i] + alpha * (centroid[i] - verts[worst][i]);
        const double fr = fn(xr);

        if (fr < fv[order[0]]) {
            for (std::size_t i = 0; i < dim; ++i)
                xe[i] = centroid[i] + gamma * (xr[i] - centroid[i]);
            const double fe = fn(xe);
            if (fe < fr) {
                verts[worst] = xe;
                fv[worst] = fe;
            } else {
                verts[worst] = std::vector<double>(xr.begin(), xr.end());
                fv[worst] = fr;
            }
        } else if (fr < fv[order[dim - 1]]) {
            verts[worst] = std::vector<double>(xr.begin(), xr.end());
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            const std::vector<double>& base = outside ? xr : verts[worst];
            for (std::size_t i = 0; i < dim; ++i)
                xc[i] = centroid[i] + rho * (base[i] - centroid[i]);
            const double fc = fn(xc);
            if (fc < (outside ? fr : fv[worst])) {
                verts[worst] = xc;
                fv[worst] = fc;
            } else {
                const std::size_t keep = order[0];
                for (std::size_t k = 0; k <= dim; ++k) {
                    if (k == keep)
                        continue;
                    for (std::size_t i = 0; i < dim; ++i)
                        verts[k][i] = verts[keep][i] + sigma * (verts[k][i] - verts[keep][i]);
                    fv[k] = fn(verts[k]);
                }
            }
        }
    }

    sort_order();
    res.x = verts[order[0]];
    res.fx = fv[order[0]];
    res.iterations = iter;
    if (res.best_trace.empty() || res.best_trace.back() > res.fx)
        res.best_trace.push_back(res.fx);
    return res;
}

double golden_min(const std::function<double(double)>& fn, double lo, double hi, double rel_tol,
                  int max_iter) {
    if (!(hi > lo))
        throw Error(errc::invalid_argument, "golden_min needs hi > lo");
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c), fd = fn(d);
    for (int i = 0; i < max_iter; ++i) {
        if (b - a <= rel_tol * std::max(1.0, std::abs(a) + std::abs(b)))
            break;
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace xfl
