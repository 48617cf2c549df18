/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace xfl {

struct SimplexOptions {
    int max_iter = 500;
    double f_tol = 1e-12; // relative spread of simplex values
    double x_tol = 1e-10; // relative spread of simplex vertices
};

struct SimplexResult {
    std::vector<double> x;
    double fx = 0.0;
    int iterations = 0;
    std::vector<double> best_trace; // best-so-far value per iteration, non-increasing
};

// Classic Nelder-Mead downhill simplex. Fully deterministic: ties are
// broken by vertex index, no randomness inside.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& fn,
                          std::span<const double> x0, std::span<const double> step,
                          const SimplexOptions& opt = {});

// Golden-section minimizer on [lo, hi]; the function must be unimodal
// there. rel_tol is on the bracket width relative to |x|.
double golden_min(const std::function<double(double)>& fn, double lo, double hi, double rel_tol,
                  int max_iter = 200);

} // namespace xfl
