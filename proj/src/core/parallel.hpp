/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <functional>

namespace xfl {

// Thread budget from XFL_THREADS (0 or unset = hardware concurrency).
int thread_budget();

// Runs fn(i) for i in [0, n). Work is split into contiguous index ranges,
// each worker writes only its own indices, so results are identical to a
// sequential run. Exceptions are captured and the one with the lowest
// index is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace xfl
