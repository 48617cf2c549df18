/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace xfl {

enum class errc {
    invalid_argument,
    infeasible,
    parse,
    io,
    numeric,
    unsupported,
};

class Error : public std::runtime_error {
public:
    Error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

} // namespace xfl
