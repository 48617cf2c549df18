/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <charconv>
#include <string>

namespace xfl {

// Locale-independent double formatting ('.' decimal separator always).
// Equivalent to printf "%.<prec>g" but immune to any global locale.
inline std::string fmt_g(double v, int precision = 12) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

} // namespace xfl
