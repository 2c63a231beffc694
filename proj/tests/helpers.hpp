#pragma once

#include <string>

#include "rtr/curve.hpp"
#include "rtr/expr.hpp"

namespace rtr::test {

inline Frac P(const std::string& s) { return parse_expr(s, variable_lookup()); }
inline std::string curve_path(const std::string& name) { return std::string(RTR_CURVES_DIR) + "/" + name; }
inline CurveConfig curve_file(const std::string& name) { return load_curve_config(curve_path(name)); }

inline CurveConfig inline_curve(const std::string& x, const std::string& y, const std::string& sigma,
                                const std::string& extra = "") {
    return parse_curve_config("[curve]\nx = " + x + "\ny = " + y + "\nsigma = " + sigma + "\n" + extra);
}

}  // namespace rtr::test
