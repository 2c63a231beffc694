#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtr/frac.hpp"

namespace rtr {

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& msg, size_t p) : std::runtime_error(msg), pos(p) {}
};

using SymbolLookup = std::function<std::optional<Frac>(const std::string&)>;

// Grammar: sum := term (('+'|'-') term)*, term := unary (('*'|'/') unary)*,
// unary := '-' unary | power, power := atom ('^' ['-'] integer)?,
// atom := integer | identifier | '(' sum ')'.
Frac parse_expr(const std::string& text, const SymbolLookup& lookup);

// Lookup that maps every identifier to a registered variable of the same name.
SymbolLookup variable_lookup();

struct ParsedDiff {
    Frac coeff;
    std::vector<int> dvars;  // indices i of the dz_i factors, sorted
};

// Accepts dz<i> factors (each at most once) in addition to parse_expr.
ParsedDiff parse_diff(const std::string& text, const SymbolLookup& lookup);

// "coeff*dz0*...*dzn" in canonical form.
std::string diff_to_string(const Frac& coeff, int arity);

}  // namespace rtr
