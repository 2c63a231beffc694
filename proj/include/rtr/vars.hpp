#pragma once

#include <string>
#include <vector>

namespace rtr {

// Up to 23 symbols may be live in one process; each gets a byte in a monomial.
constexpr int kMaxVars = 23;

int var_id(const std::string& name);
const std::string& var_name(int id);
int var_count();

int zvar(int i);
int tvar();
int xvar();
int uvar();
int qvar();

bool is_zvar(int id);
int zindex(int id);

// Canonical order: z0 < z1 < ... < t < x < u < Q < parameters (alphabetical).
// "less" here means earlier, i.e. more significant in graded-lex.
bool var_before(int a, int b);

// Variable ids sorted canonically.
std::vector<int> canonical_var_order();

}  // namespace rtr
