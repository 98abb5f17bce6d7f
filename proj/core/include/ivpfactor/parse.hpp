#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ivpfactor/poly.hpp"

namespace ivp {

// Shared expression grammar:
//
//   factored := factor ('*' factor)* ['/' denominator]
//   factor   := '(' polynomial ')' ['^' positive-integer]
//   denominator := 'p' '^' integer | integer ['^' integer]
//
// where polynomial is an integer-coefficient polynomial in x, e.g.
// "(x^2+9)*(x-5)^3*(x-1)*(x-7)".  A denominator suffix is not trusted: the
// fixed divisor valuation n is always computed, and callers may compare it
// against claimed_n.

struct ParseResult {
    FactoredPolynomial fp;
    // Valuation of a "/ p^n" style suffix, if present.
    std::optional<long> claimed_n;
    std::vector<std::string> warnings;
};

// Parses and validates; structural validation failures throw ComputeError,
// irreducibility that cannot be verified ends up in warnings.
ParseResult parse_factored_poly(std::string_view text, const PadicContext& ctx);

// Whole-string integer-coefficient polynomial, e.g. "x^2-3x+1".
Polynomial parse_integer_polynomial(std::string_view text);

std::string format_factored(const FactoredPolynomial& fp);

}  // namespace ivp
