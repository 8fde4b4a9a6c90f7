#pragma once

#include <string>
#include <string_view>

#include "corrdyn/algebra/bipoly.hpp"

namespace corrdyn::algebra {

struct VarNames {
    std::string first = "z";
    std::string second = "w";
};

// Result of parsing: poly = scale * (the polynomial as written). scale is the
// positive integer that cleared any rational denominators (1 when none).
struct ParsedPoly {
    BiPoly poly;
    mpz_class scale = 1;
};

// Integer coefficients, the two named variables, + - * ^ and parentheses.
// Division is accepted only by nonzero constants; the denominators are
// cleared. Floats are rejected. Throws DomainError("parse_error").
ParsedPoly parse_poly(std::string_view text, const VarNames& names = {});

// Terms in descending canonical order, e.g. "w^2 - z^2 - 1".
std::string to_string(const BiPoly& p, const VarNames& names = {});
std::string to_string(const ZPoly& p, std::string_view var = "z");

}  // namespace corrdyn::algebra
