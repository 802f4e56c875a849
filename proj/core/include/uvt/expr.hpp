#pragma once

#include <string>
#include <string_view>

#include "uvt/algebra.hpp"

namespace uvt {

// Algebra grammar: the scalar grammar plus generators E1, F2, K1, K1'
// (1-based), integer powers (negative ones only for Cartan monomials),
// division by scalars, and star(a, b) for the twisted product.
UElement parse_element(const Algebra& alg, std::string_view text, StarSign sign = StarSign::flipped);

// "F1*F2*K1^-1*K2'*E1"; "1" for the unit.
std::string render_monomial(const Monomial& m);
std::string render_monomial_latex(const Monomial& m);

// Deterministic rendering in MonomialOrder. Terms whose coefficients agree up
// to sign are grouped, e.g. "F1*E1 + (K1 - K1')/(v - v^-1)".
std::string render(const UElement& x);
std::string render_latex(const UElement& x);

// Words as "th1*th2" (or with another letter).
std::string render_word(const Word& w, const std::string& letter = "th");

}  // namespace uvt
