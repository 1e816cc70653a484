#pragma once

// Text grammar.
//
//   poly   := ["+"|"-"] term (("+"|"-") term)*
//   term   := power ("*"? power)*
//   power  := atom ("^" INT)?
//   atom   := number | number "i" | "i" | variable | "(" poly ")"
//   number := digits ["." digits] [("e"|"E") ["+"|"-"] digits] | digits "/" digits
//
// Mixed polynomials use z1..zn and conj(z1)..conj(zn); "w" is accepted as a
// synonym for "z", and a bare "z" or "w" means index 1. Real polynomials use
// x1..xm. A real map is "(" poly ("," poly)+ ")".

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "milnorkit/polynomial.hpp"

namespace milnorkit {

inline constexpr std::uint32_t kMaxExponent = 4096;
inline constexpr std::size_t kMaxVariableIndex = 256;

MixedPolynomial parse_mixed(std::string_view text, std::optional<std::size_t> n_vars = std::nullopt);

/// `var` is the variable letter ("x" by default; "t" for curve parameters, where a bare letter is index 1).
RealPolynomial parse_real_poly(std::string_view text, std::optional<std::size_t> n_vars = std::nullopt,
                               char var = 'x');

/// Throws DimensionError when fewer than two components are given.
RealPolyMap parse_real_map(std::string_view text, std::optional<std::size_t> m = std::nullopt);

/// Tuple of polynomials in one variable t, e.g. "(t, t^2, 1)". Used for approach curves.
std::vector<RealPolynomial> parse_curve(std::string_view text);

}  // namespace milnorkit
