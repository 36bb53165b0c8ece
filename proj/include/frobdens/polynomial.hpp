#pragma once

#include "frobdens/rational.hpp"

#include <cstdint>
#include <vector>

namespace frobdens {

/// Integer polynomial, coefficients in ascending degree order.
using IntPoly = std::vector<std::int64_t>;

int degree(const IntPoly& f);
bool is_monic(const IntPoly& f);
IntPoly derivative(const IntPoly& f);

/// Determinant of the Sylvester matrix, computed fraction-free.
BigInt resultant(const IntPoly& f, const IntPoly& g);
/// (-1)^{n(n-1)/2} Res(f, f') for monic f of degree >= 2.
BigInt discriminant(const IntPoly& f);

/// Degrees of the irreducible factors of monic f over F_p, sorted ascending,
/// by distinct-degree factorization. Throws NotSquarefreeModP when f is not
/// squarefree mod p. Requires p < 2^32 and degree <= 8.
std::vector<int> factor_degrees_mod_p(const IntPoly& f, std::uint64_t p);

}  // namespace frobdens
