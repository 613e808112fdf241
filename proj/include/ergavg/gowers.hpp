// gowers.hpp
//
// Differencing operators and the unnormalised Gowers U^s norms on Z:
//
//   Delta_h f(x) = f(x) conj(f(x + h)),  Delta_{h1..hs} = Delta_{h1} ... Delta_{hs}
//   ||f||_{U^s}^{2^s} = sum_{x, h1..hs} Delta_{h1..hs} f(x)
//
// computed through ||f||_{U^s}^{2^s} = sum_h ||Delta_h f||_{U^{s-1}}^{2^{s-1}}
// down to the autocorrelation form ||f||_{U^2}^4 = sum_h |sum_x f(x) conj f(x+h)|^2.

#pragma once

#include <cstdint>
#include <span>

#include "ergavg/gridfn.hpp"

namespace ergavg {

GridFunction differencing(const GridFunction& f, std::span<const std::int64_t> shifts);

// ||f||_{U^s}^{2^s}.  s in [1, 5]; s >= 4 requires support length <= 32.
double gowersPower(const GridFunction& f, int s);
double gowersNorm(const GridFunction& f, int s);

struct U2Witness {
  // Frequency maximising |sum_x f(x) e(x xi)| over the grid j / M.
  double xi = 0.0;
  // |supp f| * |sum_x f(x) e(x xi)|^2.
  double bound = 0.0;
};

// M >= 8 * support length.  Throws std::runtime_error when the grid maximum
// of |f^|^2 falls more than 2% below its value on a 4x refined grid.
U2Witness u2Witness(const GridFunction& f, std::size_t M);

}  // namespace ergavg
