// averages.hpp
//
// Averaging operators on Z along the pair (floor(sqrt n), n):
//
//   A_N(f,g)(x)      = (1/N) sum_{n<=N}       f(x - floor(sqrt n)) g(x - n)
//   upper half       = (1/N) sum_{N/2<n<=N}   f(x - floor(sqrt n)) g(x - n)
//   B_N g(x)         = (1/N) sum_{n<=N}       g(x + floor(sqrt n) - n)
//
// and the two dual functions of the trilinear form sum_x h(x) A~_N(f,g)(x):
//
//   dualStar(h,g)(x)     = (1/N) sum_{n>N/2} h(x + floor(sqrt n)) g(x + floor(sqrt n) - n)
//   dualStarStar(h,f)(x) = (1/N) sum_{n>N/2} h(x + n) f(x - floor(sqrt n) + n)
//
// so that  sum h A~_N(f,g) = sum f dualStar(h,g) = sum g dualStarStar(h,f).
// All operators are evaluated by direct finite summation over the exact
// output window.

#pragma once

#include <cstdint>

#include "ergavg/gridfn.hpp"

namespace ergavg {

GridFunction bilinearAverage(const GridFunction& f, const GridFunction& g, std::int64_t N);
GridFunction upperHalfAverage(const GridFunction& f, const GridFunction& g, std::int64_t N);
GridFunction linearSmoothingAverage(const GridFunction& g, std::int64_t N);
GridFunction dualStar(const GridFunction& h, const GridFunction& g, std::int64_t N);
GridFunction dualStarStar(const GridFunction& h, const GridFunction& f, std::int64_t N);

// Multiplicities c_k = #{n <= N : floor(sqrt n) - n = k}, indexed by
// k - kMin, kMin = floor(sqrt N) - N.  B_N g = (1/N) sum_k c_k g(. + k).
struct SmoothingWeights {
  std::int64_t kMin = 0;
  std::vector<int> counts;
};
SmoothingWeights smoothingWeights(std::int64_t N);

}  // namespace ergavg
