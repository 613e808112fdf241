// Rotation on Z/QZ and the averages A_N(1_A, 1_A) along it.

#pragma once

#include <cstdint>
#include <vector>

namespace ergavg::lab {

class CyclicSystem {
 public:
  // Requires Q >= 1 and gcd(a, Q) = 1.
  CyclicSystem(std::int64_t Q, std::int64_t a);

  std::int64_t modulus() const { return Q_; }
  std::int64_t rotation() const { return a_; }
  // x - a k mod Q, in [0, Q).
  std::int64_t back(std::int64_t x, std::int64_t k) const;

 private:
  std::int64_t Q_;
  std::int64_t a_;
};

// Fibonacci numbers F_1 = 1, F_2 = 1, ... not exceeding limit.
std::vector<std::int64_t> fibonacciUpTo(std::int64_t limit);

// (1/Q) sum_x A_N(1_A, 1_A)(x) for A = [0, length) on the cyclic system,
// through the identity (1/N) sum_n |A cap (A + a(n - floor(sqrt n)))| / Q.
double cyclicMeanAverage(const CyclicSystem& sys, std::int64_t length, std::int64_t N);

// A_N(1_A, 1_A)(x) for every x in [0, Q), by direct summation.  O(Q N).
std::vector<double> cyclicAverageDirect(const CyclicSystem& sys, std::int64_t length, std::int64_t N);

}  // namespace ergavg::lab
