#include <cmath>
#include <limits>

#include "doctest.h"
#include "ergavg/averages.hpp"
#include "ergavg/random.hpp"
#include "../oracles.hpp"

using namespace ergavg;

namespace {

// Max deviation between a library output and the definition over a window
// that strictly contains every possible support point.
double deviationFromDefinition(const GridFunction& out, const GridFunction& f, const GridFunction& g,
                               std::int64_t N, std::int64_t nMin) {
  const std::int64_t lo = std::min(f.offset(), g.offset()) - 2;
  const std::int64_t hi = std::max(f.end() + oracle::isqrt(N), g.end() + N) + 2;
  const auto ref = oracle::average(f, g, N, nMin, lo, hi);
  double worst = 0.0;
  for (std::int64_t x = lo; x <= hi; ++x) worst = std::max(worst, std::abs(out(x) - ref[static_cast<std::size_t>(x - lo)]));
  return worst;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

Complex relErr(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(a), 1e-300); }

}  // namespace

TEST_SUITE("averages") {

TEST_CASE("delta inputs") {
  const auto d = GridFunction::delta(0);
  for (std::int64_t N : {1, 2, 5, 17}) CHECK(bilinearAverage(d, d, N) == GridFunction::delta(1, 1.0 / N));
  CHECK(upperHalfAverage(d, d, 4).isZero());
  CHECK(bilinearAverage(GridFunction(), d, 5).isZero());
  CHECK_THROWS_AS(bilinearAverage(d, d, 0), std::invalid_argument);
}

TEST_CASE("constant inputs at interior points") {
  const auto one = GridFunction::indicator(-100, 101);
  CHECK(bilinearAverage(one, one, 20)(0) == Complex(1.0));
  CHECK(upperHalfAverage(one, one, 20)(0).real() == doctest::Approx(0.5));
  CHECK(upperHalfAverage(one, one, 5)(0).real() == doctest::Approx(0.6));
}

TEST_CASE("operators match their definitions") {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    const auto f = randomPhases(rng, static_cast<std::int64_t>(rng.bits() % 21) - 10, 1 + rng.bits() % 30);
    const auto g = randomPhases(rng, static_cast<std::int64_t>(rng.bits() % 21) - 10, 1 + rng.bits() % 30);
    const auto N = static_cast<std::int64_t>(1 + rng.bits() % 60);
    CHECK(deviationFromDefinition(bilinearAverage(f, g, N), f, g, N, 1) < 1e-14);
    CHECK(deviationFromDefinition(upperHalfAverage(f, g, N), f, g, N, N / 2 + 1) < 1e-14);
  }
}

TEST_CASE("upper-half identity") {
  Rng rng(22);
  for (std::int64_t N = 2; N <= 80; ++N) {
    const auto f = randomPhases(rng, 0, 25), g = randomPhases(rng, -3, 25);
    const auto lhs = upperHalfAverage(f, g, N);
    const auto rhs = bilinearAverage(f, g, N) - scale(bilinearAverage(f, g, N / 2), static_cast<double>(N / 2) / N);
    const auto diff = lhs - rhs;
    CHECK(lpNorm(diff, kInf) < 1e-14);
  }
}

TEST_CASE("bilinearity and shift covariance") {
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const auto f = randomPhases(rng, 0, 20), f2 = randomPhases(rng, 4, 20), g = randomPhases(rng, -2, 30);
    const Complex alpha = rng.unitPhase() * 1.7;
    const std::int64_t N = 33;
    const auto lhs = upperHalfAverage(scale(f, alpha) + f2, g, N);
    const auto rhs = scale(upperHalfAverage(f, g, N), alpha) + upperHalfAverage(f2, g, N);
    CHECK(lpNorm(lhs - rhs, kInf) < 1e-13);
    const auto lhs2 = bilinearAverage(f, scale(g, alpha) + f2, N);
    const auto rhs2 = scale(bilinearAverage(f, g, N), alpha) + bilinearAverage(f, f2, N);
    CHECK(lpNorm(lhs2 - rhs2, kInf) < 1e-13);
    const std::int64_t k = static_cast<std::int64_t>(rng.bits() % 200) - 100;
    CHECK(bilinearAverage(shift(f, k), shift(g, k), N) == shift(bilinearAverage(f, g, N), k));
  }
}

TEST_CASE("linear smoothing") {
  const auto b = linearSmoothingAverage(GridFunction::delta(0), 4);
  CHECK(b(2).real() == doctest::Approx(0.5));
  Rng rng(24);
  for (std::int64_t N = 1; N <= 300; N += 7) {
    CHECK(lpNorm(linearSmoothingAverage(GridFunction::delta(0), N), kInf) <= 2.0 / N + 1e-15);
    const auto g = abs(randomPhases(rng, -5, 40));
    CHECK(lpNorm(linearSmoothingAverage(g, N), 1.0) == doctest::Approx(lpNorm(g, 1.0)).epsilon(1e-13));
    const auto h = randomPhases(rng, 3, 17);
    const auto out = linearSmoothingAverage(h, N);
    for (std::int64_t x = h.offset() - 2; x < h.end() + N + 2; ++x) {
      Complex ref = 0.0;
      for (std::int64_t n = 1; n <= N; ++n) ref += h(x + oracle::isqrt(n) - n);
      REQUIRE(std::abs(out(x) - ref / static_cast<double>(N)) < 1e-14);
    }
  }
  const auto w = smoothingWeights(10);
  int total = 0;
  for (int c : w.counts) total += c;
  CHECK(total == 10);
}

TEST_CASE("dual functions: examples") {
  const auto d = GridFunction::delta(0);
  CHECK(dualStar(d, d, 4).isZero());
  CHECK(dualStarStar(d, d, 2).isZero());
  const auto one = GridFunction::indicator(-100, 101);
  // h = 1, g = delta: (1/4) #{n in {3,4} : y = n - floor sqrt n}, and both land on 2.
  const auto ds = dualStar(one, d, 4);
  CHECK(ds(2).real() == doctest::Approx(0.5));
  CHECK(ds(1) == Complex(0.0));
  CHECK(dualStarStar(one, one, 4)(0).real() == doctest::Approx(0.5));
}

TEST_CASE("dual functions: both duality identities") {
  Rng rng(25);
  for (int t = 0; t < 50; ++t) {
    for (std::int64_t N : {1, 2, 3, 16, 63}) {
      const auto f = randomPhases(rng, static_cast<std::int64_t>(rng.bits() % 11) - 5, 1 + rng.bits() % 64);
      const auto g = randomPhases(rng, static_cast<std::int64_t>(rng.bits() % 11) - 5, 1 + rng.bits() % 64);
      const auto h = randomPhases(rng, static_cast<std::int64_t>(rng.bits() % 101) - 20, 1 + rng.bits() % 120);
      const Complex t0 = bilinearPairing(h, upperHalfAverage(f, g, N));
      if (std::abs(t0) < 1e-6) continue;
      CHECK(std::abs(relErr(t0, bilinearPairing(f, dualStar(h, g, N)))) < 1e-12);
      CHECK(std::abs(relErr(t0, bilinearPairing(g, dualStarStar(h, f, N)))) < 1e-12);
    }
  }
}

TEST_CASE("Hoelder constant is stable as N doubles") {
  Rng rng(26);
  double prev = 0.0;
  for (std::int64_t N = 16; N <= 1024; N *= 2) {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const auto f = randomSigns(rng, 0, 64), g = randomSigns(rng, 0, 64);
      worst = std::max(worst, lpNorm(upperHalfAverage(f, g, N), 1.0) / (lpNorm(f, 2.0) * lpNorm(g, 2.0)));
    }
    CHECK(worst <= 1.0 + 1e-12);  // Cauchy-Schwarz bound with p1 = p2 = 2, p = 1
    if (prev > 0.0) CHECK(worst <= 2.0 * prev);
    prev = worst;
  }
}

}  // TEST_SUITE
