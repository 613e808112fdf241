#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "ergavg/random.hpp"
#include "ergavg/fft.hpp"
#include "ergavg/spectral.hpp"
#include "../oracles.hpp"

using namespace ergavg;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double maxDiff(const GridFunction& a, const GridFunction& b) { return lpNorm(a - b, kInf); }

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("torus transform examples") {
  const auto d0 = torusTransform(GridFunction::delta(0), 8);
  for (Complex z : d0.values) CHECK(std::abs(z - 1.0) < 1e-15);
  const auto d1 = torusTransform(GridFunction::delta(1), 4);
  const Complex expect[4] = {1.0, Complex(0, -1), -1.0, Complex(0, 1)};
  for (int j = 0; j < 4; ++j) CHECK(std::abs(d1.values[static_cast<std::size_t>(j)] - expect[j]) < 1e-15);
  CHECK_THROWS_AS(torusTransform(GridFunction::indicator(0, 9), 8), std::invalid_argument);
}

TEST_CASE("torus transform against direct DFT, Parseval, round trip") {
  Rng rng(41);
  for (int t = 0; t < 30; ++t) {
    const auto L = static_cast<std::int64_t>(1 + rng.bits() % 40);
    const auto f = randomPhases(rng, static_cast<std::int64_t>(rng.bits() % 2001) - 1000, L);
    const std::size_t M = 4 * static_cast<std::size_t>(L) + rng.bits() % 7;  // not always a power of two
    const auto grid = torusTransform(f, M);
    const auto ref = oracle::dft(f, M);
    double energy = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
      CHECK(std::abs(grid.values[j] - ref[j]) < 1e-11);
      energy += std::norm(grid.values[j]);
    }
    const double l2 = std::pow(lpNorm(f, 2.0), 2);
    CHECK(std::abs(energy / static_cast<double>(M) - l2) <= 1e-10 * l2);
    const auto back = inverseTorusTransform(grid, f.offset());
    CHECK(maxDiff(back, f) < 1e-10);
  }
}

TEST_CASE("frequency grid JSON round trip") {
  Rng rng(42);
  const auto grid = torusTransform(randomPhases(rng, 3, 5), 16);
  const auto back = frequencyGridFromJson(nlohmann::json::parse(toJson(grid).dump()));
  CHECK(back.M == grid.M);
  CHECK(back.values == grid.values);
  CHECK_THROWS(frequencyGridFromJson(nlohmann::json{{"M", 3}, {"re", {1.0}}, {"im", {0.0}}}));
}

TEST_CASE("cutoff profile") {
  CHECK(cutoffPsi(0.25) == 1.0);
  CHECK(cutoffPsi(1.2) == 0.0);
  CHECK(cutoffPsi(0.75) == doctest::Approx(0.5).epsilon(1e-15));
  Rng rng(43);
  double prev = 1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = 0.5 + 0.5 * i / 1000.0;
    const double v = cutoffPsi(t);
    CHECK(v <= prev);
    CHECK(std::abs(v - oracle::psi(t)) < 1e-15);
    CHECK(cutoffPsi(-t) == v);
    CHECK(v + cutoffPsi(1.5 - t) == doctest::Approx(1.0).epsilon(1e-15));
    prev = v;
  }
}

TEST_CASE("dyadic scales and cutoff identities") {
  CHECK(dyadicCeil(0.3) == 0.5);
  CHECK(dyadicCeil(0.25) == 0.25);
  CHECK(dyadicCeil(3.0) == 4.0);
  CHECK(dyadicCeil(1.0) == 1.0);
  CHECK_THROWS(dyadicCeil(0.0));
  Rng rng(44);
  for (int t = 0; t < 2000; ++t) {
    const double x = std::ldexp(rng.uniform(0.5, 1.0), -static_cast<int>(rng.bits() % 12));
    const double xi = rng.uniform(-0.5, 0.5);
    const CutoffSpec low{x, CutoffKind::lowpass}, high{x, CutoffKind::highpass}, band{x, CutoffKind::band};
    const CutoffSpec lowHalf{x / 2, CutoffKind::lowpass};
    CHECK(low(xi) + high(xi) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(band(xi) == doctest::Approx(low(xi) - lowHalf(xi)).epsilon(1e-15));
    const double S = low.dyadicScale();
    if (std::abs(xi) > S) CHECK(low(xi) == 0.0);
    if (std::abs(xi) <= S / 2) CHECK(low(xi) == 1.0);
  }
}

TEST_CASE("inverse transform table against quadrature") {
  Rng rng(45);
  for (int t = 0; t < 400; ++t) {
    const double y = t < 20 ? t * 0.25 : rng.uniform(-130.0, 130.0);
    CHECK(std::abs(cutoffPsiInverse(y) - oracle::psiInverse(y)) < 1e-12);
  }
  for (double y : {128.0, 150.0, 200.0}) CHECK(std::abs(oracle::psiInverse(y)) < 1e-12);
  for (int t = 0; t < 100; ++t) {
    const double y = rng.uniform(-100.0, 100.0), h = 1e-4;
    const double fd = (oracle::psiInverse(y + h) - oracle::psiInverse(y - h)) / (2 * h);
    CHECK(std::abs(cutoffPsiInverseDerivative(y) - fd) < 1e-7);
  }
}

TEST_CASE("kernel sums follow from Poisson summation") {
  // h sum_k Psi^(k h) = sum_m Psi(m / h) = 1 for h < 1.
  for (double h : {1.0 / 8, 0.5, 0.75}) {
    double s = 0.0;
    for (double y = -kCutoffInverseExtent; y <= kCutoffInverseExtent; y += h) s += h * cutoffPsiInverse(y);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
  }
  for (double x : {0.5, 0.25, 1.0 / 32}) {
    double low = 0.0, band = 0.0;
    const CutoffSpec lo{x, CutoffKind::lowpass}, bd{x, CutoffKind::band};
    const auto R = static_cast<std::int64_t>(cutoffKernelExtent(bd)) + 1;
    for (std::int64_t k = -R; k <= R; ++k) {
      low += cutoffKernel(lo, static_cast<double>(k));
      band += cutoffKernel(bd, static_cast<double>(k));
    }
    CHECK(low == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(band) < 1e-10);
  }
  CHECK_THROWS(cutoffKernel({0.25, CutoffKind::highpass}, 0.0));
}

TEST_CASE("band projection") {
  Rng rng(46);
  const auto f = randomPhases(rng, -5, 16);
  for (double x : {0.5, 0.3, 0.1, 0.01}) {
    const std::size_t M = 4096;
    const auto low = bandProject(f, {x, CutoffKind::lowpass}, M);
    const auto high = bandProject(f, {x, CutoffKind::highpass}, M);
    CHECK(maxDiff(low + high, f) < 1e-12);
    const auto band = bandProject(f, {x, CutoffKind::band}, M);
    const auto lowHalf = bandProject(f, {x / 2, CutoffKind::lowpass}, M);
    CHECK(maxDiff(band, low - lowHalf) < 1e-12);
  }
  // On a grid far wider than the kernel, projection equals convolution with the real-line kernel.
  const CutoffSpec spec{0.25, CutoffKind::lowpass};
  const auto proj = bandProject(f, spec, 4096);
  for (std::int64_t x = -60; x <= 60; ++x) {
    Complex ref = 0.0;
    for (std::int64_t z = f.offset(); z < f.end(); ++z) {
      ref += 0.25 * oracle::psiInverse(0.25 * static_cast<double>(x - z)) * f(z);
    }
    CHECK(std::abs(proj(x) - ref) < 1e-12);
  }
  CHECK_THROWS_AS(bandProject(f, {0.6, CutoffKind::lowpass}, 4096), std::invalid_argument);
  CHECK_THROWS_AS(bandProject(f, spec, 64), std::invalid_argument);
  CHECK(defaultGridSize(f) == 128);
}

TEST_CASE("low-pass operator norm probe") {
  Rng rng(47);
  for (int j = 1; j <= 10; ++j) {
    const double x = std::ldexp(1.0, -j);
    double worst = 0.0;
    for (int t = 0; t < 3; ++t) {
      const auto f = randomSigns(rng, 0, 16);
      const std::size_t M = nextPowerOfTwo(static_cast<std::size_t>(4 * kCutoffInverseExtent / x));
      worst = std::max(worst, lpNorm(bandProject(f, {x, CutoffKind::lowpass}, M), 1.0) / lpNorm(f, 1.0));
    }
    CHECK(worst <= 10.0);
  }
}

TEST_CASE("Dirichlet kernel") {
  CHECK(dirichletKernel(5, 0.0) == Complex(5.0));
  CHECK(std::abs(dirichletKernel(2, 0.5)) < 1e-15);
  CHECK(std::abs(dirichletKernel(3, 1.0 / 3)) < 1e-15);
  CHECK_THROWS(dirichletKernel(0, 0.1));
  Rng rng(48);
  for (int t = 0; t < 1000; ++t) {
    const auto k = static_cast<std::int64_t>(1 + rng.bits() % 300);
    const double xi = rng.uniform(-2.0, 2.0);
    Complex ref = 0.0;
    for (std::int64_t j = 0; j < k; ++j) ref += oracle::e(xi * static_cast<double>(j));
    CHECK(std::abs(dirichletKernel(k, xi) - ref) < 1e-11);
  }
}

TEST_CASE("discrete symbol") {
  CHECK(discreteSymbol({0.0, 0.0, 64, true}) == Complex(0.5));
  CHECK(std::abs(discreteSymbol({0.0, 0.5, 4, true})) < 1e-15);
  CHECK(discreteSymbol({0.0, 0.0, 7, false}) == Complex(1.0));
  Rng rng(49);
  for (int t = 0; t < 1000; ++t) {
    const auto N = static_cast<std::int64_t>(1 + rng.bits() % 500);
    const double xi1 = rng.uniform(-0.5, 0.5), xi2 = rng.uniform(-0.5, 0.5);
    Complex ref = 0.0;
    for (std::int64_t n = N / 2 + 1; n <= N; ++n) {
      ref += oracle::e(-xi1 * static_cast<double>(oracle::isqrt(n)) - xi2 * static_cast<double>(n));
    }
    ref /= static_cast<double>(N);
    const Complex m = discreteSymbol({xi1, xi2, N, true});
    CHECK(std::abs(m - ref) < 1e-11);
    CHECK(std::abs(m) <= static_cast<double>((N + 1) / 2) / static_cast<double>(N) + 1e-15);
    // xi1 = 0 through the Dirichlet kernel
    const std::int64_t first = N / 2 + 1;
    const Complex viaD = oracle::e(-xi2 * static_cast<double>(first)) * dirichletKernel(N - first + 1, -xi2) /
                         static_cast<double>(N);
    CHECK(std::abs(discreteSymbol({0.0, xi2, N, true}) - viaD) < 1e-11);
  }
}

TEST_CASE("continuous symbol") {
  for (std::int64_t N : {1, 16, 1000}) CHECK(std::abs(continuousSymbol(0.0, 0.0, N) - 0.5) < 1e-14);
  Rng rng(50);
  for (int t = 0; t < 300; ++t) {
    const auto N = static_cast<std::int64_t>(1 + rng.bits() % 1024);
    const double xi2 = rng.uniform(-0.5, 0.5);
    const double Nd = static_cast<double>(N);
    const Complex closed = (oracle::e(-xi2 * Nd) - oracle::e(-xi2 * Nd / 2)) /
                           (Complex(0.0, -2.0 * std::numbers::pi) * xi2 * Nd);
    CHECK(std::abs(continuousSymbol(0.0, xi2, N) - closed) < 1e-9);
  }
  const oracle::Rule rule = oracle::legendre(20);
  for (int t = 0; t < 20; ++t) {
    const std::int64_t N = 64;
    const double xi1 = rng.uniform(-0.5, 0.5), xi2 = rng.uniform(-0.5, 0.5);
    const Complex ref = oracle::integrate(
        [&](double s) { return oracle::e(-xi1 * std::sqrt(s) - xi2 * s); }, 32.0, 64.0, 400, rule) / 64.0;
    CHECK(std::abs(continuousSymbol(xi1, xi2, N) - ref) < 1e-10);
  }
  CHECK_THROWS(continuousSymbol(0.4, 0.4, 1 << 20, 16));
}

TEST_CASE("principal arc witnesses") {
  auto containsOrigin = [](const std::vector<ArcWitness>& w) {
    return std::any_of(w.begin(), w.end(), [](const ArcWitness& a) { return a.zeta == 0.0 && a.xi == 0.0; });
  };
  CHECK(containsOrigin(principalArcWitness(64, 0.4, 1.0 / 256)));
  CHECK_FALSE(containsOrigin(principalArcWitness(64, 0.6, 1.0 / 256)));
  for (const auto& w : principalArcWitness(256, 0.45, 1.0 / 1024)) CHECK(torusNorm(w.xi) != 0.125);
  CHECK(std::abs(discreteSymbol({0.0, 0.125, 256, true})) < 0.45);

  // Every grid point is classified correctly.
  const std::int64_t N = 16;
  const auto found = principalArcWitness(N, 0.2, 1.0 / 64);
  std::size_t expected = 0;
  for (int a = 0; a < 64; ++a) {
    for (int b = 0; b < 64; ++b) {
      const double m = std::abs(discreteSymbol({torusReduce(a / 64.0), torusReduce(b / 64.0), N, true}));
      if (m >= 0.2) ++expected;
    }
  }
  CHECK(found.size() == expected);
  for (const auto& w : found) {
    CHECK(w.absm == doctest::Approx(std::abs(discreteSymbol({w.zeta, w.xi, N, true}))).epsilon(1e-12));
    CHECK(w.xiTimesN == doctest::Approx(torusNorm(w.xi) * N));
  }
  std::ostringstream csv;
  writeWitnessCsv(csv, found);
  CHECK(csv.str().rfind("zeta,xi,absm,xiTimesN\n", 0) == 0);
  CHECK_THROWS(principalArcWitness(16, 0.2, 1.0 / 32));
}

TEST_CASE("model paraproduct") {
  Rng rng(51);
  const auto f = randomPhases(rng, 0, 8), g = randomPhases(rng, 0, 8);
  CHECK(modelParaproduct(GridFunction(), g, 16, 0, 1, 1, 16).isZero());
  CHECK(modelParaproduct(f, GridFunction(), 16, 0, 1, 1, 16).isZero());
  CHECK_THROWS_AS(modelParaproduct(f, g, 16, -2, 0, 1, 16), std::invalid_argument);
  CHECK_THROWS_AS(modelParaproduct(f, g, 16, 2, 0, 1, 16), std::invalid_argument);

  const auto base = modelParaproduct(f, g, 16, 0, 1, 1, 64);
  const auto moved = modelParaproduct(shift(f, 37), shift(g, 37), 16, 0, 1, 1, 64);
  CHECK(maxDiff(moved, shift(base, 37)) <= 1e-9);
  const auto f2 = randomPhases(rng, 2, 5);
  const auto sum = modelParaproduct(f + f2, g, 16, 0, 1, 1, 64);
  CHECK(maxDiff(sum, base + modelParaproduct(f2, g, 16, 0, 1, 1, 64)) <= 1e-12);

  const auto fine = modelParaproduct(f, g, 16, 0, 1, 1, 2048);
  const auto ref = oracle::paraproduct(f, g, 16, 0, 1, 1, -30, 50);
  double worst = 0.0;
  for (std::int64_t x = -30; x <= 50; ++x) worst = std::max(worst, std::abs(fine(x) - ref[static_cast<std::size_t>(x + 30)]));
  CHECK(worst < 1e-6);
}

TEST_CASE("shifted square function") {
  Rng rng(52);
  const auto f = randomPhases(rng, -3, 16);
  LacunarySet D{2.0, {4}};
  const auto eta = dilatedBandSymbol(0.45);

  BandSymbol zero;
  zero.eval = [](double) { return 0.0; };
  zero.supportBound = 0.25;
  zero.kernelExtent = 1.0;
  CHECK(lpNorm(shiftedSquareFunction(f, lacunarySet(2.0, 1, 64), zero, {}), kInf) == 0.0);

  BandSymbol notVanishing;
  notVanishing.eval = [](double xi) { return cutoffPsi(xi / 0.25); };
  notVanishing.supportBound = 0.25;
  CHECK_THROWS_AS(shiftedSquareFunction(f, D, notVanishing, {}), std::invalid_argument);
  BandSymbol tooWide = eta;
  tooWide.supportBound = 0.2;
  CHECK_THROWS_AS(shiftedSquareFunction(f, D, tooWide, {}), std::invalid_argument);
  CHECK_THROWS(dilatedBandSymbol(0.5));

  // One scale, no shift: |F^-1 eta_N * f| with the kernel taken from quadrature.
  const double a = 4.0, C = 0.45;
  const auto out = shiftedSquareFunction(f, D, eta, {});
  for (std::int64_t x = -80; x <= 80; ++x) {
    Complex conv = 0.0;
    for (std::int64_t z = f.offset(); z < f.end(); ++z) {
      const double u = static_cast<double>(x - z) / a;
      conv += (C * oracle::psiInverse(C * u) - 0.5 * C * oracle::psiInverse(0.5 * C * u)) / a * f(z);
    }
    CHECK(std::abs(out(x) - std::abs(conv)) < 1e-10);
  }
  // An integer shift lambda a translates the output.
  const auto shifted = shiftedSquareFunction(f, D, eta, {{4, 0.5}});
  for (std::int64_t x = -80; x <= 80; ++x) CHECK(std::abs(shifted(x + 2) - out(x)) < 1e-12);
}

}  // TEST_SUITE
