#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "ergavg/averages.hpp"
#include "ergavg/lab/experiments.hpp"
#include "ergavg/lab/fit.hpp"
#include "ergavg/lab/report.hpp"
#include "ergavg/lab/sharpness.hpp"
#include "ergavg/random.hpp"
#include "ergavg/variation.hpp"
#include "../oracles.hpp"

using namespace ergavg;
using namespace ergavg::lab;
using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

json stripDuration(const ExperimentReport& r) {
  json j = toJson(r);
  j.erase("durationSeconds");
  return j;
}

std::vector<Complex> directPartialSums(double zeta, double xi, const std::vector<std::int64_t>& scales) {
  std::vector<Complex> out;
  Complex s = 0.0;
  std::int64_t n = 0;
  for (auto N : scales) {
    while (n < N) {
      ++n;
      s += oracle::e(zeta * static_cast<double>(oracle::isqrt(n)) + xi * static_cast<double>(n));
    }
    out.push_back(s / static_cast<double>(N));
  }
  return out;
}

}  // namespace

TEST_SUITE("lab") {

TEST_CASE("fits") {
  const Series a{{1, 1}, {10, 0.1}, {100, 0.01}};
  const auto fa = fitScaling(a);
  CHECK(fa.slope == doctest::Approx(-1.0));
  CHECK(fa.residual < 1e-12);
  CHECK(fitScaling(Series{{1, 3}, {2, 3}, {4, 3}}).slope == doctest::Approx(0.0));
  CHECK(fitScaling(Series{{1, 1}, {4, 2}, {16, 4}}).slope == doctest::Approx(0.5));
  CHECK(fitSemiLog(Series{{0, 1}, {1, std::exp(-2.0)}, {2, std::exp(-4.0)}}).slope == doctest::Approx(-2.0));
  const auto lin = fitLinear(Series{{0, 1}, {1, 3}, {2, 5}, {3, 7.5}});
  CHECK(lin.slope == doctest::Approx(2.15));
  CHECK(lin.residual > 0.0);
  CHECK_THROWS_AS(fitScaling(Series{{1, 1}, {2, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(fitScaling(Series{{1, 1}, {2, 0}, {3, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(fitScaling(Series{{1, 1}, {1, 2}, {3, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(fitSemiLog(Series{{1, 1}, {2, -2}, {3, 1}}), std::invalid_argument);
}

TEST_CASE("non-finite numbers in JSON") {
  CHECK(numberToJson(kInf) == "inf");
  CHECK(numberToJson(-kInf) == "-inf");
  CHECK(std::isnan(numberFromJson(numberToJson(std::nan("")))));
  CHECK(numberFromJson(numberToJson(0.1)) == 0.1);
  CHECK(numberFromJson("inf") == kInf);
}

TEST_CASE("kinds and configs") {
  for (auto kind : allExperimentKinds()) CHECK(parseKind(kindName(kind)) == kind);
  CHECK_FALSE(parseKind("nope").has_value());
  CHECK_THROWS_AS(configFromJson(json{{"kind", "sharpness"}}), std::invalid_argument);
  CHECK_THROWS_AS(configFromJson(json{{"kind", "bogus"}, {"seed", 1}}), std::invalid_argument);
  const auto cfg = configFromJson(json{{"kind", "sharpness"}, {"seed", 9}, {"parameters", {{"Q", 1597}}}});
  CHECK(cfg.seed == 9);
  CHECK(configFromJson(toJson(cfg)).parameters == cfg.parameters);
  CHECK_THROWS_AS(resolveParameters(ExperimentKind::sharpness, json{{"Q", 1000}}), std::invalid_argument);
  CHECK_THROWS_AS(resolveParameters(ExperimentKind::sharpness, json{{"unknown", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(resolveParameters(ExperimentKind::improving, json{{"p", 3}, {"q", 2}}), std::invalid_argument);
  CHECK_THROWS_AS(resolveParameters(ExperimentKind::minorArc, json{{"trials", 1.5}}), std::invalid_argument);
  CHECK_THROWS_AS(resolveParameters(ExperimentKind::variationalRatio, json{{"r", 2}}), std::invalid_argument);
  CHECK_NOTHROW(resolveParameters(ExperimentKind::maximalRatio, json{{"r", 2}}));
  CHECK(resolveParameters(ExperimentKind::improving, json::object())["q"] == "inf");
}

TEST_CASE("partial exponential sums") {
  Rng rng(71);
  const auto D = lacunarySet(2.0, 1, 1 << 12).scales;
  for (int t = 0; t < 20; ++t) {
    const double zeta = rng.uniform(), xi = rng.uniform();
    const auto got = partialExpSums(zeta, xi, D);
    const auto ref = directPartialSums(zeta, xi, D);
    for (std::size_t i = 0; i < D.size(); ++i) CHECK(std::abs(got[i] - ref[i]) < 1e-12);
  }
  for (Complex z : partialExpSums(0.0, 0.0, D)) CHECK(z == Complex(1.0));
  const std::vector<std::int64_t> bad{3, 3};
  CHECK_THROWS(partialExpSums(0.1, 0.2, bad));
}

TEST_CASE("jump count of a fixed pair against chain enumeration") {
  const auto D = lacunarySet(2.0, 1, 1 << 20).scales;
  REQUIRE(D.size() <= 21);
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const double xi = 0.25 * (golden - std::floor(golden));
  const auto sums = partialExpSums(0.5, xi, D);
  CHECK(jumpCount(IndexedSequence(D, sums), 0.25).count == oracle::jumps(sums, 0.25));
  for (double delta : {2.0, 3.0}) CHECK(jumpCount(IndexedSequence(D, sums), delta).count == 0);
  CHECK(jumpCount(IndexedSequence(D, partialExpSums(0.0, 0.0, D)), 0.01).count == 0);
}

TEST_CASE("exponential sum variation of a fixed pair against chain enumeration") {
  const auto D = lacunarySet(2.0, 1, 1 << 19).scales;
  REQUIRE(D.size() <= 19);
  const auto sums = partialExpSums(0.3, 0.1234, D);
  const double v = variationNorm(IndexedSequence(D, sums), 3.0).value;
  CHECK(std::abs(v - oracle::variation(sums, 3.0)) < 1e-12 * v);
  CHECK(v >= 1.0);
  CHECK(variationNorm(IndexedSequence(D, partialExpSums(0.0, 0.0, D)), 3.0).value == 1.0);
}

TEST_CASE("cyclic system") {
  CHECK_THROWS(CyclicSystem(10, 4));
  const CyclicSystem sys(987, 610);
  CHECK(sys.back(0, 1) == 377);
  const auto fib = fibonacciUpTo(1000);
  CHECK(fib.back() == 987);
  CHECK(fib[fib.size() - 2] == 610);

  const CyclicSystem small(89, 55);
  for (std::int64_t L : {1, 9, 18, 44, 89}) {
    for (std::int64_t N : {1, 7, 100, 500}) {
      const auto direct = cyclicAverageDirect(small, L, N);
      double mean = 0.0;
      for (double v : direct) mean += v;
      mean /= 89.0;
      CHECK(cyclicMeanAverage(small, L, N) == doctest::Approx(mean).epsilon(1e-12));
      // pointwise by definition
      for (std::int64_t x : {0, 17, 88}) {
        double s = 0.0;
        for (std::int64_t n = 1; n <= N; ++n) {
          const auto in = [&](std::int64_t y) { return ((y % 89) + 89) % 89 < L; };
          s += (in(x - 55 * oracle::isqrt(n)) && in(x - 55 * n)) ? 1.0 : 0.0;
        }
        CHECK(direct[static_cast<std::size_t>(x)] == doctest::Approx(s / static_cast<double>(N)));
      }
    }
  }
  CHECK(cyclicMeanAverage(sys, 987, 987 * 987) == 1.0);
}

TEST_CASE("smoothing peak counts") {
  const auto counts = smoothingPeakCounts(1 << 16);
  for (int c : counts) REQUIRE(c <= 2);
  CHECK(counts[3] == 2);
  for (std::int64_t N = 1; N <= 300; ++N) {
    const double peak = lpNorm(linearSmoothingAverage(GridFunction::delta(0), N), kInf);
    CHECK(static_cast<double>(counts[static_cast<std::size_t>(N - 1)]) == doctest::Approx(peak * N).epsilon(1e-12));
  }
}

TEST_CASE("reports round trip and re-judge") {
  const auto report = runSharpness({ExperimentKind::sharpness, 5, json::object()});
  CHECK(report.pass);
  const auto back = reportFromJson(json::parse(toJson(report).dump()));
  CHECK(toJson(back) == toJson(report));
  auto rejudged = back;
  judge(rejudged);
  CHECK(rejudged.checks == report.checks);
  CHECK(rejudged.pass == report.pass);
  // Tampering with the stored points flips the verdict.
  auto tampered = back;
  for (auto& p : tampered.series.at("deviation")) p.y = 0.5;
  judge(tampered);
  CHECK_FALSE(tampered.pass);

  std::ostringstream csv, svg;
  writePointsCsv(csv, report);
  CHECK(csv.str().rfind("series,x,y\n", 0) == 0);
  CHECK(writePlotSvg(svg, report));
  CHECK(svg.str().find("<svg") != std::string::npos);
  ExperimentReport empty;
  std::ostringstream none;
  CHECK_FALSE(writePlotSvg(none, empty));
}

TEST_CASE("experiments are deterministic") {
  const ExperimentConfig a{ExperimentKind::variationalRatio, 11,
                           json{{"trials", 6}, {"maxSupport", 32}, {"capMinExp", 5}, {"capMaxExp", 8}}};
  CHECK(stripDuration(runExperiment(a)) == stripDuration(runExperiment(a)));
  auto b = a;
  b.seed = 12;
  CHECK(stripDuration(runExperiment(a)) != stripDuration(runExperiment(b)));
  const ExperimentConfig c{ExperimentKind::principalArc, 1, json::object()};
  CHECK(stripDuration(runExperiment(c)) == stripDuration(runExperiment(c)));
  CHECK_THROWS_AS(runSharpness(c), std::invalid_argument);
}

TEST_CASE("sharpness report") {
  const auto r = runSharpness({ExperimentKind::sharpness, 1, json{{"mu", {0.5, 1.0}}}});
  const auto& mean = r.series.at("mean");
  REQUIRE(mean.size() == 2);
  CHECK(std::abs(mean[0].y - std::pow(std::llround(0.5 * 987) / 987.0, 2)) <= 0.15 * 0.25);
  CHECK(mean[1].y == 1.0);
  // mu^2 / mu^(1/p) = mu^(2 - 1/p) grows as mu -> 0 exactly when p < 1/2.
  const auto r2 = runSharpness({ExperimentKind::sharpness, 1, json::object()});
  const auto& low = r2.series.at("powerRatio:p=0.4");
  CHECK(low.front().y < low.back().y);
}

}  // TEST_SUITE
