#include "ergavg/lab/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "common.hpp"
#include "ergavg/gridfn.hpp"

namespace ergavg::lab {

CyclicSystem::CyclicSystem(std::int64_t Q, std::int64_t a) : Q_(Q), a_(a) {
  if (Q < 1) throw std::invalid_argument("CyclicSystem: Q must be >= 1");
  if (std::gcd(((a % Q) + Q) % Q, Q) != 1) throw std::invalid_argument("CyclicSystem: rotation must be coprime to Q");
}

std::int64_t CyclicSystem::back(std::int64_t x, std::int64_t k) const {
  const __int128 v = static_cast<__int128>(x) - static_cast<__int128>(a_) * k;
  const auto r = static_cast<std::int64_t>(v % Q_);
  return r < 0 ? r + Q_ : r;
}

std::vector<std::int64_t> fibonacciUpTo(std::int64_t limit) {
  std::vector<std::int64_t> fib;
  std::int64_t a = 1, b = 1;
  while (a <= limit) {
    fib.push_back(a);
    const std::int64_t c = a + b;
    a = b;
    b = c;
  }
  return fib;
}

double cyclicMeanAverage(const CyclicSystem& sys, std::int64_t length, std::int64_t N) {
  const std::int64_t Q = sys.modulus();
  if (length < 0 || length > Q) throw std::invalid_argument("cyclicMeanAverage: need 0 <= length <= Q");
  if (N < 1) throw std::invalid_argument("cyclicMeanAverage: N must be >= 1");
  // Residues of n - floor(sqrt n) mod Q.
  std::vector<std::uint64_t> hits(static_cast<std::size_t>(Q), 0);
  std::int64_t m = 1;
  for (std::int64_t n = 1; n <= N; ++n) {
    while ((m + 1) * (m + 1) <= n) ++m;
    ++hits[static_cast<std::size_t>((n - m) % Q)];
  }
  // |[0,L) cap ([0,L) + d)| on Z/QZ.
  std::uint64_t total = 0;
  for (std::int64_t r = 0; r < Q; ++r) {
    if (hits[static_cast<std::size_t>(r)] == 0) continue;
    const std::int64_t d = sys.back(0, -r);
    const std::int64_t overlap = std::max<std::int64_t>(0, length - d) + std::max<std::int64_t>(0, d + length - Q);
    total += hits[static_cast<std::size_t>(r)] * static_cast<std::uint64_t>(overlap);
  }
  return static_cast<double>(total) / (static_cast<double>(N) * static_cast<double>(Q));
}

std::vector<double> cyclicAverageDirect(const CyclicSystem& sys, std::int64_t length, std::int64_t N) {
  const std::int64_t Q = sys.modulus();
  if (length < 0 || length > Q) throw std::invalid_argument("cyclicAverageDirect: need 0 <= length <= Q");
  if (N < 1) throw std::invalid_argument("cyclicAverageDirect: N must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(Q));
  for (std::int64_t x = 0; x < Q; ++x) {
    std::int64_t count = 0, m = 1;
    for (std::int64_t n = 1; n <= N; ++n) {
      while ((m + 1) * (m + 1) <= n) ++m;
      count += (sys.back(x, m) < length && sys.back(x, n) < length) ? 1 : 0;
    }
    out[static_cast<std::size_t>(x)] = static_cast<double>(count) / static_cast<double>(N);
  }
  return out;
}

ExperimentReport runSharpness(const ExperimentConfig& cfg) {
  detail::Stopwatch clock;
  nlohmann::json params;
  ExperimentReport report = detail::startReport(cfg, ExperimentKind::sharpness, params);
  const std::int64_t Q = detail::integer(params, "Q");
  const auto fib = fibonacciUpTo(Q);
  const CyclicSystem sys(Q, fib[fib.size() - 2]);
  const std::int64_t N = Q * Q;
  report.constants["rotation"] = static_cast<double>(sys.rotation());
  report.constants["N"] = static_cast<double>(N);

  for (double mu : detail::numbers(params, "mu")) {
    const auto length = static_cast<std::int64_t>(std::llround(mu * static_cast<double>(Q)));
    const double density = static_cast<double>(length) / static_cast<double>(Q);
    const double mean = cyclicMeanAverage(sys, length, N);
    report.series["mean"].push_back({mu, mean});
    report.series["deviation"].push_back({mu, std::abs(mean - density * density) / (density * density)});
    for (double p : detail::numbers(params, "p")) {
      std::ostringstream name;
      name << "powerRatio:p=" << p;
      report.series[name.str()].push_back({mu, mean / std::pow(density, 1.0 / p)});
    }
  }
  detail::finishReport(report, clock);
  return report;
}

}  // namespace ergavg::lab
