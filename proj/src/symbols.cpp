#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "ergavg/fft.hpp"
#include "ergavg/quadrature.hpp"
#include "ergavg/spectral.hpp"

namespace ergavg {

namespace {

// Fractional part of xi * n with a single rounding.
double fracProduct(double xi, std::int64_t n) {
  const double nd = static_cast<double>(n);
  return std::fma(xi, nd, -std::nearbyint(xi * nd));
}

}  // namespace

Complex discreteSymbol(const SymbolQuery& q) {
  if (q.N < 1) throw std::invalid_argument("discreteSymbol: N must be >= 1");
  const std::int64_t nMin = q.upperHalf ? q.N / 2 + 1 : 1;
  const double xi1 = torusReduce(q.xi1);
  const double xi2 = torusReduce(q.xi2);
  Complex sum = 0.0;
  std::int64_t m = static_cast<std::int64_t>(floorSqrt(static_cast<std::uint64_t>(nMin)));
  for (std::int64_t n = nMin; n <= q.N; ++n) {
    while ((m + 1) * (m + 1) <= n) ++m;
    sum += expi(-(fracProduct(xi1, m) + fracProduct(xi2, n)));
  }
  return sum / static_cast<double>(q.N);
}

Complex continuousSymbol(double xi1, double xi2, std::int64_t N, std::size_t maxPanels) {
  if (N < 1) throw std::invalid_argument("continuousSymbol: N must be >= 1");
  const double Nd = static_cast<double>(N);
  const double lo = std::sqrt(0.5 * Nd);
  const double hi = std::sqrt(Nd);
  const double work = std::ceil(1.0 + std::abs(xi1) * hi + std::abs(xi2) * Nd);
  if (work > static_cast<double>(maxPanels) / 64.0) {
    throw std::runtime_error("continuousSymbol: panel budget exceeded");
  }
  const auto panels = static_cast<std::size_t>(64.0 * work);
  // (1/N) int_{N/2}^{N} e(-xi1 sqrt t - xi2 t) dt = (2/N) int u e(-xi1 u - xi2 u^2) du
  const auto integrand = [&](double u) { return u * expi(-(xi1 * u + xi2 * u * u)); };
  return (2.0 / Nd) * integrateComposite(integrand, lo, hi, panels);
}

std::vector<ArcWitness> principalArcWitness(std::int64_t N, double delta, double gridStep) {
  if (N < 1) throw std::invalid_argument("principalArcWitness: N must be >= 1");
  if (!(delta > 0.0) || delta > 1.0) throw std::invalid_argument("principalArcWitness: delta must lie in (0, 1]");
  if (!(gridStep > 0.0) || gridStep > 1.0 / (4.0 * static_cast<double>(N))) {
    throw std::invalid_argument("principalArcWitness: gridStep must be <= 1/(4N)");
  }
  const auto P = static_cast<std::size_t>(std::ceil(1.0 / gridStep - 1e-9));
  const std::int64_t nMin = N / 2 + 1;
  const auto mLo = static_cast<std::int64_t>(floorSqrt(static_cast<std::uint64_t>(nMin)));
  const auto mHi = static_cast<std::int64_t>(floorSqrt(static_cast<std::uint64_t>(N)));
  const double invN = 1.0 / static_cast<double>(N);

  // For fixed xi, m_Z(., xi) = (1/N) sum_m c_m(xi) e(-zeta m) with block sums
  // c_m(xi) = sum_{n in block m} e(-xi n); the zeta grid is one forward FFT.
  std::vector<ArcWitness> out;
  Fft fft(P, Fft::Direction::forward);
  auto buf = fft.buffer();
  for (std::size_t b = 0; b < P; ++b) {
    const double xi = torusReduce(static_cast<double>(b) / static_cast<double>(P));
    std::fill(buf.begin(), buf.end(), Complex{});
    for (std::int64_t m = mLo; m <= mHi; ++m) {
      const std::int64_t first = std::max(m * m, nMin);
      const std::int64_t last = std::min((m + 1) * (m + 1) - 1, N);
      if (last < first) continue;
      buf[static_cast<std::size_t>(m) % P] +=
          expi(-fracProduct(xi, first)) * dirichletKernel(last - first + 1, -xi);
    }
    fft.execute();
    for (std::size_t a = 0; a < P; ++a) {
      const double absm = std::abs(buf[a]) * invN;
      if (absm >= delta) {
        const double zeta = torusReduce(static_cast<double>(a) / static_cast<double>(P));
        out.push_back({zeta, xi, absm, torusNorm(xi) * static_cast<double>(N)});
      }
    }
  }
  return out;
}

void writeWitnessCsv(std::ostream& out, const std::vector<ArcWitness>& witnesses) {
  out << "zeta,xi,absm,xiTimesN\n";
  out.precision(17);
  for (const auto& w : witnesses) out << w.zeta << ',' << w.xi << ',' << w.absm << ',' << w.xiTimesN << '\n';
}

}  // namespace ergavg
