#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ergavg/fft.hpp"
#include "ergavg/spectral.hpp"

namespace ergavg {

ParaproductCutoffs paraproductCutoffs(std::int64_t N, int l1, int l2, int C1) {
  if (N < 1) throw std::invalid_argument("modelParaproduct: N must be >= 1");
  if (l1 < -C1 || l2 < -C1) throw std::invalid_argument("modelParaproduct: need l1, l2 >= -C1");
  const double Nd = static_cast<double>(N);
  ParaproductCutoffs c;
  c.phi = {std::ldexp(1.0 / std::sqrt(Nd), l1), l1 > -C1 ? CutoffKind::band : CutoffKind::lowpass};
  c.psi = {std::ldexp(1.0 / Nd, l2), l2 > -C1 ? CutoffKind::band : CutoffKind::lowpass};
  if (c.phi.dyadicScale() > 0.5 || c.psi.dyadicScale() > 0.5) {
    throw std::invalid_argument("modelParaproduct: cutoff scale exceeds 1/2");
  }
  return c;
}

GridFunction modelParaproduct(const GridFunction& f, const GridFunction& g, std::int64_t N, int l1,
                              int l2, int C1, std::size_t panels) {
  const auto cut = paraproductCutoffs(N, l1, l2, C1);
  if (panels == 0) throw std::invalid_argument("modelParaproduct: panels must be >= 1");
  if (f.isZero() || g.isZero()) return {};

  const double Nd = static_cast<double>(N);
  const auto r1 = static_cast<std::int64_t>(std::ceil(cutoffKernelExtent(cut.phi)));
  const auto r2 = static_cast<std::int64_t>(std::ceil(cutoffKernelExtent(cut.psi)));
  const auto sqrtLo = static_cast<std::int64_t>(std::floor(std::sqrt(0.5 * Nd)));
  const auto sqrtHi = static_cast<std::int64_t>(std::ceil(std::sqrt(Nd)));
  const std::int64_t lo = std::max(f.offset() + sqrtLo - r1 - 1, g.offset() + N / 2 - r2 - 1);
  const std::int64_t hi = std::min(f.end() - 1 + sqrtHi + r1 + 1, g.end() - 1 + N + r2 + 1);
  if (hi < lo) return {};

  const auto width = static_cast<std::size_t>(hi - lo + 1);
  std::vector<Complex> out(width);
  const double weight = 0.5 / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    const double t = 0.5 + (static_cast<double>(k) + 0.5) * weight;
    const double c1 = std::sqrt(Nd * t);
    const double c2 = Nd * t;
    for (std::size_t i = 0; i < width; ++i) {
      const auto x = static_cast<double>(lo + static_cast<std::int64_t>(i));
      Complex a = 0.0, b = 0.0;
      for (std::int64_t z = f.offset(); z < f.end(); ++z) {
        a += cutoffKernel(cut.phi, x - static_cast<double>(z) - c1) * f(z);
      }
      for (std::int64_t z = g.offset(); z < g.end(); ++z) {
        b += cutoffKernel(cut.psi, x - static_cast<double>(z) - c2) * g(z);
      }
      out[i] += weight * a * b;
    }
  }
  return GridFunction(lo, std::move(out));
}

BandSymbol dilatedBandSymbol(double C) {
  if (!(C > 0.0) || C >= 0.5) throw std::invalid_argument("dilatedBandSymbol: need 0 < C < 1/2");
  BandSymbol eta;
  eta.eval = [C](double xi) { return cutoffPsi(xi / C) - cutoffPsi(2.0 * xi / C); };
  eta.supportBound = C;
  // F^-1 eta(y) = C Psi^(C y) - (C/2) Psi^(C y / 2); the second term lives as
  // long as the Psi^ table does.
  eta.kernelExtent = 2.0 * kCutoffInverseExtent / C;
  return eta;
}

GridFunction shiftedSquareFunction(const GridFunction& f, const LacunarySet& D, const BandSymbol& eta,
                                   const std::map<std::int64_t, double>& lambdaByScale,
                                   const ShiftedSquareOptions& options) {
  if (!eta.eval) throw std::invalid_argument("shiftedSquareFunction: eta is empty");
  const double C = eta.supportBound;
  if (!(C > 0.0) || C >= 0.5) throw std::invalid_argument("shiftedSquareFunction: eta support must be < 1/2");
  if (eta.eval(0.0) != 0.0) throw std::invalid_argument("shiftedSquareFunction: eta must vanish at 0");
  for (int i = 1; i <= 64; ++i) {
    const double xi = C + (0.5 - C) * i / 64.0;
    if (eta.eval(xi) != 0.0 || eta.eval(-xi) != 0.0) {
      throw std::invalid_argument("shiftedSquareFunction: eta not supported in [-C, C]");
    }
  }
  if (!(options.A > 0.0) || !(options.d > 0.0)) throw std::invalid_argument("shiftedSquareFunction: need A, d > 0");
  if (f.isZero() || D.scales.empty()) return {};

  double maxDilation = 0.0, maxShift = 0.0;
  for (auto N : D.scales) {
    const double a = options.A * std::pow(static_cast<double>(N), options.d);
    if (a < 2.0 * C) throw std::invalid_argument("shiftedSquareFunction: eta_N does not fit on the torus");
    const auto it = lambdaByScale.find(N);
    const double lambda = it == lambdaByScale.end() ? 0.0 : it->second;
    maxDilation = std::max(maxDilation, a);
    maxShift = std::max(maxShift, std::abs(lambda) * a);
  }
  std::size_t M = options.M;
  if (M == 0) {
    const double span = static_cast<double>(f.length()) + 2.0 * maxShift + 2.0 * eta.kernelExtent * maxDilation;
    M = nextPowerOfTwo(static_cast<std::size_t>(std::ceil(span)) + 1);
  }
  if (M < f.length()) throw std::invalid_argument("shiftedSquareFunction: grid smaller than support");

  const FrequencyGrid fhat = torusTransform(f, M);
  const std::int64_t centre = f.offset() + static_cast<std::int64_t>(f.length() / 2);
  const std::int64_t lo = centre - static_cast<std::int64_t>(M / 2);
  std::vector<double> squares(M, 0.0);
  FrequencyGrid term{M, std::vector<Complex>(M)};
  for (auto N : D.scales) {
    const double a = options.A * std::pow(static_cast<double>(N), options.d);
    const auto it = lambdaByScale.find(N);
    const double shiftBy = (it == lambdaByScale.end() ? 0.0 : it->second) * a;
    for (std::size_t j = 0; j < M; ++j) {
      const double xi = torusReduce(static_cast<double>(j) / static_cast<double>(M));
      const double mult = eta.eval(a * xi);
      term.values[j] = mult == 0.0 ? Complex{} : fhat.values[j] * mult * expi(-shiftBy * xi);
    }
    const GridFunction piece = inverseTorusTransform(term, lo);
    for (std::size_t i = 0; i < M; ++i) squares[i] += std::norm(piece(lo + static_cast<std::int64_t>(i)));
  }
  std::vector<Complex> out(M);
  for (std::size_t i = 0; i < M; ++i) out[i] = std::sqrt(squares[i]);
  return GridFunction(lo, std::move(out));
}

}  // namespace ergavg
