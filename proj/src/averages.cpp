#include "ergavg/averages.hpp"

#include <algorithm>
#include <stdexcept>

namespace ergavg {

namespace {

void requirePositive(std::int64_t N, const char* what) {
  if (N < 1) throw std::invalid_argument(std::string(what) + ": N must be >= 1");
}

// (1/N) sum_{n = nMin..N} f(x - floor(sqrt n)) g(x - n), gathered per x.
GridFunction truncatedAverage(const GridFunction& f, const GridFunction& g, std::int64_t N,
                              std::int64_t nMin) {
  if (f.isZero() || g.isZero() || nMin > N) return {};
  const auto root = floorSqrtTable(N);
  const std::int64_t fLo = f.offset(), fHi = f.end() - 1;
  const std::int64_t gLo = g.offset(), gHi = g.end() - 1;
  const std::int64_t lo = std::max(gLo + nMin, fLo + root[static_cast<std::size_t>(nMin)]);
  const std::int64_t hi = std::min(gHi + N, fHi + root[static_cast<std::size_t>(N)]);
  if (hi < lo) return {};

  std::vector<Complex> out(static_cast<std::size_t>(hi - lo + 1));
  const double inv = 1.0 / static_cast<double>(N);
  for (std::int64_t x = lo; x <= hi; ++x) {
    std::int64_t a = std::max(nMin, x - gHi);
    std::int64_t b = std::min(N, x - gLo);
    // floor(sqrt n) must lie in [x - fHi, x - fLo].
    const std::int64_t mLo = std::max<std::int64_t>(0, x - fHi);
    const std::int64_t mHi = x - fLo;
    if (mHi < 0) continue;
    a = std::max(a, mLo * mLo);
    b = std::min(b, (mHi + 1) * (mHi + 1) - 1);
    Complex sum = 0.0;
    for (std::int64_t n = a; n <= b; ++n) {
      sum += f(x - root[static_cast<std::size_t>(n)]) * g(x - n);
    }
    out[static_cast<std::size_t>(x - lo)] = sum * inv;
  }
  return GridFunction(lo, std::move(out));
}

}  // namespace

GridFunction bilinearAverage(const GridFunction& f, const GridFunction& g, std::int64_t N) {
  requirePositive(N, "bilinearAverage");
  return truncatedAverage(f, g, N, 1);
}

GridFunction upperHalfAverage(const GridFunction& f, const GridFunction& g, std::int64_t N) {
  requirePositive(N, "upperHalfAverage");
  return truncatedAverage(f, g, N, N / 2 + 1);
}

SmoothingWeights smoothingWeights(std::int64_t N) {
  requirePositive(N, "smoothingWeights");
  const auto root = floorSqrtTable(N);
  SmoothingWeights w;
  w.kMin = root[static_cast<std::size_t>(N)] - N;
  w.counts.assign(static_cast<std::size_t>(-w.kMin + 1), 0);
  for (std::int64_t n = 1; n <= N; ++n) {
    ++w.counts[static_cast<std::size_t>(root[static_cast<std::size_t>(n)] - n - w.kMin)];
  }
  return w;
}

GridFunction linearSmoothingAverage(const GridFunction& g, std::int64_t N) {
  requirePositive(N, "linearSmoothingAverage");
  if (g.isZero()) return {};
  const auto w = smoothingWeights(N);
  // B_N g(x) = (1/N) sum_k c_k g(x + k); x + k ranges over supp g, k in [kMin, 0].
  const std::int64_t lo = g.offset();
  const std::int64_t hi = g.end() - 1 - w.kMin;
  std::vector<Complex> out(static_cast<std::size_t>(hi - lo + 1));
  const double inv = 1.0 / static_cast<double>(N);
  for (std::size_t i = 0; i < w.counts.size(); ++i) {
    if (w.counts[i] == 0) continue;
    const std::int64_t k = w.kMin + static_cast<std::int64_t>(i);
    const double c = w.counts[i] * inv;
    for (std::int64_t y = g.offset(); y < g.end(); ++y) {
      out[static_cast<std::size_t>(y - k - lo)] += c * g(y);
    }
  }
  return GridFunction(lo, std::move(out));
}

GridFunction dualStar(const GridFunction& h, const GridFunction& g, std::int64_t N) {
  requirePositive(N, "dualStar");
  if (h.isZero() || g.isZero()) return {};
  const auto root = floorSqrtTable(N);
  const std::int64_t nMin = N / 2 + 1;
  if (nMin > N) return {};
  // x = y - floor(sqrt n) with y in supp h and y - n in supp g.
  const std::int64_t lo = h.offset() - root[static_cast<std::size_t>(N)];
  const std::int64_t hi = h.end() - 1 - root[static_cast<std::size_t>(nMin)];
  std::vector<Complex> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = nMin; n <= N; ++n) {
    const std::int64_t m = root[static_cast<std::size_t>(n)];
    const std::int64_t yLo = std::max(h.offset(), g.offset() + n);
    const std::int64_t yHi = std::min(h.end(), g.end() + n);
    for (std::int64_t y = yLo; y < yHi; ++y) {
      out[static_cast<std::size_t>(y - m - lo)] += h(y) * g(y - n);
    }
  }
  const double inv = 1.0 / static_cast<double>(N);
  for (auto& z : out) z *= inv;
  return GridFunction(lo, std::move(out));
}

GridFunction dualStarStar(const GridFunction& h, const GridFunction& f, std::int64_t N) {
  requirePositive(N, "dualStarStar");
  if (h.isZero() || f.isZero()) return {};
  const auto root = floorSqrtTable(N);
  const std::int64_t nMin = N / 2 + 1;
  if (nMin > N) return {};
  // x = y - n with y in supp h and y - floor(sqrt n) in supp f.
  const std::int64_t lo = h.offset() - N;
  const std::int64_t hi = h.end() - 1 - nMin;
  std::vector<Complex> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = nMin; n <= N; ++n) {
    const std::int64_t m = root[static_cast<std::size_t>(n)];
    const std::int64_t yLo = std::max(h.offset(), f.offset() + m);
    const std::int64_t yHi = std::min(h.end(), f.end() + m);
    for (std::int64_t y = yLo; y < yHi; ++y) {
      out[static_cast<std::size_t>(y - n - lo)] += h(y) * f(y - m);
    }
  }
  const double inv = 1.0 / static_cast<double>(N);
  for (auto& z : out) z *= inv;
  return GridFunction(lo, std::move(out));
}

}  // namespace ergavg
