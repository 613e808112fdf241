#include "ergavg/gowers.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ergavg/spectral.hpp"

namespace ergavg {

namespace {

// Pairwise summation in index order, independent of how terms were produced.
double pairwiseSum(std::span<const double> terms) {
  if (terms.size() <= 8) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwiseSum(terms.first(half)) + pairwiseSum(terms.subspan(half));
}

double u2Power(const GridFunction& f) {
  const auto L = static_cast<std::int64_t>(f.length());
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(2 * L));
  for (std::int64_t h = -(L - 1); h <= L - 1; ++h) {
    Complex c = 0.0;
    for (std::int64_t x = f.offset(); x < f.end(); ++x) c += f(x) * std::conj(f(x + h));
    terms.push_back(std::norm(c));
  }
  return pairwiseSum(terms);
}

double power(const GridFunction& f, int s) {
  if (f.isZero()) return 0.0;
  if (s == 1) {
    Complex sum = 0.0;
    for (Complex z : f.values()) sum += z;
    return std::norm(sum);
  }
  if (s == 2) return u2Power(f);
  // Delta_{-h} f = conj(shift(Delta_h f, h)), which has the same U^{s-1} norm,
  // so only h >= 0 is evaluated.
  const auto L = static_cast<std::int64_t>(f.length());
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(L));
  for (std::int64_t h = 0; h < L; ++h) {
    const std::int64_t shifts[] = {h};
    const double p = power(differencing(f, shifts), s - 1);
    terms.push_back(h == 0 ? p : 2.0 * p);
  }
  return pairwiseSum(terms);
}

}  // namespace

GridFunction differencing(const GridFunction& f, std::span<const std::int64_t> shifts) {
  GridFunction g = f;
  for (std::int64_t h : shifts) g = pointwiseProduct(g, conj(shift(g, -h)));
  return g;
}

double gowersPower(const GridFunction& f, int s) {
  if (s < 1 || s > 5) throw std::invalid_argument("gowersNorm: s must lie in [1, 5]");
  if (s >= 4 && f.length() > 32) throw std::invalid_argument("gowersNorm: support length > 32 for s >= 4");
  return power(f, s);
}

double gowersNorm(const GridFunction& f, int s) {
  return std::pow(gowersPower(f, s), 1.0 / static_cast<double>(1 << s));
}

U2Witness u2Witness(const GridFunction& f, std::size_t M) {
  if (M < 8 * f.length() || M == 0) throw std::invalid_argument("u2Witness: grid smaller than 8x support");
  if (f.isZero()) return {};
  auto peak = [&](std::size_t size, std::size_t& arg) {
    const FrequencyGrid grid = torusTransform(f, size);
    double best = -1.0;
    for (std::size_t j = 0; j < size; ++j) {
      const double v = std::norm(grid.values[j]);
      if (v > best) {
        best = v;
        arg = j;
      }
    }
    return best;
  };
  std::size_t j = 0, jFine = 0;
  const double coarse = peak(M, j);
  const double fine = peak(4 * M, jFine);
  if (coarse * 1.02 < fine) throw std::runtime_error("u2Witness: grid too coarse (refinement check failed)");
  // sum_x f(x) e(x xi) is the transform at -xi.
  U2Witness w;
  w.xi = torusReduce(-static_cast<double>(j) / static_cast<double>(M));
  w.bound = static_cast<double>(f.supportSize()) * coarse;
  return w;
}

}  // namespace ergavg
