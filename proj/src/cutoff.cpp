#include "ergavg/cutoff.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ergavg/fft.hpp"

namespace ergavg {

double cutoffPsi(double t) {
  t = std::abs(t);
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  const double u = 2.0 * t - 1.0;
  // phi(1-u) / (phi(1-u) + phi(u)) = 1 / (1 + exp(1/(1-u) - 1/u))
  return 1.0 / (1.0 + std::exp(1.0 / (1.0 - u) - 1.0 / u));
}

double dyadicCeil(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("dyadicCeil: scale must be positive");
  int e = 0;
  const double m = std::frexp(x, &e);  // x = m 2^e, m in [1/2, 1)
  return m == 0.5 ? std::ldexp(1.0, e - 1) : std::ldexp(1.0, e);
}

double CutoffSpec::operator()(double xi) const {
  const double s = dyadicScale();
  switch (kind) {
    case CutoffKind::lowpass:
      return cutoffPsi(xi / s);
    case CutoffKind::band:
      return cutoffPsi(xi / s) - cutoffPsi(2.0 * xi / s);
    case CutoffKind::highpass:
      return 1.0 - cutoffPsi(xi / s);
  }
  return 0.0;
}

namespace {

struct InverseTable {
  std::vector<double> value;
  std::vector<double> slope;
};

// Trapezoid sums h sum_k Psi(kh) e(y kh) on |kh| <= 1 for y = j / 1024,
// evaluated for all j at once by a single backward FFT of length 2^20.
InverseTable buildTable() {
  constexpr std::size_t kLength = std::size_t{1} << 20;
  constexpr std::int64_t kHalfWidth = 1024;  // xi grid step h = 1/1024
  const double h = 1.0 / static_cast<double>(kHalfWidth);
  const auto entries = static_cast<std::size_t>(kCutoffInverseExtent / kCutoffInverseStep) + 2;

  Fft values(kLength, Fft::Direction::backward);
  Fft slopes(kLength, Fft::Direction::backward);
  auto v = values.buffer();
  auto d = slopes.buffer();
  std::fill(v.begin(), v.end(), Complex{});
  std::fill(d.begin(), d.end(), Complex{});
  for (std::int64_t k = -kHalfWidth; k <= kHalfWidth; ++k) {
    const double xi = static_cast<double>(k) * h;
    const auto slot = static_cast<std::size_t>((k + static_cast<std::int64_t>(kLength)) %
                                               static_cast<std::int64_t>(kLength));
    const double psi = cutoffPsi(xi);
    v[slot] = h * psi;
    d[slot] = Complex(0.0, 2.0 * std::numbers::pi * xi * h * psi);
  }
  values.execute();
  slopes.execute();

  InverseTable table;
  table.value.resize(entries);
  table.slope.resize(entries);
  for (std::size_t j = 0; j < entries; ++j) {
    table.value[j] = v[j].real();
    table.slope[j] = d[j].real();
  }
  return table;
}

const InverseTable& table() {
  static std::once_flag once;
  static InverseTable t;
  std::call_once(once, [] { t = buildTable(); });
  return t;
}

}  // namespace

double cutoffPsiInverse(double y) {
  y = std::abs(y);
  if (y >= kCutoffInverseExtent) return 0.0;
  const auto& t = table();
  const double pos = y / kCutoffInverseStep;
  const auto j = static_cast<std::size_t>(pos);
  const double s = pos - static_cast<double>(j);
  const double h = kCutoffInverseStep;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * t.value[j] + (s3 - 2 * s2 + s) * h * t.slope[j] +
         (-2 * s3 + 3 * s2) * t.value[j + 1] + (s3 - s2) * h * t.slope[j + 1];
}

double cutoffPsiInverseDerivative(double y) {
  const double sign = y < 0.0 ? -1.0 : 1.0;
  y = std::abs(y);
  if (y >= kCutoffInverseExtent) return 0.0;
  const auto& t = table();
  const double pos = y / kCutoffInverseStep;
  const auto j = static_cast<std::size_t>(pos);
  const double s = pos - static_cast<double>(j);
  const double h = kCutoffInverseStep;
  const double s2 = s * s;
  const double dv = ((6 * s2 - 6 * s) * t.value[j] + (-6 * s2 + 6 * s) * t.value[j + 1]) / h +
                    (3 * s2 - 4 * s + 1) * t.slope[j] + (3 * s2 - 2 * s) * t.slope[j + 1];
  return sign * dv;
}

double cutoffKernel(const CutoffSpec& spec, double w) {
  const double s = spec.dyadicScale();
  switch (spec.kind) {
    case CutoffKind::lowpass:
      return s * cutoffPsiInverse(s * w);
    case CutoffKind::band:
      return s * cutoffPsiInverse(s * w) - 0.5 * s * cutoffPsiInverse(0.5 * s * w);
    case CutoffKind::highpass:
      break;
  }
  throw std::invalid_argument("cutoffKernel: highpass has no integrable kernel");
}

double cutoffKernelExtent(const CutoffSpec& spec) {
  const double s = spec.dyadicScale();
  return spec.kind == CutoffKind::band ? 2.0 * kCutoffInverseExtent / s : kCutoffInverseExtent / s;
}

}  // namespace ergavg
