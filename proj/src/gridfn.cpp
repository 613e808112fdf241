#include "ergavg/gridfn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ergavg {

namespace {

// Trims exact zeros from both ends; the zero function gets offset 0.
void canonicalize(std::int64_t& offset, std::vector<Complex>& values) {
  std::size_t first = 0;
  while (first < values.size() && values[first] == Complex{}) ++first;
  if (first == values.size()) {
    values.clear();
    offset = 0;
    return;
  }
  std::size_t last = values.size();
  while (values[last - 1] == Complex{}) --last;
  if (first > 0 || last < values.size()) {
    values = std::vector<Complex>(values.begin() + static_cast<std::ptrdiff_t>(first),
                                  values.begin() + static_cast<std::ptrdiff_t>(last));
  }
  offset += static_cast<std::int64_t>(first);
}

template <class Op>
GridFunction combine(const GridFunction& a, const GridFunction& b, Op op) {
  if (a.isZero() && b.isZero()) return {};
  std::int64_t lo, hi;
  if (a.isZero()) {
    lo = b.offset();
    hi = b.end();
  } else if (b.isZero()) {
    lo = a.offset();
    hi = a.end();
  } else {
    lo = std::min(a.offset(), b.offset());
    hi = std::max(a.end(), b.end());
  }
  std::vector<Complex> out(static_cast<std::size_t>(hi - lo));
  for (std::int64_t x = lo; x < hi; ++x) out[static_cast<std::size_t>(x - lo)] = op(a(x), b(x));
  return GridFunction(lo, std::move(out));
}

}  // namespace

GridFunction::GridFunction(std::int64_t offset, std::vector<Complex> values)
    : offset_(offset), values_(std::move(values)) {
  canonicalize(offset_, values_);
}

GridFunction GridFunction::delta(std::int64_t at, Complex value) {
  return GridFunction(at, {value});
}

GridFunction GridFunction::indicator(std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return {};
  return GridFunction(lo, std::vector<Complex>(static_cast<std::size_t>(hi - lo), 1.0));
}

std::size_t GridFunction::supportSize() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](Complex v) { return v != Complex{}; }));
}

GridFunction shift(const GridFunction& f, std::int64_t k) {
  if (f.isZero()) return f;
  return GridFunction(f.offset() + k, {f.values().begin(), f.values().end()});
}

GridFunction conj(const GridFunction& f) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (auto& z : v) z = std::conj(z);
  return GridFunction(f.offset(), std::move(v));
}

GridFunction scale(const GridFunction& f, Complex c) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (auto& z : v) z *= c;
  return GridFunction(f.offset(), std::move(v));
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  return combine(a, b, [](Complex x, Complex y) { return x + y; });
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  return combine(a, b, [](Complex x, Complex y) { return x - y; });
}

GridFunction pointwiseProduct(const GridFunction& a, const GridFunction& b) {
  if (a.isZero() || b.isZero()) return {};
  const std::int64_t lo = std::max(a.offset(), b.offset());
  const std::int64_t hi = std::min(a.end(), b.end());
  if (hi <= lo) return {};
  std::vector<Complex> out(static_cast<std::size_t>(hi - lo));
  for (std::int64_t x = lo; x < hi; ++x) out[static_cast<std::size_t>(x - lo)] = a(x) * b(x);
  return GridFunction(lo, std::move(out));
}

GridFunction modulate(const GridFunction& f, double theta) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = static_cast<double>(f.offset() + static_cast<std::int64_t>(i));
    v[i] *= expi(theta * x);
  }
  return GridFunction(f.offset(), std::move(v));
}

GridFunction abs(const GridFunction& f) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (auto& z : v) z = std::abs(z);
  return GridFunction(f.offset(), std::move(v));
}

double lpNorm(const GridFunction& f, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("lpNorm: p must be positive");
  double peak = 0.0;
  for (Complex z : f.values()) peak = std::max(peak, std::abs(z));
  if (std::isinf(p) || peak == 0.0) return peak;
  // Normalise by the peak so large p cannot overflow.
  double sum = 0.0;
  for (Complex z : f.values()) sum += std::pow(std::abs(z) / peak, p);
  return peak * std::pow(sum, 1.0 / p);
}

Complex innerProduct(const GridFunction& f, const GridFunction& g) {
  return bilinearPairing(f, conj(g));
}

Complex bilinearPairing(const GridFunction& f, const GridFunction& g) {
  if (f.isZero() || g.isZero()) return 0.0;
  const std::int64_t lo = std::max(f.offset(), g.offset());
  const std::int64_t hi = std::min(f.end(), g.end());
  Complex sum = 0.0;
  for (std::int64_t x = lo; x < hi; ++x) sum += f(x) * g(x);
  return sum;
}

Complex expi(double t) {
  const double frac = t - std::nearbyint(t);
  return std::polar(1.0, 2.0 * std::numbers::pi * frac);
}

std::uint64_t floorSqrt(std::uint64_t n) {
  if (n < 2) return n;
  // Start at a power of two >= sqrt(n); Newton then decreases monotonically.
  const int bits = 64 - std::countl_zero(n);
  std::uint64_t x = std::uint64_t{1} << ((bits + 1) / 2);
  while (true) {
    const std::uint64_t y = (x + n / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}

std::vector<std::int64_t> floorSqrtTable(std::int64_t nMax) {
  std::vector<std::int64_t> table(static_cast<std::size_t>(std::max<std::int64_t>(nMax, 0) + 1));
  std::int64_t m = 0;
  for (std::int64_t n = 0; n <= nMax; ++n) {
    while ((m + 1) * (m + 1) <= n) ++m;
    table[static_cast<std::size_t>(n)] = m;
  }
  return table;
}

bool LacunarySet::ratioExceeds(double lambda, std::int64_t lower, std::int64_t upper) {
  // fma rounds lambda*lower - upper once, so the sign is exact.
  return std::fma(lambda, static_cast<double>(lower), -static_cast<double>(upper)) < 0.0;
}

bool LacunarySet::satisfiesRatio() const {
  for (std::size_t i = 1; i < scales.size(); ++i) {
    if (scales[i] <= scales[i - 1] || !ratioExceeds(lambda, scales[i - 1], scales[i])) return false;
  }
  return true;
}

LacunarySet LacunarySet::truncated(std::int64_t cap) const {
  LacunarySet out{lambda, {}};
  for (auto n : scales) {
    if (n <= cap) out.scales.push_back(n);
  }
  return out;
}

LacunarySet lacunarySet(double lambda, std::int64_t nMin, std::int64_t nMax) {
  if (!(lambda > 1.0)) throw std::invalid_argument("lacunarySet: lambda must exceed 1");
  if (nMin < 1 || nMin > nMax) throw std::invalid_argument("lacunarySet: need 1 <= nMin <= nMax");
  LacunarySet set{lambda, {nMin}};
  while (true) {
    const std::int64_t last = set.scales.back();
    const double target = lambda * static_cast<double>(last);
    if (target >= static_cast<double>(nMax)) break;
    auto next = static_cast<std::int64_t>(std::floor(target)) + 1;
    while (!LacunarySet::ratioExceeds(lambda, last, next)) ++next;
    while (next - 1 > last && LacunarySet::ratioExceeds(lambda, last, next - 1)) --next;
    if (next > nMax) break;
    set.scales.push_back(next);
  }
  return set;
}

int differenceMultiplicity(std::int64_t k, std::int64_t N) {
  // floor(sqrt(n)) - n = k  <=>  n = m - k with m = floor(sqrt(n)), which
  // requires m(m-1) <= -k <= m(m+1).
  if (k > 0 || N < 1) return 0;
  const std::int64_t j = -k;
  const auto root = static_cast<std::int64_t>(floorSqrt(static_cast<std::uint64_t>(j)));
  int count = 0;
  for (std::int64_t m = std::max<std::int64_t>(1, root - 1); m <= root + 1; ++m) {
    const std::int64_t n = j + m;
    if (m * (m - 1) <= j && j <= m * (m + 1) && n >= 1 && n <= N) ++count;
  }
  return count;
}

GridFunction hlMaximal(const GridFunction& f, std::int64_t radiusCap) {
  if (radiusCap < 1) throw std::invalid_argument("hlMaximal: radiusCap must be >= 1");
  if (f.isZero()) return {};
  const std::int64_t lo = f.offset() - (radiusCap - 1);
  const std::int64_t hi = f.end() + (radiusCap - 1);
  // prefix[i] = sum of |f| over [lo, lo + i).
  std::vector<double> prefix(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (std::int64_t x = lo; x < hi; ++x) {
    const auto i = static_cast<std::size_t>(x - lo);
    prefix[i + 1] = prefix[i] + std::abs(f(x));
  }
  auto mass = [&](std::int64_t a, std::int64_t b) {  // sum over [a, b)
    a = std::clamp(a, lo, hi);
    b = std::clamp(b, lo, hi);
    return prefix[static_cast<std::size_t>(b - lo)] - prefix[static_cast<std::size_t>(a - lo)];
  };
  std::vector<Complex> out(static_cast<std::size_t>(hi - lo));
  for (std::int64_t x = lo; x < hi; ++x) {
    double best = 0.0;
    for (std::int64_t len = 1; len <= radiusCap; ++len) {
      for (std::int64_t start = x - len + 1; start <= x; ++start) {
        best = std::max(best, mass(start, start + len) / static_cast<double>(len));
      }
    }
    out[static_cast<std::size_t>(x - lo)] = best;
  }
  return GridFunction(lo, std::move(out));
}

nlohmann::json toJson(const GridFunction& f) {
  std::vector<double> re, im;
  re.reserve(f.length());
  im.reserve(f.length());
  for (Complex z : f.values()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"offset", f.offset()}, {"re", re}, {"im", im}};
}

GridFunction gridFunctionFromJson(const nlohmann::json& j) {
  const auto offset = j.at("offset").get<std::int64_t>();
  const auto re = j.at("re").get<std::vector<double>>();
  std::vector<double> im = j.contains("im") ? j.at("im").get<std::vector<double>>()
                                            : std::vector<double>(re.size(), 0.0);
  if (im.size() != re.size()) throw std::invalid_argument("GridFunction JSON: re/im length mismatch");
  std::vector<Complex> values(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) values[i] = {re[i], im[i]};
  return GridFunction(offset, std::move(values));
}

}  // namespace ergavg
