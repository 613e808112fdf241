#include "ergavg/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ergavg/fft.hpp"

namespace ergavg {

namespace {

// e(-(offset * j mod M) / M), exact in the integer part.
Complex gridPhase(std::int64_t offset, std::size_t j, std::size_t M, double sign) {
  const auto m = static_cast<std::int64_t>(M);
  const std::int64_t om = ((offset % m) + m) % m;
  const std::int64_t r = (om * static_cast<std::int64_t>(j)) % m;
  return expi(sign * static_cast<double>(r) / static_cast<double>(M));
}

}  // namespace

double torusReduce(double t) { return t - std::floor(t + 0.5); }

double torusNorm(double t) { return std::abs(t - std::nearbyint(t)); }

FrequencyGrid torusTransform(const GridFunction& f, std::size_t M) {
  if (M == 0 || M < f.length()) {
    throw std::invalid_argument("torusTransform: grid size smaller than support length");
  }
  Fft fft(M, Fft::Direction::forward);
  auto buf = fft.buffer();
  std::fill(buf.begin(), buf.end(), Complex{});
  std::copy(f.values().begin(), f.values().end(), buf.begin());
  fft.execute();
  FrequencyGrid grid{M, std::vector<Complex>(M)};
  for (std::size_t j = 0; j < M; ++j) grid.values[j] = buf[j] * gridPhase(f.offset(), j, M, -1.0);
  return grid;
}

GridFunction inverseTorusTransform(const FrequencyGrid& grid, std::int64_t lo) {
  const std::size_t M = grid.M;
  if (M == 0 || grid.values.size() != M) throw std::invalid_argument("inverseTorusTransform: bad grid");
  Fft fft(M, Fft::Direction::backward);
  auto buf = fft.buffer();
  for (std::size_t j = 0; j < M; ++j) buf[j] = grid.values[j] * gridPhase(lo, j, M, 1.0);
  fft.execute();
  const double inv = 1.0 / static_cast<double>(M);
  std::vector<Complex> out(M);
  for (std::size_t t = 0; t < M; ++t) out[t] = buf[t] * inv;
  return GridFunction(lo, std::move(out));
}

nlohmann::json toJson(const FrequencyGrid& grid) {
  std::vector<double> re, im;
  for (Complex z : grid.values) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"M", grid.M}, {"re", re}, {"im", im}};
}

FrequencyGrid frequencyGridFromJson(const nlohmann::json& j) {
  FrequencyGrid grid;
  grid.M = j.at("M").get<std::size_t>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != grid.M || im.size() != grid.M) {
    throw std::invalid_argument("FrequencyGrid JSON: value count differs from M");
  }
  grid.values.resize(grid.M);
  for (std::size_t i = 0; i < grid.M; ++i) grid.values[i] = {re[i], im[i]};
  return grid;
}

std::size_t defaultGridSize(const GridFunction& f) {
  return nextPowerOfTwo(8 * std::max<std::size_t>(f.length(), 1));
}

GridFunction bandProject(const GridFunction& f, const CutoffSpec& spec, std::size_t M) {
  if (spec.kind != CutoffKind::highpass && spec.scale > 0.5) {
    throw std::invalid_argument("bandProject: lowpass/band scale must be <= 1/2");
  }
  if (M < 8 * f.length() || M == 0) throw std::invalid_argument("bandProject: grid smaller than 8x support");
  if (f.isZero()) return {};
  FrequencyGrid grid = torusTransform(f, M);
  for (std::size_t j = 0; j < M; ++j) {
    grid.values[j] *= spec(torusReduce(static_cast<double>(j) / static_cast<double>(M)));
  }
  const std::int64_t centre = f.offset() + static_cast<std::int64_t>(f.length() / 2);
  return inverseTorusTransform(grid, centre - static_cast<std::int64_t>(M / 2));
}

Complex dirichletKernel(std::int64_t k, double xi) {
  if (k < 1) throw std::invalid_argument("dirichletKernel: k must be >= 1");
  const double r = torusReduce(xi);
  if (r == 0.0) return static_cast<double>(k);
  const double kd = static_cast<double>(k);
  return expi(0.5 * (kd - 1.0) * r) * (std::sin(kd * std::numbers::pi * r) / std::sin(std::numbers::pi * r));
}

}  // namespace ergavg
