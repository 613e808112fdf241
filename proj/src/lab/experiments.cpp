#include "ergavg/lab/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "common.hpp"
#include "ergavg/averages.hpp"
#include "ergavg/lab/sharpness.hpp"
#include "ergavg/random.hpp"
#include "ergavg/spectral.hpp"
#include "ergavg/variation.hpp"

namespace ergavg::lab {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct KindInfo {
  ExperimentKind kind;
  const char* name;
};

constexpr std::array<KindInfo, 10> kKinds{{
    {ExperimentKind::improving, "improving"},
    {ExperimentKind::minorArc, "minorArc"},
    {ExperimentKind::jumpCorollary, "jumpCorollary"},
    {ExperimentKind::variationalRatio, "variationalRatio"},
    {ExperimentKind::maximalRatio, "maximalRatio"},
    {ExperimentKind::symbolComparison, "symbolComparison"},
    {ExperimentKind::sharpness, "sharpness"},
    {ExperimentKind::expSumVariation, "expSumVariation"},
    {ExperimentKind::shiftedSquareProbe, "shiftedSquareProbe"},
    {ExperimentKind::principalArc, "principalArc"},
}};

json defaults(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::improving:
      return {{"p", 1.0}, {"q", "inf"},       {"nMinExp", 4},      {"nMaxExp", 14},
              {"exactMax", 65536}, {"slopeMinExp", 6}, {"slopeMaxExp", 14}};
    case ExperimentKind::minorArc:
      return {{"N", 4096}, {"lMin", 1}, {"lMax", 8}, {"trials", 4}};
    case ExperimentKind::jumpCorollary:
      return {{"lambda", 2.0}, {"capExp", 20}, {"pairs", 50}, {"deltaMinExp", 1}, {"deltaMaxExp", 6}};
    case ExperimentKind::variationalRatio:
    case ExperimentKind::maximalRatio:
      return {{"p1", 2.0},        {"p2", 2.0},     {"r", 3.0},        {"lambda", 2.0},
              {"trials", 100},    {"maxSupport", 256}, {"capMinExp", 6}, {"capMaxExp", 12}};
    case ExperimentKind::symbolComparison:
      return {{"l1", 1}, {"l2", 1}, {"gridPoints", 9}, {"nMinExp", 8}, {"nMaxExp", 14}};
    case ExperimentKind::sharpness:
      return {{"Q", 987}, {"mu", {0.2, 0.1, 0.05}}, {"p", {0.4, 0.5, 0.6}}};
    case ExperimentKind::expSumVariation:
      return {{"r", 3.0},      {"lambda", 2.0},   {"gridSize", 32},  {"randomPairs", 100},
              {"capExp", 18},  {"compareExp", 16}, {"minCapExp", 4}};
    case ExperimentKind::shiftedSquareProbe:
      return {{"C", 0.45},      {"A", 1.0},       {"d", 1.0},          {"lambda", 2.0},
              {"capScale", 4096}, {"K", {2, 8, 32}}, {"trials", 2},       {"support", 64},
              {"singleScaleN", 16}, {"M", 2097152}};
    case ExperimentKind::principalArc:
      return {{"delta", 0.1}, {"N", {256, 512, 1024}}, {"stepFactor", 4}};
  }
  return json::object();
}

[[noreturn]] void reject(ExperimentKind kind, const std::string& what) {
  throw std::invalid_argument(std::string(kindName(kind)) + ": " + what);
}

void require(bool ok, ExperimentKind kind, const std::string& what) {
  if (!ok) reject(kind, what);
}

void validate(ExperimentKind kind, const json& P) {
  using detail::integer;
  using detail::number;
  using detail::numbers;
  switch (kind) {
    case ExperimentKind::improving: {
      const double p = number(P, "p"), q = number(P, "q");
      require(p >= 1.0 && p <= q, kind, "need 1 <= p <= q");
      require(integer(P, "nMinExp") >= 1 && integer(P, "nMinExp") < integer(P, "nMaxExp") &&
                  integer(P, "nMaxExp") <= 20,
              kind, "need 1 <= nMinExp < nMaxExp <= 20");
      require(integer(P, "exactMax") >= 2 && integer(P, "exactMax") <= (1 << 24), kind, "exactMax out of [2, 2^24]");
      require(integer(P, "slopeMinExp") >= 1 && integer(P, "slopeMinExp") + 2 <= integer(P, "slopeMaxExp") &&
                  integer(P, "slopeMaxExp") <= 20,
              kind, "need 1 <= slopeMinExp, slopeMinExp + 2 <= slopeMaxExp <= 20");
      break;
    }
    case ExperimentKind::minorArc:
      require(integer(P, "N") >= 1024 && integer(P, "N") <= 65536, kind, "N must lie in [2^10, 2^16]");
      require(integer(P, "lMin") >= 0 && integer(P, "lMin") + 2 <= integer(P, "lMax") && integer(P, "lMax") <= 20,
              kind, "need 0 <= lMin, lMin + 2 <= lMax <= 20");
      require(integer(P, "trials") >= 1 && integer(P, "trials") <= 256, kind, "trials out of [1, 256]");
      break;
    case ExperimentKind::jumpCorollary:
      require(number(P, "lambda") > 1.0, kind, "lambda must exceed 1");
      require(integer(P, "capExp") >= 1 && integer(P, "capExp") <= 30, kind, "capExp out of [1, 30]");
      require(integer(P, "pairs") >= 1 && integer(P, "pairs") <= 100000, kind, "pairs out of [1, 10^5]");
      require(integer(P, "deltaMinExp") >= 0 && integer(P, "deltaMinExp") < integer(P, "deltaMaxExp") &&
                  integer(P, "deltaMaxExp") <= 30,
              kind, "need 0 <= deltaMinExp < deltaMaxExp <= 30");
      break;
    case ExperimentKind::variationalRatio:
    case ExperimentKind::maximalRatio: {
      const double p1 = number(P, "p1"), p2 = number(P, "p2");
      require(p1 > 1.0 && p1 < kInf && p2 > 1.0 && p2 < kInf, kind, "p1, p2 must lie in (1, inf)");
      if (kind == ExperimentKind::variationalRatio) require(number(P, "r") > 2.0, kind, "r must exceed 2");
      require(number(P, "lambda") > 1.0, kind, "lambda must exceed 1");
      require(integer(P, "trials") >= 1 && integer(P, "trials") <= 10000, kind, "trials out of [1, 10^4]");
      require(integer(P, "maxSupport") >= 1 && integer(P, "maxSupport") <= 1024, kind, "maxSupport out of [1, 1024]");
      require(integer(P, "capMinExp") >= 3 && integer(P, "capMinExp") < integer(P, "capMaxExp") &&
                  integer(P, "capMaxExp") <= 14,
              kind, "need 3 <= capMinExp < capMaxExp <= 14");
      break;
    }
    case ExperimentKind::symbolComparison:
      require(integer(P, "l1") >= 0 && integer(P, "l1") <= 10 && integer(P, "l2") >= 0 && integer(P, "l2") <= 10,
              kind, "l1, l2 out of [0, 10]");
      require(integer(P, "gridPoints") >= 2 && integer(P, "gridPoints") <= 101, kind, "gridPoints out of [2, 101]");
      require(integer(P, "nMinExp") >= 1 && integer(P, "nMinExp") + 2 <= integer(P, "nMaxExp") &&
                  integer(P, "nMaxExp") <= 20,
              kind, "need 1 <= nMinExp, nMinExp + 2 <= nMaxExp <= 20");
      break;
    case ExperimentKind::sharpness: {
      const std::int64_t Q = integer(P, "Q");
      const auto fib = fibonacciUpTo(Q);
      require(Q >= 987 && Q <= 10946 && fib.back() == Q, kind, "Q must be a Fibonacci number in [987, 10946]");
      const auto mu = numbers(P, "mu");
      require(!mu.empty(), kind, "mu list is empty");
      for (double m : mu) require(m > 0.0 && m <= 1.0, kind, "mu must lie in (0, 1]");
      for (double p : numbers(P, "p")) require(p > 0.0, kind, "p must be positive");
      break;
    }
    case ExperimentKind::expSumVariation:
      require(number(P, "r") > 2.0, kind, "r must exceed 2");
      require(number(P, "lambda") > 1.0, kind, "lambda must exceed 1");
      require(integer(P, "gridSize") >= 0 && integer(P, "gridSize") <= 256, kind, "gridSize out of [0, 256]");
      require(integer(P, "randomPairs") >= 0 && integer(P, "randomPairs") <= 100000, kind,
              "randomPairs out of [0, 10^5]");
      require(integer(P, "gridSize") + integer(P, "randomPairs") >= 1, kind, "empty probe set");
      require(integer(P, "minCapExp") >= 1 && integer(P, "minCapExp") <= integer(P, "compareExp") &&
                  integer(P, "compareExp") < integer(P, "capExp") && integer(P, "capExp") <= 30,
              kind, "need 1 <= minCapExp <= compareExp < capExp <= 30");
      break;
    case ExperimentKind::shiftedSquareProbe: {
      const double C = number(P, "C");
      require(C > 0.0 && C < 0.5, kind, "C must lie in (0, 1/2)");
      require(number(P, "A") > 0.0 && number(P, "d") > 0.0, kind, "A and d must be positive");
      require(number(P, "lambda") > 1.0, kind, "lambda must exceed 1");
      require(integer(P, "capScale") >= 1 && integer(P, "capScale") <= 65536, kind, "capScale out of [1, 2^16]");
      const auto K = numbers(P, "K");
      require(!K.empty(), kind, "K list is empty");
      for (double k : K) require(k > 0.0 && k <= 1024.0, kind, "K must lie in (0, 1024]");
      require(integer(P, "trials") >= 1 && integer(P, "trials") <= 64, kind, "trials out of [1, 64]");
      require(integer(P, "support") >= 1 && integer(P, "support") <= 4096, kind, "support out of [1, 4096]");
      const std::int64_t n = integer(P, "singleScaleN");
      require(n >= 1 && n <= 4096, kind, "singleScaleN out of [1, 4096]");
      require(number(P, "A") * std::pow(static_cast<double>(n), number(P, "d")) >= 2.0 * C, kind,
              "singleScaleN too small for the band symbol");
      const std::int64_t M = integer(P, "M");
      require(M == 0 || (M >= 1024 && M <= (1 << 24) && (M & (M - 1)) == 0), kind,
              "M must be 0 (automatic) or a power of two in [2^10, 2^24]");
      break;
    }
    case ExperimentKind::principalArc: {
      const double delta = number(P, "delta");
      require(delta > 0.0 && delta <= 1.0, kind, "delta must lie in (0, 1]");
      const auto Ns = numbers(P, "N");
      require(Ns.size() >= 2, kind, "need at least two N");
      for (double n : Ns) require(n >= 1.0 && n <= 4096.0 && n == std::floor(n), kind, "N must be an integer in [1, 4096]");
      require(integer(P, "stepFactor") >= 4 && integer(P, "stepFactor") <= 16, kind, "stepFactor out of [4, 16]");
      break;
    }
  }
}

double ratioOrZero(double num, double den) { return den > 0.0 ? num / den : 0.0; }

// Fractional part of x * n with a single rounding.
double frac(double x, std::int64_t n) {
  const double nd = static_cast<double>(n);
  return std::fma(x, nd, -std::nearbyint(x * nd));
}

}  // namespace

namespace detail {

ExperimentReport startReport(const ExperimentConfig& cfg, ExperimentKind expected, json& params) {
  if (cfg.kind != expected) throw std::invalid_argument("experiment kind mismatch");
  params = resolveParameters(cfg.kind, cfg.parameters);
  ExperimentReport report;
  report.kind = std::string(kindName(cfg.kind));
  report.seed = cfg.seed;
  report.parameters = params;
  return report;
}

void finishReport(ExperimentReport& report, const Stopwatch& clock) {
  judge(report);
  report.durationSeconds = clock.seconds();
}

double number(const json& params, const char* name) { return numberFromJson(params.at(name)); }

std::int64_t integer(const json& params, const char* name) {
  const double v = number(params, name);
  if (v != std::floor(v) || std::abs(v) > 9.0e15) {
    throw std::invalid_argument(std::string("parameter ") + name + " must be an integer");
  }
  return static_cast<std::int64_t>(v);
}

std::vector<double> numbers(const json& params, const char* name) {
  const json& j = params.at(name);
  std::vector<double> out;
  if (!j.is_array()) return {numberFromJson(j)};
  for (const auto& v : j) out.push_back(numberFromJson(v));
  return out;
}

}  // namespace detail

const std::vector<ExperimentKind>& allExperimentKinds() {
  static const std::vector<ExperimentKind> kinds = [] {
    std::vector<ExperimentKind> v;
    for (const auto& k : kKinds) v.push_back(k.kind);
    return v;
  }();
  return kinds;
}

std::string_view kindName(ExperimentKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

std::optional<ExperimentKind> parseKind(std::string_view name) {
  for (const auto& k : kKinds) {
    if (name == k.name) return k.kind;
  }
  return std::nullopt;
}

json resolveParameters(ExperimentKind kind, const json& given) {
  json params = defaults(kind);
  if (!given.is_null() && !given.is_object()) reject(kind, "parameters must be an object");
  if (given.is_object()) {
    for (const auto& [name, value] : given.items()) {
      if (!params.contains(name)) reject(kind, "unknown parameter '" + name + "'");
      if (params[name].is_array()) {
        if (!value.is_array()) reject(kind, "parameter '" + name + "' must be a list of numbers");
        for (const auto& v : value) numberFromJson(v);
      } else {
        numberFromJson(value);
      }
      params[name] = value;
    }
  }
  validate(kind, params);
  return params;
}

ExperimentConfig configFromJson(const json& j) {
  ExperimentConfig cfg;
  const auto kind = parseKind(j.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown experiment kind '" + j.at("kind").get<std::string>() + "'");
  cfg.kind = *kind;
  if (!j.contains("seed")) throw std::invalid_argument("config: seed is required");
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.parameters = j.value("parameters", json::object());
  return cfg;
}

json toJson(const ExperimentConfig& cfg) {
  return {{"kind", kindName(cfg.kind)}, {"seed", cfg.seed}, {"parameters", cfg.parameters}};
}

ExperimentReport runExperiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::improving: return runImproving(cfg);
    case ExperimentKind::minorArc: return runMinorArc(cfg);
    case ExperimentKind::jumpCorollary: return runJumpCorollary(cfg);
    case ExperimentKind::variationalRatio: return runVariationalRatio(cfg);
    case ExperimentKind::maximalRatio: return runMaximalRatio(cfg);
    case ExperimentKind::symbolComparison: return runSymbolComparison(cfg);
    case ExperimentKind::sharpness: return runSharpness(cfg);
    case ExperimentKind::expSumVariation: return runExpSumVariation(cfg);
    case ExperimentKind::shiftedSquareProbe: return runShiftedSquareProbe(cfg);
    case ExperimentKind::principalArc: return runPrincipalArc(cfg);
  }
  throw std::invalid_argument("unknown experiment kind");
}

std::vector<Complex> partialExpSums(double zeta, double xi, std::span<const std::int64_t> scales) {
  std::vector<Complex> out;
  out.reserve(scales.size());
  Complex done = 0.0;        // sum over n < blockStart
  std::int64_t m = 1;        // current block: n in [m^2, (m+1)^2)
  std::int64_t prev = 0;
  auto block = [&](std::int64_t first, std::int64_t last) {
    return expi(frac(zeta, m) + frac(xi, first)) * dirichletKernel(last - first + 1, xi);
  };
  for (std::int64_t N : scales) {
    if (N < 1 || N <= prev) throw std::invalid_argument("partialExpSums: scales must be increasing and >= 1");
    prev = N;
    while ((m + 1) * (m + 1) - 1 <= N) {
      done += block(m * m, (m + 1) * (m + 1) - 1);
      ++m;
    }
    Complex s = done;
    if (m * m <= N) s += block(m * m, N);
    out.push_back(s / static_cast<double>(N));
  }
  return out;
}

std::vector<int> smoothingPeakCounts(std::int64_t nMax) {
  if (nMax < 1) throw std::invalid_argument("smoothingPeakCounts: nMax must be >= 1");
  std::vector<int> counts(static_cast<std::size_t>(nMax) + 1, 0);
  std::vector<int> out(static_cast<std::size_t>(nMax));
  int peak = 0;
  std::int64_t m = 1;
  for (std::int64_t n = 1; n <= nMax; ++n) {
    while ((m + 1) * (m + 1) <= n) ++m;
    peak = std::max(peak, ++counts[static_cast<std::size_t>(n - m)]);
    out[static_cast<std::size_t>(n - 1)] = peak;
  }
  return out;
}

// ---------------------------------------------------------------------------

ExperimentReport runImproving(const ExperimentConfig& cfg) {
  detail::Stopwatch clock;
  json P;
  ExperimentReport report = detail::startReport(cfg, ExperimentKind::improving, P);
  const double p = detail::number(P, "p"), q = detail::number(P, "q");
  const double gain = 1.0 / p - 1.0 / q;

  Rng rng(cfg.seed);
  const std::map<std::string, GridFunction> inputs{
      {"delta", GridFunction::delta(0)},
      {"signs", randomSigns(rng, 0, 32)},
      {"interval", GridFunction::indicator(0, 32)},
  };
  for (auto k = detail::integer(P, "nMinExp"); k <= detail::integer(P, "nMaxExp"); ++k) {
    const std::int64_t N = std::int64_t{1} << k;
    const double Nd = static_cast<double>(N);
    for (const auto& [name, f] : inputs) {
      const double r = std::pow(Nd, gain) * lpNorm(linearSmoothingAverage(f, N), q) / lpNorm(f, p);
      report.series["ratio:" + name].push_back({Nd, r});
    }
  }
  const auto peaks = smoothingPeakCounts(detail::integer(P, "exactMax"));
  auto& exact = report.series["exact:delta"];
  for (std::size_t i = 1; i < peaks.size(); ++i) exact.push_back({static_cast<double>(i + 1), static_cast<double>(peaks[i])});
  report.constants["maxExactDelta"] = static_cast<double>(*std::max_element(peaks.begin(), peaks.end()));

  const auto interval = GridFunction::indicator(0, 32);
  for (auto k = detail::integer(P, "slopeMinExp"); k <= detail::integer(P, "slopeMaxExp"); ++k) {
    const std::int64_t N = std::int64_t{1} << k;
    report.series["sup:interval"].push_back({static_cast<double>(N), lpNorm(linearSmoothingAverage(interval, N), kInf)});
  }
  detail::finishReport(report, clock);
  return report;
}

ExperimentReport runMinorArc(const ExperimentConfig& cfg) {
  detail::Stopwatch clock;
  json P;
  ExperimentReport report = detail::startReport(cfg, ExperimentKind::minorArc, P);
  const std::int64_t N = detail::integer(P, "N");
  const auto lMin = detail::integer(P, "lMin"), lMax = detail::integer(P, "lMax");
  const auto trials = static_cast<std::size_t>(detail::integer(P, "trials"));
  const double Nd = static_cast<double>(N);
  const auto levels = static_cast<std::size_t>(lMax - lMin + 1);

  const auto ratio = [N](const GridFunction& f, const GridFunction& g) {
    const double den = lpNorm(f, 2.0) * lpNorm(g, 2.0);
    return den > 0.0 ? lpNorm(upperHalfAverage(f, g, N), 1.0) / den : 0.0;
  };

  // Per trial: rows case1, case2, control1, control2, one entry per l.
  using Rows = std::array<std::vector<double>, 4>;
  const auto rows = detail::parallelTrials<Rows>(trials, [&](std::size_t t) {
    Rng rng = Rng::forTrial(cfg.seed, t);
    const auto f = randomSigns(rng, 0, N + 1);
    const auto g = randomSigns(rng, 0, N + 1);
    // Partner on the principal arc: a slowly modulated interval.
    const double theta = rng.uniform(-0.5 / Nd, 0.5 / Nd);
    const auto partner = modulate(GridFunction::indicator(0, N + 1), theta);
    const std::size_t M = defaultGridSize(f);
    Rows out;
    for (auto l = lMin; l <= lMax; ++l) {
      const CutoffSpec high1{std::ldexp(1.0 / std::sqrt(Nd), static_cast<int>(l)), CutoffKind::highpass};
      const CutoffSpec high2{std::ldexp(1.0 / Nd, static_cast<int>(l)), CutoffKind::highpass};
      out[0].push_back(ratio(bandProject(f, high1, M), partner));
      out[1].push_back(ratio(partner, bandProject(g, high2, M)));
      out[2].push_back(ratio(randomSigns(rng, 0, N + 1), partner));
      out[3].push_back(ratio(partner, randomSigns(rng, 0, N + 1)));
    }
    return out;
  });
  static const char* names[] = {"case1", "case2", "control1", "control2"};
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t i = 0; i < levels; ++i) {
      double mean = 0.0;
      for (const auto& r : rows) mean += r[a][i];
      report.series[names[a]].push_back({static_cast<double>(lMin + static_cast<std::int64_t>(i)), mean / static_cast<double>(trials)});
    }
  }
  detail::finishReport(report, clock);
  return report;
}

ExperimentReport runJumpCorollary(const ExperimentConfig& cfg) {
  detail::Stopwatch clock;
  json P;
  ExperimentReport report = detail::startReport(cfg, ExperimentKind::jumpCorollary, P);
  const auto D = lacunarySet(detail::number(P, "lambda"), 1, std::int64_t{1} << detail::integer(P, "capExp"));
  const auto pairs = static_cast<std::size_t>(detail::integer(P, "pairs"));
  const auto kMin = detail::integer(P, "deltaMinExp"), kMax = detail::integer(P, "deltaMaxExp");

  const auto counts = detail::parallelTrials<std::vector<double>>(pairs, [&](std::size_t i) {
    Rng rng = Rng::forTrial(cfg.seed, i);
    const double zeta = rng.uniform(-0.5, 0.5);
    const double xi = rng.uniform(-0.5, 0.5);
    const IndexedSequence seq(D.scales, partialExpSums(zeta, xi, D.scales));
    std::vector<double> row;
    for (auto k = kMin; k <= kMax; ++k) row.push_back(static_cast<double>(jumpCount(seq, std::ldexp(1.0, -static_cast<int>(k))).count));
    return row;
  });
  for (auto k = kMin; k <= kMax; ++k) {
    double best = 0.0;
    for (const auto& row : counts) best = std::max(best, row[static_cast<std::size_t>(k - kMin)]);
    report.series["maxJumps"].push_back({std::ldexp(1.0, static_cast<int>(k)), best});
  }
  report.constants["scales"] = static_cast<double>(D.scales.size());
  detail::finishReport(report, clock);
  return report;
}

namespace {

ExperimentReport runRatio(const ExperimentConfig& cfg, ExperimentKind kind) {
  detail::Stopwatch clock;
  json P;
  ExperimentReport report = detail::startReport(cfg, kind, P);
  const double p1 = detail::number(P, "p1"), p2 = detail::number(P, "p2");
  const double p = 1.0 / (1.0 / p1 + 1.0 / p2);
  const double r = kind == ExperimentKind::variationalRatio ? detail::number(P, "r") : kInf;
  const auto capMin = detail::integer(P, "capMinExp"), capMax = detail::integer(P, "capMaxExp");
  const auto D = lacunarySet(detail::number(P, "lambda"), 4, std::int64_t{1} << capMax);
  const auto maxSupport = static_cast<std::uint64_t>(detail::integer(P, "maxSupport"));
  const auto trials = static_cast<std::size_t>(detail::integer(P, "trials"));

  const auto rows = detail::parallelTrials<std::vector<double>>(trials, [&](std::size_t t) {
    Rng rng = Rng::forTrial(cfg.seed, t);
    const auto f = randomPhases(rng, 0, static_cast<std::int64_t>(1 + rng.bits() % maxSupport));
    const auto g = randomPhases(rng, 0, static_cast<std::int64_t>(1 + rng.bits() % maxSupport));
    std::vector<GridFunction> avg;
    for (auto N : D.scales) avg.push_back(upperHalfAverage(f, g, N));
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
    for (const auto& a : avg) {
      if (a.isZero()) continue;
      lo = std::min(lo, a.offset());
      hi = std::max(hi, a.end());
    }
    const double den = lpNorm(f, p1) * lpNorm(g, p2);
    std::vector<double> row;
    for (auto k = capMin; k <= capMax; ++k) {
      const std::int64_t cap = std::int64_t{1} << k;
      std::vector<std::int64_t> times;
      for (auto N : D.scales) {
        if (N <= cap) times.push_back(N);
      }
      std::vector<Complex> pointwise;
      for (std::int64_t x = lo; x < hi; ++x) {
        std::vector<Complex> samples;
        for (std::size_t i = 0; i < times.size(); ++i) samples.push_back(avg[i](x));
        double v = 0.0;
        if (kind == ExperimentKind::variationalRatio) {
          v = variationNorm(IndexedSequence(times, std::move(samples)), r).value;
        } else {
          for (Complex z : samples) v = std::max(v, std::abs(z));
        }
        pointwise.push_back(v);
      }
      row.push_back(times.empty() ? 0.0 : ratioOrZero(lpNorm(GridFunction(lo, std::move(pointwise)), p), den));
    }
    return row;
  });
  for (auto k = capMin; k <= capMax; ++k) {
    double best = 0.0, mean = 0.0;
    for (const auto& row : rows) {
      best = std::max(best, row[static_cast<std::size_t>(k - capMin)]);
      mean += row[static_cast<std::size_t>(k - capMin)];
    }
    const double cap = std::ldexp(1.0, static_cast<int>(k));
    report.series["maxRatio"].push_back({cap, best});
    report.series["meanRatio"].push_back({cap, mean / static_cast<double>(trials)});
  }
  report.constants["p"] = p;
  detail::finishReport(report, clock);
  return report;
}

}  // namespace

ExperimentReport runVariationalRatio(const ExperimentConfig& cfg) {
  return runRatio(cfg, ExperimentKind::variationalRatio);
}

ExperimentReport runMaximalRatio(const ExperimentConfig& cfg) { return runRatio(cfg, ExperimentKind::maximalRatio); }

ExperimentReport runSymbolComparison(const ExperimentConfig& cfg) {
  detail::Stopwatch clock;
  json P;
  ExperimentReport report = detail::startReport(cfg, ExperimentKind::symbolComparison, P);
  const auto l1 = static_cast<int>(detail::integer(P, "l1")), l2 = static_cast<int>(detail::integer(P, "l2"));
  const auto G = detail::integer(P, "gridPoints");

  for (auto k = detail::integer(P, "nMinExp"); k <= detail::integer(P, "nMaxExp"); ++k) {
    const std::int64_t N = std::int64_t{1} << k;
    const double Nd = static_cast<double>(N);
    const double w1 = std::ldexp(1.0 / std::sqrt(Nd), l1), w2 = std::ldexp(1.0 / Nd, l2);
    const auto node = [G](double w, std::int64_t i) { return -w + 2.0 * w * static_cast<double>(i) / static_cast<double>(G - 1); };
    double sup = 0.0, oracle = 0.0;
    for (std::int64_t i = 0; i < G; ++i) {
      for (std::int64_t j = 0; j < G; ++j) {
        const double xi1 = node(w1, i), xi2 = node(w2, j);
        sup = std::max(sup, std::abs(discreteSymbol({xi1, xi2, N, true}) - continuousSymbol(xi1, xi2, N)));
      }
      // xi1 = 0 has the antiderivative in closed form.
      const double xi2 = node(w2, i);
      const Complex closed = xi2 == 0.0 ? Complex(0.5)
                                        : (expi(-xi2 * Nd) - expi(-xi2 * Nd / 2.0)) /
                                              Complex(0.0, -2.0 * std::numbers::pi * xi2 * Nd);
      oracle = std::max(oracle, std::abs(continuousSymbol(0.0, xi2, N) - closed));
    }
    report.series["supDiff"].push_back({Nd, sup});
    report.series["oracleError"].push_back({Nd, oracle});
  }
  detail::finishReport(report, clock);
  return report;
}

ExperimentReport runExpSumVariation(const ExperimentConfig& cfg) {
  detail::Stopwatch clock;
  json P;
  ExperimentReport report = detail::startReport(cfg, ExperimentKind::expSumVariation, P);
  const double r = detail::number(P, "r");
  const auto capExp = detail::integer(P, "capExp"), minCap = detail::integer(P, "minCapExp");
  const auto D = lacunarySet(detail::number(P, "lambda"), 1, std::int64_t{1} << capExp);
  const auto G = detail::integer(P, "gridSize");

  std::vector<std::array<double, 2>> probes;
  for (std::int64_t i = 0; i < G; ++i) {
    for (std::int64_t j = 0; j < G; ++j) {
      probes.push_back({torusReduce(static_cast<double>(i) / static_cast<double>(G)),
                        torusReduce(static_cast<double>(j) / static_cast<double>(G))});
    }
  }
  Rng rng(cfg.seed);
  for (auto i = detail::integer(P, "randomPairs"); i > 0; --i) {
    const double zeta = rng.uniform(-0.5, 0.5);
    probes.push_back({zeta, rng.uniform(-0.5, 0.5)});
  }

  const auto rows = detail::parallelTrials<std::vector<double>>(probes.size(), [&](std::size_t i) {
    const auto sums = partialExpSums(probes[i][0], probes[i][1], D.scales);
    std::vector<double> row;
    for (auto k = minCap; k <= capExp; ++k) {
      const std::int64_t cap = std::int64_t{1} << k;
      const auto count = static_cast<std::size_t>(
          std::upper_bound(D.scales.begin(), D.scales.end(), cap) - D.scales.begin());
      const IndexedSequence seq({D.scales.begin(), D.scales.begin() + static_cast<std::ptrdiff_t>(count)},
                                {sums.begin(), sums.begin() + static_cast<std::ptrdiff_t>(count)});
      row.push_back(variationNorm(seq, r).value);
    }
    return row;
  });
  for (auto k = minCap; k <= capExp; ++k) {
    double best = 0.0;
    for (const auto& row : rows) best = std::max(best, row[static_cast<std::size_t>(k - minCap)]);
    report.series["maxV"].push_back({std::ldexp(1.0, static_cast<int>(k)), best});
  }
  report.constants["probes"] = static_cast<double>(probes.size());
  detail::finishReport(report, clock);
  return report;
}

ExperimentReport runShiftedSquareProbe(const ExperimentConfig& cfg) {
  detail::Stopwatch clock;
  json P;
  ExperimentReport report = detail::startReport(cfg, ExperimentKind::shiftedSquareProbe, P);
  const double C = detail::number(P, "C");
  ShiftedSquareOptions opts;
  opts.A = detail::number(P, "A");
  opts.d = detail::number(P, "d");
  const auto D = lacunarySet(detail::number(P, "lambda"), 1, detail::integer(P, "capScale"));
  const auto Ks = detail::numbers(P, "K");
  const auto trials = static_cast<std::size_t>(detail::integer(P, "trials"));
  const auto support = detail::integer(P, "support");
  const BandSymbol eta = dilatedBandSymbol(C);
  // The l2 ratio is exact on any grid holding f (Plancherel), so the sweep may
  // use a grid smaller than the automatic alias-free one.
  ShiftedSquareOptions sweepOpts = opts;
  sweepOpts.M = static_cast<std::size_t>(detail::integer(P, "M"));

  const auto rows = detail::parallelTrials<std::vector<double>>(trials, [&](std::size_t t) {
    Rng rng = Rng::forTrial(cfg.seed, t);
    const auto f = randomSigns(rng, 0, support);
    std::vector<double> row;
    for (double K : Ks) {
      std::map<std::int64_t, double> shifts;
      for (auto N : D.scales) shifts[N] = rng.uniform(-K, K);
      row.push_back(lpNorm(shiftedSquareFunction(f, D, eta, shifts, sweepOpts), 2.0) / lpNorm(f, 2.0));
    }
    return row;
  });
  for (std::size_t i = 0; i < Ks.size(); ++i) {
    double mean = 0.0;
    for (const auto& row : rows) mean += row[i];
    report.series["ratio"].push_back({Ks[i], mean / static_cast<double>(trials)});
  }

  // One scale, no shift: the output is |(1/a) eta^(./a) * f| with eta^ from the table.
  const std::int64_t N = detail::integer(P, "singleScaleN");
  const double a = opts.A * std::pow(static_cast<double>(N), opts.d);
  Rng rng(cfg.seed);
  const auto f = randomSigns(rng, 0, support);
  const auto S = shiftedSquareFunction(f, LacunarySet{D.lambda, {N}}, eta, {}, opts);
  const auto kernel = [&](double y) {
    const double u = y / a;
    return (C * cutoffPsiInverse(C * u) - 0.5 * C * cutoffPsiInverse(0.5 * C * u)) / a;
  };
  double err = 0.0;
  for (std::int64_t x = S.offset(); x < S.end(); ++x) {
    Complex direct = 0.0;
    for (std::int64_t z = f.offset(); z < f.end(); ++z) direct += kernel(static_cast<double>(x - z)) * f(z);
    err = std::max(err, std::abs(S(x).real() - std::abs(direct)));
  }
  report.series["singleScaleError"].push_back({static_cast<double>(N), err});
  report.constants["scales"] = static_cast<double>(D.scales.size());
  detail::finishReport(report, clock);
  return report;
}

ExperimentReport runPrincipalArc(const ExperimentConfig& cfg) {
  detail::Stopwatch clock;
  json P;
  ExperimentReport report = detail::startReport(cfg, ExperimentKind::principalArc, P);
  const double delta = detail::number(P, "delta");
  const double stepFactor = detail::number(P, "stepFactor");
  for (double Nd : detail::numbers(P, "N")) {
    const auto N = static_cast<std::int64_t>(Nd);
    const auto witnesses = principalArcWitness(N, delta, 1.0 / (stepFactor * Nd));
    double best = 0.0;
    for (const auto& w : witnesses) best = std::max(best, w.xiTimesN);
    report.series["maxXiTimesN"].push_back({Nd, best});
    report.series["witnessCount"].push_back({Nd, static_cast<double>(witnesses.size())});
  }
  detail::finishReport(report, clock);
  return report;
}

}  // namespace ergavg::lab
