// Desk-scale experiments.  Each run* function is deterministic given the
// configuration seed and returns a judged report.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ergavg/gridfn.hpp"
#include "ergavg/lab/report.hpp"
#include "json.hpp"

namespace ergavg::lab {

enum class ExperimentKind {
  improving,
  minorArc,
  jumpCorollary,
  variationalRatio,
  maximalRatio,
  symbolComparison,
  sharpness,
  expSumVariation,
  shiftedSquareProbe,
  principalArc,
};

const std::vector<ExperimentKind>& allExperimentKinds();
std::string_view kindName(ExperimentKind kind);
std::optional<ExperimentKind> parseKind(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::improving;
  std::uint64_t seed = 0;
  // name -> number or array of numbers; missing names take the kind defaults.
  nlohmann::json parameters = nlohmann::json::object();
};

// Kind defaults merged with the given parameters.  Throws
// std::invalid_argument on unknown names or out-of-range values.
nlohmann::json resolveParameters(ExperimentKind kind, const nlohmann::json& given);

// {"kind": name, "seed": u64, "parameters": {...}}; seed is required.
ExperimentConfig configFromJson(const nlohmann::json& j);
nlohmann::json toJson(const ExperimentConfig& cfg);

ExperimentReport runExperiment(const ExperimentConfig& cfg);

ExperimentReport runImproving(const ExperimentConfig& cfg);
ExperimentReport runMinorArc(const ExperimentConfig& cfg);
ExperimentReport runJumpCorollary(const ExperimentConfig& cfg);
ExperimentReport runVariationalRatio(const ExperimentConfig& cfg);
ExperimentReport runMaximalRatio(const ExperimentConfig& cfg);
ExperimentReport runSymbolComparison(const ExperimentConfig& cfg);
ExperimentReport runSharpness(const ExperimentConfig& cfg);
ExperimentReport runExpSumVariation(const ExperimentConfig& cfg);
ExperimentReport runShiftedSquareProbe(const ExperimentConfig& cfg);
ExperimentReport runPrincipalArc(const ExperimentConfig& cfg);

// S_N = (1/N) sum_{n<=N} e(zeta floor(sqrt n) + xi n) for each N in scales
// (increasing, >= 1).  Summed block by block over runs of constant floor(sqrt n).
std::vector<Complex> partialExpSums(double zeta, double xi, std::span<const std::int64_t> scales);

// N * ||B_N delta_0||_inf = max_k #{n <= N : floor(sqrt n) - n = k} for N = 1..nMax,
// by incremental counting.  Entry N - 1 belongs to N.
std::vector<int> smoothingPeakCounts(std::int64_t nMax);

}  // namespace ergavg::lab
