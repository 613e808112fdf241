// Experiment reports: stored measurements, fits, pass flags and their
// serialisations (report.json, points.csv, plot.svg).

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ergavg/lab/fit.hpp"
#include "json.hpp"

namespace ergavg::lab {

using Series = std::vector<Point>;

struct ExperimentReport {
  std::string kind;
  std::uint64_t seed = 0;
  nlohmann::json parameters = nlohmann::json::object();
  std::map<std::string, Series> series;
  std::map<std::string, Fit> fits;
  std::map<std::string, double> constants;
  std::map<std::string, bool> checks;
  bool pass = false;
  double durationSeconds = 0.0;
  // Free-form payload of the utility commands (output functions etc.).
  nlohmann::json data = nlohmann::json::object();
};

// Recomputes fits, checks and pass from the stored series and parameters.
// Reports of utility commands (no experiment kind) keep their stored checks.
void judge(ExperimentReport& report);

// Non-finite numbers are written as the strings "inf", "-inf" and "nan".
nlohmann::json numberToJson(double v);
double numberFromJson(const nlohmann::json& j);

nlohmann::json toJson(const ExperimentReport& report);
ExperimentReport reportFromJson(const nlohmann::json& j);

// Header "series,x,y", one stored point per line.
void writePointsCsv(std::ostream& out, const ExperimentReport& report);
// Log-log scatter of every series with positive points, plus the log-log fits.
// Returns false (and writes nothing) when nothing is plottable.
bool writePlotSvg(std::ostream& out, const ExperimentReport& report);

}  // namespace ergavg::lab
