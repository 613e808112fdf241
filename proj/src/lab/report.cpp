#include "ergavg/lab/report.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ergavg/lab/experiments.hpp"

namespace ergavg::lab {

namespace {

const Series& seriesOrEmpty(const ExperimentReport& r, const std::string& name) {
  static const Series empty;
  const auto it = r.series.find(name);
  return it == r.series.end() ? empty : it->second;
}

Series positivePart(const Series& s) {
  Series out;
  for (const auto& p : s) {
    if (p.x > 0.0 && p.y > 0.0 && std::isfinite(p.y)) out.push_back(p);
  }
  return out;
}

std::optional<Fit> tryFit(Fit (*fit)(std::span<const Point>), const Series& pts) {
  try {
    return fit(pts);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::string label(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double valueAt(const Series& s, double x) {
  for (const auto& p : s) {
    if (p.x == x) return p.y;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// Non-increasing up to 10% slack, and ln y decays at rate >= 0.1 per step of x.
bool decays(const Series& s, std::optional<Fit>& fit) {
  if (s.empty()) return false;
  bool monotone = true;
  for (std::size_t i = 1; i < s.size(); ++i) monotone = monotone && s[i].y <= 1.1 * s[i - 1].y;
  Series pos;
  for (const auto& p : s) {
    if (p.y > 0.0) pos.push_back(p);
  }
  fit = tryFit(fitSemiLog, pos);
  return monotone && fit && fit->slope <= -0.1;
}

void judgeImproving(ExperimentReport& r) {
  const double p = numberFromJson(r.parameters.at("p"));
  const double q = numberFromJson(r.parameters.at("q"));
  for (const char* f : {"delta", "signs", "interval"}) {
    const Series& s = seriesOrEmpty(r, std::string("ratio:") + f);
    double runMax = 0.0, minRunMax = std::numeric_limits<double>::infinity(), maxValue = 0.0;
    for (const auto& pt : s) {
      runMax = std::max(runMax, pt.y);
      minRunMax = std::min(minRunMax, runMax);
      maxValue = std::max(maxValue, pt.y);
    }
    r.checks[std::string("bounded:") + f] = !s.empty() && maxValue <= 2.0 * minRunMax;
    if (p == q) {
      r.checks[std::string("contractive:") + f] =
          !s.empty() && std::all_of(s.begin(), s.end(), [](const Point& pt) { return pt.y <= 1.0 + 1e-12; });
    }
  }
  const Series& exact = seriesOrEmpty(r, "exact:delta");
  r.checks["exactDelta"] =
      !exact.empty() && std::all_of(exact.begin(), exact.end(), [](const Point& pt) { return pt.y <= 2.0; });
  const auto fit = tryFit(fitScaling, seriesOrEmpty(r, "sup:interval"));
  if (fit) r.fits["sup:interval"] = *fit;
  r.checks["intervalSlope"] = fit && std::abs(fit->slope + 1.0) <= 0.1;
}

void judgeMinorArc(ExperimentReport& r) {
  for (const char* c : {"1", "2"}) {
    std::optional<Fit> fit, controlFit;
    const bool arm = decays(seriesOrEmpty(r, std::string("case") + c), fit);
    const bool control = decays(seriesOrEmpty(r, std::string("control") + c), controlFit);
    if (fit) r.fits[std::string("case") + c] = *fit;
    if (controlFit) r.fits[std::string("control") + c] = *controlFit;
    r.checks[std::string("decay:case") + c] = arm;
    r.checks[std::string("controlFails:case") + c] = !control;
  }
}

void judgeJumpCorollary(ExperimentReport& r) {
  const auto fit = tryFit(fitScaling, positivePart(seriesOrEmpty(r, "maxJumps")));
  if (fit) r.fits["maxJumps"] = *fit;
  r.checks["slope"] = fit && fit->slope <= 2.5;
}

void judgeRatioStability(ExperimentReport& r) {
  const Series& s = seriesOrEmpty(r, "maxRatio");
  const auto fit = tryFit(fitScaling, positivePart(s));
  if (fit) r.fits["maxRatio"] = *fit;
  r.checks["stableUnderDoubling"] = s.size() >= 2 && s.back().y <= 2.0 * s[s.size() - 2].y;
}

void judgeSymbolComparison(ExperimentReport& r) {
  const auto fit = tryFit(fitScaling, positivePart(seriesOrEmpty(r, "supDiff")));
  if (fit) r.fits["supDiff"] = *fit;
  r.checks["slope"] = fit && fit->slope >= -0.7 && fit->slope <= -0.3;
  const Series& oracle = seriesOrEmpty(r, "oracleError");
  r.checks["closedFormOracle"] =
      !oracle.empty() && std::all_of(oracle.begin(), oracle.end(), [](const Point& p) { return p.y <= 1e-9; });
}

void judgeSharpness(ExperimentReport& r) {
  Series dev = seriesOrEmpty(r, "deviation");
  for (const auto& p : dev) r.checks["within15:mu=" + label(p.x)] = p.y <= 0.15;
  std::sort(dev.begin(), dev.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
  bool decreasing = dev.size() >= 2;
  for (std::size_t i = 1; i < dev.size(); ++i) decreasing = decreasing && dev[i].y <= dev[i - 1].y;
  r.checks["deviationDecreasesWithMu"] = decreasing;
}

void judgeExpSumVariation(ExperimentReport& r) {
  const Series& s = seriesOrEmpty(r, "maxV");
  const double cap = std::ldexp(1.0, static_cast<int>(numberFromJson(r.parameters.at("capExp"))));
  const double cmp = std::ldexp(1.0, static_cast<int>(numberFromJson(r.parameters.at("compareExp"))));
  const double big = valueAt(s, cap), small = valueAt(s, cmp);
  r.checks["stable"] = big <= 1.5 * small;
  r.checks["atLeastOne"] =
      !s.empty() && std::all_of(s.begin(), s.end(), [](const Point& p) { return p.y >= 1.0 - 1e-12; });
}

void judgeShiftedSquare(ExperimentReport& r) {
  Series lnK;
  for (const auto& p : seriesOrEmpty(r, "ratio")) lnK.push_back({std::log(p.x), p.y});
  const auto fit = tryFit(fitLinear, lnK);
  if (fit) r.fits["ratioVsLogK"] = *fit;
  r.checks["logKGrowth"] = fit && fit->slope <= 1.5;
  const Series& err = seriesOrEmpty(r, "singleScaleError");
  r.checks["singleScaleIdentity"] =
      !err.empty() && std::all_of(err.begin(), err.end(), [](const Point& p) { return p.y <= 1e-10; });
}

void judgePrincipalArc(ExperimentReport& r) {
  const Series& s = seriesOrEmpty(r, "maxXiTimesN");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& p : s) {
    lo = std::min(lo, p.y);
    hi = std::max(hi, p.y);
  }
  r.checks["stableWithinFactor2"] = s.size() >= 2 && lo > 0.0 && hi <= 2.0 * lo;
}

}  // namespace

void judge(ExperimentReport& report) {
  const auto kind = parseKind(report.kind);
  if (kind) {
    report.fits.clear();
    report.checks.clear();
    switch (*kind) {
      case ExperimentKind::improving: judgeImproving(report); break;
      case ExperimentKind::minorArc: judgeMinorArc(report); break;
      case ExperimentKind::jumpCorollary: judgeJumpCorollary(report); break;
      case ExperimentKind::variationalRatio:
      case ExperimentKind::maximalRatio: judgeRatioStability(report); break;
      case ExperimentKind::symbolComparison: judgeSymbolComparison(report); break;
      case ExperimentKind::sharpness: judgeSharpness(report); break;
      case ExperimentKind::expSumVariation: judgeExpSumVariation(report); break;
      case ExperimentKind::shiftedSquareProbe: judgeShiftedSquare(report); break;
      case ExperimentKind::principalArc: judgePrincipalArc(report); break;
    }
  }
  report.pass = std::all_of(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.second; });
  if (kind && report.checks.empty()) report.pass = false;
}

nlohmann::json numberToJson(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double numberFromJson(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("expected a number, got " + j.dump());
}

namespace {

const char* modelName(FitModel m) {
  switch (m) {
    case FitModel::logLog: return "loglog";
    case FitModel::semiLog: return "semilog";
    case FitModel::linear: return "linear";
  }
  return "loglog";
}

FitModel modelFromName(const std::string& s) {
  if (s == "loglog") return FitModel::logLog;
  if (s == "semilog") return FitModel::semiLog;
  if (s == "linear") return FitModel::linear;
  throw std::invalid_argument("unknown fit model " + s);
}

}  // namespace

nlohmann::json toJson(const ExperimentReport& r) {
  nlohmann::json j;
  j["kind"] = r.kind;
  j["seed"] = r.seed;
  j["parameters"] = r.parameters;
  j["series"] = nlohmann::json::object();
  for (const auto& [name, pts] : r.series) {
    auto arr = nlohmann::json::array();
    for (const auto& p : pts) arr.push_back({numberToJson(p.x), numberToJson(p.y)});
    j["series"][name] = std::move(arr);
  }
  j["fits"] = nlohmann::json::object();
  for (const auto& [name, f] : r.fits) {
    j["fits"][name] = {{"model", modelName(f.model)},
                       {"slope", numberToJson(f.slope)},
                       {"intercept", numberToJson(f.intercept)},
                       {"residual", numberToJson(f.residual)}};
  }
  j["constants"] = nlohmann::json::object();
  for (const auto& [name, v] : r.constants) j["constants"][name] = numberToJson(v);
  j["checks"] = r.checks;
  j["pass"] = r.pass;
  j["durationSeconds"] = r.durationSeconds;
  j["data"] = r.data;
  return j;
}

ExperimentReport reportFromJson(const nlohmann::json& j) {
  ExperimentReport r;
  r.kind = j.at("kind").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.parameters = j.value("parameters", nlohmann::json::object());
  for (const auto& [name, arr] : j.at("series").items()) {
    Series s;
    for (const auto& p : arr) s.push_back({numberFromJson(p.at(0)), numberFromJson(p.at(1))});
    r.series[name] = std::move(s);
  }
  if (j.contains("fits")) {
    for (const auto& [name, f] : j.at("fits").items()) {
      r.fits[name] = {modelFromName(f.value("model", "loglog")), numberFromJson(f.at("slope")),
                      numberFromJson(f.at("intercept")), numberFromJson(f.at("residual"))};
    }
  }
  if (j.contains("constants")) {
    for (const auto& [name, v] : j.at("constants").items()) r.constants[name] = numberFromJson(v);
  }
  if (j.contains("checks")) r.checks = j.at("checks").get<std::map<std::string, bool>>();
  r.pass = j.value("pass", false);
  r.durationSeconds = j.value("durationSeconds", 0.0);
  r.data = j.value("data", nlohmann::json::object());
  return r;
}

void writePointsCsv(std::ostream& out, const ExperimentReport& report) {
  out << "series,x,y\n";
  out.precision(17);
  for (const auto& [name, pts] : report.series) {
    for (const auto& p : pts) out << name << ',' << p.x << ',' << p.y << '\n';
  }
}

bool writePlotSvg(std::ostream& out, const ExperimentReport& report) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  std::size_t count = 0;
  for (const auto& [name, pts] : report.series) {
    for (const auto& p : positivePart(pts)) {
      x0 = std::min(x0, std::log10(p.x));
      x1 = std::max(x1, std::log10(p.x));
      y0 = std::min(y0, std::log10(p.y));
      y1 = std::max(y1, std::log10(p.y));
      ++count;
    }
  }
  if (count == 0) return false;
  x0 = std::floor(x0);
  x1 = std::max(std::ceil(x1), x0 + 1.0);
  y0 = std::floor(y0);
  y1 = std::max(std::ceil(y1), y0 + 1.0);

  const double W = 720, H = 480, left = 70, right = 200, top = 30, bottom = 50;
  const auto px = [&](double lx) { return left + (lx - x0) / (x1 - x0) * (W - left - right); };
  const auto py = [&](double ly) { return H - bottom - (ly - y0) / (y1 - y0) * (H - top - bottom); };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left << "\" y=\"18\" font-size=\"13\">" << report.kind << " (log-log)</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << W - left - right << "\" height=\""
      << H - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  const auto decadeStep = [](double span) { return std::max(1.0, std::ceil(span / 8.0)); };
  for (double d = x0; d <= x1; d += decadeStep(x1 - x0)) {
    out << "<text x=\"" << px(d) << "\" y=\"" << H - bottom + 16 << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (double d = y0; d <= y1; d += decadeStep(y1 - y0)) {
    out << "<text x=\"" << left - 6 << "\" y=\"" << py(d) + 4 << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  std::size_t k = 0;
  for (const auto& [name, pts] : report.series) {
    const Series pos = positivePart(pts);
    if (pos.empty()) continue;
    const char* colour = palette[k % 8];
    for (const auto& p : pos) {
      out << "<circle cx=\"" << px(std::log10(p.x)) << "\" cy=\"" << py(std::log10(p.y)) << "\" r=\"2.5\" fill=\""
          << colour << "\"/>\n";
    }
    const auto fit = report.fits.find(name);
    if (fit != report.fits.end() && fit->second.model == FitModel::logLog) {
      const double a = std::log10(pos.front().x), b = std::log10(pos.back().x);
      // slope is in natural logs on both axes, so it carries over to log10 unchanged.
      const double c = fit->second.intercept / std::log(10.0);
      out << "<line x1=\"" << px(a) << "\" y1=\"" << py(fit->second.slope * a + c) << "\" x2=\"" << px(b)
          << "\" y2=\"" << py(fit->second.slope * b + c) << "\" stroke=\"" << colour << "\"/>\n";
    }
    out << "<text x=\"" << W - right + 10 << "\" y=\"" << top + 14 * (k + 1) << "\" fill=\"" << colour << "\">" << name
        << "</text>\n";
    ++k;
  }
  out << "</svg>\n";
  return true;
}

}  // namespace ergavg::lab
