#include "ergavg/lab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace ergavg::lab {

namespace {

Fit leastSquares(const std::vector<Point>& pts, FitModel model) {
  const double n = static_cast<double>(pts.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : pts) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : pts) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
  }
  Fit fit;
  fit.model = model;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (const auto& p : pts) {
    fit.residual = std::max(fit.residual, std::abs(p.y - (fit.slope * p.x + fit.intercept)));
  }
  return fit;
}

void requireShape(std::span<const Point> points, const char* what) {
  if (points.size() < 3) throw std::invalid_argument(std::string(what) + ": need at least 3 points");
  std::set<double> xs;
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw std::invalid_argument(std::string(what) + ": non-finite point");
    if (!xs.insert(p.x).second) throw std::invalid_argument(std::string(what) + ": repeated x");
  }
}

}  // namespace

Fit fitScaling(std::span<const Point> points) {
  requireShape(points, "fitScaling");
  std::vector<Point> logs;
  for (const auto& p : points) {
    if (p.x <= 0.0 || p.y <= 0.0) throw std::invalid_argument("fitScaling: values must be positive");
    logs.push_back({std::log(p.x), std::log(p.y)});
  }
  return leastSquares(logs, FitModel::logLog);
}

Fit fitSemiLog(std::span<const Point> points) {
  requireShape(points, "fitSemiLog");
  std::vector<Point> logs;
  for (const auto& p : points) {
    if (p.y <= 0.0) throw std::invalid_argument("fitSemiLog: values must be positive");
    logs.push_back({p.x, std::log(p.y)});
  }
  return leastSquares(logs, FitModel::semiLog);
}

Fit fitLinear(std::span<const Point> points) {
  requireShape(points, "fitLinear");
  return leastSquares({points.begin(), points.end()}, FitModel::linear);
}

}  // namespace ergavg::lab
