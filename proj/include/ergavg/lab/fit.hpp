// Least-squares exponent fits used by the experiment pass rules.

#pragma once

#include <span>

namespace ergavg::lab {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

enum class FitModel { logLog, semiLog, linear };

struct Fit {
  FitModel model = FitModel::logLog;
  double slope = 0.0;
  double intercept = 0.0;
  // Max absolute deviation of the fitted quantity (log y for the log fits).
  double residual = 0.0;
};

// ln y = slope * ln x + intercept.  Needs >= 3 points, positive values, distinct x.
Fit fitScaling(std::span<const Point> points);
// ln y = slope * x + intercept.  Same preconditions except x may be any real.
Fit fitSemiLog(std::span<const Point> points);
// y = slope * x + intercept.
Fit fitLinear(std::span<const Point> points);

}  // namespace ergavg::lab
