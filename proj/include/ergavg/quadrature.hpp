// quadrature.hpp
//
// Composite Gauss-Legendre quadrature on equal panels.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace ergavg {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// n-point rule, nodes by Newton iteration on P_n.  Cached for n = 16.
const GaussLegendreRule& gaussLegendre16();
GaussLegendreRule gaussLegendre(std::size_t n);

// integral_a^b fn(x) dx with `panels` equal panels of the given rule.
template <class Fn>
auto integrateComposite(Fn&& fn, double a, double b, std::size_t panels,
                        const GaussLegendreRule& rule = gaussLegendre16()) {
  using Value = decltype(fn(a));
  Value total{};
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + width * static_cast<double>(p);
    const double mid = lo + 0.5 * width;
    Value panel{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      panel += rule.weights[i] * fn(mid + 0.5 * width * rule.nodes[i]);
    }
    total += 0.5 * width * panel;
  }
  return total;
}

}  // namespace ergavg
