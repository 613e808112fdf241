#include "ergavg/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ergavg {

IndexedSequence::IndexedSequence(std::vector<std::int64_t> t, std::vector<Complex> s)
    : times(std::move(t)), samples(std::move(s)) {
  if (times.size() != samples.size()) {
    throw std::invalid_argument("IndexedSequence: times and samples differ in length");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] <= times[i - 1]) throw std::invalid_argument("IndexedSequence: times must increase");
  }
}

IndexedSequence IndexedSequence::fromSamples(std::vector<Complex> s) {
  std::vector<std::int64_t> t(s.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<std::int64_t>(i);
  return IndexedSequence(std::move(t), std::move(s));
}

double chainSum(std::span<const Complex> samples, std::span<const std::size_t> chain, double r) {
  double peak = 0.0;
  for (std::size_t j = 1; j < chain.size(); ++j) {
    peak = std::max(peak, std::abs(samples[chain[j]] - samples[chain[j - 1]]));
  }
  if (std::isinf(r) || peak == 0.0) return peak;
  double sum = 0.0;
  for (std::size_t j = 1; j < chain.size(); ++j) {
    sum += std::pow(std::abs(samples[chain[j]] - samples[chain[j - 1]]) / peak, r);
  }
  return peak * std::pow(sum, 1.0 / r);
}

VariationResult variationNorm(const IndexedSequence& seq, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("variationNorm: r must be positive");
  if (seq.size() == 0) throw std::invalid_argument("variationNorm: empty sequence");
  const auto& a = seq.samples;
  const std::size_t n = a.size();

  VariationResult result;
  double diameter = 0.0;
  std::size_t dI = 0, dJ = 0;
  for (std::size_t j = 0; j < n; ++j) {
    result.supTerm = std::max(result.supTerm, std::abs(a[j]));
    for (std::size_t i = 0; i < j; ++i) {
      const double d = std::abs(a[j] - a[i]);
      if (d > diameter) {
        diameter = d;
        dI = i;
        dJ = j;
      }
    }
  }

  if (diameter == 0.0) {
    result.value = result.supTerm;
    return result;
  }
  if (std::isinf(r)) {
    result.oscTerm = diameter;
    result.witnessChain = {dI, dJ};
    result.value = result.supTerm + result.oscTerm;
    return result;
  }

  // best[j] = max over chains ending at j of sum |diff / diameter|^r.  The
  // normalisation keeps every term in [0, 1], so large r cannot overflow.
  std::vector<double> best(n, 0.0);
  std::vector<std::size_t> prev(n, n);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double candidate = best[i] + std::pow(std::abs(a[j] - a[i]) / diameter, r);
      if (candidate > best[j]) {
        best[j] = candidate;
        prev[j] = i;
      }
    }
  }
  const auto end = static_cast<std::size_t>(std::max_element(best.begin(), best.end()) - best.begin());
  for (std::size_t k = end; k != n; k = prev[k]) result.witnessChain.push_back(k);
  std::reverse(result.witnessChain.begin(), result.witnessChain.end());
  result.oscTerm = diameter * std::pow(best[end], 1.0 / r);
  result.value = result.supTerm + result.oscTerm;
  return result;
}

JumpResult jumpCount(const IndexedSequence& seq, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("jumpCount: delta must be positive");
  const auto& a = seq.samples;
  const std::size_t n = a.size();
  // Longest path in the DAG i -> j (i < j, |a_j - a_i| >= delta).
  std::vector<std::size_t> best(n, 0), prev(n, n);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (std::abs(a[j] - a[i]) >= delta && best[i] + 1 > best[j]) {
        best[j] = best[i] + 1;
        prev[j] = i;
      }
    }
  }
  JumpResult result;
  if (n == 0) return result;
  const auto end = static_cast<std::size_t>(std::max_element(best.begin(), best.end()) - best.begin());
  result.count = best[end];
  if (result.count > 0) {
    for (std::size_t k = end; k != n; k = prev[k]) result.witnessChain.push_back(k);
    std::reverse(result.witnessChain.begin(), result.witnessChain.end());
  }
  return result;
}

}  // namespace ergavg
