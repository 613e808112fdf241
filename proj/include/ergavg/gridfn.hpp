// gridfn.hpp
//
// Finitely supported complex functions on the integers, integer sequence
// utilities (floor square root, lacunary scale sets) and a few elementary
// operators (norms, pairings, the uncentered Hardy-Littlewood maximal
// function).
//
// A GridFunction stores an offset and a contiguous run of samples.  It is
// always kept in canonical form: the first and last stored samples are
// nonzero, and the zero function is (offset 0, no samples).

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace ergavg {

using Complex = std::complex<double>;

class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(std::int64_t offset, std::vector<Complex> values);

  static GridFunction delta(std::int64_t at, Complex value = 1.0);
  // Indicator of the half-open interval [lo, hi).
  static GridFunction indicator(std::int64_t lo, std::int64_t hi);

  std::int64_t offset() const { return offset_; }
  // One past the last stored index.
  std::int64_t end() const { return offset_ + static_cast<std::int64_t>(values_.size()); }
  std::span<const Complex> values() const { return values_; }
  std::size_t length() const { return values_.size(); }
  bool isZero() const { return values_.empty(); }
  // Number of nonzero samples, |supp f|.
  std::size_t supportSize() const;

  Complex operator()(std::int64_t x) const {
    if (x < offset_ || x >= end()) return 0.0;
    return values_[static_cast<std::size_t>(x - offset_)];
  }

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  std::int64_t offset_ = 0;
  std::vector<Complex> values_;
};

// (shift(f, k))(x) = f(x - k).
GridFunction shift(const GridFunction& f, std::int64_t k);
GridFunction conj(const GridFunction& f);
GridFunction scale(const GridFunction& f, Complex c);
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction pointwiseProduct(const GridFunction& a, const GridFunction& b);
// x -> e(theta x) f(x), with e(t) = exp(2 pi i t).
GridFunction modulate(const GridFunction& f, double theta);
// Pointwise modulus.
GridFunction abs(const GridFunction& f);

// (sum |f|^p)^(1/p); sup |f| for p = infinity.  Quasi-norms for p < 1.
double lpNorm(const GridFunction& f, double p);
// sum f(x) conj(g(x)).
Complex innerProduct(const GridFunction& f, const GridFunction& g);
// sum f(x) g(x), no conjugation.
Complex bilinearPairing(const GridFunction& f, const GridFunction& g);

// e(t) = exp(2 pi i t), with t reduced mod 1 before evaluation.
Complex expi(double t);

// ---------------------------------------------------------------------------
// Integer sequences
// ---------------------------------------------------------------------------

// Largest k with k*k <= n, exact for all 64-bit n.
std::uint64_t floorSqrt(std::uint64_t n);

// Table of floor(sqrt(n)) for n = 0..nMax, built incrementally.
std::vector<std::int64_t> floorSqrtTable(std::int64_t nMax);

struct LacunarySet {
  double lambda = 2.0;
  std::vector<std::int64_t> scales;

  // Strict ratio test N2 > lambda * N1 evaluated with a single rounding.
  static bool ratioExceeds(double lambda, std::int64_t lower, std::int64_t upper);
  bool satisfiesRatio() const;
  // Scales not exceeding cap.
  LacunarySet truncated(std::int64_t cap) const;
};

// Greedy maximal lambda-lacunary subset of [nMin, nMax] starting at nMin.
LacunarySet lacunarySet(double lambda, std::int64_t nMin, std::int64_t nMax);

// #{ n in [1, N] : floor(sqrt(n)) - n = k }.  Never exceeds 2.
int differenceMultiplicity(std::int64_t k, std::int64_t N);

// Uncentered maximal function over intervals of length <= radiusCap.
// The output window is the support hull widened by radiusCap - 1 on each
// side, outside of which the maximal function vanishes.
GridFunction hlMaximal(const GridFunction& f, std::int64_t radiusCap);

// ---------------------------------------------------------------------------
// Serialization: {"offset": int, "re": [...], "im": [...]}
// ---------------------------------------------------------------------------

nlohmann::json toJson(const GridFunction& f);
GridFunction gridFunctionFromJson(const nlohmann::json& j);

}  // namespace ergavg
