// variation.hpp
//
// r-variation norms, the V^infinity norm and jump counts of finite complex
// sequences indexed by an increasing set of times.
//
//   V^r(a) = sup_N |a_N| + sup over chains N_0 < ... < N_J of
//            (sum_j |a_{N_{j+1}} - a_{N_j}|^r)^(1/r)
//
// Chains are strict; repeating a time adds a zero difference, so the value
// is the same as with non-strict chains.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ergavg/gridfn.hpp"

namespace ergavg {

struct IndexedSequence {
  std::vector<std::int64_t> times;
  std::vector<Complex> samples;

  IndexedSequence() = default;
  IndexedSequence(std::vector<std::int64_t> times, std::vector<Complex> samples);
  // Times 0, 1, ..., n-1.
  static IndexedSequence fromSamples(std::vector<Complex> samples);

  std::size_t size() const { return samples.size(); }
};

struct VariationResult {
  double value = 0.0;
  double supTerm = 0.0;
  double oscTerm = 0.0;
  // Indices into times of the chain realising oscTerm (empty if oscTerm = 0).
  std::vector<std::size_t> witnessChain;
};

// Pass r = infinity for the diameter form.
VariationResult variationNorm(const IndexedSequence& seq, double r);

struct JumpResult {
  std::size_t count = 0;
  std::vector<std::size_t> witnessChain;
};

// Longest chain of times whose consecutive differences are all >= delta.
JumpResult jumpCount(const IndexedSequence& seq, double delta);

// (sum over consecutive chain entries |a_{i_{j+1}} - a_{i_j}|^r)^(1/r).
double chainSum(std::span<const Complex> samples, std::span<const std::size_t> chain, double r);

}  // namespace ergavg
