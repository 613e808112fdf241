// spectral.hpp
//
// Fourier analysis on Z and the torus T = R/Z.  The transform convention is
//   f^(xi) = sum_x f(x) e(-x xi),   e(t) = exp(2 pi i t),
// used everywhere in the project.  The exponential-sum symbols are
//   m_Z(xi1, xi2) = (1/N) sum_{n<=N} 1_{n>N/2} e(-xi1 floor(sqrt n) - xi2 n)
//   m_R(xi1, xi2) = (1/N) integral_{N/2}^{N} e(-xi1 sqrt t - xi2 t) dt.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <vector>

#include "ergavg/cutoff.hpp"
#include "ergavg/gridfn.hpp"
#include "json.hpp"

namespace ergavg {

// Representative of t mod 1 in [-1/2, 1/2).
double torusReduce(double t);
// ||t||_T, distance to the nearest integer.
double torusNorm(double t);

struct FrequencyGrid {
  std::size_t M = 0;
  // values[j] is the transform at xi_j = j / M.
  std::vector<Complex> values;
};

FrequencyGrid torusTransform(const GridFunction& f, std::size_t M);
// Inverse transform sampled on [lo, lo + M).
GridFunction inverseTorusTransform(const FrequencyGrid& grid, std::int64_t lo);

nlohmann::json toJson(const FrequencyGrid& grid);
FrequencyGrid frequencyGridFromJson(const nlohmann::json& j);

// Multiplies the transform by the cutoff on the grid and inverts on a
// window of M samples centred on the support of f.
GridFunction bandProject(const GridFunction& f, const CutoffSpec& spec, std::size_t M);
// Smallest power of two >= 8 * support length.
std::size_t defaultGridSize(const GridFunction& f);

// D_k(xi) = sum_{j<k} e(xi j).
Complex dirichletKernel(std::int64_t k, double xi);

struct SymbolQuery {
  double xi1 = 0.0;
  double xi2 = 0.0;
  std::int64_t N = 1;
  bool upperHalf = true;
};

Complex discreteSymbol(const SymbolQuery& q);
// Gauss-Legendre panels after t = u^2.  Throws std::runtime_error when the
// required panel count exceeds maxPanels.
Complex continuousSymbol(double xi1, double xi2, std::int64_t N,
                         std::size_t maxPanels = std::size_t{1} << 22);

struct ArcWitness {
  double zeta = 0.0;
  double xi = 0.0;
  double absm = 0.0;
  double xiTimesN = 0.0;  // ||xi||_T * N
};

// All grid points (zeta, xi) of T^2 with |m_Z(zeta, xi)| >= delta.  The grid
// has ceil(1/gridStep) points per axis; gridStep <= 1/(4N).
std::vector<ArcWitness> principalArcWitness(std::int64_t N, double delta, double gridStep);
void writeWitnessCsv(std::ostream& out, const std::vector<ArcWitness>& witnesses);

// Cutoff pair phi_{N;l1} (scale N^-1/2 2^l1) and psi_{N;l2} (scale N^-1 2^l2):
// band when l > -C1, lowpass when l = -C1.
struct ParaproductCutoffs {
  CutoffSpec phi;
  CutoffSpec psi;
};
ParaproductCutoffs paraproductCutoffs(std::int64_t N, int l1, int l2, int C1);

// integral_{1/2}^{1} (F^-1 phi)(. - sqrt(Nt)) * f  .  (F^-1 psi)(. - Nt) * g  dt
// with the t-integral discretised by the midpoint rule on `panels` panels.
GridFunction modelParaproduct(const GridFunction& f, const GridFunction& g, std::int64_t N, int l1,
                              int l2, int C1, std::size_t panels);

// Band symbol for the shifted square function: eta(xi) = Psi(xi/C) - Psi(2 xi/C),
// vanishing at 0 and supported on [-C, C].
struct BandSymbol {
  std::function<double(double)> eval;
  double supportBound = 0.25;
  // Decay length of the inverse transform: |F^-1 eta(y)| is negligible for
  // |y| > kernelExtent.
  double kernelExtent = 0.0;
};
BandSymbol dilatedBandSymbol(double C);

struct ShiftedSquareOptions {
  double A = 1.0;
  double d = 1.0;
  // Grid size; 0 picks a power of two covering support, shifts and kernels.
  std::size_t M = 0;
};

// (sum_{N in D} |F^-1 eta_N(. - lambda_N A N^d) * f|^2)^(1/2), eta_N = eta(A N^d xi).
GridFunction shiftedSquareFunction(const GridFunction& f, const LacunarySet& D, const BandSymbol& eta,
                                   const std::map<std::int64_t, double>& lambdaByScale,
                                   const ShiftedSquareOptions& options = {});

}  // namespace ergavg
