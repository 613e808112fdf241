// cutoff.hpp
//
// The smooth cutoff Psi (even, supported on [-1, 1], equal to 1 on
// [-1/2, 1/2]) and its dyadic family
//
//   lowpass  Psi_{<=x}(xi) = Psi(xi / 2^ceil(log2 x))
//   band     Psi_x        = Psi_{<=x} - Psi_{<=x/2}
//   highpass Psi_{>x}     = 1 - Psi_{<=x}
//
// together with the inverse real-line Fourier transform
//   Psi^(y) = integral Psi(xi) e(y xi) dxi,
// tabulated once on a 2^-10 grid over |y| <= 128 and interpolated by cubic
// Hermite.  Beyond |y| = 128 the transform is below 1e-12 and taken as 0.

#pragma once

namespace ergavg {

// Transition on 1/2 < |t| < 1 is the smooth step
//   s(u) = phi(1-u) / (phi(1-u) + phi(u)),  phi(u) = exp(-1/u),  u = 2|t| - 1.
double cutoffPsi(double t);

// 2^ceil(log2 x) for x > 0, computed exactly.
double dyadicCeil(double x);

enum class CutoffKind { lowpass, band, highpass };

struct CutoffSpec {
  double scale = 1.0;
  CutoffKind kind = CutoffKind::lowpass;

  // The snapped scale 2^ceil(log2 scale).
  double dyadicScale() const { return dyadicCeil(scale); }
  // Multiplier value at a real frequency.
  double operator()(double xi) const;
};

// Interpolated Psi^(y) and its derivative.
double cutoffPsiInverse(double y);
double cutoffPsiInverseDerivative(double y);
constexpr double kCutoffInverseExtent = 128.0;
constexpr double kCutoffInverseStep = 1.0 / 1024.0;

// Inverse real-line transform of a lowpass or band cutoff at w:
//   lowpass: S Psi^(S w),  band: S Psi^(S w) - (S/2) Psi^(S w / 2).
double cutoffKernel(const CutoffSpec& spec, double w);
// |w| beyond which cutoffKernel is identically zero.
double cutoffKernelExtent(const CutoffSpec& spec);

}  // namespace ergavg
