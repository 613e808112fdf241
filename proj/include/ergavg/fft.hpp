// fft.hpp
//
// Thin RAII wrapper over an FFTW plan.  Forward computes
//   X_j = sum_t x_t exp(-2 pi i t j / M),
// backward the same with +i and no 1/M normalisation.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ergavg/gridfn.hpp"

namespace ergavg {

class Fft {
 public:
  enum class Direction { forward, backward };

  Fft(std::size_t size, Direction direction);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return size_; }
  // In-place buffer; fill it, call execute(), read it back.
  std::span<Complex> buffer() { return {data_, size_}; }
  void execute();

 private:
  std::size_t size_;
  Complex* data_;
  void* plan_;
};

std::vector<Complex> fftForward(std::span<const Complex> in);
std::vector<Complex> fftBackward(std::span<const Complex> in);

// Smallest power of two >= n (n >= 1).
std::size_t nextPowerOfTwo(std::size_t n);

}  // namespace ergavg
