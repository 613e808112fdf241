#include "ergavg/fft.hpp"

#include <fftw3.h>

#include <bit>
#include <mutex>
#include <new>
#include <stdexcept>

namespace ergavg {

namespace {
// The FFTW planner is not re-entrant; execution is.
std::mutex& plannerMutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(std::size_t size, Direction direction) : size_(size) {
  if (size == 0) throw std::invalid_argument("Fft: size must be positive");
  std::lock_guard lock(plannerMutex());
  data_ = reinterpret_cast<Complex*>(fftw_malloc(sizeof(fftw_complex) * size));
  if (data_ == nullptr) throw std::bad_alloc();
  plan_ = fftw_plan_dft_1d(static_cast<int>(size), reinterpret_cast<fftw_complex*>(data_),
                           reinterpret_cast<fftw_complex*>(data_),
                           direction == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                           FFTW_ESTIMATE);
  if (plan_ == nullptr) {
    fftw_free(data_);
    throw std::runtime_error("Fft: planning failed");
  }
}

Fft::~Fft() {
  std::lock_guard lock(plannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(data_);
}

void Fft::execute() { fftw_execute(static_cast<fftw_plan>(plan_)); }

namespace {
std::vector<Complex> run(std::span<const Complex> in, Fft::Direction direction) {
  Fft fft(in.size(), direction);
  auto buf = fft.buffer();
  std::copy(in.begin(), in.end(), buf.begin());
  fft.execute();
  return {buf.begin(), buf.end()};
}
}  // namespace

std::vector<Complex> fftForward(std::span<const Complex> in) { return run(in, Fft::Direction::forward); }
std::vector<Complex> fftBackward(std::span<const Complex> in) { return run(in, Fft::Direction::backward); }

std::size_t nextPowerOfTwo(std::size_t n) { return std::bit_ceil(n == 0 ? std::size_t{1} : n); }

}  // namespace ergavg
