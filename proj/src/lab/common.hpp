// Helpers shared by the experiment sources.

#pragma once

#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ergavg/lab/experiments.hpp"

namespace ergavg::lab::detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ExperimentReport startReport(const ExperimentConfig& cfg, ExperimentKind expected, nlohmann::json& params);
void finishReport(ExperimentReport& report, const Stopwatch& clock);

double number(const nlohmann::json& params, const char* name);
std::int64_t integer(const nlohmann::json& params, const char* name);
std::vector<double> numbers(const nlohmann::json& params, const char* name);

// Runs fn(i) for i in [0, count) on up to hardware_concurrency threads and
// returns the results in index order.
template <class T, class Fn>
std::vector<T> parallelTrials(std::size_t count, Fn fn) {
  std::vector<T> out(count);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::mutex m;
  std::size_t next = 0;
  std::exception_ptr failure;
  auto work = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(m);
        if (next >= count || failure) return;
        i = next++;
      }
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace ergavg::lab::detail
