// Shared aliases and small utilities used across the library.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace holoext {

using Cplx = std::complex<double>;
using VecC = Eigen::VectorXcd;
using VecR = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Error thrown for invalid inputs or unreachable numerical targets.
/// `code` is a stable machine-readable tag used by the CLI.
class EngineError : public std::runtime_error {
 public:
  EngineError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Deterministic RNG stream. Every consumer derives its own stream from a
/// (seed, stream-id) pair so that results do not depend on evaluation order.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : gen_(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))) {}
  double uniform(double a, double b) {
    std::uniform_real_distribution<double> d(a, b);
    return d(gen_);
  }
  double uniform01() { return uniform(0.0, 1.0); }
  int uniform_int(int lo, int hi) {  // inclusive
    std::uniform_int_distribution<int> d(lo, hi);
    return d(gen_);
  }

 private:
  std::mt19937_64 gen_;
};

/// Runs fn(i) for i in [0, n). Work is split into fixed blocks so results
/// (written by index into preallocated storage) are identical for any thread
/// count. `threads <= 1` runs inline.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t nthreads = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  std::size_t block = (n + nthreads - 1) / nthreads;
  for (std::size_t t = 0; t < nthreads; ++t) {
    std::size_t lo = t * block, hi = std::min(n, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline double sqr(double x) { return x * x; }

}  // namespace holoext
