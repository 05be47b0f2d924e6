// Times the OpenMP kernels against the serial reference implementation
// and checks that both produce bitwise-identical results.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#include "gluon/kernels.hpp"
#include "gluon/matrix.hpp"
#include "gluon/newton_schulz.hpp"
#include "gluon/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_best_of(int reps, auto&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto start = Clock::now();
    body();
    std::chrono::duration<double, std::milli> ms = Clock::now() - start;
    if (ms.count() < best) best = ms.count();
  }
  return best;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void bench_matmul(std::int64_t n, std::mt19937_64& gen) {
  gluon::Matrix a = gluon::random_gaussian(n, n, gen);
  gluon::Matrix b = gluon::random_gaussian(n, n, gen);
  std::vector<double> serial(static_cast<std::size_t>(n) * n);
  std::vector<double> parallel(serial.size());
  double t_serial = time_best_of(5, [&] {
    gluon::kernels::serial::matmul(a.data(), b.data(), serial.data(), n, n, n);
  });
  double t_parallel = time_best_of(5, [&] {
    gluon::kernels::matmul(a.data(), b.data(), parallel.data(), n, n, n);
  });
  std::printf("matmul      %4lld x %-4lld  serial %8.2f ms  parallel %8.2f ms"
              "  speedup %5.2fx  bitwise %s\n",
              static_cast<long long>(n), static_cast<long long>(n), t_serial,
              t_parallel, t_serial / t_parallel,
              bitwise_equal(serial, parallel) ? "ok" : "MISMATCH");
}

void bench_matmul_abt(std::int64_t n, std::mt19937_64& gen) {
  gluon::Matrix a = gluon::random_gaussian(n, n, gen);
  gluon::Matrix b = gluon::random_gaussian(n, n, gen);
  std::vector<double> serial(static_cast<std::size_t>(n) * n);
  std::vector<double> parallel(serial.size());
  double t_serial = time_best_of(5, [&] {
    gluon::kernels::serial::matmul_abt(a.data(), b.data(), serial.data(), n, n,
                                       n);
  });
  double t_parallel = time_best_of(5, [&] {
    gluon::kernels::matmul_abt(a.data(), b.data(), parallel.data(), n, n, n);
  });
  std::printf("matmul_abt  %4lld x %-4lld  serial %8.2f ms  parallel %8.2f ms"
              "  speedup %5.2fx  bitwise %s\n",
              static_cast<long long>(n), static_cast<long long>(n), t_serial,
              t_parallel, t_serial / t_parallel,
              bitwise_equal(serial, parallel) ? "ok" : "MISMATCH");
}

void bench_newton_schulz(std::int64_t n, std::mt19937_64& gen) {
  gluon::Matrix a = gluon::random_gaussian(n, n, gen);
  gluon::Matrix out(1, 1);
  double t = time_best_of(3, [&] { out = gluon::ns_orthogonalize(a); });
  std::printf("newton_schulz %2lld x %-4lld  %8.2f ms per call\n",
              static_cast<long long>(n), static_cast<long long>(n), t);
}

}  // namespace

int main() {
  std::mt19937_64 gen(2024);
  for (std::int64_t n : {128, 256, 512}) bench_matmul(n, gen);
  for (std::int64_t n : {128, 256, 512}) bench_matmul_abt(n, gen);
  for (std::int64_t n : {128, 256, 512}) bench_newton_schulz(n, gen);
  return 0;
}
