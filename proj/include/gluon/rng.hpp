// Deterministic sampling helpers on top of std::mt19937_64. The raw
// 64-bit stream is mapped to doubles directly instead of going through
// std::uniform_real_distribution / std::normal_distribution, whose
// output sequences are implementation-defined; this keeps traces and
// frozen test values identical across standard libraries.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "gluon/matrix.hpp"

namespace gluon {

// Uniform on [0, 1 - 2^-53] with 53 random bits.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; two draws per sample, no cached spare.
inline double gaussian(std::mt19937_64& gen) {
  const double u1 = 1.0 - uniform01(gen);  // (0, 1], keeps log finite
  const double u2 = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

inline Matrix random_gaussian(std::int64_t rows, std::int64_t cols,
                              std::mt19937_64& gen, double scale = 1.0) {
  Matrix out(rows, cols);
  double* p = out.data();
  for (std::int64_t i = 0; i < out.size(); ++i) p[i] = scale * gaussian(gen);
  return out;
}

}  // namespace gluon
