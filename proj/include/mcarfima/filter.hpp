#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mcarfima/weights.hpp"

namespace mcarfima {

enum class ConvolutionMethod { automatic, direct, fft };

/// Work estimate T * M above which `automatic` switches to FFT convolution.
inline constexpr double kFftCrossoverOps = 1e7;

/// Causal FIR filter of an innovation stream.
///
/// With M = weights.size() - 1, the last T + M innovations are used and
///   out[t] = sum_{n=0..M} weights[n] * e[t + M - n],  t = 0..T-1,
/// where e is that trailing window. Aligning to the end of the stream lets
/// components of different truncation share one innovation block while
/// keeping their time index in step. Throws DomainError if the stream is
/// shorter than T + M.
std::vector<double> causal_filter(std::span<const double> innovations,
                                  const WeightVector& weights, std::size_t length,
                                  ConvolutionMethod method = ConvolutionMethod::automatic);

std::vector<double> causal_filter_direct(std::span<const double> innovations,
                                         std::span<const double> weights,
                                         std::size_t length);

std::vector<double> causal_filter_fft(std::span<const double> innovations,
                                      std::span<const double> weights,
                                      std::size_t length);

}  // namespace mcarfima
