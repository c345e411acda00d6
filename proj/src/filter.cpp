#include "mcarfima/filter.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

#include "mcarfima/error.hpp"

namespace mcarfima {
namespace {

// FFTW's planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

class Plan {
 public:
  explicit Plan(fftw_plan plan) : plan_(plan) {}
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

// Smallest 2^a 3^b 5^c 7^d >= n; FFTW is fastest on these sizes.
std::size_t fast_size(std::size_t n) {
  auto smooth = [](std::size_t m) {
    for (std::size_t p : {2u, 3u, 5u, 7u}) {
      while (m % p == 0) m /= p;
    }
    return m == 1;
  };
  std::size_t m = std::max<std::size_t>(n, 1);
  while (!smooth(m)) ++m;
  return m;
}

void check_window(std::size_t available, std::size_t weights, std::size_t length) {
  if (weights == 0) throw DomainError("causal filter needs at least one weight");
  const std::size_t needed = length + weights - 1;
  if (available < needed) {
    std::ostringstream msg;
    msg << "innovation stream of length " << available << " is shorter than T + M = "
        << needed;
    throw DomainError(msg.str());
  }
}

}  // namespace

std::vector<double> causal_filter_direct(std::span<const double> innovations,
                                         std::span<const double> weights,
                                         std::size_t length) {
  check_window(innovations.size(), weights.size(), length);
  const std::size_t m = weights.size() - 1;
  const double* e = innovations.data() + (innovations.size() - length - m);
  std::vector<double> out(length, 0.0);
  for (std::size_t t = 0; t < length; ++t) {
    const double* base = e + t + m;
    double acc = 0.0;
    for (std::size_t n = 0; n <= m; ++n) acc += weights[n] * *(base - n);
    out[t] = acc;
  }
  return out;
}

std::vector<double> causal_filter_fft(std::span<const double> innovations,
                                      std::span<const double> weights,
                                      std::size_t length) {
  check_window(innovations.size(), weights.size(), length);
  const std::size_t m = weights.size() - 1;
  const std::size_t window = length + m;
  const double* e = innovations.data() + (innovations.size() - window);

  // Circular convolution of size >= T + M leaves outputs M..M+T-1 free of
  // wrap-around because the kernel has only M + 1 taps.
  const std::size_t n = fast_size(window);
  const std::size_t nc = n / 2 + 1;
  auto signal = fftw_buffer<double>(n);
  auto kernel = fftw_buffer<double>(n);
  auto signal_hat = fftw_buffer<fftw_complex>(nc);
  auto kernel_hat = fftw_buffer<fftw_complex>(nc);

  std::unique_ptr<Plan> fwd_signal, fwd_kernel, inverse;
  {
    std::lock_guard lock(planner_mutex());
    const int ni = static_cast<int>(n);
    fwd_signal = std::make_unique<Plan>(
        fftw_plan_dft_r2c_1d(ni, signal.get(), signal_hat.get(), FFTW_ESTIMATE));
    fwd_kernel = std::make_unique<Plan>(
        fftw_plan_dft_r2c_1d(ni, kernel.get(), kernel_hat.get(), FFTW_ESTIMATE));
    inverse = std::make_unique<Plan>(
        fftw_plan_dft_c2r_1d(ni, signal_hat.get(), signal.get(), FFTW_ESTIMATE));
  }

  std::copy(e, e + window, signal.get());
  std::fill(signal.get() + window, signal.get() + n, 0.0);
  std::copy(weights.begin(), weights.end(), kernel.get());
  std::fill(kernel.get() + weights.size(), kernel.get() + n, 0.0);

  fwd_signal->execute();
  fwd_kernel->execute();
  for (std::size_t k = 0; k < nc; ++k) {
    const double re = signal_hat[k][0] * kernel_hat[k][0] - signal_hat[k][1] * kernel_hat[k][1];
    const double im = signal_hat[k][0] * kernel_hat[k][1] + signal_hat[k][1] * kernel_hat[k][0];
    signal_hat[k][0] = re;
    signal_hat[k][1] = im;
  }
  inverse->execute();

  const double scale = 1.0 / static_cast<double>(n);
  std::vector<double> out(length);
  for (std::size_t t = 0; t < length; ++t) out[t] = signal[t + m] * scale;
  return out;
}

std::vector<double> causal_filter(std::span<const double> innovations,
                                  const WeightVector& weights, std::size_t length,
                                  ConvolutionMethod method) {
  if (method == ConvolutionMethod::automatic) {
    const double work = static_cast<double>(length) * static_cast<double>(weights.truncation());
    method = work > kFftCrossoverOps ? ConvolutionMethod::fft : ConvolutionMethod::direct;
  }
  if (method == ConvolutionMethod::fft) {
    return causal_filter_fft(innovations, weights.values(), length);
  }
  return causal_filter_direct(innovations, weights.values(), length);
}

}  // namespace mcarfima
