#include "spectra/kernels.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "spectra/errors.hpp"

namespace spectra::kernels {

namespace {

constexpr std::size_t kParallelThreshold = 1u << 12;
constexpr std::size_t kSumChunk = 1u << 12;

}  // namespace

bool is_power_of_two(std::uint64_t x) noexcept { return x != 0 && (x & (x - 1)) == 0; }

std::uint64_t next_power_of_two(std::uint64_t x) noexcept {
  return x <= 1 ? 1 : std::bit_ceil(x);
}

Radix2Fft::Radix2Fft(std::size_t size) : size_(size), log2_size_(0) {
  if (!is_power_of_two(size)) throw PreconditionError("radix-2 length must be a power of two");
  if (size > (std::size_t{1} << 31)) throw PreconditionError("radix-2 length too large");
  log2_size_ = static_cast<unsigned>(std::countr_zero(size));
  twiddles_.resize(size / 2);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(size);
  const auto quarter = static_cast<std::ptrdiff_t>(size / 4);
  if (size >= 4) {
#pragma omp parallel for schedule(static) if (size >= kParallelThreshold)
    for (std::ptrdiff_t k = 0; k < quarter; ++k) {
      const double angle = step * static_cast<double>(k);
      twiddles_[k] = Complex(std::cos(angle), std::sin(angle));
      // exp(i(theta + pi/2)) = i exp(i theta)
      twiddles_[k + quarter] = Complex(-std::sin(angle), std::cos(angle));
    }
  } else if (size == 2) {
    twiddles_[0] = Complex(1.0, 0.0);
  }
  bit_reverse_.assign(size, 0);
  for (std::size_t i = 1; i < size; ++i)
    bit_reverse_[i] = (bit_reverse_[i >> 1] >> 1) | (static_cast<std::uint32_t>(i & 1) << (log2_size_ - 1));
}

void Radix2Fft::transform(std::span<Complex> data, int sign) const {
  if (data.size() != size_) throw PreconditionError("radix-2 input length mismatch");
  const auto n = static_cast<std::ptrdiff_t>(size_);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::ptrdiff_t>(bit_reverse_[i]);
    if (i < j) std::swap(data[i], data[j]);
  }
  const bool conj = sign < 0;
  for (std::size_t len = 2; len <= size_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = size_ / len;
    const auto blocks = static_cast<std::ptrdiff_t>(size_ / len);
    const auto butterfly = [&](std::size_t base, std::size_t j) {
      Complex w = twiddles_[j * stride];
      if (conj) w = std::conj(w);
      const Complex u = data[base + j];
      const Complex v = mul(data[base + j + half], w);
      data[base + j] = u + v;
      data[base + j + half] = u - v;
    };
    if (blocks >= 64) {
#pragma omp parallel for schedule(static) if (size_ >= kParallelThreshold)
      for (std::ptrdiff_t b = 0; b < blocks; ++b) {
        const std::size_t base = static_cast<std::size_t>(b) * len;
        for (std::size_t j = 0; j < half; ++j) butterfly(base, j);
      }
    } else {
      for (std::ptrdiff_t b = 0; b < blocks; ++b) {
        const std::size_t base = static_cast<std::size_t>(b) * len;
        const auto h = static_cast<std::ptrdiff_t>(half);
#pragma omp parallel for schedule(static) if (size_ >= kParallelThreshold)
        for (std::ptrdiff_t j = 0; j < h; ++j) butterfly(base, static_cast<std::size_t>(j));
      }
    }
  }
}

void fwht(std::span<double> data) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) throw PreconditionError("Walsh-Hadamard length must be a power of two");
  for (std::size_t h = 1; h < n; h <<= 1) {
    const auto pairs = static_cast<std::ptrdiff_t>(n / 2);
    // Butterfly p touches indices (i, i + h) with i = (p / h) * 2h + p % h.
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::ptrdiff_t p = 0; p < pairs; ++p) {
      const std::size_t q = static_cast<std::size_t>(p);
      const std::size_t i = (q / h) * 2 * h + (q % h);
      const double a = data[i];
      const double b = data[i + h];
      data[i] = a + b;
      data[i + h] = a - b;
    }
  }
}

std::vector<Complex> unit_roots(std::uint64_t modulus) {
  std::vector<Complex> roots(modulus);
  const long double step = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(modulus);
  const auto n = static_cast<std::ptrdiff_t>(modulus);
#pragma omp parallel for schedule(static) if (modulus >= kParallelThreshold)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const long double angle = step * static_cast<long double>(j);
    roots[j] = Complex(static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle)));
  }
  return roots;
}

std::vector<Complex> dft_by_roots(std::span<const double> f, std::span<const Complex> roots) {
  const std::uint64_t modulus = roots.size();
  if (f.size() != modulus) throw PreconditionError("dft input length mismatch");
  std::vector<Complex> out(modulus);
  const auto n = static_cast<std::ptrdiff_t>(modulus);
#pragma omp parallel for schedule(static) if (modulus >= 64)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    long double re = 0, im = 0;
    std::uint64_t phase = 0;
    for (std::uint64_t x = 0; x < modulus; ++x) {
      if (f[x] != 0.0) {
        re += static_cast<long double>(f[x]) * roots[phase].real();
        im += static_cast<long double>(f[x]) * roots[phase].imag();
      }
      phase += static_cast<std::uint64_t>(r);
      if (phase >= modulus) phase -= modulus;
    }
    out[r] = Complex(static_cast<double>(re), static_cast<double>(im));
  }
  return out;
}

long double ordered_sum(std::size_t count, const std::function<long double(std::size_t)>& term) {
  const std::size_t chunks = (count + kSumChunk - 1) / kSumChunk;
  std::vector<long double> partial(chunks, 0.0L);
  const auto c = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(static) if (chunks > 1)
  for (std::ptrdiff_t k = 0; k < c; ++k) {
    const std::size_t begin = static_cast<std::size_t>(k) * kSumChunk;
    const std::size_t end = std::min(count, begin + kSumChunk);
    long double acc = 0;
    for (std::size_t i = begin; i < end; ++i) acc += term(i);
    partial[k] = acc;
  }
  long double total = 0;
  for (long double p : partial) total += p;
  return total;
}

}  // namespace spectra::kernels
