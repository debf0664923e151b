#pragma once

// Data-parallel transform kernels. Loops are OpenMP-parallel when the
// library is built with OpenMP; results do not depend on the thread count.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace spectra::kernels {

using Complex = std::complex<double>;

// Plain product; std::complex operator* takes the slow Annex G path.
inline Complex mul(Complex a, Complex b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// In-place iterative radix-2 transform of a fixed power-of-two length:
//   out[k] = sum_j in[j] * exp(sign * 2*pi*i * j*k / size),   sign = +1 or -1.
// No normalization is applied.
class Radix2Fft {
 public:
  explicit Radix2Fft(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  void transform(std::span<Complex> data, int sign) const;

 private:
  std::size_t size_;
  unsigned log2_size_;
  std::vector<Complex> twiddles_;  // exp(+2*pi*i*k/size), k < size/2
  std::vector<std::uint32_t> bit_reverse_;
};

// Unnormalized Walsh-Hadamard butterfly: out[r] = sum_x (-1)^{<r,x>} in[x].
// data.size() must be a power of two.
void fwht(std::span<double> data);

// O(N^2) summation out[r] = sum_n f[n] * roots[(n*r) mod N], parallel over r.
std::vector<Complex> dft_by_roots(std::span<const double> f, std::span<const Complex> roots);

// exp(+2*pi*i*j/N) for j < N, each evaluated from its own exact angle.
std::vector<Complex> unit_roots(std::uint64_t modulus);

// Sum of term(i) for i < count, reduced in a fixed chunk order so the
// result is bit-identical regardless of thread count.
long double ordered_sum(std::size_t count, const std::function<long double(std::size_t)>& term);

bool is_power_of_two(std::uint64_t x) noexcept;
std::uint64_t next_power_of_two(std::uint64_t x) noexcept;

}  // namespace spectra::kernels
