#pragma once

// Fourier transforms on Z_N and Z_2^n.
//
// Sign convention: for Z_N we use
//     f^(r) = sum_n f(n) e(-n r),   e(x) = exp(-2*pi*i*x/N),
// i.e. f^(r) = sum_n f(n) exp(+2*pi*i*n*r/N). Some texts write the cube
// transform with e(x) = exp(+2*pi*i*x/p); over Z_2 the two agree, and every
// downstream quantity depends on |f^(r)| only, so the choice is immaterial.

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "spectra/group.hpp"
#include "spectra/kernels.hpp"

namespace spectra {

using Complex = std::complex<double>;

// One transform value per frequency. Cube spectra are real and stored
// without an imaginary part.
class SpectrumTable {
 public:
  SpectrumTable(GroupDescriptor group, std::vector<Complex> coefficients,
                std::int64_t source_cardinality);
  SpectrumTable(GroupDescriptor group, std::vector<double> real_coefficients,
                std::int64_t source_cardinality);

  const GroupDescriptor& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return group_.order(); }
  bool is_real() const noexcept { return complex_.empty(); }

  Complex operator[](Element r) const noexcept {
    return is_real() ? Complex(real_[r], 0.0) : complex_[r];
  }
  double magnitude(Element r) const noexcept {
    return is_real() ? std::abs(real_[r]) : std::abs(complex_[r]);
  }
  double norm(Element r) const noexcept {
    return is_real() ? real_[r] * real_[r] : std::norm(complex_[r]);
  }

  // |A| for an indicator; round(sum f) for a density function.
  std::int64_t source_cardinality() const noexcept { return source_cardinality_; }

  // sum_r |f^(r)|^2, reduced in a fixed order.
  long double energy() const;

 private:
  GroupDescriptor group_;
  std::vector<Complex> complex_;
  std::vector<double> real_;
  std::int64_t source_cardinality_;
};

// Reusable transform of a fixed length N. Small N is summed directly,
// powers of two use radix-2, everything else goes through a chirp-z
// reduction to a power-of-two cyclic convolution.
class CyclicTransform {
 public:
  // Lengths up to this bound use direct summation.
  static constexpr std::uint64_t kDirectLimit = 512;

  explicit CyclicTransform(std::uint64_t modulus);

  std::uint64_t modulus() const noexcept { return modulus_; }
  std::vector<Complex> operator()(std::span<const double> f) const;

 private:
  enum class Method { direct, radix2, chirp_z };

  std::uint64_t modulus_;
  Method method_;
  std::vector<Complex> roots_;
  std::vector<Complex> chirp_;
  std::vector<Complex> kernel_spectrum_;
  std::unique_ptr<kernels::Radix2Fft> fft_;
};

SpectrumTable dft_cyclic(const GroupSubset& set);
SpectrumTable dft_cyclic(const DensityFunction& f);

SpectrumTable wht_cube(const GroupSubset& set);
SpectrumTable wht_cube(const DensityFunction& f);

// Dispatches on the group kind.
SpectrumTable transform(const GroupSubset& set);
SpectrumTable transform(const DensityFunction& f);

// |sum_r |f^(r)|^2 - |G| sum_x |f(x)|^2| / (|G| sum_x |f(x)|^2); 0 when f = 0.
double parseval_check(std::span<const double> f, const SpectrumTable& spectrum);
double parseval_check(const GroupSubset& set, const SpectrumTable& spectrum);
double parseval_check(const DensityFunction& f, const SpectrumTable& spectrum);

// A^(r) computed straight from the definition for one frequency, O(|A|).
Complex coefficient_direct(const GroupSubset& set, Element r);

}  // namespace spectra
