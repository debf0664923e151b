#include "spectra/fourier.hpp"

#include <bit>
#include <cmath>
#include <memory>
#include <numbers>

#include "spectra/errors.hpp"

namespace spectra {

SpectrumTable::SpectrumTable(GroupDescriptor group, std::vector<Complex> coefficients,
                             std::int64_t source_cardinality)
    : group_(group), complex_(std::move(coefficients)), source_cardinality_(source_cardinality) {
  if (complex_.size() != group_.order()) throw PreconditionError("spectrum length != |G|");
}

SpectrumTable::SpectrumTable(GroupDescriptor group, std::vector<double> real_coefficients,
                             std::int64_t source_cardinality)
    : group_(group), real_(std::move(real_coefficients)), source_cardinality_(source_cardinality) {
  if (real_.size() != group_.order()) throw PreconditionError("spectrum length != |G|");
}

long double SpectrumTable::energy() const {
  return kernels::ordered_sum(size(), [this](std::size_t r) {
    return static_cast<long double>(norm(static_cast<Element>(r)));
  });
}

CyclicTransform::CyclicTransform(std::uint64_t modulus) : modulus_(modulus) {
  if (modulus < 2) throw PreconditionError("transform length must be >= 2");
  if (modulus <= kDirectLimit) {
    method_ = Method::direct;
    roots_ = kernels::unit_roots(modulus);
    return;
  }
  if (kernels::is_power_of_two(modulus)) {
    method_ = Method::radix2;
    fft_ = std::make_unique<kernels::Radix2Fft>(modulus);
    return;
  }
  if (modulus > (std::uint64_t{1} << 30)) throw PreconditionError("transform length too large");
  method_ = Method::chirp_z;
  // n*r = (n^2 + r^2 - (r-n)^2) / 2, so with c_j = exp(+i*pi*j^2/N)
  //   sum_n f(n) exp(2*pi*i*n*r/N) = c_r * sum_n (f(n) c_n) * conj(c_{r-n}).
  const std::uint64_t padded = kernels::next_power_of_two(2 * modulus - 1);
  fft_ = std::make_unique<kernels::Radix2Fft>(padded);
  chirp_.resize(modulus);
  const std::uint64_t two_n = 2 * modulus;
  const long double step = std::numbers::pi_v<long double> / static_cast<long double>(modulus);
  for (std::uint64_t j = 0; j < modulus; ++j) {
    // j^2 mod 2N keeps the angle exact for large j.
    const auto sq = static_cast<std::uint64_t>(static_cast<unsigned __int128>(j) * j % two_n);
    const long double angle = step * static_cast<long double>(sq);
    chirp_[j] = Complex(static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle)));
  }
  kernel_spectrum_.assign(padded, Complex(0.0, 0.0));
  kernel_spectrum_[0] = std::conj(chirp_[0]);
  for (std::uint64_t j = 1; j < modulus; ++j) {
    kernel_spectrum_[j] = std::conj(chirp_[j]);
    kernel_spectrum_[padded - j] = std::conj(chirp_[j]);
  }
  fft_->transform(kernel_spectrum_, +1);
}

std::vector<Complex> CyclicTransform::operator()(std::span<const double> f) const {
  if (f.size() != modulus_) throw PreconditionError("transform input length mismatch");
  switch (method_) {
    case Method::direct:
      return kernels::dft_by_roots(f, roots_);
    case Method::radix2: {
      std::vector<Complex> data(f.begin(), f.end());
      fft_->transform(data, +1);
      return data;
    }
    case Method::chirp_z:
      break;
  }
  const std::size_t padded = fft_->size();
  std::vector<Complex> work(padded, Complex(0.0, 0.0));
  for (std::uint64_t j = 0; j < modulus_; ++j) work[j] = chirp_[j] * f[j];
  fft_->transform(work, +1);
  const auto m = static_cast<std::ptrdiff_t>(padded);
#pragma omp parallel for schedule(static) if (padded >= 4096)
  for (std::ptrdiff_t i = 0; i < m; ++i) work[i] = kernels::mul(work[i], kernel_spectrum_[i]);
  fft_->transform(work, -1);
  const double scale = 1.0 / static_cast<double>(padded);
  std::vector<Complex> out(modulus_);
  for (std::uint64_t r = 0; r < modulus_; ++r) out[r] = kernels::mul(chirp_[r], work[r]) * scale;
  return out;
}

namespace {

std::int64_t rounded_mass(std::span<const double> f) {
  long double acc = 0;
  for (double v : f) acc += v;
  return static_cast<std::int64_t>(std::llround(static_cast<double>(acc)));
}

void require_cyclic(const GroupDescriptor& g) {
  if (!g.is_cyclic()) throw GroupMismatch("dft_cyclic needs a Z_N input, got " + g.header());
}

void require_cube(const GroupDescriptor& g) {
  if (!g.is_cube()) throw GroupMismatch("wht_cube needs a Z_2^n input, got " + g.header());
  if (g.dimension() > 30) throw PreconditionError("wht_cube supports n <= 30");
}

}  // namespace

SpectrumTable dft_cyclic(const GroupSubset& set) {
  require_cyclic(set.group());
  const CyclicTransform plan(set.group().modulus());
  return SpectrumTable(set.group(), plan(set.indicator()), static_cast<std::int64_t>(set.size()));
}

SpectrumTable dft_cyclic(const DensityFunction& f) {
  require_cyclic(f.group());
  const CyclicTransform plan(f.group().modulus());
  return SpectrumTable(f.group(), plan(f.values()), rounded_mass(f.values()));
}

SpectrumTable wht_cube(const GroupSubset& set) {
  require_cube(set.group());
  std::vector<double> data = set.indicator();
  kernels::fwht(data);
  return SpectrumTable(set.group(), std::move(data), static_cast<std::int64_t>(set.size()));
}

SpectrumTable wht_cube(const DensityFunction& f) {
  require_cube(f.group());
  std::vector<double> data(f.values().begin(), f.values().end());
  kernels::fwht(data);
  return SpectrumTable(f.group(), std::move(data), rounded_mass(f.values()));
}

SpectrumTable transform(const GroupSubset& set) {
  return set.group().is_cyclic() ? dft_cyclic(set) : wht_cube(set);
}

SpectrumTable transform(const DensityFunction& f) {
  return f.group().is_cyclic() ? dft_cyclic(f) : wht_cube(f);
}

double parseval_check(std::span<const double> f, const SpectrumTable& spectrum) {
  if (f.size() != spectrum.size()) throw GroupMismatch("function and spectrum sizes differ");
  const long double lhs = spectrum.energy();
  const long double mass = kernels::ordered_sum(f.size(), [&](std::size_t i) {
    return static_cast<long double>(f[i]) * f[i];
  });
  const long double rhs = static_cast<long double>(spectrum.size()) * mass;
  if (rhs == 0.0L) return lhs == 0.0L ? 0.0 : INFINITY;
  return static_cast<double>(std::fabs(lhs - rhs) / rhs);
}

double parseval_check(const GroupSubset& set, const SpectrumTable& spectrum) {
  if (!(set.group() == spectrum.group())) throw GroupMismatch("set and spectrum groups differ");
  return parseval_check(set.indicator(), spectrum);
}

double parseval_check(const DensityFunction& f, const SpectrumTable& spectrum) {
  if (!(f.group() == spectrum.group())) throw GroupMismatch("function and spectrum groups differ");
  return parseval_check(f.values(), spectrum);
}

Complex coefficient_direct(const GroupSubset& set, Element r) {
  const GroupDescriptor& g = set.group();
  if (g.is_cube()) {
    long long acc = 0;
    for (Element x : set.elements()) acc += (std::popcount(x & r) & 1) ? -1 : 1;
    return Complex(static_cast<double>(acc), 0.0);
  }
  const std::uint64_t n = g.modulus();
  const long double step = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(n);
  long double re = 0, im = 0;
  for (Element x : set.elements()) {
    const auto phase = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * r % n);
    const long double angle = step * static_cast<long double>(phase);
    re += std::cos(angle);
    im += std::sin(angle);
  }
  return Complex(static_cast<double>(re), static_cast<double>(im));
}

}  // namespace spectra
