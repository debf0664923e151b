#include "spectra/reference.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "spectra/errors.hpp"

namespace spectra::reference {

std::vector<std::complex<double>> dft_direct(std::span<const double> f) {
  const std::uint64_t n = f.size();
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  std::vector<std::complex<double>> out(n);
  for (std::uint64_t r = 0; r < n; ++r) {
    long double re = 0, im = 0;
    for (std::uint64_t x = 0; x < n; ++x) {
      const auto phase = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * r % n);
      const long double angle = two_pi * static_cast<long double>(phase) / static_cast<long double>(n);
      re += f[x] * std::cos(angle);
      im += f[x] * std::sin(angle);
    }
    out[r] = {static_cast<double>(re), static_cast<double>(im)};
  }
  return out;
}

std::vector<double> wht_direct(std::span<const double> f) {
  const std::uint64_t n = f.size();
  std::vector<double> out(n);
  for (std::uint64_t r = 0; r < n; ++r) {
    long double acc = 0;
    for (std::uint64_t x = 0; x < n; ++x) acc += (std::popcount(r & x) & 1) ? -f[x] : f[x];
    out[r] = static_cast<double>(acc);
  }
  return out;
}

std::uint64_t energy_by_tuples(const GroupSubset& base, int k) {
  const auto& g = base.group();
  const auto elems = base.elements();
  const std::size_t m = elems.size();
  if (m == 0) return 0;
  const int len = 2 * k;
  const double tuples = std::pow(static_cast<double>(m), len);
  if (tuples > 5e7) throw BudgetExceeded("tuple enumeration too large");
  std::vector<std::size_t> idx(len, 0);
  std::uint64_t count = 0;
  while (true) {
    Element left = 0, right = 0;
    for (int i = 0; i < k; ++i) left = g.add(left, elems[idx[i]]);
    for (int i = k; i < len; ++i) right = g.add(right, elems[idx[i]]);
    if (left == right) ++count;
    int pos = 0;
    while (pos < len && ++idx[pos] == m) idx[pos++] = 0;
    if (pos == len) break;
  }
  return count;
}

std::vector<Element> signed_sums(const GroupDescriptor& group, std::span<const Element> generators) {
  std::vector<Element> sums{0};
  for (Element e : generators) {
    std::vector<Element> next;
    next.reserve(sums.size() * 3);
    for (Element s : sums) {
      next.push_back(s);
      next.push_back(group.add(s, e));
      next.push_back(group.sub(s, e));
    }
    sums.swap(next);
  }
  return sums;
}

bool dissociated_by_enumeration(const GroupDescriptor& group, std::span<const Element> set) {
  const std::size_t m = set.size();
  std::vector<int> eps(m, -1);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    bool nonzero = false;
    Element sum = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const int e = static_cast<int>(c % 3) - 1;
      c /= 3;
      if (e != 0) nonzero = true;
      sum = group.add(sum, group.scale(e, set[i]));
    }
    if (nonzero && sum == 0) return false;
  }
  return true;
}

}  // namespace spectra::reference
