#include "spectra/numtheory.hpp"

#include <string>

#include "spectra/errors.hpp"

namespace spectra {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  // The first twelve primes form a deterministic witness set below 3.3e24.
  constexpr std::uint64_t witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : witnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : witnesses) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t modulus) {
  if (modulus == 0) throw NotInvertible("modulus must be positive");
  if (modulus == 1) return 0;
  __int128 old_r = static_cast<__int128>(a % modulus), r = modulus;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    const __int128 tr = old_r - q * r;
    old_r = r;
    r = tr;
    const __int128 ts = old_s - q * s;
    old_s = s;
    s = ts;
  }
  if (old_r != 1) {
    throw NotInvertible(std::to_string(a) + " is not invertible mod " + std::to_string(modulus));
  }
  __int128 inv = old_s % static_cast<__int128>(modulus);
  if (inv < 0) inv += modulus;
  return static_cast<std::uint64_t>(inv);
}

}  // namespace spectra
