#pragma once

#include <cstdint>

namespace spectra {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

// a^{-1} mod modulus via the extended Euclidean algorithm.
// Throws NotInvertible when gcd(a, modulus) != 1.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t modulus);

}  // namespace spectra
