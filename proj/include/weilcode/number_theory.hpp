#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace weilcode {

using BigInt = boost::multiprecision::cpp_int;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n);

// Distinct prime factors in ascending order (trial division + Pollard rho).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

// Smallest k >= 1 with a^k = 1 (mod n), found by stepping through powers.
// Requires gcd(a, n) = 1 and n >= 2.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n);

// Order of a modulo u^k predicted from its order modulo u via the lifting rule:
// ord_{u^k}(a) = d for k <= k0 and d*u^(k-k0) beyond, where k0 is the largest
// exponent with a^d = 1 (mod u^k0). u must be an odd prime not dividing a.
std::uint64_t lifted_order(std::uint64_t a, std::uint64_t u, unsigned k);

// base^exp, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp);

std::uint64_t smallest_primitive_root(std::uint64_t p);

enum class ModulusShape { kTwo, kFour, kPrimePower, kTwicePrimePower };

// N in {2, 4, wp^m, 2 wp^m}; wp and m are set for the last two shapes.
struct NShape {
  ModulusShape kind;
  std::uint64_t wp = 0;
  unsigned m = 0;

  // wp^(m-1), the block length used by the shifted-basis slices.
  std::uint64_t block() const;
};

// nullopt when N admits no primitive root.
std::optional<NShape> classify_modulus(std::uint64_t N);

}  // namespace weilcode
