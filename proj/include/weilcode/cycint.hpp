#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace weilcode {

// Element of Z[zeta_p] in the basis {1, zeta, ..., zeta^(p-2)}. Every value
// has exactly one representation, so == is coefficient-wise equality.
// Arithmetic is exact on signed 64-bit coefficients and throws
// std::overflow_error rather than wrapping.
class CycInt {
 public:
  static CycInt zero(std::uint32_t p);
  static CycInt from_int(std::uint32_t p, std::int64_t v);
  // Canonical form of zeta^k for any integer k.
  static CycInt zeta_pow(std::uint32_t p, std::int64_t k);
  // Folds a length-p vector of multiplicities (entry k counts zeta^k) into
  // canonical form via zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)).
  static CycInt from_histogram(std::uint32_t p, std::span<const std::int64_t> counts);
  // Inverse of to_string().
  static CycInt parse(std::string_view text);

  std::uint32_t p() const { return p_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }

  CycInt operator+(const CycInt& o) const;
  CycInt operator-(const CycInt& o) const;
  CycInt operator*(const CycInt& o) const;
  CycInt operator-() const;
  CycInt& operator+=(const CycInt& o);
  CycInt scaled(std::int64_t s) const;
  // Coefficient-wise exact division; throws std::domain_error on a remainder.
  CycInt divided_exact(std::int64_t s) const;
  // Image under zeta -> zeta^k, gcd(k, p) = 1.
  CycInt galois(std::int64_t k) const;
  // zeta -> zeta^(-1), i.e. complex conjugation.
  CycInt conjugate() const { return galois(-1); }

  // c_0 when every other coefficient vanishes.
  std::optional<std::int64_t> as_integer() const;
  // Display only; never used for comparisons.
  std::complex<double> to_complex() const;
  std::int64_t max_abs_coeff() const;
  // "c0 + c1*z + c2*z^2 (mod Phi_p)", zero terms omitted, "0 (mod Phi_p)" for 0.
  std::string to_string() const;

  friend bool operator==(const CycInt&, const CycInt&) = default;

 private:
  CycInt(std::uint32_t p, std::vector<std::int64_t> c) : p_(p), c_(std::move(c)) {}
  void same_ring(const CycInt& o) const;

  std::uint32_t p_ = 0;
  std::vector<std::int64_t> c_;
};

}  // namespace weilcode
