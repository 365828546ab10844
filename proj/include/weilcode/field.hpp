#pragma once

// Arithmetic in F_q = F_p[x]/(Q_N(x)) where Q_N is the N-th cyclotomic
// polynomial and p is a primitive root modulo N. The residue class of x is the
// primitive N-th root of unity xi, so the shifted basis {xi, ..., xi^d} is one
// multiplication away from the power basis.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "weilcode/number_theory.hpp"

namespace weilcode {

// Thrown when (p, N) falls outside what the field constructions support.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Power-basis coefficients (1, xi, ..., xi^(d-1)), each in [0, p).
struct FqElem {
  std::vector<std::uint32_t> coeffs;

  friend bool operator==(const FqElem&, const FqElem&) = default;
};

// Coefficients (a_1, ..., a_d) in the basis {xi, xi^2, ..., xi^d}.
// Stored 0-based; at(s) takes the 1-based index used in the formulas.
struct ShiftedCoords {
  std::vector<std::uint32_t> a;

  std::uint32_t at(std::uint64_t s) const { return a.at(s - 1); }
  friend bool operator==(const ShiftedCoords&, const ShiftedCoords&) = default;
};

// a^(i) = (a_{B-i}, a_{2B-i}, ..., a_{(wp-1)B-i}) with B = wp^(m-1), plus the
// multiplicity of every residue j in [0, p) among its components.
struct Slice {
  std::vector<std::uint32_t> values;
  std::vector<std::uint64_t> counts;
};

// Monic Q_N reduced mod p, lowest degree first.
std::vector<std::uint32_t> cyclotomic_poly(std::uint64_t N, std::uint64_t p);

class Field {
 public:
  // Largest q for which exp/log/trace tables are materialised.
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 24;

  // Validates ord_N(p) = phi(N), builds Q_N and searches for the first
  // primitive g (ascending element code) with g^((q-1)/N) = xi.
  static Field make(std::uint64_t p, std::uint64_t N);

  std::uint64_t p() const { return p_; }
  std::uint64_t N() const { return n_; }
  std::size_t degree() const { return d_; }
  std::uint64_t order() const { return q_; }
  const NShape& shape() const { return shape_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  const FqElem& g() const { return g_; }
  const FqElem& xi() const { return xi_; }
  // p^(d/2); throws UnsupportedError when d is odd (only N = 2).
  std::uint64_t sqrt_order() const;
  // (q - 1) / N
  std::uint64_t cofactor() const { return (q_ - 1) / n_; }

  FqElem zero() const;
  FqElem one() const;
  FqElem scalar(std::int64_t v) const;
  // Zero-pads a short coefficient list; rejects entries >= p or length > d.
  FqElem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  bool is_zero(const FqElem& v) const;

  // Element code sum_j c_j p^j; ascending codes are the canonical
  // enumeration order of F_q.
  std::uint64_t code(const FqElem& v) const;
  FqElem from_code(std::uint64_t code) const;

  FqElem add(const FqElem& a, const FqElem& b) const;
  FqElem sub(const FqElem& a, const FqElem& b) const;
  FqElem neg(const FqElem& a) const;
  FqElem mul(const FqElem& a, const FqElem& b) const;
  FqElem scale(const FqElem& a, std::uint64_t s) const;
  FqElem pow(const FqElem& a, std::uint64_t e) const;
  FqElem inv(const FqElem& a) const;
  FqElem frobenius(const FqElem& a) const;
  FqElem xi_pow(std::uint64_t k) const;

  // Tr(v) as the linear form v -> sum_j v_j Tr(xi^j).
  std::uint32_t trace(const FqElem& v) const;
  // Tr(v) = v + v^p + ... + v^(p^(d-1)) evaluated literally.
  std::uint32_t trace_frobenius(const FqElem& v) const;
  // Tr(xi^j) for j < d, the coefficients of the linear form above.
  const std::vector<std::uint32_t>& basis_traces() const { return basis_traces_; }

  // Ind_g(v): table lookup when q <= kTableLimit, baby-step/giant-step otherwise.
  std::uint64_t index(const FqElem& v) const;

  ShiftedCoords to_shifted(const FqElem& v) const;
  FqElem from_shifted(const ShiftedCoords& a) const;
  Slice slice(const ShiftedCoords& a, std::uint64_t i) const;

  // Multiplication-by-g as a d x d matrix over F_p acting on coefficient
  // columns; used by the streaming enumerators.
  const std::vector<std::uint32_t>& mul_by_g_matrix() const { return g_matrix_; }

  bool has_tables() const { return static_cast<bool>(tables_); }
  // Code of g^i, 0 <= i < q-1.
  std::uint32_t exp_code(std::uint64_t i) const { return tables_->exp[i]; }
  // Tr(g^i), 0 <= i < q-1.
  std::uint32_t trace_of_g_power(std::uint64_t i) const { return tables_->trace_g_pow[i]; }

  std::string describe() const;

 private:
  struct Tables {
    std::vector<std::uint32_t> exp;
    std::vector<std::uint32_t> log;  // indexed by code; log[0] unused
    std::vector<std::uint32_t> trace_g_pow;
  };

  Field() = default;
  std::uint32_t reduce(std::int64_t v) const;
  void check(const FqElem& v) const;
  bool is_primitive(const FqElem& v, const std::vector<std::uint64_t>& factors) const;
  std::uint64_t bsgs_index(const FqElem& v) const;
  void build_tables();

  std::uint64_t p_ = 0;
  std::uint64_t n_ = 0;
  std::size_t d_ = 0;
  std::uint64_t q_ = 0;
  NShape shape_{ModulusShape::kTwo};
  std::vector<std::uint32_t> modulus_;
  FqElem g_;
  FqElem xi_;
  FqElem xi_inv_;
  std::vector<std::uint32_t> basis_traces_;
  std::vector<std::uint32_t> g_matrix_;
  std::shared_ptr<const Tables> tables_;
};

// Closed-form Tr(xi^j) as a signed integer: the three-case table for N = wp^m,
// the five-case table for N = 2wp^m, and the direct values for N = 2 and 4.
std::int64_t trace_of_xi_power_integer(const Field& field, std::uint64_t j);

// The same value reduced into [0, p).
std::uint32_t trace_of_xi_power(const Field& field, std::uint64_t j);

}  // namespace weilcode
