#pragma once

// Ternary codes C_D = {(Tr(d_1 x), ..., Tr(d_n x)) : x in F_q} built from the
// defining set D = {x in F_q^* : Tr(x^((q-1)/wp^m)) = 0}, q = 3^phi(wp^m),
// together with their predicted two-weight parameters and dual-code analysis.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "weilcode/field.hpp"
#include "weilcode/number_theory.hpp"

namespace weilcode {

// Enumeration budgets; exceeded budgets throw std::out_of_range.
struct CodeCaps {
  std::uint64_t field_order = Field::kTableLimit;  // q for defining-set scans
  std::uint64_t census_work = 1'000'000'000;       // p^k * n for weight census
  std::uint64_t triple_search_length = 2000;       // n for weight-3 dual search
};

// Field F_{3^phi(wp^m)} with N = wp^m; rejects parameters where 3 is not a
// primitive root modulo wp^m.
Field code_field(std::uint64_t wp, unsigned m);

std::vector<FqElem> defining_set(const Field& field, const CodeCaps& caps = {});

struct LinearCode {
  std::uint32_t p = 3;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::uint8_t> generator;  // k x n, row-major
  std::vector<FqElem> defining_set;

  std::uint8_t at(std::size_t row, std::size_t col) const { return generator[row * n + col]; }
};

// Rows are the codewords of the shifted basis xi^1, ..., xi^d; the rank is
// checked against d.
LinearCode build_code(const Field& field, const CodeCaps& caps = {});

// c_x = (Tr(d_1 x), ..., Tr(d_n x)).
std::vector<std::uint8_t> codeword(const Field& field, const LinearCode& code, const FqElem& x);

std::size_t rank_mod_p(std::vector<std::uint8_t> matrix, std::size_t rows, std::size_t cols, std::uint32_t p);

struct WeightDistribution {
  std::map<std::uint64_t, std::uint64_t> counts;

  std::uint64_t total() const;
  std::uint64_t min_nonzero_weight() const;
  // "weight\tcount" lines, ascending by weight.
  std::string to_tsv() const;
  friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

namespace serial {
// Every message times the generator matrix, from scratch.
WeightDistribution weight_distribution(const LinearCode& code, const CodeCaps& caps = {});
}  // namespace serial

// OpenMP census over message index ranges with an incremental base-p counter.
WeightDistribution brute_weight_distribution(const LinearCode& code, const CodeCaps& caps = {});

enum class Regime { kOneModThree, kMinusOneModThree };

// All values exact; every division in the formulas is checked for remainder.
struct PredictedParameters {
  std::uint64_t wp = 0;
  unsigned m = 0;
  Regime regime = Regime::kOneModThree;
  BigInt q, sqrt_q, n0, n, k, w1, w2, a_w1, a_w2;
};

PredictedParameters predicted_parameters(std::uint64_t wp, unsigned m);

// A_w1 + A_w2 = q - 1 and A_w1 w1 + A_w2 w2 = (2 n0 - 2) q / 3.
bool pless_identities_hold(const PredictedParameters& params);

// (wp, m) with wp^m <= limit, 3 a primitive root mod wp^m, and inside the
// two-weight regimes (wp = 1 mod 3, or wp = 2 mod 3 with m >= 2).
std::vector<std::pair<std::uint64_t, unsigned>> two_weight_parameters(std::uint64_t limit);

// N_b = #{x in F_q : Tr(x^((q-1)/wp^m)) = 0 and Tr(b x) = 0} from the
// three-case formula keyed on Ind_g(b^-1) mod wp^m. Weight of c_b is n0 - N_b.
BigInt predicted_nb(const Field& field, const FqElem& b);

struct DualAnalysis {
  std::size_t n = 0;
  std::size_t k_dual = 0;
  // Minimum distance when exact; otherwise a lower bound.
  std::size_t d_dual = 0;
  bool exact = false;
  // Positions of some d_i and -d_i; their indicator vector is a dual codeword.
  std::pair<std::size_t, std::size_t> negation_pair{0, 0};
  bool negation_pair_in_dual = false;
};

DualAnalysis dual_analysis(const Field& field, const LinearCode& code, const CodeCaps& caps = {});

// True iff an [n, k, d+1] code over F_field_size would violate the
// sphere-packing bound field_size^k * V(n, floor(d/2)) <= field_size^n.
bool sphere_packing_optimal(const BigInt& n, const BigInt& k, const BigInt& d, std::uint64_t field_size);

// One row per line, digits separated by single spaces.
std::string generator_to_text(const LinearCode& code);

}  // namespace weilcode
