#pragma once

// Binomial Weil sums S_N(a, b) = sum_{x in F_q^*} chi(a x^((q-1)/N) + b x) and
// the companion S_N(a) = sum_{i < N} chi(a xi^i), each available by direct
// enumeration and by closed form. All values are exact elements of Z[zeta_p].

#include <span>
#include <string_view>
#include <vector>

#include "weilcode/cycint.hpp"
#include "weilcode/field.hpp"

namespace weilcode {

enum class SumMethod {
  kBrute,
  kClosedN4,
  kClosedPrimePower,
  kClosedTwicePrimePower,
  kCor24,
  kCor25,
  kThm33,
  kDirectN2,
};

std::string_view method_name(SumMethod m);

struct SumResult {
  CycInt value;
  SumMethod method;
};

// How the enumeration kernels obtain Tr(y h^i): table lookups (needs
// q <= Field::kTableLimit) or an incremental multiplication per step.
enum class Strategy { kAuto, kTables, kStreaming };

// chi(v) = zeta_p^Tr(v)
CycInt character(const Field& field, const FqElem& v);

// Single-threaded references kept for checking the parallel kernels. They
// use nothing but field multiplication and the trace.
namespace serial {
CycInt brute_snab(const Field& field, const FqElem& a, const FqElem& b);
CycInt power_sum(const Field& field, const FqElem& c);
}  // namespace serial

// OpenMP kernels; results are bit-identical to the serial references for any
// thread count.
CycInt brute_snab(const Field& field, const FqElem& a, const FqElem& b, Strategy strategy = Strategy::kAuto);
CycInt brute_power_sum(const Field& field, const FqElem& c, Strategy strategy = Strategy::kAuto);

CycInt brute_sn(const Field& field, const FqElem& a);

// Dispatches on the shape of N (4, wp^m, 2wp^m). N = 2 is only covered by direct_s2.
CycInt closed_sn(const Field& field, const FqElem& a);
CycInt closed_sn_four(const Field& field, const FqElem& a);
CycInt closed_sn_prime_power(const Field& field, const FqElem& a);
CycInt closed_sn_twice_prime_power(const Field& field, const FqElem& a);

// S_2(a, b) over F_p with the smallest primitive root of p.
CycInt direct_s2(std::uint32_t p, std::int64_t a, std::int64_t b);

// S_{wp^m}(a) for a in the prime field.
CycInt closed_cor24(const Field& field, std::uint32_t a);

// S_{wp^m}(a) for p = 3 from the residue counts of the slices a^(i).
CycInt closed_cor25(const Field& field, const FqElem& a);

// S_N(a, b) reduced to S_N(c) with c = a b^(-(q-1)/N), denominator N:
//   S_N(a, b) = sqrt(q) chi(xi^k c) - (sqrt(q) + 1)/N S_N(c),  k = power_sum_shift(field).
CycInt closed_snab(const Field& field, const FqElem& a, const FqElem& b);

// Every applicable evaluation of S_N(a, b) for this field, brute force first.
std::vector<SumResult> evaluate_all(const Field& field, const FqElem& a, const FqElem& b);

// sum_{x in F_q^*} chi(c x^N) takes (N-1)sqrt(q)-1 on the single coset
// Ind_g(c) = k (mod N) and -sqrt(q)-1 elsewhere. k = 0 when (sqrt(q)+1)/N is
// even and k = N/2 when it is odd (N = 2, N = 4 with p = 3 mod 8, and
// N = 2wp^m with sqrt(q) = 1 mod 4). Taking k = 0 unconditionally is wrong
// for the odd case, e.g. p = 3, N = 10.
std::uint64_t power_sum_shift(const Field& field);

struct PowerSum {
  CycInt brute;
  CycInt predicted;
  bool in_h;        // Ind_g(c) = 0 mod N
  bool in_special;  // Ind_g(c) = power_sum_shift mod N
};
bool in_subgroup_h(const Field& field, const FqElem& c);
PowerSum moisio_power_sum(const Field& field, const FqElem& c);

// L(x) = sum_i coeffs[i] x^(p^i) collapses to b x inside the trace, with
// b = sum_i coeffs[i]^(p^(d-i)).
struct LinearizedReduction {
  FqElem b;
  CycInt sum;
};
LinearizedReduction linearized_reduce(const Field& field, const FqElem& a, std::span<const FqElem> coeffs);

// sum_{x in F_q^*} chi(a x^((q-1)/N) + L(x)) with L evaluated term by term.
CycInt brute_linearized(const Field& field, const FqElem& a, std::span<const FqElem> coeffs);

}  // namespace weilcode
