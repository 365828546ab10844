#pragma once

// Reference implementations used only by the tests. Nothing here calls into
// the library: Q_N comes from integer polynomial division of x^N - 1, field
// products are schoolbook with long division, traces are literal Frobenius
// sums, and sums are compared as length-p histograms modulo the all-ones
// vector (1 + zeta + ... + zeta^(p-1) = 0).

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "weilcode/cycint.hpp"

namespace oracle {

using Poly = std::vector<std::int64_t>;  // lowest degree first

inline Poly poly_div_exact(Poly num, const Poly& den) {
  // den monic over Z
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) throw std::logic_error("oracle: degree");
  Poly quo(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const std::int64_t c = num[k];
    quo[k - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  for (auto c : num) {
    if (c != 0) throw std::logic_error("oracle: inexact polynomial division");
  }
  return quo;
}

// Phi_N over Z: x^N - 1 divided by Phi_e for every proper divisor e.
inline Poly integer_cyclotomic(std::uint64_t N) {
  Poly acc(N + 1, 0);
  acc[0] = -1;
  acc[N] = 1;
  for (std::uint64_t e = 1; e < N; ++e) {
    if (N % e == 0) acc = poly_div_exact(acc, integer_cyclotomic(e));
  }
  return acc;
}

inline std::uint64_t phi(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

struct Field {
  std::uint64_t p, N, d, q;
  std::vector<std::uint32_t> mod;  // monic Q_N mod p, length d+1

  Field(std::uint64_t p_, std::uint64_t N_) : p(p_), N(N_) {
    const Poly z = integer_cyclotomic(N);
    d = z.size() - 1;
    q = 1;
    for (std::uint64_t i = 0; i < d; ++i) q *= p;
    for (auto c : z) mod.push_back(static_cast<std::uint32_t>(((c % static_cast<std::int64_t>(p)) + p) % p));
  }

  using E = std::vector<std::uint32_t>;

  E elem(std::uint64_t code) const {
    E v(d);
    for (std::uint64_t j = 0; j < d; ++j, code /= p) v[j] = static_cast<std::uint32_t>(code % p);
    return v;
  }
  std::uint64_t code(const E& v) const {
    std::uint64_t c = 0;
    for (std::uint64_t j = d; j-- > 0;) c = c * p + v[j];
    return c;
  }
  E one() const { return elem(1); }
  E x() const {
    // residue class of x; for d = 1 this is -mod[0]
    if (d == 1) return E{static_cast<std::uint32_t>((p - mod[0]) % p)};
    E v(d, 0);
    v[1] = 1;
    return v;
  }
  E add(const E& a, const E& b) const {
    E r(d);
    for (std::uint64_t j = 0; j < d; ++j) r[j] = static_cast<std::uint32_t>((a[j] + b[j]) % p);
    return r;
  }
  E mul(const E& a, const E& b) const {
    std::vector<std::uint64_t> prod(2 * d - 1, 0);
    for (std::uint64_t i = 0; i < d; ++i) {
      for (std::uint64_t j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    }
    for (std::uint64_t k = prod.size(); k-- > d;) {
      const std::uint64_t c = prod[k];
      if (c == 0) continue;
      for (std::uint64_t j = 0; j <= d; ++j) prod[k - d + j] = (prod[k - d + j] + (p - c) * mod[j]) % p;
    }
    return E(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(d));
  }
  E pow(E base, std::uint64_t e) const {
    E r = one();
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
  std::uint32_t trace(const E& v) const {
    E acc(d, 0), cur = v;
    for (std::uint64_t i = 0; i < d; ++i) {
      acc = add(acc, cur);
      cur = pow(cur, p);
    }
    for (std::uint64_t j = 1; j < d; ++j) {
      if (acc[j] != 0) throw std::logic_error("oracle: trace outside F_p");
    }
    return acc[0];
  }
};

// Histogram h (h[k] counts zeta^k) equals v in Z[zeta_p] iff h - ext(v) is
// a constant vector, where ext pads v with a zero coefficient for zeta^(p-1).
inline bool same(const std::vector<std::int64_t>& h, const weilcode::CycInt& v) {
  const auto& c = v.coeffs();
  if (h.size() != c.size() + 1) return false;
  const std::int64_t diff = h.back();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (h[k] - c[k] != diff) return false;
  }
  return true;
}

// sum_{x != 0} zeta^Tr(a x^((q-1)/N) + b x)
inline std::vector<std::int64_t> snab(const Field& f, const Field::E& a, const Field::E& b) {
  std::vector<std::int64_t> h(f.p, 0);
  for (std::uint64_t c = 1; c < f.q; ++c) {
    const auto x = f.elem(c);
    ++h[f.trace(f.add(f.mul(a, f.pow(x, (f.q - 1) / f.N)), f.mul(b, x)))];
  }
  return h;
}

// sum_{i < N} zeta^Tr(a xi^i)
inline std::vector<std::int64_t> sn(const Field& f, const Field::E& a) {
  std::vector<std::int64_t> h(f.p, 0);
  auto cur = a;
  for (std::uint64_t i = 0; i < f.N; ++i) {
    ++h[f.trace(cur)];
    cur = f.mul(cur, f.x());
  }
  return h;
}

}  // namespace oracle
