#include "weilcode/number_theory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace weilcode {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
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

namespace {

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t kBatch = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t f = pollard_brent(n);
  factor_into(f, out);
  factor_into(n / f, out);
}

}  // namespace

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f < 1000 && f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t f : prime_factors(n)) result = result / f * (f - 1);
  return result;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
  if (n < 2 || std::gcd(a, n) != 1) {
    throw std::invalid_argument("multiplicative_order: need n >= 2 and gcd(a, n) = 1");
  }
  const std::uint64_t base = a % n;
  std::uint64_t x = base;
  std::uint64_t k = 1;
  while (x != 1) {
    x = mulmod(x, base, n);
    ++k;
  }
  return k;
}

std::uint64_t lifted_order(std::uint64_t a, std::uint64_t u, unsigned k) {
  if (!is_prime(u) || u == 2 || a % u == 0 || k == 0) {
    throw std::invalid_argument("lifted_order: need an odd prime u not dividing a, k >= 1");
  }
  const auto modulus = checked_pow(u, k);
  if (!modulus) throw std::overflow_error("lifted_order: u^k exceeds 64 bits");
  const std::uint64_t d = multiplicative_order(a, u);
  // k0 capped at k; only the comparison k <= k0 matters.
  unsigned k0 = 1;
  std::uint64_t uk = u;
  while (k0 < k) {
    uk *= u;
    if (powmod(a, d, uk) != 1) break;
    ++k0;
  }
  if (k <= k0) return d;
  return d * *checked_pow(u, k - k0);
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(result, base, &result)) return std::nullopt;
  }
  return result;
}

std::uint64_t smallest_primitive_root(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("smallest_primitive_root: p must be prime");
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    if (std::all_of(factors.begin(), factors.end(),
                    [&](std::uint64_t r) { return powmod(g, (p - 1) / r, p) != 1; })) {
      return g;
    }
  }
  throw std::logic_error("smallest_primitive_root: none found");
}

std::uint64_t NShape::block() const {
  if (kind == ModulusShape::kTwo || kind == ModulusShape::kFour) return 1;
  return *checked_pow(wp, m - 1);
}

std::optional<NShape> classify_modulus(std::uint64_t N) {
  if (N == 2) return NShape{ModulusShape::kTwo};
  if (N == 4) return NShape{ModulusShape::kFour};
  if (N < 3) return std::nullopt;
  bool twice = false;
  std::uint64_t odd = N;
  if (odd % 2 == 0) {
    odd /= 2;
    twice = true;
    if (odd % 2 == 0 || odd == 1) return std::nullopt;
  }
  const auto factors = prime_factors(odd);
  if (factors.size() != 1) return std::nullopt;
  unsigned m = 0;
  while (odd > 1) {
    odd /= factors[0];
    ++m;
  }
  return NShape{twice ? ModulusShape::kTwicePrimePower : ModulusShape::kPrimePower, factors[0], m};
}

}  // namespace weilcode
