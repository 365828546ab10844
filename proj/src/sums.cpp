#include "weilcode/sums.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

namespace weilcode {

std::string_view method_name(SumMethod m) {
  switch (m) {
    case SumMethod::kBrute: return "brute";
    case SumMethod::kClosedN4: return "closed_N4";
    case SumMethod::kClosedPrimePower: return "closed_ppm";
    case SumMethod::kClosedTwicePrimePower: return "closed_2ppm";
    case SumMethod::kCor24: return "cor24";
    case SumMethod::kCor25: return "cor25";
    case SumMethod::kThm33: return "thm33";
    case SumMethod::kDirectN2: return "direct_N2";
  }
  return "?";
}

namespace {

std::uint32_t p32(const Field& f) { return static_cast<std::uint32_t>(f.p()); }

std::int64_t mod_p(std::int64_t v, std::uint64_t p) {
  const auto pp = static_cast<std::int64_t>(p);
  return ((v % pp) + pp) % pp;
}

// Tr(a xi^k) for k < N.
std::vector<std::uint32_t> xi_orbit_traces(const Field& f, const FqElem& a) {
  std::vector<std::uint32_t> out(f.N());
  FqElem cur = a;
  for (std::uint64_t k = 0; k < f.N(); ++k) {
    out[k] = f.trace(cur);
    cur = f.mul(cur, f.xi());
  }
  return out;
}

// Row-major d x d matrix of v -> h v over F_p.
std::vector<std::uint32_t> multiplication_matrix(const Field& f, const FqElem& h) {
  const std::size_t d = f.degree();
  std::vector<std::uint32_t> m(d * d);
  for (std::size_t c = 0; c < d; ++c) {
    FqElem unit = f.zero();
    unit.coeffs[c] = 1;
    const FqElem col = f.mul(h, unit);
    for (std::size_t r = 0; r < d; ++r) m[r * d + c] = col.coeffs[r];
  }
  return m;
}

std::pair<std::uint64_t, std::uint64_t> chunk(std::uint64_t count, int parts, int part) {
  const std::uint64_t base = count / static_cast<std::uint64_t>(parts);
  const std::uint64_t extra = count % static_cast<std::uint64_t>(parts);
  const auto i = static_cast<std::uint64_t>(part);
  const std::uint64_t lo = i * base + std::min(i, extra);
  return {lo, lo + base + (i < extra ? 1 : 0)};
}

// hist[(shift[i mod L] + Tr(y0 h^i)) mod p] += 1 for 0 <= i < count, h != 0.
std::vector<std::int64_t> trace_walk(const Field& f, const FqElem& y0, const FqElem& h, std::uint64_t count,
                                     const std::vector<std::uint32_t>& shift, Strategy strategy) {
  const std::uint64_t p = f.p();
  const std::size_t d = f.degree();
  const std::uint64_t period = shift.size();
  if (strategy == Strategy::kAuto) strategy = f.has_tables() ? Strategy::kTables : Strategy::kStreaming;
  if (strategy == Strategy::kTables && !f.has_tables()) throw std::invalid_argument("field has no tables");

  const bool y_zero = f.is_zero(y0);
  const std::uint64_t n = f.order() - 1;
  const bool tables = strategy == Strategy::kTables;
  const std::uint64_t iy = tables && !y_zero ? f.index(y0) : 0;
  const std::uint64_t ih = tables ? f.index(h) : 0;
  const auto mat = strategy == Strategy::kStreaming ? multiplication_matrix(f, h) : std::vector<std::uint32_t>{};
  const auto& bt = f.basis_traces();

  const int threads = omp_get_max_threads();
  std::vector<std::vector<std::int64_t>> partial(static_cast<std::size_t>(threads), std::vector<std::int64_t>(p, 0));

#pragma omp parallel num_threads(threads)
  {
    const int t = omp_get_thread_num();
    const auto [lo, hi] = chunk(count, omp_get_num_threads(), t);
    auto& hist = partial[static_cast<std::size_t>(t)];
    if (lo < hi) {
      if (y_zero) {
        for (std::uint64_t i = lo; i < hi; ++i) ++hist[shift[i % period]];
      } else if (tables) {
        std::uint64_t idx = (iy + mulmod(lo % n, ih, n)) % n;
        std::uint64_t s = lo % period;
        for (std::uint64_t i = lo; i < hi; ++i) {
          ++hist[(shift[s] + f.trace_of_g_power(idx)) % p];
          idx += ih;
          if (idx >= n) idx -= n;
          if (++s == period) s = 0;
        }
      } else {
        std::vector<std::uint32_t> y = f.mul(y0, f.pow(h, lo)).coeffs;
        std::vector<std::uint32_t> next(d);
        std::uint64_t s = lo % period;
        for (std::uint64_t i = lo; i < hi; ++i) {
          std::uint64_t tr = 0;
          for (std::size_t j = 0; j < d; ++j) tr += std::uint64_t{y[j]} * bt[j] % p;
          ++hist[(shift[s] + tr) % p];
          if (++s == period) s = 0;
          for (std::size_t r = 0; r < d; ++r) {
            std::uint64_t acc = 0;
            const std::uint32_t* row = &mat[r * d];
            for (std::size_t c = 0; c < d; ++c) acc += std::uint64_t{row[c]} * y[c] % p;
            next[r] = static_cast<std::uint32_t>(acc % p);
          }
          y.swap(next);
        }
      }
    }
  }

  std::vector<std::int64_t> total(p, 0);
  for (const auto& hist : partial) {
    for (std::uint64_t k = 0; k < p; ++k) total[k] += hist[k];
  }
  return total;
}

void require_closed_shape(const Field& f) {
  if (f.shape().kind == ModulusShape::kTwo) {
    throw UnsupportedError("closed forms need N in {4, wp^m, 2wp^m}; use direct_s2 for N = 2");
  }
}

}  // namespace

CycInt character(const Field& field, const FqElem& v) {
  return CycInt::zeta_pow(p32(field), field.trace(v));
}

namespace serial {

CycInt brute_snab(const Field& field, const FqElem& a, const FqElem& b) {
  std::vector<std::int64_t> hist(field.p(), 0);
  std::vector<FqElem> a_xi;
  a_xi.reserve(field.N());
  for (std::uint64_t k = 0; k < field.N(); ++k) a_xi.push_back(field.mul(a, field.xi_pow(k)));
  FqElem x = field.one();
  for (std::uint64_t i = 0; i + 1 < field.order(); ++i) {
    // x = g^i, so x^((q-1)/N) = xi^(i mod N).
    const FqElem arg = field.add(a_xi[i % field.N()], field.mul(b, x));
    ++hist[field.trace(arg)];
    x = field.mul(x, field.g());
  }
  return CycInt::from_histogram(p32(field), hist);
}

CycInt power_sum(const Field& field, const FqElem& c) {
  std::vector<std::int64_t> hist(field.p(), 0);
  FqElem x = field.one();
  for (std::uint64_t i = 0; i + 1 < field.order(); ++i) {
    ++hist[field.trace(field.mul(c, field.pow(x, field.N())))];
    x = field.mul(x, field.g());
  }
  return CycInt::from_histogram(p32(field), hist);
}

}  // namespace serial

CycInt brute_snab(const Field& field, const FqElem& a, const FqElem& b, Strategy strategy) {
  const auto shift = xi_orbit_traces(field, a);
  const auto hist = trace_walk(field, b, field.g(), field.order() - 1, shift, strategy);
  return CycInt::from_histogram(p32(field), hist);
}

CycInt brute_power_sum(const Field& field, const FqElem& c, Strategy strategy) {
  if (field.is_zero(c)) throw std::domain_error("power sum needs c != 0");
  const auto hist = trace_walk(field, c, field.pow(field.g(), field.N()), field.order() - 1, {0}, strategy);
  return CycInt::from_histogram(p32(field), hist);
}

CycInt brute_sn(const Field& field, const FqElem& a) {
  std::vector<std::int64_t> hist(field.p(), 0);
  for (std::uint32_t t : xi_orbit_traces(field, a)) ++hist[t];
  return CycInt::from_histogram(p32(field), hist);
}

CycInt closed_sn_four(const Field& field, const FqElem& a) {
  if (field.shape().kind != ModulusShape::kFour) throw UnsupportedError("closed_sn_four: N must be 4");
  const ShiftedCoords s = field.to_shifted(a);
  const auto a1 = static_cast<std::int64_t>(s.at(1));
  const auto a2 = static_cast<std::int64_t>(s.at(2));
  const std::uint32_t p = p32(field);
  return CycInt::zeta_pow(p, 2 * a1) + CycInt::zeta_pow(p, -2 * a1) + CycInt::zeta_pow(p, 2 * a2) +
         CycInt::zeta_pow(p, -2 * a2);
}

CycInt closed_sn_prime_power(const Field& field, const FqElem& a) {
  const NShape& sh = field.shape();
  if (sh.kind != ModulusShape::kPrimePower) throw UnsupportedError("closed_sn_prime_power: N must be wp^m");
  const std::uint64_t p = field.p();
  const std::uint64_t block = sh.block();
  const std::int64_t block_p = mod_p(static_cast<std::int64_t>(block % p), p);
  const std::int64_t full_p = mod_p(static_cast<std::int64_t>(field.N() % p), p);
  const ShiftedCoords s = field.to_shifted(a);

  // e_i(a) (f_i(a) + 1) expands into wp single roots of unity:
  // zeta^E_i and zeta^(E_i + wp^m a_{k B - i}) for k = 1 .. wp-1.
  std::vector<std::int64_t> hist(p, 0);
  for (std::uint64_t i = 0; i < block; ++i) {
    std::int64_t slice_sum = 0;
    for (std::uint64_t k = 1; k < sh.wp; ++k) slice_sum += s.at(k * block - i);
    const std::int64_t e = mod_p(-block_p * mod_p(slice_sum, p), p);
    ++hist[static_cast<std::size_t>(e)];
    for (std::uint64_t k = 1; k < sh.wp; ++k) {
      ++hist[static_cast<std::size_t>(mod_p(e + full_p * s.at(k * block - i), p))];
    }
  }
  return CycInt::from_histogram(static_cast<std::uint32_t>(p), hist);
}

CycInt closed_sn_twice_prime_power(const Field& field, const FqElem& a) {
  const NShape& sh = field.shape();
  if (sh.kind != ModulusShape::kTwicePrimePower) {
    throw UnsupportedError("closed_sn_twice_prime_power: N must be 2wp^m");
  }
  const std::uint64_t p = field.p();
  const std::uint64_t block = sh.block();
  const std::int64_t block_p = static_cast<std::int64_t>(block % p);
  const std::int64_t full_p = static_cast<std::int64_t>((block * sh.wp) % p);
  const ShiftedCoords s = field.to_shifted(a);

  std::vector<std::int64_t> hist(p, 0);
  for (std::uint64_t i = 0; i < block; ++i) {
    std::int64_t alt = 0;
    for (std::uint64_t k = 1; k < sh.wp; ++k) {
      const std::int64_t v = s.at(k * block - i);
      alt += (k % 2 == 0) ? v : -v;
    }
    const std::int64_t delta = mod_p(-block_p * mod_p(alt, p), p);
    ++hist[static_cast<std::size_t>(delta)];
    ++hist[static_cast<std::size_t>(mod_p(-delta, p))];
    for (std::uint64_t t = 1; t < sh.wp; ++t) {
      const std::int64_t signed_delta = (t % 2 == 0) ? delta : -delta;
      const std::int64_t e = mod_p(signed_delta + full_p * s.at(t * block - i), p);
      ++hist[static_cast<std::size_t>(e)];
      ++hist[static_cast<std::size_t>(mod_p(-e, p))];
    }
  }
  return CycInt::from_histogram(static_cast<std::uint32_t>(p), hist);
}

CycInt closed_sn(const Field& field, const FqElem& a) {
  switch (field.shape().kind) {
    case ModulusShape::kFour: return closed_sn_four(field, a);
    case ModulusShape::kPrimePower: return closed_sn_prime_power(field, a);
    case ModulusShape::kTwicePrimePower: return closed_sn_twice_prime_power(field, a);
    case ModulusShape::kTwo: break;
  }
  require_closed_shape(field);
  throw std::logic_error("unreachable");
}

CycInt direct_s2(std::uint32_t p, std::int64_t a, std::int64_t b) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("direct_s2: p must be an odd prime");
  const std::uint64_t g = smallest_primitive_root(p);
  std::vector<std::int64_t> hist(p, 0);
  std::uint64_t gi = 1;
  for (std::uint32_t i = 0; i + 1 < p; ++i) {
    const std::int64_t e = (i % 2 == 0 ? a : -a) + mod_p(b, p) * static_cast<std::int64_t>(gi);
    ++hist[static_cast<std::size_t>(mod_p(e, p))];
    gi = gi * g % p;
  }
  return CycInt::from_histogram(p, hist);
}

CycInt closed_cor24(const Field& field, std::uint32_t a) {
  const NShape& sh = field.shape();
  if (sh.kind != ModulusShape::kPrimePower) throw UnsupportedError("closed_cor24: N must be wp^m");
  const std::uint64_t p = field.p();
  if (a >= p) throw std::invalid_argument("closed_cor24: a must lie in [0, p)");
  const auto block = static_cast<std::int64_t>(sh.block() % p);
  const auto wp = static_cast<std::int64_t>(sh.wp);
  const auto ai = static_cast<std::int64_t>(a);
  const auto P = static_cast<std::int64_t>(field.N());
  const std::uint32_t p32v = static_cast<std::uint32_t>(p);
  return CycInt::zeta_pow(p32v, mod_p(-ai * block, p)).scaled(wp - 1) +
         CycInt::zeta_pow(p32v, mod_p(ai * ((wp - 1) % static_cast<std::int64_t>(p)) * block, p)) +
         CycInt::from_int(p32v, P - wp);
}

CycInt closed_cor25(const Field& field, const FqElem& a) {
  const NShape& sh = field.shape();
  if (field.p() != 3) throw UnsupportedError("closed_cor25: p must be 3");
  if (sh.kind != ModulusShape::kPrimePower) throw UnsupportedError("closed_cor25: N must be wp^m");
  const bool wp_one_mod_3 = sh.wp % 3 == 1;
  const bool m_even = sh.m % 2 == 0;
  const ShiftedCoords s = field.to_shifted(a);

  CycInt total = CycInt::zero(3);
  for (std::uint64_t i = 0; i < sh.block(); ++i) {
    const Slice sl = field.slice(s, i);
    const auto A0 = static_cast<std::int64_t>(sl.counts[0]);
    const auto A1 = static_cast<std::int64_t>(sl.counts[1]);
    const auto A2 = static_cast<std::int64_t>(sl.counts[2]);
    const std::int64_t u_exp = -A1 - 2 * A2;
    // v_i(x) = 1 + A0 + A1 x + A2 x^2 evaluated at zeta or zeta^2.
    const bool at_zeta_sq = !wp_one_mod_3 && !m_even;
    const std::int64_t hist_v[3] = {1 + A0, at_zeta_sq ? A2 : A1, at_zeta_sq ? A1 : A2};
    const CycInt v = CycInt::from_histogram(3, hist_v);
    const bool invert_u = !wp_one_mod_3 && m_even;
    total += CycInt::zeta_pow(3, invert_u ? -u_exp : u_exp) * v;
  }
  return total;
}

CycInt closed_snab(const Field& field, const FqElem& a, const FqElem& b) {
  require_closed_shape(field);
  const std::uint32_t p = p32(field);
  const auto cof = static_cast<std::int64_t>(field.cofactor());
  if (field.is_zero(b)) return closed_sn(field, a).scaled(cof);
  if (field.is_zero(a)) return CycInt::from_int(p, -1);

  const FqElem c = field.mul(a, field.inv(field.pow(b, field.cofactor())));
  const auto sq = static_cast<std::int64_t>(field.sqrt_order());
  const auto N = static_cast<std::int64_t>(field.N());
  // (sqrt(q) + 1) S_N(c) / N must be exact coefficient-wise.
  const CycInt reduced = closed_sn(field, c).scaled(sq + 1).divided_exact(N);
  // xi^(N/2) = -1
  const FqElem shifted = power_sum_shift(field) == 0 ? c : field.neg(c);
  return character(field, shifted).scaled(sq) - reduced;
}

std::vector<SumResult> evaluate_all(const Field& field, const FqElem& a, const FqElem& b) {
  std::vector<SumResult> out;
  out.push_back({brute_snab(field, a, b), SumMethod::kBrute});
  const NShape& sh = field.shape();
  if (sh.kind == ModulusShape::kTwo) {
    out.push_back({direct_s2(p32(field), a.coeffs[0], b.coeffs[0]), SumMethod::kDirectN2});
    return out;
  }
  out.push_back({closed_snab(field, a, b), SumMethod::kThm33});
  if (!field.is_zero(b)) return out;

  const auto cof = static_cast<std::int64_t>(field.cofactor());
  switch (sh.kind) {
    case ModulusShape::kFour:
      out.push_back({closed_sn_four(field, a).scaled(cof), SumMethod::kClosedN4});
      break;
    case ModulusShape::kPrimePower:
      out.push_back({closed_sn_prime_power(field, a).scaled(cof), SumMethod::kClosedPrimePower});
      break;
    case ModulusShape::kTwicePrimePower:
      out.push_back({closed_sn_twice_prime_power(field, a).scaled(cof), SumMethod::kClosedTwicePrimePower});
      break;
    case ModulusShape::kTwo:
      break;
  }
  if (sh.kind == ModulusShape::kPrimePower) {
    const bool in_prime_field =
        std::all_of(a.coeffs.begin() + 1, a.coeffs.end(), [](std::uint32_t c) { return c == 0; });
    if (in_prime_field) out.push_back({closed_cor24(field, a.coeffs[0]).scaled(cof), SumMethod::kCor24});
    if (field.p() == 3) out.push_back({closed_cor25(field, a).scaled(cof), SumMethod::kCor25});
  }
  return out;
}

std::uint64_t power_sum_shift(const Field& field) {
  const std::uint64_t ratio = (field.sqrt_order() + 1) / field.N();
  return ratio % 2 == 0 ? 0 : field.N() / 2;
}

bool in_subgroup_h(const Field& field, const FqElem& c) {
  return field.index(c) % field.N() == 0;
}

PowerSum moisio_power_sum(const Field& field, const FqElem& c) {
  require_closed_shape(field);
  if (field.is_zero(c)) throw std::domain_error("moisio_power_sum: c must be nonzero");
  const auto sq = static_cast<std::int64_t>(field.sqrt_order());
  const auto N = static_cast<std::int64_t>(field.N());
  const std::uint64_t ind = field.index(c) % field.N();
  const bool special = ind == power_sum_shift(field);
  const std::int64_t predicted = special ? (N - 1) * sq - 1 : -sq - 1;
  return {brute_power_sum(field, c), CycInt::from_int(p32(field), predicted), ind == 0, special};
}

LinearizedReduction linearized_reduce(const Field& field, const FqElem& a, std::span<const FqElem> coeffs) {
  if (coeffs.size() > field.degree()) throw std::invalid_argument("linearized polynomial has more than d terms");
  FqElem b = field.zero();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    // b_i^(p^(d-i)); for i = 0 this is b_0^(p^d) = b_0.
    FqElem term = coeffs[i];
    for (std::size_t k = 0; k < (field.degree() - i) % field.degree(); ++k) term = field.frobenius(term);
    b = field.add(b, term);
  }
  return {b, closed_snab(field, a, b)};
}

CycInt brute_linearized(const Field& field, const FqElem& a, std::span<const FqElem> coeffs) {
  std::vector<std::int64_t> hist(field.p(), 0);
  for (std::uint64_t code = 1; code < field.order(); ++code) {
    const FqElem x = field.from_code(code);
    FqElem value = field.mul(a, field.pow(x, field.cofactor()));
    FqElem frob = x;
    for (const FqElem& bi : coeffs) {
      value = field.add(value, field.mul(bi, frob));
      frob = field.frobenius(frob);
    }
    ++hist[field.trace(value)];
  }
  return CycInt::from_histogram(p32(field), hist);
}

}  // namespace weilcode
